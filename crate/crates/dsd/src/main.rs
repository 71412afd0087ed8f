use clap::Parser;

use dsd::cli::{exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    if let Err(err) = run(cli, &mut stdout) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}
