//! Fork-join scaffolding. A phase is a set of scoped worker threads joined
//! before the next phase starts; the join is the barrier.

use std::ops::Range;
use std::thread;

/// Contiguous near-equal index ranges, one per worker. Trailing workers may
/// receive empty ranges when `len < workers`.
pub fn split_ranges(len: usize, workers: usize) -> Vec<Range<usize>> {
    let workers = workers.max(1);
    let base = len / workers;
    let rem = len % workers;
    let mut out = Vec::with_capacity(workers);
    let mut start = 0;
    for w in 0..workers {
        let size = base + usize::from(w < rem);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// Runs `f(worker_id)` on `workers` scoped threads and returns the results in
/// worker order, so reductions over the output are deterministic.
pub fn run_workers<T, F>(workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.max(1);
    if workers == 1 {
        return vec![f(0)];
    }
    thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..workers).map(|w| scope.spawn(move || f(w))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}
