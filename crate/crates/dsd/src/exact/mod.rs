//! Ground-truth densest-subgraph oracles: exhaustive subset enumeration for
//! tiny graphs and a max-flow binary search for medium graphs.
//!
//! The flow search runs on integer-scaled capacities: density guesses are
//! probed at λ = t / q with q = 2n(n−1), so every min-cut decision is exact
//! and the terminating interval is below the 1/(n(n−1)) spacing between
//! distinct subgraph densities. The reported density is recomputed as an
//! exact rational from the extracted vertex set. Self-loops are dropped
//! before solving.

mod flow;

pub use flow::FlowNetwork;

use crate::error::{DsdError, Result};
use crate::graph::{DensityValue, Graph};

pub const BRUTE_FORCE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    BruteForce,
    Flow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub density: DensityValue,
    pub members: Vec<u32>,
    pub method: ExactMethod,
    pub search_iterations: u64,
}

pub fn brute_force_densest(graph: &Graph) -> Result<ExactResult> {
    brute_force_densest_with_cap(graph, BRUTE_FORCE_CAP)
}

/// Enumerates every non-empty vertex subset. Ties broken toward fewer
/// vertices, then the lexicographically smallest member list.
pub fn brute_force_densest_with_cap(graph: &Graph, cap: usize) -> Result<ExactResult> {
    let n = graph.num_vertices();
    if n == 0 {
        return Err(DsdError::EmptyGraph("cannot solve an empty graph"));
    }
    if n > cap {
        return Err(DsdError::TooLarge(format!(
            "brute force supports up to {cap} vertices, graph has {n}"
        )));
    }
    let masks: Vec<u32> = (0..n as u32)
        .map(|v| {
            let mut mask = 0u32;
            for &u in graph.neighbors(v) {
                if u != v {
                    mask |= 1 << u;
                }
            }
            mask
        })
        .collect();

    let mut best_edges = 0u64;
    let mut best_mask = 1u32; // {0}: density 0/1
    let mut iterations = 0u64;
    for subset in 1u32..(1u32 << n) {
        iterations += 1;
        let mut twice_edges = 0u32;
        let mut rest = subset;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            twice_edges += (masks[v as usize] & subset).count_ones();
        }
        let edges = (twice_edges / 2) as u64;
        let size = subset.count_ones() as u64;
        if better(edges, size, subset, best_edges, best_mask.count_ones() as u64, best_mask) {
            best_edges = edges;
            best_mask = subset;
        }
    }

    let members: Vec<u32> = (0..n as u32).filter(|&v| best_mask >> v & 1 == 1).collect();
    Ok(ExactResult {
        density: DensityValue::new(best_edges, members.len() as u64)?,
        members,
        method: ExactMethod::BruteForce,
        search_iterations: iterations,
    })
}

fn better(e: u64, v: u64, mask: u32, best_e: u64, best_v: u64, best_mask: u32) -> bool {
    let lhs = e as u128 * best_v as u128;
    let rhs = best_e as u128 * v as u128;
    if lhs != rhs {
        return lhs > rhs;
    }
    if v != best_v {
        return v < best_v;
    }
    lex_smaller(mask, best_mask)
}

fn lex_smaller(a: u32, b: u32) -> bool {
    // compare sorted member lists element by element
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, _) => return b != 0,
            (false, true) => return false,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x < y;
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Goldberg's construction: source→v at capacity m, v→sink at m + 2λ −
/// deg(v), each undirected edge as unit arcs both ways; a non-trivial
/// min-cut source side certifies a subgraph of density above λ.
pub fn flow_exact_densest(graph: &Graph) -> Result<ExactResult> {
    let n = graph.num_vertices();
    if n == 0 {
        return Err(DsdError::EmptyGraph("cannot solve an empty graph"));
    }

    // loop-free view
    let degree: Vec<u64> = (0..n as u32)
        .map(|v| graph.neighbors(v).iter().filter(|&&u| u != v).count() as u64)
        .collect();
    let m: u64 = degree.iter().sum::<u64>() / 2;

    if m == 0 {
        let members: Vec<u32> = (0..n as u32).collect();
        return Ok(ExactResult {
            density: DensityValue::new(0, n as u64)?,
            members,
            method: ExactMethod::Flow,
            search_iterations: 0,
        });
    }

    // λ = t / q, q even so 2λ·scale stays integral
    let q = 2 * (n as i64) * (n as i64 - 1);
    let max_degree = *degree.iter().max().unwrap() as i64;
    let scaled_m = (m as i128) * (q as i128);
    if scaled_m * (n as i128) > i64::MAX as i128 {
        return Err(DsdError::TooLarge(format!(
            "flow oracle capacity scale overflows for n = {n}, m = {m}"
        )));
    }
    let scaled_m = scaled_m as i64;

    let mut lo = 0i64;
    let mut hi = max_degree * q;
    let mut best_members: Vec<u32> = (0..n as u32).collect();
    let mut iterations = 0u64;
    while hi - lo > 1 {
        iterations += 1;
        let t = lo + (hi - lo) / 2;
        match probe(graph, &degree, scaled_m, q, t) {
            Some(members) => {
                lo = t;
                best_members = members;
            }
            None => hi = t,
        }
    }

    let in_set = {
        let mut mark = vec![false; n];
        for &v in &best_members {
            mark[v as usize] = true;
        }
        mark
    };
    let edges = graph.induced_edge_count_no_loops(|v| in_set[v as usize]);
    Ok(ExactResult {
        density: DensityValue::new(edges, best_members.len() as u64)?,
        members: best_members,
        method: ExactMethod::Flow,
        search_iterations: iterations,
    })
}

/// One min-cut probe at λ = t / q. Returns the non-trivial source side, if
/// any, sorted ascending.
fn probe(graph: &Graph, degree: &[u64], scaled_m: i64, q: i64, t: i64) -> Option<Vec<u32>> {
    let n = graph.num_vertices();
    let source = n as u32;
    let sink = n as u32 + 1;
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n as u32 {
        let sink_cap = scaled_m + 2 * t - degree[v as usize] as i64 * q;
        assert!(sink_cap >= 0, "sink capacity must be non-negative");
        net.add_edge(source, v, scaled_m, 0);
        net.add_edge(v, sink, sink_cap, 0);
        for &u in graph.neighbors(v) {
            if u > v {
                net.add_edge(v, u, q, q);
            }
        }
    }
    net.max_flow(source, sink);
    let side = net.min_cut_source_side(source);
    let members: Vec<u32> = (0..n as u32).filter(|&v| side[v as usize]).collect();
    if members.is_empty() {
        None
    } else {
        Some(members)
    }
}
