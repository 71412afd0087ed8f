//! Iterative parallel greedy peeling: every pass removes all live vertices
//! with degree at or below 2(1+ε)ρ and keeps the best-density intermediate
//! subgraph seen along the way.
//!
//! Each pass is two fork-join phases. Phase 1 scans the live-vertex list
//! read-only and collects failed vertices into worker-private lists. After
//! the barrier, phase 2 walks the failed vertices and decrements live
//! neighbors' degrees with atomic subtraction; per-worker edge partials are
//! reduced sequentially. Output is identical for any worker count.

use std::sync::atomic::{AtomicI64, Ordering};

use crate::error::{DsdError, Result};
use crate::graph::{density, DensityValue, Graph};
use crate::par::{run_workers, split_ranges};

pub const NEVER_REMOVED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
pub struct PeelConfig {
    pub epsilon: f64,
    pub workers: usize,
}

impl Default for PeelConfig {
    fn default() -> Self {
        PeelConfig { epsilon: 0.0, workers: 1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PassTrace {
    pub pass: u32,
    pub vertices: u64,
    pub edges: u64,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeelResult {
    pub best_density: DensityValue,
    pub best_pass: u32,
    pub removal_pass: Vec<u32>,
    pub passes_executed: u32,
    pub pass_trace: Vec<PassTrace>,
    pub epsilon: f64,
}

impl PeelResult {
    /// Vertices of the best intermediate subgraph: survivors of `best_pass`.
    pub fn members(&self) -> Vec<u32> {
        (0..self.removal_pass.len() as u32)
            .filter(|&v| self.removal_pass[v as usize] > self.best_pass)
            .collect()
    }
}

/// Removal threshold for the current pass: degrees ≤ 2(1+ε)ρ fail, ties
/// included.
pub fn threshold(rho: &DensityValue, epsilon: f64) -> f64 {
    2.0 * (1.0 + epsilon) * rho.value
}

pub fn peel_densest(graph: &Graph, config: &PeelConfig) -> Result<PeelResult> {
    if graph.num_vertices() == 0 {
        return Err(DsdError::EmptyGraph("cannot peel an empty graph"));
    }
    if !(config.epsilon >= 0.0) {
        return Err(DsdError::Precondition(format!(
            "epsilon must be >= 0, got {}",
            config.epsilon
        )));
    }
    let workers = config.workers.max(1);
    let n = graph.num_vertices();

    let degree: Vec<AtomicI64> =
        graph.base_degrees().iter().map(|&d| AtomicI64::new(d as i64)).collect();
    let mut removal_pass = vec![NEVER_REMOVED; n];
    let mut live: Vec<u32> = (0..n as u32).collect();

    let mut remaining_vertices = n as u64;
    let mut remaining_edges = graph.num_edges();
    let mut rho = density(remaining_edges, remaining_vertices)?;
    let mut best = rho;
    let mut best_pass = 0u32;
    let mut trace = vec![PassTrace {
        pass: 0,
        vertices: remaining_vertices,
        edges: remaining_edges,
        rho: rho.value,
    }];

    let mut pass = 0u32;
    while remaining_vertices > 0 {
        pass += 1;
        let cutoff = threshold(&rho, config.epsilon);

        // Phase 1: scan live vertices, worker-private failed lists.
        let ranges = split_ranges(live.len(), workers);
        let live_ref = &live;
        let degree_ref = &degree;
        let failed_lists: Vec<Vec<u32>> = run_workers(workers, |w| {
            live_ref[ranges[w].clone()]
                .iter()
                .copied()
                .filter(|&v| degree_ref[v as usize].load(Ordering::Relaxed) as f64 <= cutoff)
                .collect()
        });
        let failed: Vec<u32> = failed_lists.into_iter().flatten().collect();
        if failed.is_empty() {
            // The average-degree argument guarantees a removable vertex.
            return Err(DsdError::Invariant(format!(
                "pass {pass} removed no vertices (threshold {cutoff})"
            )));
        }
        for &v in &failed {
            removal_pass[v as usize] = pass;
        }

        // Phase 2: decrement live neighbors, count removed edges once each.
        let ranges = split_ranges(failed.len(), workers);
        let failed_ref = &failed;
        let removal_ref = &removal_pass;
        let edge_partials: Vec<u64> = run_workers(workers, |w| {
            let mut removed_edges = 0u64;
            for &v in &failed_ref[ranges[w].clone()] {
                for &u in graph.neighbors(v) {
                    if u == v {
                        removed_edges += 1; // retained self-loop
                        continue;
                    }
                    let mark = removal_ref[u as usize];
                    if mark == NEVER_REMOVED {
                        degree_ref[u as usize].fetch_sub(1, Ordering::Relaxed);
                        removed_edges += 1;
                    } else if mark == pass && u > v {
                        // failed-failed edge, counted from the lower endpoint
                        removed_edges += 1;
                    }
                }
            }
            removed_edges
        });
        remaining_edges -= edge_partials.iter().sum::<u64>();
        remaining_vertices -= failed.len() as u64;
        live.retain(|&v| removal_pass[v as usize] == NEVER_REMOVED);

        if remaining_vertices > 0 {
            rho = density(remaining_edges, remaining_vertices)?;
            trace.push(PassTrace {
                pass,
                vertices: remaining_vertices,
                edges: remaining_edges,
                rho: rho.value,
            });
            if rho.value > best.value {
                best = rho;
                best_pass = pass;
            }
        } else {
            debug_assert_eq!(remaining_edges, 0);
            trace.push(PassTrace { pass, vertices: 0, edges: 0, rho: 0.0 });
        }
    }

    Ok(PeelResult {
        best_density: best,
        best_pass,
        removal_pass,
        passes_executed: pass,
        pass_trace: trace,
        epsilon: config.epsilon,
    })
}
