//! Level-synchronous parallel k-core decomposition (PKC style) that also
//! records the density of each surviving core and the densest core overall.
//!
//! Level k: workers scan their vertex partition for live vertices of degree
//! exactly k into private buffers (barrier), then cascade their own buffers,
//! decrementing neighbor degrees atomically. A decrement landing exactly on
//! k+1 enqueues the neighbor; one overshooting below k+1 is atomically undone.
//! The final mutated degree of a vertex is its coreness.

use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::Mutex;

use crate::error::{DsdError, Result};
use crate::graph::{density, DensityValue, Graph};
use crate::par::{run_workers, split_ranges};

#[derive(Debug, Clone, PartialEq)]
pub struct LevelTrace {
    pub k: u32,
    pub vertices: u64,
    pub edges: u64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreDecomposition {
    pub coreness: Vec<u32>,
    pub level_trace: Vec<LevelTrace>,
    pub max_density: DensityValue,
    /// Core value of the densest core, stored as level + 1: the density
    /// recorded at level k is that of the (k+1)-core, and membership tests
    /// compare coreness against this value.
    pub max_density_core: u32,
    pub m_v: u64,
    pub m_e: u64,
    pub k_max: u32,
    /// Total atomic degree decrements issued, for complexity checks.
    pub decrement_ops: u64,
}

/// Vertices of the densest core: coreness ≥ max_density_core.
pub fn core_members(decomp: &CoreDecomposition) -> Vec<u32> {
    (0..decomp.coreness.len() as u32)
        .filter(|&v| decomp.coreness[v as usize] >= decomp.max_density_core)
        .collect()
}

struct CascadeOut {
    removed: u64,
    deleted: i64,
    aux: i64,
    decrements: u64,
}

pub fn decompose(graph: &Graph, workers: usize) -> Result<CoreDecomposition> {
    let n = graph.num_vertices();
    if n == 0 {
        return Err(DsdError::EmptyGraph("cannot decompose an empty graph"));
    }
    let workers = workers.max(1);
    let m = graph.num_edges();

    let degree: Vec<AtomicI64> =
        graph.base_degrees().iter().map(|&d| AtomicI64::new(d as i64)).collect();
    let ranges = split_ranges(n, workers);

    let mut visited = 0u64;
    let mut removed_endpoint_sum = 0i64; // deleted + aux over all levels
    let mut level_trace = Vec::new();
    let mut max_density: Option<DensityValue> = None;
    let mut max_density_core = 0u32;
    let mut m_v = 0u64;
    let mut m_e = 0u64;
    let mut decrement_ops = 0u64;

    let mut k = 0u32;
    while visited < n as u64 {
        let kk = k as i64;
        let degree_ref = &degree;

        // Scan phase: seed buffers with live vertices of degree exactly k.
        let seeds: Vec<Mutex<Vec<u32>>> = run_workers(workers, |w| {
            let buff: Vec<u32> = ranges[w]
                .clone()
                .filter(|&v| degree_ref[v].load(Ordering::Relaxed) == kk)
                .map(|v| v as u32)
                .collect();
            Mutex::new(buff)
        });

        // Cascade phase: each worker drains its own buffer.
        let seeds_ref = &seeds;
        let outs: Vec<CascadeOut> = run_workers(workers, |w| {
            let mut buff = std::mem::take(&mut *seeds_ref[w].lock().unwrap());
            let mut start = 0usize;
            let mut deleted = 0i64;
            let mut aux = 0i64;
            let mut decrements = 0u64;
            while start < buff.len() {
                let v = buff[start];
                start += 1;
                deleted += kk;
                if graph.has_self_loop(v) {
                    // the loop sits in the popped degree once; count its
                    // second endpoint here so the /2 accounting stays exact
                    deleted += 1;
                }
                for &u in graph.neighbors(v) {
                    if u == v {
                        continue;
                    }
                    let u = u as usize;
                    if degree_ref[u].load(Ordering::Relaxed) > kk {
                        let a = degree_ref[u].fetch_sub(1, Ordering::Relaxed);
                        decrements += 1;
                        if a == kk + 1 {
                            buff.push(u as u32);
                        }
                        if a <= kk {
                            degree_ref[u].fetch_add(1, Ordering::Relaxed);
                        } else {
                            aux += 1;
                        }
                    }
                }
            }
            CascadeOut { removed: start as u64, deleted, aux, decrements }
        });

        for out in &outs {
            visited += out.removed;
            removed_endpoint_sum += out.deleted + out.aux;
            decrement_ops += out.decrements;
        }

        if visited < n as u64 {
            debug_assert_eq!(removed_endpoint_sum % 2, 0);
            let rem_e = m - (removed_endpoint_sum / 2) as u64;
            let rem_v = n as u64 - visited;
            let d = density(rem_e, rem_v)?;
            level_trace.push(LevelTrace { k, vertices: rem_v, edges: rem_e, density: d.value });
            if max_density.map_or(true, |best| d.value > best.value) {
                max_density = Some(d);
                max_density_core = k + 1;
                m_v = rem_v;
                m_e = rem_e;
            }
        }
        k += 1;
    }

    let coreness: Vec<u32> =
        degree.iter().map(|d| d.load(Ordering::Relaxed) as u32).collect();
    let k_max = coreness.iter().copied().max().unwrap_or(0);
    let max_density = max_density
        .ok_or_else(|| DsdError::Invariant("no core density recorded".into()))?;

    Ok(CoreDecomposition {
        coreness,
        level_trace,
        max_density,
        max_density_core,
        m_v,
        m_e,
        k_max,
        decrement_ops,
    })
}
