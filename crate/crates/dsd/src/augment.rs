//! Core augmentation: grows the densest core by outside vertices whose
//! connection into the core exceeds the core's density.
//!
//! Three barrier-separated phases over the post-decomposition degree array
//! (the coreness values): eligible scan, legitimacy filtering, cross-edge
//! counting among the accepted vertices. Edge contributions are kept in
//! doubled half-units so the 0.5 self-loop rule never touches floating
//! point, and every density comparison is rational.

use crate::coredec::CoreDecomposition;
use crate::graph::{DensityValue, Graph};
use crate::par::{run_workers, split_ranges};

/// Inputs to the single-vertex density gain formula.
#[derive(Debug, Clone, Copy)]
pub struct GainTerms {
    /// Core vertex count.
    pub n: u64,
    /// Core edge count.
    pub e: u64,
    /// Candidate's edge count into the core.
    pub e_tilde: f64,
}

/// Density change from adding one vertex with `e_tilde` edges into an
/// (n, e) subgraph: (n·ẽ − e) / (n(n+1)). Positive iff ẽ > e/n.
pub fn density_gain(terms: &GainTerms) -> f64 {
    let n = terms.n as f64;
    (n * terms.e_tilde - terms.e as f64) / (n * (n + 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentResult {
    /// |V′|: vertices passing the degree window test.
    pub eligible_count: u64,
    /// |V″|: accepted vertices, sorted by internal index.
    pub legit_vertices: Vec<u32>,
    /// Edges contributed by legit vertices, in half-units: core-incident
    /// edges at 2, cross edges among legit vertices at 2, retained
    /// self-loops at 1.
    pub intermediate_edge_halves: u64,
    /// (m_e + intermediate) / (m_v + |V″|), exact.
    pub final_density: DensityValue,
    /// Coreness array with every legit vertex relabeled to
    /// `max_density_core`, so membership is `coreness >= max_density_core`.
    pub coreness: Vec<u32>,
    pub final_vertices: u64,
}

impl AugmentResult {
    pub fn members(&self, decomp_core: u32) -> Vec<u32> {
        (0..self.coreness.len() as u32)
            .filter(|&v| self.coreness[v as usize] >= decomp_core)
            .collect()
    }
}

/// Vertices whose post-decomposition degree lies strictly between the
/// densest core's density and its core value.
pub fn find_eligible(graph: &Graph, decomp: &CoreDecomposition, workers: usize) -> Vec<u32> {
    let n = graph.num_vertices();
    let ranges = split_ranges(n, workers.max(1));
    let lists: Vec<Vec<u32>> = run_workers(workers.max(1), |w| {
        ranges[w]
            .clone()
            .map(|v| v as u32)
            .filter(|&v| {
                let deg = decomp.coreness[v as usize] as u64;
                deg * decomp.m_v > decomp.m_e && deg < decomp.max_density_core as u64
            })
            .collect()
    });
    lists.into_iter().flatten().collect()
}

/// Keeps the eligible vertices whose core-incident edge weight (half-units:
/// core neighbors at 2, a retained self-loop at 1) strictly exceeds the
/// core's density. Returns the sorted accepted list and the summed weight.
pub fn filter_legit(
    graph: &Graph,
    decomp: &CoreDecomposition,
    eligible: &[u32],
    workers: usize,
) -> (Vec<u32>, u64) {
    let workers = workers.max(1);
    let ranges = split_ranges(eligible.len(), workers);
    let parts: Vec<(Vec<u32>, u64)> = run_workers(workers, |w| {
        let mut accepted = Vec::new();
        let mut halves_sum = 0u64;
        for &v in &eligible[ranges[w].clone()] {
            let mut halves = 0u64;
            for &u in graph.neighbors(v) {
                if u == v {
                    halves += 1;
                } else if decomp.coreness[u as usize] >= decomp.max_density_core {
                    halves += 2;
                }
            }
            // legits > max_density as rationals: halves/2 > m_e/m_v
            if halves * decomp.m_v > 2 * decomp.m_e {
                accepted.push(v);
                halves_sum += halves;
            }
        }
        (accepted, halves_sum)
    });
    let mut legit = Vec::new();
    let mut total = 0u64;
    for (list, sum) in parts {
        legit.extend(list);
        total += sum;
    }
    (legit, total)
}

/// Unordered adjacent pairs within the legit list, via the pairwise scan
/// with sorted-adjacency membership tests.
pub fn cross_edges(graph: &Graph, legit: &[u32], workers: usize) -> u64 {
    let workers = workers.max(1);
    let ranges = split_ranges(legit.len(), workers);
    run_workers(workers, |w| {
        let mut count = 0u64;
        for i in ranges[w].clone() {
            let v = legit[i];
            for &u in &legit[i + 1..] {
                if graph.has_edge(v, u) {
                    count += 1;
                }
            }
        }
        count
    })
    .into_iter()
    .sum()
}

pub fn augment(graph: &Graph, decomp: &CoreDecomposition, workers: usize) -> AugmentResult {
    let eligible = find_eligible(graph, decomp, workers);
    let (legit, core_incident_halves) = filter_legit(graph, decomp, &eligible, workers);
    let cross = cross_edges(graph, &legit, workers);

    let mut coreness = decomp.coreness.clone();
    for &v in &legit {
        coreness[v as usize] = decomp.max_density_core;
    }

    let intermediate_edge_halves = core_incident_halves + 2 * cross;
    let final_vertices = decomp.m_v + legit.len() as u64;
    let final_density =
        DensityValue::from_half_edges(2 * decomp.m_e + intermediate_edge_halves, final_vertices)
            .expect("densest core is never empty");

    AugmentResult {
        eligible_count: eligible.len() as u64,
        legit_vertices: legit,
        intermediate_edge_halves,
        final_density,
        coreness,
        final_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coredec::{decompose, tests::fixture_f};
    use crate::graph::Graph;

    #[test]
    fn gain_formula_examples() {
        let g = density_gain(&GainTerms { n: 6, e: 15, e_tilde: 3.0 });
        assert!((g - 3.0 / 42.0).abs() < 1e-12);
        assert!((2.5 + g - 18.0 / 7.0).abs() < 1e-12);
        assert_eq!(density_gain(&GainTerms { n: 4, e: 6, e_tilde: 1.5 }), 0.0);
        assert!(density_gain(&GainTerms { n: 5, e: 10, e_tilde: 1.0 }) < 0.0);
    }

    #[test]
    fn k4_has_no_eligible_vertices() {
        let g = Graph::from_indexed_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            false,
        )
        .unwrap();
        let d = decompose(&g, 1).unwrap();
        assert!(find_eligible(&g, &d, 1).is_empty());
        let r = augment(&g, &d, 1);
        assert_eq!(r.final_density.value, 1.5);
        assert_eq!(r.eligible_count, 0);
        assert!(r.legit_vertices.is_empty());
    }

    #[test]
    fn star_has_no_eligible_vertices() {
        let g = Graph::from_indexed_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], false).unwrap();
        let d = decompose(&g, 1).unwrap();
        assert!(find_eligible(&g, &d, 1).is_empty());
    }

    #[test]
    fn fixture_f_full_trace() {
        let g = fixture_f();
        let d = decompose(&g, 1).unwrap();
        let eligible = find_eligible(&g, &d, 1);
        assert_eq!(eligible.len(), 41);
        assert!(eligible.contains(&6));
        let (legit, halves) = filter_legit(&g, &d, &eligible, 1);
        assert_eq!(legit, vec![6]);
        assert_eq!(halves, 6); // 3 core neighbors
        assert_eq!(cross_edges(&g, &legit, 1), 0);
        let r = augment(&g, &d, 1);
        assert_eq!((r.final_density.edges, r.final_density.vertices), (18, 7));
        assert_eq!(r.eligible_count, 41);
        assert_eq!(r.final_vertices, 7);
        let members = r.members(d.max_density_core);
        assert_eq!(members, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(members.len() as u64, r.final_vertices);
    }

    #[test]
    fn self_loop_half_rule() {
        // Core = K4 on {0..4}; candidate 4 has 2 core neighbors plus a loop.
        // With the core's density forced to 2.4 by construction we can't use
        // a real decomposition, so exercise filter_legit arithmetic directly:
        // halves = 5 and 5 * m_v > 2 * m_e must hold for (m_e, m_v) = (12, 5).
        let g = Graph::from_labeled_edges(
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (4, 4)],
            true,
        )
        .unwrap();
        let d = decompose(&g, 1).unwrap();
        // whole graph is the densest recorded core here; craft a synthetic
        // decomposition window that leaves vertex 4 outside
        let mut synth = d.clone();
        synth.max_density_core = 3;
        synth.m_v = 5;
        synth.m_e = 12;
        for v in 0..4 {
            synth.coreness[v] = 3;
        }
        synth.coreness[4] = 2;
        let eligible = vec![4u32];
        let (legit, halves) = filter_legit(&g, &synth, &eligible, 1);
        assert_eq!(halves, 5); // 2 core neighbors (4 halves) + loop (1 half)
        assert_eq!(legit, vec![4]);
    }

    #[test]
    fn cross_edges_matches_recount() {
        let g = fixture_f();
        let legit: Vec<u32> = vec![0, 2, 4, 6, 30];
        let mut expected = 0u64;
        for (i, &v) in legit.iter().enumerate() {
            for &u in &legit[i + 1..] {
                if g.neighbors(v).contains(&u) {
                    expected += 1;
                }
            }
        }
        for workers in [1, 2, 8] {
            assert_eq!(cross_edges(&g, &legit, workers), expected);
        }
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let g = fixture_f();
        let d = decompose(&g, 1).unwrap();
        let base = augment(&g, &d, 1);
        for workers in [2, 8] {
            assert_eq!(augment(&g, &d, workers), base);
        }
    }

    #[test]
    fn single_vertex_gain_consistency() {
        let g = fixture_f();
        let d = decompose(&g, 1).unwrap();
        let r = augment(&g, &d, 1);
        let gain = density_gain(&GainTerms { n: d.m_v, e: d.m_e, e_tilde: 3.0 });
        assert!((r.final_density.value - (d.max_density.value + gain)).abs() < 1e-12);
    }
}
