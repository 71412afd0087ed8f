//! Shared test oracles, deliberately independent of the library's
//! implementations: sequential bucket-queue core decomposition, naive
//! augmenting-path max flow, seeded random graph generation, and the K6
//! augmentation fixture.

#![allow(dead_code)]

use std::collections::VecDeque;

use dsd::graph::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sequential bucket-based core decomposition over plain adjacency lists.
pub fn sequential_coreness(graph: &Graph) -> Vec<u32> {
    let n = graph.num_vertices();
    let mut degree: Vec<usize> = (0..n as u32)
        .map(|v| graph.neighbors(v).iter().filter(|&&u| u != v).count())
        .collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_degree + 1];
    for v in 0..n {
        buckets[degree[v]].push(v as u32);
    }
    let mut coreness = vec![0u32; n];
    let mut removed = vec![false; n];
    let mut current = 0usize;
    for _ in 0..n {
        while current > 0 && !buckets[current - 1].is_empty() {
            current -= 1;
        }
        let v = loop {
            while buckets[current].is_empty() {
                current += 1;
            }
            let v = buckets[current].pop().unwrap();
            if !removed[v as usize] && degree[v as usize] == current {
                break v;
            }
        };
        removed[v as usize] = true;
        coreness[v as usize] = current as u32;
        for &u in graph.neighbors(v) {
            let u = u as usize;
            if u != v as usize && !removed[u] && degree[u] > current {
                degree[u] -= 1;
                buckets[degree[u]].push(u as u32);
            }
        }
    }
    coreness
}

/// Naive Edmonds-Karp max flow over an explicit capacity matrix.
pub fn naive_max_flow(n: usize, arcs: &[(usize, usize, i64)], source: usize, sink: usize) -> i64 {
    let mut cap = vec![vec![0i64; n]; n];
    for &(u, v, c) in arcs {
        cap[u][v] += c;
    }
    let mut flow = 0i64;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for u in 0..n {
                if parent[u] == usize::MAX && cap[v][u] > 0 {
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while v != source {
            bottleneck = bottleneck.min(cap[parent[v]][v]);
            v = parent[v];
        }
        let mut v = sink;
        while v != source {
            cap[parent[v]][v] -= bottleneck;
            cap[v][parent[v]] += bottleneck;
            v = parent[v];
        }
        flow += bottleneck;
    }
}

/// Erdős–Rényi edge list over vertices 0..n with a seeded generator.
pub fn gnp_edges(seed: u64, n: u32, p: f64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn gnp_graph(seed: u64, n: u32, p: f64) -> Graph {
    Graph::from_indexed_edges(n as usize, &gnp_edges(seed, n, p), false).unwrap()
}

/// K6 (vertices 0..6), x = vertex 6 with 3 edges into the K6, and a
/// disjoint 3-regular bipartite component on vertices 7..47.
pub fn fixture_f() -> Graph {
    let mut edges = Vec::new();
    for i in 0..6u32 {
        for j in (i + 1)..6 {
            edges.push((i, j));
        }
    }
    edges.extend([(6, 0), (6, 1), (6, 2)]);
    for i in 0..20u32 {
        for j in 0..3u32 {
            edges.push((7 + i, 27 + (i + j) % 20));
        }
    }
    Graph::from_indexed_edges(47, &edges, false).unwrap()
}

/// Brute-force double-loop recount of induced edges, independent of
/// `Graph::induced_edge_count`.
pub fn recount_induced_edges(graph: &Graph, members: &[u32]) -> u64 {
    let mut count = 0u64;
    for (i, &v) in members.iter().enumerate() {
        for &u in &members[i + 1..] {
            if graph.neighbors(v).contains(&u) {
                count += 1;
            }
        }
    }
    count
}
