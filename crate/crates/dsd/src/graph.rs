//! Undirected graph model with SNAP edge-list ingestion.
//!
//! The adjacency structure is a contiguous CSR built once at load time and
//! never mutated afterwards; algorithms keep their own mutable degree arrays
//! and mark vertices logically removed. External vertex IDs are remapped to
//! dense internal indices in first-appearance order.

use std::collections::HashMap;
use std::io::BufRead;

use serde::Serialize;

use crate::error::{DsdError, Result};

/// Exact edge/vertex density ρ = |E|/|V| kept as an integer pair plus the
/// real quotient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityValue {
    pub edges: u64,
    pub vertices: u64,
    pub value: f64,
}

impl DensityValue {
    pub fn new(edges: u64, vertices: u64) -> Result<Self> {
        if vertices == 0 {
            return Err(DsdError::EmptyGraph("density of an empty subgraph is undefined"));
        }
        Ok(DensityValue {
            edges,
            vertices,
            value: edges as f64 / vertices as f64,
        })
    }

    /// Builds the exact ratio `edge_halves / (2 * vertices)`. Half-unit edge
    /// counts appear when retained self-loops contribute 0.5 each; the stored
    /// integer pair is reduced so `value = edges / vertices` stays exact.
    pub fn from_half_edges(edge_halves: u64, vertices: u64) -> Result<Self> {
        if vertices == 0 {
            return Err(DsdError::EmptyGraph("density of an empty subgraph is undefined"));
        }
        let (num, den) = if edge_halves % 2 == 0 {
            (edge_halves / 2, vertices)
        } else {
            let g = gcd(edge_halves, 2 * vertices);
            (edge_halves / g, 2 * vertices / g)
        };
        Ok(DensityValue {
            edges: num,
            vertices: den,
            value: edge_halves as f64 / (2.0 * vertices as f64),
        })
    }

    /// Exact rational comparison, no floating point involved.
    pub fn rational_eq(&self, other: &DensityValue) -> bool {
        self.edges as u128 * other.vertices as u128 == other.edges as u128 * self.vertices as u128
    }

    pub fn rational_ge(&self, other: &DensityValue) -> bool {
        self.edges as u128 * other.vertices as u128 >= other.edges as u128 * self.vertices as u128
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// ρ = edges / vertices. Errors on an empty vertex set instead of returning 0.
pub fn density(edges: u64, vertices: u64) -> Result<DensityValue> {
    DensityValue::new(edges, vertices)
}

/// Immutable deduplicated undirected graph with dense vertex indices.
#[derive(Debug, Clone)]
pub struct Graph {
    num_vertices: usize,
    num_edges: u64,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    base_degree: Vec<u32>,
    labels: Vec<u64>,
    index_of: HashMap<u64, u32>,
    self_loops_retained: bool,
    self_loop: Vec<bool>,
    self_loop_count: u64,
    raw_line_count: u64,
}

impl Graph {
    /// Parses a SNAP plain-text edge list: '#'-prefixed comment lines are
    /// ignored, every other non-blank line must carry exactly two
    /// non-negative integer tokens. Duplicate edges (in either direction)
    /// collapse to one; self-loops are dropped unless `retain_self_loops`.
    pub fn parse_edge_list<R: BufRead>(reader: R, retain_self_loops: bool) -> Result<Graph> {
        let mut raw_edges: Vec<(u64, u64)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let lineno = idx as u64 + 1;
            let mut tokens = text.split_whitespace();
            let a = parse_token(tokens.next(), lineno)?;
            let b = parse_token(tokens.next(), lineno)?;
            if tokens.next().is_some() {
                return Err(DsdError::Parse {
                    line: lineno,
                    message: "expected exactly two tokens".into(),
                });
            }
            raw_edges.push((a, b));
        }
        Graph::from_labeled_edges(&raw_edges, retain_self_loops)
    }

    /// Builds a graph from (original-label, original-label) pairs. Labels are
    /// remapped to dense indices in first-appearance order.
    pub fn from_labeled_edges(raw_edges: &[(u64, u64)], retain_self_loops: bool) -> Result<Graph> {
        if raw_edges.is_empty() {
            return Err(DsdError::EmptyGraph("input contains no edges"));
        }
        let mut index_of: HashMap<u64, u32> = HashMap::new();
        let mut labels: Vec<u64> = Vec::new();
        let intern = |label: u64, index_of: &mut HashMap<u64, u32>, labels: &mut Vec<u64>| {
            *index_of.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as u32
            })
        };
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(raw_edges.len());
        for &(a, b) in raw_edges {
            let u = intern(a, &mut index_of, &mut labels);
            let v = intern(b, &mut index_of, &mut labels);
            edges.push((u, v));
        }
        Graph::assemble(labels, index_of, edges, raw_edges.len() as u64, retain_self_loops)
    }

    /// Builds a graph over the explicit vertex universe `0..n` (identity
    /// labels, so isolated vertices are representable).
    pub fn from_indexed_edges(n: usize, edges: &[(u32, u32)], retain_self_loops: bool) -> Result<Graph> {
        let labels: Vec<u64> = (0..n as u64).collect();
        let index_of: HashMap<u64, u32> = (0..n as u32).map(|i| (i as u64, i)).collect();
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(DsdError::Precondition(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
        }
        Graph::assemble(labels, index_of, edges.to_vec(), edges.len() as u64, retain_self_loops)
    }

    fn assemble(
        labels: Vec<u64>,
        index_of: HashMap<u64, u32>,
        edges: Vec<(u32, u32)>,
        raw_line_count: u64,
        retain_self_loops: bool,
    ) -> Result<Graph> {
        let n = labels.len();
        let mut directed: Vec<(u32, u32)> = Vec::with_capacity(edges.len() * 2);
        let mut loops: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                loops.push((u, u));
            } else {
                directed.push((u, v));
                directed.push((v, u));
            }
        }
        directed.sort_unstable();
        directed.dedup();
        loops.sort_unstable();
        loops.dedup();
        let self_loop_count = loops.len() as u64;

        let mut self_loop = vec![false; n];
        let mut num_edges = directed.len() as u64 / 2;
        if retain_self_loops {
            for &(u, _) in &loops {
                self_loop[u as usize] = true;
            }
            num_edges += self_loop_count;
            directed.extend(loops.iter().copied());
            directed.sort_unstable();
        }

        let mut base_degree = vec![0u32; n];
        for &(u, _) in &directed {
            base_degree[u as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        let mut acc = 0usize;
        for v in 0..n {
            acc += base_degree[v] as usize;
            offsets.push(acc);
        }
        let targets: Vec<u32> = directed.iter().map(|&(_, v)| v).collect();

        Ok(Graph {
            num_vertices: n,
            num_edges,
            offsets,
            targets,
            base_degree,
            labels,
            index_of,
            self_loops_retained: retain_self_loops,
            self_loop,
            self_loop_count,
            raw_line_count,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> u64 {
        self.num_edges
    }

    pub fn raw_line_count(&self) -> u64 {
        self.raw_line_count
    }

    pub fn self_loops_retained(&self) -> bool {
        self.self_loops_retained
    }

    /// Distinct self-loop edges seen in the input, whether retained or dropped.
    pub fn self_loop_count(&self) -> u64 {
        self.self_loop_count
    }

    pub fn has_self_loop(&self, v: u32) -> bool {
        self.self_loops_retained && self.self_loop[v as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.base_degree[v as usize]
    }

    pub fn base_degrees(&self) -> &[u32] {
        &self.base_degree
    }

    pub fn max_degree(&self) -> u32 {
        self.base_degree.iter().copied().max().unwrap_or(0)
    }

    /// Sorted, duplicate-free neighbor list. A retained self-loop shows up as
    /// the vertex itself, once.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: u32) -> u64 {
        self.labels[v as usize]
    }

    pub fn index_of_label(&self, label: u64) -> Option<u32> {
        self.index_of.get(&label).copied()
    }

    pub fn density(&self) -> Result<DensityValue> {
        density(self.num_edges, self.num_vertices as u64)
    }

    /// Number of edges with both endpoints satisfying the predicate; each
    /// undirected edge counted once, a retained loop counted once.
    pub fn induced_edge_count<P: Fn(u32) -> bool>(&self, members: P) -> u64 {
        let mut count = 0u64;
        for v in 0..self.num_vertices as u32 {
            if !members(v) {
                continue;
            }
            for &u in self.neighbors(v) {
                if (u > v && members(u)) || u == v {
                    count += 1;
                }
            }
        }
        count
    }

    /// Same count restricted to proper edges (self-loops ignored).
    pub fn induced_edge_count_no_loops<P: Fn(u32) -> bool>(&self, members: P) -> u64 {
        let mut count = 0u64;
        for v in 0..self.num_vertices as u32 {
            if !members(v) {
                continue;
            }
            for &u in self.neighbors(v) {
                if u > v && members(u) {
                    count += 1;
                }
            }
        }
        count
    }
}

fn parse_token(token: Option<&str>, line: u64) -> Result<u64> {
    match token {
        None => Err(DsdError::Parse {
            line,
            message: "expected two tokens, found fewer".into(),
        }),
        Some(t) => t.parse::<u64>().map_err(|_| DsdError::Parse {
            line,
            message: format!("non-integer token '{t}'"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(text: &str, retain: bool) -> Result<Graph> {
        Graph::parse_edge_list(Cursor::new(text), retain)
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse("0 1\n1 0\n1 2\n", false).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.raw_line_count(), 3);
    }

    #[test]
    fn self_loops_dropped_by_default() {
        let g = parse("5 5\n5 6\n", false).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        let five = g.index_of_label(5).unwrap();
        assert_eq!(g.degree(five), 1);
        assert_eq!(g.self_loop_count(), 1);
    }

    #[test]
    fn self_loop_retention() {
        let g = parse("5 5\n5 6\n", true).unwrap();
        assert_eq!(g.num_edges(), 2);
        let five = g.index_of_label(5).unwrap();
        assert_eq!(g.degree(five), 2);
        assert!(g.has_self_loop(five));
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let g = parse("# header\n\n0 1\n# trailer\n2 3\n", false).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.raw_line_count(), 2);
    }

    #[test]
    fn malformed_lines_error_with_line_number() {
        match parse("0 1\n0 x\n", false) {
            Err(DsdError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("0 1\n3\n", false) {
            Err(DsdError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("0 1 2\n", false) {
            Err(DsdError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(parse("# nothing\n", false), Err(DsdError::EmptyGraph(_))));
    }

    #[test]
    fn labels_remap_in_first_appearance_order() {
        let g = parse("100 7\n7 42\n", false).unwrap();
        assert_eq!(g.label(0), 100);
        assert_eq!(g.label(1), 7);
        assert_eq!(g.label(2), 42);
        assert_eq!(g.index_of_label(42), Some(2));
    }

    #[test]
    fn degree_sum_identity_and_symmetry() {
        let g = parse("0 1\n1 2\n2 0\n2 3\n", false).unwrap();
        let sum: u64 = (0..g.num_vertices() as u32).map(|v| g.degree(v) as u64).sum();
        assert_eq!(sum, 2 * g.num_edges());
        for v in 0..g.num_vertices() as u32 {
            for &u in g.neighbors(v) {
                assert!(g.has_edge(u, v), "missing back edge {u}->{v}");
            }
        }
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(6, 4).unwrap().value, 1.5);
        assert_eq!(density(15, 6).unwrap().value, 2.5);
        let d = density(28_980, 5_242).unwrap();
        assert!((d.value - 5.5284).abs() < 1e-3);
        assert!(matches!(density(3, 0), Err(DsdError::EmptyGraph(_))));
    }

    #[test]
    fn half_edge_density_reduces() {
        let d = DensityValue::from_half_edges(36, 7).unwrap();
        assert_eq!((d.edges, d.vertices), (18, 7));
        let odd = DensityValue::from_half_edges(5, 2).unwrap();
        assert_eq!((odd.edges, odd.vertices), (5, 4));
        assert_eq!(odd.value, 1.25);
    }

    #[test]
    fn induced_counts_on_k4() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = Graph::from_indexed_edges(4, &edges, false).unwrap();
        assert_eq!(g.induced_edge_count(|_| true), 6);
        assert_eq!(g.induced_edge_count(|v| v < 3), 3);
    }
}
