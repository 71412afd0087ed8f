//! Dinic max-flow on integer capacities, with min-cut extraction from the
//! residual graph.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: u32,
    cap: i64,
    orig: i64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    adj: Vec<Vec<u32>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, arcs: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    /// Directed arc `from -> to` with the given capacity and a paired
    /// reverse arc of capacity `back_cap` (0 for a plain directed arc,
    /// equal capacity for an undirected edge).
    pub fn add_edge(&mut self, from: u32, to: u32, cap: i64, back_cap: i64) {
        assert!(cap >= 0 && back_cap >= 0, "negative capacity");
        let idx = self.arcs.len() as u32;
        self.arcs.push(Arc { to, cap, orig: cap });
        self.arcs.push(Arc { to: from, cap: back_cap, orig: back_cap });
        self.adj[from as usize].push(idx);
        self.adj[to as usize].push(idx + 1);
    }

    fn bfs_levels(&self, source: u32, sink: u32) -> Option<Vec<i32>> {
        let mut level = vec![-1i32; self.n];
        let mut queue = VecDeque::new();
        level[source as usize] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &ai in &self.adj[v as usize] {
                let arc = &self.arcs[ai as usize];
                if arc.cap > 0 && level[arc.to as usize] < 0 {
                    level[arc.to as usize] = level[v as usize] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        if level[sink as usize] >= 0 {
            Some(level)
        } else {
            None
        }
    }

    fn dfs_push(
        &mut self,
        v: u32,
        sink: u32,
        pushed: i64,
        level: &[i32],
        iter: &mut [usize],
    ) -> i64 {
        if v == sink {
            return pushed;
        }
        while iter[v as usize] < self.adj[v as usize].len() {
            let ai = self.adj[v as usize][iter[v as usize]] as usize;
            let (to, cap) = (self.arcs[ai].to, self.arcs[ai].cap);
            if cap > 0 && level[to as usize] == level[v as usize] + 1 {
                let d = self.dfs_push(to, sink, pushed.min(cap), level, iter);
                if d > 0 {
                    self.arcs[ai].cap -= d;
                    self.arcs[ai ^ 1].cap += d;
                    return d;
                }
            }
            iter[v as usize] += 1;
        }
        0
    }

    /// Exact maximum flow; mutates residual capacities in place.
    pub fn max_flow(&mut self, source: u32, sink: u32) -> i64 {
        assert_ne!(source, sink);
        let mut flow = 0i64;
        while let Some(level) = self.bfs_levels(source, sink) {
            let mut iter = vec![0usize; self.n];
            loop {
                let pushed = self.dfs_push(source, sink, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    /// Residual-reachable side of the min cut, after `max_flow` has run.
    pub fn min_cut_source_side(&self, source: u32) -> Vec<bool> {
        let mut side = vec![false; self.n];
        let mut queue = VecDeque::new();
        side[source as usize] = true;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &ai in &self.adj[v as usize] {
                let arc = &self.arcs[ai as usize];
                if arc.cap > 0 && !side[arc.to as usize] {
                    side[arc.to as usize] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        side
    }

    /// Capacity of the cut (side, complement) measured on original
    /// capacities. Every arc in `adj[v]` has tail `v`, so the cut sums the
    /// original capacity of arcs leaving the side.
    pub fn cut_capacity(&self, side: &[bool]) -> i64 {
        let mut cap = 0i64;
        for v in 0..self.n {
            if !side[v] {
                continue;
            }
            for &ai in &self.adj[v] {
                let arc = &self.arcs[ai as usize];
                if !side[arc.to as usize] {
                    cap += arc.orig;
                }
            }
        }
        cap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2);
        net.add_edge(0, 1, 5, 0);
        assert_eq!(net.max_flow(0, 1), 5);
    }

    #[test]
    fn two_disjoint_paths() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 2, 0);
        net.add_edge(1, 3, 2, 0);
        net.add_edge(0, 2, 3, 0);
        net.add_edge(2, 3, 3, 0);
        assert_eq!(net.max_flow(0, 3), 5);
    }

    #[test]
    fn disconnected_sink_zero_flow() {
        let mut net = FlowNetwork::new(3);
        net.add_edge(0, 1, 4, 0);
        assert_eq!(net.max_flow(0, 2), 0);
    }

    #[test]
    fn flow_equals_cut_capacity() {
        let mut net = FlowNetwork::new(5);
        net.add_edge(0, 1, 3, 0);
        net.add_edge(0, 2, 2, 0);
        net.add_edge(1, 3, 1, 0);
        net.add_edge(2, 3, 4, 0);
        net.add_edge(1, 2, 1, 1);
        net.add_edge(3, 4, 4, 0);
        let flow = net.max_flow(0, 4);
        let side = net.min_cut_source_side(0);
        assert!(side[0]);
        assert!(!side[4]);
        assert_eq!(flow, net.cut_capacity(&side));
    }
}
