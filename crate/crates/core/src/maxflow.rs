//! Dinic max-flow on real capacities, with the source side of a minimum cut.

use std::collections::VecDeque;

const FLOW_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: f64,
}

#[derive(Debug, Clone)]
pub struct FlowGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowGraph {
    pub fn new(n: usize) -> Self {
        FlowGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Directed edge `u -> v`; returns its handle.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: f64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap });
        self.adj[u].push(id);
        self.edges.push(Edge { to: u, cap: 0.0 });
        self.adj[v].push(id + 1);
        id
    }

    /// Flow currently routed on edge `id`.
    pub fn flow_on(&self, id: usize) -> f64 {
        self.edges[id + 1].cap
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.n];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let Edge { to, cap } = self.edges[e];
                if cap > FLOW_EPS && level[to] == usize::MAX {
                    level[to] = level[u] + 1;
                    q.push_back(to);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn augment(&mut self, u: usize, t: usize, pushed: f64, level: &[usize], it: &mut [usize]) -> f64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let e = self.adj[u][it[u]];
            let Edge { to, cap } = self.edges[e];
            if cap > FLOW_EPS && level[to] == level[u] + 1 {
                let got = self.augment(to, t, pushed.min(cap), level, it);
                if got > FLOW_EPS {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            it[u] += 1;
        }
        0.0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        if s == t {
            return f64::INFINITY;
        }
        let mut total = 0.0;
        while let Some(level) = self.levels(s, t) {
            let mut it = vec![0; self.n];
            loop {
                let f = self.augment(s, t, f64::INFINITY, &level, &mut it);
                if f <= FLOW_EPS {
                    break;
                }
                if f.is_infinite() {
                    return f64::INFINITY;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual graph (call after `max_flow`).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let Edge { to, cap } = self.edges[e];
                if cap > FLOW_EPS && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

/// Max s-t flow in `net` ignoring the arcs flagged in `removed`.
pub fn network_max_flow(net: &crate::Network, s: usize, t: usize, removed: &[bool]) -> f64 {
    let mut g = FlowGraph::new(net.num_nodes());
    for (k, a) in net.arcs.iter().enumerate() {
        if removed.get(k).copied().unwrap_or(false) {
            continue;
        }
        g.add_edge(a.tail, a.head, a.capacity);
        if !net.directed {
            g.add_edge(a.head, a.tail, a.capacity);
        }
    }
    g.max_flow(s, t)
}
