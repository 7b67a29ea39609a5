use serde::{Deserialize, Serialize};

use super::Network;
use crate::{Error, Result};

/// Ordered arc indices from source to sink.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub arcs: Vec<usize>,
}

impl Path {
    pub fn new(arcs: Vec<usize>) -> Self {
        Path { arcs }
    }

    pub fn from_ids(net: &Network, ids: &[&str]) -> Result<Self> {
        ids.iter()
            .map(|id| {
                net.arc_index(id)
                    .ok_or_else(|| Error::InvalidInstance(format!("unknown arc id {id:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Path::new)
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn cost(&self, costs: &[f64]) -> f64 {
        self.arcs.iter().map(|&a| costs[a]).sum()
    }

    pub fn source(&self, net: &Network) -> Option<usize> {
        self.arcs.first().map(|&a| net.arcs[a].tail)
    }

    pub fn sink(&self, net: &Network) -> Option<usize> {
        self.arcs.last().map(|&a| net.arcs[a].head)
    }

    pub fn ids(&self, net: &Network) -> Vec<String> {
        self.arcs.iter().map(|&a| net.arcs[a].id.clone()).collect()
    }

    /// Node sequence, source first.
    pub fn nodes(&self, net: &Network) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        if let Some(&first) = self.arcs.first() {
            out.push(net.arcs[first].tail);
        }
        out.extend(self.arcs.iter().map(|&a| net.arcs[a].head));
        out
    }

    /// Checks consecutive arcs, distinct nodes and the endpoints.
    pub fn check(&self, net: &Network, source: usize, sink: usize) -> Result<()> {
        if self.arcs.is_empty() {
            return Err(Error::NotASimplePath("empty path".into()));
        }
        if let Some(&bad) = self.arcs.iter().find(|&&a| a >= net.num_arcs()) {
            return Err(Error::NotASimplePath(format!("arc index {bad} out of range")));
        }
        for w in self.arcs.windows(2) {
            if net.arcs[w[0]].head != net.arcs[w[1]].tail {
                return Err(Error::NotASimplePath(format!(
                    "arcs {} and {} are not consecutive",
                    net.arcs[w[0]].id, net.arcs[w[1]].id
                )));
            }
        }
        let nodes = self.nodes(net);
        let mut seen = vec![false; net.num_nodes()];
        for &v in &nodes {
            if seen[v] {
                return Err(Error::NotASimplePath(format!("node {} repeats", net.nodes[v])));
            }
            seen[v] = true;
        }
        if nodes[0] != source || *nodes.last().unwrap() != sink {
            return Err(Error::NotASimplePath("wrong endpoints".into()));
        }
        Ok(())
    }
}

/// Sorted arc indices of a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpanningTree {
    pub arcs: Vec<usize>,
}

impl SpanningTree {
    pub fn new(mut arcs: Vec<usize>) -> Self {
        arcs.sort_unstable();
        SpanningTree { arcs }
    }

    pub fn from_ids(net: &Network, ids: &[&str]) -> Result<Self> {
        Path::from_ids(net, ids).map(|p| SpanningTree::new(p.arcs))
    }

    pub fn cost(&self, costs: &[f64]) -> f64 {
        self.arcs.iter().map(|&a| costs[a]).sum()
    }

    pub fn ids(&self, net: &Network) -> Vec<String> {
        self.arcs.iter().map(|&a| net.arcs[a].id.clone()).collect()
    }

    /// `n - 1` distinct arcs forming no cycle.
    pub fn check(&self, net: &Network) -> Result<()> {
        let n = net.num_nodes();
        if self.arcs.len() + 1 != n {
            return Err(Error::InvalidInstance(format!(
                "tree has {} arcs, expected {}",
                self.arcs.len(),
                n.saturating_sub(1)
            )));
        }
        let mut uf = crate::combinatorics::UnionFind::new(n);
        for &a in &self.arcs {
            if a >= net.num_arcs() {
                return Err(Error::InvalidInstance(format!("arc index {a} out of range")));
            }
            if !uf.union(net.arcs[a].tail, net.arcs[a].head) {
                return Err(Error::InvalidInstance("tree contains a cycle".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flow {
    pub values: Vec<f64>,
}

impl Flow {
    pub fn cost(&self, costs: &[f64]) -> f64 {
        self.values.iter().zip(costs).map(|(x, c)| x * c).sum()
    }

    /// Capacity bounds and conservation `out - in = b` at every node.
    pub fn check(&self, net: &Network, tol: f64) -> Result<()> {
        if self.values.len() != net.num_arcs() {
            return Err(Error::InfeasibleInitialPoint("flow length mismatch".into()));
        }
        let mut balance = vec![0.0; net.num_nodes()];
        for (a, &x) in net.arcs.iter().zip(&self.values) {
            if x < -tol || x > a.capacity + tol {
                return Err(Error::InfeasibleInitialPoint(format!(
                    "flow {x} on arc {} violates [0, {}]",
                    a.id, a.capacity
                )));
            }
            balance[a.tail] += x;
            balance[a.head] -= x;
        }
        for (i, (got, want)) in balance.iter().zip(&net.supplies).enumerate() {
            if (got - want).abs() > tol * (1.0 + want.abs()) {
                return Err(Error::InfeasibleInitialPoint(format!(
                    "conservation fails at node {}: {got} != {want}",
                    net.nodes[i]
                )));
            }
        }
        Ok(())
    }
}
