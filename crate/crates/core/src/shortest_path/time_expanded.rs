//! Layered network in which layer `k` counts the arcs used outside the
//! initial path.

use serde::Serialize;

use crate::lp::{GeneralLp, LpBuilder, Relation, Sense};
use crate::model::Membership;
use crate::{Error, Network, Path, Result};

/// One arc of the layered network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayeredArc {
    pub tail: usize,
    pub head: usize,
    /// Original arc, or `None` for a waiting arc `(i_k, i_{k+1})`.
    pub original: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TimeExpandedNetwork {
    /// Nodes of the original network.
    pub base_nodes: usize,
    /// Number of layers minus one.
    pub k: usize,
    pub arcs: Vec<LayeredArc>,
    pub source: usize,
    pub sink: usize,
    topo: Vec<usize>,
}

impl TimeExpandedNetwork {
    /// Index of copy `i_k`.
    pub fn node(&self, i: usize, k: usize) -> usize {
        k * self.base_nodes + i
    }

    /// `(i, k)` for a layered node index.
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v % self.base_nodes, v / self.base_nodes)
    }

    pub fn num_nodes(&self) -> usize {
        self.base_nodes * (self.k + 1)
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Layered nodes in topological order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn arc_cost(&self, a: &LayeredArc, cost: &[f64]) -> f64 {
        a.original.map_or(0.0, |o| cost[o])
    }

    /// Shortest `s_0`-`t_K` distance and the layered arcs of one shortest
    /// path. Ties keep the first relaxation in topological order.
    pub fn shortest_path(&self, cost: &[f64]) -> Result<(f64, Vec<usize>)> {
        let nn = self.num_nodes();
        let mut out = vec![Vec::new(); nn];
        for (k, a) in self.arcs.iter().enumerate() {
            out[a.tail].push(k);
        }
        let mut dist = vec![f64::INFINITY; nn];
        let mut pred = vec![usize::MAX; nn];
        dist[self.source] = 0.0;
        for &u in &self.topo {
            if dist[u].is_infinite() {
                continue;
            }
            for &k in &out[u] {
                let a = &self.arcs[k];
                let cand = dist[u] + self.arc_cost(a, cost);
                if cand < dist[a.head] {
                    dist[a.head] = cand;
                    pred[a.head] = k;
                }
            }
        }
        if dist[self.sink].is_infinite() {
            return Err(Error::NoFeasiblePath);
        }
        let mut arcs = Vec::new();
        let mut v = self.sink;
        while v != self.source {
            let k = pred[v];
            arcs.push(k);
            v = self.arcs[k].tail;
        }
        arcs.reverse();
        Ok((dist[self.sink], arcs))
    }

    /// Original arcs along a layered path, waiting arcs dropped. The result
    /// is a walk that may revisit nodes.
    pub fn walk(&self, layered: &[usize]) -> Vec<usize> {
        layered.iter().filter_map(|&k| self.arcs[k].original).collect()
    }

    /// Shortest path as a linear program over arc flows
    /// (`min c'f`, one unit from `s_0` to `t_K`, `f >= 0`). Row `v` is the
    /// conservation row of layered node `v`.
    pub fn flow_lp(&self, cost: &[f64]) -> GeneralLp {
        let mut b = LpBuilder::new(Sense::Minimize);
        for a in &self.arcs {
            b.add_var(self.arc_cost(a, cost), 0.0, f64::INFINITY);
        }
        let mut rows = vec![Vec::new(); self.num_nodes()];
        for (k, a) in self.arcs.iter().enumerate() {
            rows[a.tail].push((k, 1.0));
            rows[a.head].push((k, -1.0));
        }
        for (v, terms) in rows.into_iter().enumerate() {
            let rhs = if v == self.source {
                1.0
            } else if v == self.sink {
                -1.0
            } else {
                0.0
            };
            b.add_row(terms, Relation::Eq, rhs);
        }
        b.build()
    }
}

/// Removes cycles from a walk: whenever the walk returns to a node, the
/// loop since its previous visit is dropped.
pub fn erase_loops(net: &Network, walk: &[usize]) -> Vec<usize> {
    let Some(&first) = walk.first() else {
        return Vec::new();
    };
    let mut nodes = vec![net.arcs[first].tail];
    let mut arcs: Vec<usize> = Vec::new();
    for &a in walk {
        let head = net.arcs[a].head;
        if let Some(pos) = nodes.iter().position(|&v| v == head) {
            nodes.truncate(pos + 1);
            arcs.truncate(pos);
        } else {
            nodes.push(head);
            arcs.push(a);
        }
    }
    arcs
}

/// Builds the layered network for initial path `p0` with `k` layers of new
/// arcs. `k` is clamped to `n - 1`.
pub fn build_time_expanded(net: &Network, p0: &Path, k: usize) -> Result<TimeExpandedNetwork> {
    if !net.directed {
        return Err(Error::Unsupported("layered networks need a directed graph".into()));
    }
    let s = p0.source(net).ok_or_else(|| Error::NotASimplePath("empty path".into()))?;
    let t = p0.sink(net).ok_or_else(|| Error::NotASimplePath("empty path".into()))?;
    p0.check(net, s, t)?;
    let n = net.num_nodes();
    let k = k.min(n.saturating_sub(1));
    let member = Membership::new(net.num_arcs(), &p0.arcs);
    let mut arcs = Vec::new();
    for layer in 0..=k {
        for (id, a) in net.arcs.iter().enumerate() {
            if member.contains(id) {
                arcs.push(LayeredArc {
                    tail: layer * n + a.tail,
                    head: layer * n + a.head,
                    original: Some(id),
                });
            } else if layer < k {
                arcs.push(LayeredArc {
                    tail: layer * n + a.tail,
                    head: (layer + 1) * n + a.head,
                    original: Some(id),
                });
            }
        }
        if layer < k {
            for i in 0..n {
                arcs.push(LayeredArc {
                    tail: layer * n + i,
                    head: (layer + 1) * n + i,
                    original: None,
                });
            }
        }
    }
    // Within a layer only the arcs of p0 appear, so ordering each layer by
    // position along p0 is topological.
    let mut position = vec![usize::MAX; n];
    for (pos, v) in p0.nodes(net).into_iter().enumerate() {
        position[v] = pos;
    }
    let mut in_layer: Vec<usize> = (0..n).collect();
    in_layer.sort_by_key(|&v| (position[v], v));
    let topo = (0..=k)
        .flat_map(|layer| in_layer.iter().map(move |&v| layer * n + v))
        .collect();
    Ok(TimeExpandedNetwork {
        base_nodes: n,
        k,
        arcs,
        source: s,
        sink: k * n + t,
        topo,
    })
}
