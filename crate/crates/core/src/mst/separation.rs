//! Most violated subtour constraint `x(E(S)) <= |S| - 1` by minimum cuts.
//!
//! With `d_i = x(δ(i))`, `2(|S| - x(E(S))) = Σ_{i∈S} (2 - d_i) + x(δ(S))`,
//! which is a cut function once node terms are attached to a source or a
//! sink. One cut per node `r` forced into `S` (nodes before `r` forced out)
//! covers every non-empty `S`.

use serde::Serialize;

use crate::maxflow::FlowGraph;
use crate::Network;

/// Violations at or below this count as satisfied.
pub const SEPARATION_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubtourCut {
    /// Sorted node set `S`.
    pub nodes: Vec<usize>,
    /// `x(E(S)) - (|S| - 1)`.
    pub violation: f64,
}

/// `x(E(S)) - (|S| - 1)` for the node set marked in `inside`.
pub(crate) fn subtour_violation(net: &Network, x: &[f64], inside: &[bool]) -> f64 {
    let size = inside.iter().filter(|b| **b).count() as f64;
    let packed: f64 = net
        .arcs
        .iter()
        .zip(x)
        .filter(|(a, _)| inside[a.tail] && inside[a.head])
        .map(|(_, v)| v)
        .sum();
    packed - (size - 1.0)
}

/// Most violated subtour constraint, or `None` if every violation is at most
/// [`SEPARATION_TOL`].
pub fn separate_subtour(net: &Network, x: &[f64]) -> Option<SubtourCut> {
    let n = net.num_nodes();
    if n < 2 {
        return None;
    }
    let mut degree = vec![0.0; n];
    for (a, &v) in net.arcs.iter().zip(x) {
        if a.tail != a.head {
            degree[a.tail] += v;
            degree[a.head] += v;
        }
    }
    let big = 2.0 * n as f64 + 2.0 * x.iter().sum::<f64>() + 1.0;
    let (source, sink) = (n, n + 1);
    let mut best: Option<SubtourCut> = None;
    for r in 0..n {
        let mut g = FlowGraph::new(n + 2);
        for (a, &v) in net.arcs.iter().zip(x) {
            if a.tail != a.head && v > 0.0 {
                g.add_edge(a.tail, a.head, v);
                g.add_edge(a.head, a.tail, v);
            }
        }
        for (i, d) in degree.iter().enumerate() {
            let b = 2.0 - d;
            if b > 0.0 {
                g.add_edge(i, sink, b);
            } else if b < 0.0 {
                g.add_edge(source, i, -b);
            }
        }
        g.add_edge(source, r, big);
        for i in 0..r {
            g.add_edge(i, sink, big);
        }
        g.max_flow(source, sink);
        let mut inside = g.source_side(source);
        inside.truncate(n);
        let violation = subtour_violation(net, x, &inside);
        if best.as_ref().is_none_or(|b| violation > b.violation) {
            best = Some(SubtourCut {
                nodes: (0..n).filter(|&i| inside[i]).collect(),
                violation,
            });
        }
    }
    best.filter(|b| b.violation > SEPARATION_TOL)
}
