//! Incremental spanning tree: at most `k` arcs outside `T0`. The budget row
//! is priced by a multiplier `λ`; the best `λ` sits at a breakpoint where the
//! arc order of a new arc crosses that of a tree arc.

use serde::Serialize;

use super::{check_undirected, kruskal, kruskal_order, tied};
use crate::combinatorics::UnionFind;
use crate::model::Membership;
use crate::{Error, Network, Result, SpanningTree};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSubset {
    pub nodes: Vec<usize>,
    pub weight: f64,
}

/// Dual solution of the spanning-tree LP with priced new arcs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MstLagrangianDual {
    pub lambda: f64,
    pub w: f64,
    /// Positive subset weights only.
    pub y: Vec<WeightedSubset>,
}

impl MstLagrangianDual {
    /// `(n-1) w - Σ (|S|-1) y_S - λK`.
    pub fn objective(&self, n: usize, k: usize) -> f64 {
        let packed: f64 = self.y.iter().map(|s| (s.nodes.len() as f64 - 1.0) * s.weight).sum();
        (n as f64 - 1.0) * self.w - packed - self.lambda * k as f64
    }

    /// Largest violation of `w - Σ_{S ∋ i,j} y_S <= c_ij (+λ off T0)` and of
    /// the sign constraints.
    pub fn max_violation(&self, net: &Network, t0: &SpanningTree, cost: &[f64]) -> f64 {
        let member = Membership::new(net.num_arcs(), &t0.arcs);
        let mut inside = vec![vec![false; net.num_nodes()]; self.y.len()];
        for (s, row) in self.y.iter().zip(&mut inside) {
            for &v in &s.nodes {
                row[v] = true;
            }
        }
        let mut worst = (-self.w).max(-self.lambda);
        for s in &self.y {
            worst = worst.max(-s.weight);
        }
        for (a, arc) in net.arcs.iter().enumerate() {
            if arc.tail == arc.head {
                continue;
            }
            let packed: f64 = self
                .y
                .iter()
                .zip(&inside)
                .filter(|(_, row)| row[arc.tail] && row[arc.head])
                .map(|(s, _)| s.weight)
                .sum();
            let price = if member.contains(a) { 0.0 } else { self.lambda };
            worst = worst.max(self.w - packed - cost[a] - price);
        }
        worst
    }
}

fn priced(cost: &[f64], member: &Membership, lambda: f64) -> Vec<f64> {
    cost.iter()
        .enumerate()
        .map(|(a, &c)| if member.contains(a) { c } else { c + lambda })
        .collect()
}

/// Kruskal order at `λ`, ties broken toward tree arcs (`favor_tree`) or
/// toward new arcs.
fn order_at(keys: &[f64], member: &Membership, favor_tree: bool) -> Vec<usize> {
    kruskal_order(keys, |a| u8::from(member.contains(a) != favor_tree))
}

fn new_arcs(tree: &[usize], member: &Membership) -> usize {
    tree.iter().filter(|&&a| !member.contains(a)).count()
}

fn setup(net: &Network, t0: &SpanningTree, k: usize) -> Result<(Membership, usize)> {
    check_undirected(net)?;
    t0.check(net)?;
    Ok((Membership::new(net.num_arcs(), &t0.arcs), k.min(net.num_nodes().saturating_sub(1))))
}

/// `L(λ) = min_T c(T) + λ |T \ T0| - λK`.
pub fn evaluate_lagrangian(net: &Network, t0: &SpanningTree, k: usize, cost: &[f64], lambda: f64) -> Result<f64> {
    let (member, k) = setup(net, t0, k)?;
    let keys = priced(cost, &member, lambda);
    let tree = kruskal(net, &order_at(&keys, &member, true)).ok_or(Error::Disconnected)?;
    Ok(tree.iter().map(|&a| keys[a]).sum::<f64>() - lambda * k as f64)
}

/// Dual of the spanning-tree LP read off a Kruskal run: every component
/// formed along the way is weighted by how long it survives.
fn kruskal_dual(net: &Network, order: &[usize], keys: &[f64], lambda: f64) -> MstLagrangianDual {
    let n = net.num_nodes();
    let mut uf = UnionFind::new(n);
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut born = vec![f64::NEG_INFINITY; n];
    let mut y = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &a in order {
        let (ra, rb) = (uf.find(net.arcs[a].tail), uf.find(net.arcs[a].head));
        if ra == rb {
            continue;
        }
        let c = keys[a];
        for r in [ra, rb] {
            if members[r].len() > 1 {
                y.push(WeightedSubset {
                    nodes: members[r].clone(),
                    weight: (c - born[r]).max(0.0),
                });
            }
        }
        uf.union(ra, rb);
        let root = uf.find(ra);
        let mut merged = std::mem::take(&mut members[ra]);
        merged.append(&mut members[rb]);
        merged.sort_unstable();
        members[root] = merged;
        born[root] = c;
        last = c;
    }
    let w = if n > 1 { last.max(0.0) } else { 0.0 };
    if n > 1 {
        let root = uf.find(0);
        y.push(WeightedSubset {
            nodes: members[root].clone(),
            weight: w - last,
        });
    }
    y.retain(|s| s.weight > 0.0);
    MstLagrangianDual { lambda, w, y }
}

/// `max_{λ >= 0} L(λ)`, the maximizing `λ`, and a dual certificate at it.
pub fn maximize_lagrangian(
    net: &Network,
    t0: &SpanningTree,
    k: usize,
    cost: &[f64],
) -> Result<(f64, f64, MstLagrangianDual)> {
    let (member, k) = setup(net, t0, k)?;
    let (lambda, tree, keys, order) = best_multiplier(net, &member, k, cost)?;
    let value = tree.iter().map(|&a| keys[a]).sum::<f64>() - lambda * k as f64;
    Ok((value, lambda, kruskal_dual(net, &order, &keys, lambda)))
}

type Multiplier = (f64, Vec<usize>, Vec<f64>, Vec<usize>);

/// Smallest breakpoint at which the tree-favoring minimum tree uses at most
/// `k` new arcs; the new-arc count only falls as `λ` grows.
fn best_multiplier(net: &Network, member: &Membership, k: usize, cost: &[f64]) -> Result<Multiplier> {
    let at = |lambda: f64| -> Result<Multiplier> {
        let keys = priced(cost, member, lambda);
        let order = order_at(&keys, member, true);
        let tree = kruskal(net, &order).ok_or(Error::Disconnected)?;
        Ok((lambda, tree, keys, order))
    };
    let zero = at(0.0)?;
    if new_arcs(&zero.1, member) <= k {
        return Ok(zero);
    }
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..net.num_arcs()).partition(|&a| member.contains(a));
    let mut breaks: Vec<f64> = inside
        .iter()
        .flat_map(|&e| outside.iter().map(move |&f| cost[e] - cost[f]))
        .filter(|&l| l > 0.0)
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| tied(*a, *b));
    // Past the last breakpoint every new arc is dearer than every tree arc,
    // so the search always ends on a breakpoint that meets the budget.
    if breaks.is_empty() {
        return Err(Error::NumericalFailure("no multiplier meets the new-arc budget".into()));
    }
    let (mut lo, mut hi) = (0, breaks.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if new_arcs(&at(breaks[mid])?.1, member) <= k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    at(breaks[lo])
}

/// Arcs of the tree path between `u` and `v`.
fn tree_path(net: &Network, tree: &[bool], u: usize, v: usize) -> Vec<usize> {
    let n = net.num_nodes();
    let mut pred = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for (a, arc) in net.arcs.iter().enumerate() {
            if !tree[a] || (arc.tail != x && arc.head != x) {
                continue;
            }
            let y = net.other_end(a, x);
            if !seen[y] {
                seen[y] = true;
                pred[y] = a;
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = v;
    while x != u {
        path.push(pred[x]);
        x = net.other_end(pred[x], x);
    }
    path
}

/// Walks from `low` toward `high` by single exchanges that keep the tree
/// optimal until exactly `k` arcs lie outside `T0`.
fn exchange_walk(net: &Network, member: &Membership, low: &[usize], high: &[usize], k: usize) -> Result<Vec<usize>> {
    let m = net.num_arcs();
    let mut cur = vec![false; m];
    for &a in low {
        cur[a] = true;
    }
    let mut target = vec![false; m];
    for &a in high {
        target[a] = true;
    }
    let mut count = new_arcs(low, member);
    while count < k {
        let f = (0..m)
            .filter(|&a| target[a] && !cur[a])
            .min_by_key(|&a| member.contains(a))
            .ok_or_else(|| Error::NumericalFailure("exchange walk reached its target early".into()))?;
        let mut uf = UnionFind::new(net.num_nodes());
        for a in (0..m).filter(|&a| target[a] && a != f) {
            uf.union(net.arcs[a].tail, net.arcs[a].head);
        }
        let e = tree_path(net, &cur, net.arcs[f].tail, net.arcs[f].head)
            .into_iter()
            .find(|&e| !target[e] && uf.find(net.arcs[e].tail) != uf.find(net.arcs[e].head))
            .ok_or_else(|| Error::NumericalFailure("no exchange arc".into()))?;
        cur[e] = false;
        cur[f] = true;
        count = count + usize::from(!member.contains(f)) - usize::from(!member.contains(e));
    }
    Ok((0..m).filter(|&a| cur[a]).collect())
}

/// Cheapest spanning tree with at most `k` arcs outside `t0`.
pub fn solve_incremental_mst(net: &Network, t0: &SpanningTree, k: usize, cost: &[f64]) -> Result<(f64, SpanningTree)> {
    let (member, k) = setup(net, t0, k)?;
    let (lambda, low, keys, _) = best_multiplier(net, &member, k, cost)?;
    let tree = if lambda == 0.0 || new_arcs(&low, &member) == k {
        low
    } else {
        let high = kruskal(net, &order_at(&keys, &member, false)).ok_or(Error::Disconnected)?;
        if new_arcs(&high, &member) < k {
            return Err(Error::NumericalFailure("multiplier is not a breakpoint".into()));
        }
        exchange_walk(net, &member, &low, &high, k)?
    };
    let tree = SpanningTree::new(tree);
    Ok((tree.cost(cost), tree))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Square a-b-c-d with tree arcs on three sides and two cheap chords.
    fn square() -> (Network, SpanningTree) {
        let mut net = Network::new(false);
        for (id, a, b, c) in [
            ("ab", "a", "b", 5.0),
            ("bc", "b", "c", 5.0),
            ("cd", "c", "d", 5.0),
            ("da", "d", "a", 1.0),
            ("ac", "a", "c", 1.0),
        ] {
            net.add_arc(id, a, b, c, 0.0);
        }
        let t0 = SpanningTree::from_ids(&net, &["ab", "bc", "cd"]).unwrap();
        (net, t0)
    }

    #[test]
    fn budget_limits_new_arcs() {
        let (net, t0) = square();
        let c = net.nominal_costs();
        assert_eq!(solve_incremental_mst(&net, &t0, 0, &c).unwrap().0, 15.0);
        assert_eq!(solve_incremental_mst(&net, &t0, 1, &c).unwrap().0, 11.0);
        assert_eq!(solve_incremental_mst(&net, &t0, 2, &c).unwrap().0, 7.0);
        assert_eq!(solve_incremental_mst(&net, &t0, 3, &c).unwrap().0, 7.0);
    }

    #[test]
    fn multiplier_and_dual() {
        let (net, t0) = square();
        let c = net.nominal_costs();
        let (v, lambda, dual) = maximize_lagrangian(&net, &t0, 1, &c).unwrap();
        assert_eq!(v, 11.0);
        assert_eq!(lambda, 4.0);
        assert!(dual.max_violation(&net, &t0, &c) < 1e-9);
        assert!((dual.objective(4, 1) - v).abs() < 1e-9);
        let (_, lambda, _) = maximize_lagrangian(&net, &t0, 3, &c).unwrap();
        assert_eq!(lambda, 0.0);
    }
}
