//! Minimum spanning trees: nominal, incremental through a Lagrangian
//! multiplier on the new-arc budget, and adversarial under both uncertainty
//! sets.

mod adversarial;
mod lagrangian;
mod separation;

pub use adversarial::{solve_adversarial_mst_u1, solve_adversarial_mst_u2, MstAdversarialSolution};
pub use lagrangian::{evaluate_lagrangian, maximize_lagrangian, solve_incremental_mst, MstLagrangianDual, WeightedSubset};
pub use separation::{separate_subtour, SubtourCut, SEPARATION_TOL};

use crate::combinatorics::UnionFind;
use crate::{Error, Network, Result, SpanningTree};

/// Relative tolerance under which two sort keys count as tied.
const TIE_TOL: f64 = 1e-12;

pub(crate) fn check_undirected(net: &Network) -> Result<()> {
    if net.directed {
        return Err(Error::Unsupported("spanning trees need an undirected graph".into()));
    }
    Ok(())
}

pub(crate) fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * (1.0 + a.abs().max(b.abs()))
}

/// Arc order for Kruskal: ascending key, and within a run of tied keys by
/// `rank`, then index.
pub(crate) fn kruskal_order<R: Fn(usize) -> u8>(keys: &[f64], rank: R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
    let mut out = Vec::with_capacity(order.len());
    let mut start = 0;
    while start < order.len() {
        let head = keys[order[start]];
        let mut end = start + 1;
        while end < order.len() && tied(head, keys[order[end]]) {
            end += 1;
        }
        let mut group = order[start..end].to_vec();
        group.sort_by_key(|&a| (rank(a), a));
        out.extend(group);
        start = end;
    }
    out
}

/// Kruskal over a fixed arc order. `None` if the graph is disconnected.
pub(crate) fn kruskal(net: &Network, order: &[usize]) -> Option<Vec<usize>> {
    let n = net.num_nodes();
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for &a in order {
        if tree.len() + 1 >= n {
            break;
        }
        if uf.union(net.arcs[a].tail, net.arcs[a].head) {
            tree.push(a);
        }
    }
    (tree.len() + 1 >= n).then_some(tree)
}

/// Minimum spanning tree and its cost; ties keep lower arc indices.
pub fn solve_mst(net: &Network, cost: &[f64]) -> Result<(SpanningTree, f64)> {
    check_undirected(net)?;
    let order = kruskal_order(cost, |_| 0);
    let tree = SpanningTree::new(kruskal(net, &order).ok_or(Error::Disconnected)?);
    let value = tree.cost(cost);
    Ok((tree, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Network {
        let mut net = Network::new(false);
        net.add_arc("ab", "a", "b", 1.0, 0.0);
        net.add_arc("bc", "b", "c", 2.0, 0.0);
        net.add_arc("ca", "c", "a", 3.0, 0.0);
        net
    }

    #[test]
    fn triangle_drops_heaviest() {
        let net = triangle();
        let (tree, cost) = solve_mst(&net, &net.nominal_costs()).unwrap();
        assert_eq!(cost, 3.0);
        assert_eq!(tree.ids(&net), vec!["ab", "bc"]);
    }

    #[test]
    fn path_graph_is_its_own_tree() {
        let mut net = Network::new(false);
        for (id, a, b, c) in [("ab", "a", "b", 4.0), ("bc", "b", "c", 1.5), ("cd", "c", "d", 2.0)] {
            net.add_arc(id, a, b, c, 0.0);
        }
        assert_eq!(solve_mst(&net, &net.nominal_costs()).unwrap().1, 7.5);
    }

    #[test]
    fn disconnected_graph() {
        let mut net = triangle();
        net.add_node("z");
        assert!(matches!(solve_mst(&net, &net.nominal_costs()), Err(Error::Disconnected)));
    }

    #[test]
    fn ties_are_grouped() {
        let keys = [1.0, 0.1 + 0.2, 0.3, 2.0];
        let order = kruskal_order(&keys, |a| if a == 2 { 0 } else { 1 });
        assert_eq!(order, vec![2, 1, 0, 3]);
    }
}
