//! Brute-force ground truth.
//!
//! Everything here is exhaustive and deliberately independent of the
//! solvers it checks: paths and trees are enumerated directly, shortest
//! paths use Bellman-Ford and minimum spanning trees use Prim.
//!
//! Worst cases over the budgeted box `{0 <= δ <= ĉ, Σδ <= Γ}` are computed
//! from its vertices ([`enumerate_u1_vertices`]) through the minimax form
//! described on [`oracle_adversarial_budgeted`].

use std::collections::{BTreeSet, VecDeque};

use crate::combinatorics::{check_cap, count_subsets_up_to, for_each_subset_up_to, UnionFind};
use crate::maxflow::network_max_flow;
use crate::model::Membership;
use crate::lp::{self, LpBuilder, Relation, Sense};
use crate::{DistanceMetric, Error, LpInstance, Network, Path, Result, SpanningTree};

pub const MAX_VERTEX_DIMENSION: usize = 20;
pub const DEFAULT_CAP: usize = 1_000_000;

const SUM_TOL: f64 = 1e-12;

/// Extreme points of `{δ : 0 <= δ <= ĉ, Σδ <= Γ}`: coordinates at their
/// upper bound on a set `F` with `ĉ(F) <= Γ`, plus at most one coordinate
/// carrying the leftover budget.
pub fn enumerate_u1_vertices(deviation: &[f64], gamma: f64) -> Result<Vec<Vec<f64>>> {
    let n = deviation.len();
    if n > MAX_VERTEX_DIMENSION {
        return Err(Error::EnumerationTooLarge {
            count: 1u128 << n,
            cap: 1u128 << MAX_VERTEX_DIMENSION,
        });
    }
    let support: Vec<usize> = (0..n).filter(|&j| deviation[j] > 0.0).collect();
    let slack = SUM_TOL * (1.0 + gamma.abs());
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << support.len()) {
        let chosen: Vec<usize> = (0..support.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| support[b])
            .collect();
        let used: f64 = chosen.iter().map(|&j| deviation[j]).sum();
        if used > gamma + slack {
            continue;
        }
        let mut delta = vec![0.0; n];
        for &j in &chosen {
            delta[j] = deviation[j];
        }
        out.insert(key(&delta));
        let rest = gamma - used;
        if rest > slack && rest.is_finite() {
            for &j in support.iter().filter(|j| !chosen.contains(j)) {
                if rest < deviation[j] - slack {
                    let mut d = delta.clone();
                    d[j] = rest;
                    out.insert(key(&d));
                }
            }
        }
    }
    Ok(out.into_iter().map(unkey).collect())
}

fn key(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

fn unkey(v: Vec<u64>) -> Vec<f64> {
    v.into_iter().map(f64::from_bits).collect()
}

/// Realised cost vectors `c̄ + δ` at every vertex of the U1 box.
pub fn u1_scenarios(nominal: &[f64], deviation: &[f64], gamma: f64) -> Result<Vec<Vec<f64>>> {
    Ok(enumerate_u1_vertices(deviation, gamma)?
        .into_iter()
        .map(|d| nominal.iter().zip(&d).map(|(c, x)| c + x).collect())
        .collect())
}

/// Realised cost vectors for every set of at most `gamma` raised coordinates.
pub fn u2_scenarios(nominal: &[f64], deviation: &[f64], gamma: usize, cap: usize) -> Result<Vec<Vec<f64>>> {
    check_cap(count_subsets_up_to(nominal.len(), gamma), cap as u128)?;
    let mut out = Vec::new();
    for_each_subset_up_to(nominal.len(), gamma, |s| {
        let mut c = nominal.to_vec();
        for &j in s {
            c[j] += deviation[j];
        }
        out.push(c);
    });
    Ok(out)
}

fn too_many(cap: usize) -> Error {
    Error::EnumerationTooLarge {
        count: cap as u128 + 1,
        cap: cap as u128,
    }
}

/// All simple directed `s`-`t` paths, by depth-first search.
pub fn enumerate_paths(net: &Network, s: usize, t: usize, cap: usize) -> Result<Vec<Path>> {
    fn dfs(
        net: &Network,
        out_arcs: &[Vec<usize>],
        u: usize,
        t: usize,
        on_path: &mut [bool],
        arcs: &mut Vec<usize>,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        if u == t {
            if out.len() == cap {
                return Err(too_many(cap));
            }
            out.push(Path::new(arcs.clone()));
            return Ok(());
        }
        for &a in &out_arcs[u] {
            let v = net.arcs[a].head;
            if on_path[v] {
                continue;
            }
            on_path[v] = true;
            arcs.push(a);
            dfs(net, out_arcs, v, t, on_path, arcs, out, cap)?;
            arcs.pop();
            on_path[v] = false;
        }
        Ok(())
    }
    let out_arcs = directed_out(net);
    let mut on_path = vec![false; net.num_nodes()];
    on_path[s] = true;
    let mut out = Vec::new();
    if s != t {
        dfs(net, &out_arcs, s, t, &mut on_path, &mut Vec::new(), &mut out, cap)?;
    }
    Ok(out)
}

/// Same set as [`enumerate_paths`], built breadth-first with an explicit queue.
pub fn enumerate_paths_queue(net: &Network, s: usize, t: usize, cap: usize) -> Result<Vec<Path>> {
    let out_arcs = directed_out(net);
    let mut out = Vec::new();
    let mut queue: VecDeque<(usize, Vec<usize>)> = VecDeque::from([(s, Vec::new())]);
    while let Some((u, arcs)) = queue.pop_front() {
        if u == t {
            if !arcs.is_empty() {
                if out.len() == cap {
                    return Err(too_many(cap));
                }
                out.push(Path::new(arcs));
            }
            continue;
        }
        let visited: Vec<usize> = std::iter::once(s)
            .chain(arcs.iter().map(|&a| net.arcs[a].head))
            .collect();
        for &a in &out_arcs[u] {
            let v = net.arcs[a].head;
            if !visited.contains(&v) {
                let mut next = arcs.clone();
                next.push(a);
                queue.push_back((v, next));
            }
        }
    }
    Ok(out)
}

fn directed_out(net: &Network) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); net.num_nodes()];
    for (k, a) in net.arcs.iter().enumerate() {
        out[a.tail].push(k);
    }
    out
}

/// All spanning trees of an undirected multigraph, by including or
/// excluding each edge in turn.
pub fn enumerate_spanning_trees(net: &Network, cap: usize) -> Result<Vec<SpanningTree>> {
    let n = net.num_nodes();
    let m = net.num_arcs();
    let ends: Vec<(usize, usize)> = net.arcs.iter().map(|a| (a.tail, a.head)).collect();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        out.push(SpanningTree::new(Vec::new()));
        return Ok(out);
    }

    fn can_span(n: usize, ends: &[(usize, usize)], chosen: &[usize], rest: std::ops::Range<usize>) -> bool {
        let mut uf = UnionFind::new(n);
        let mut comps = n;
        for e in chosen.iter().copied().chain(rest) {
            if uf.union(ends[e].0, ends[e].1) {
                comps -= 1;
            }
        }
        comps == 1
    }

    fn rec(
        n: usize,
        ends: &[(usize, usize)],
        i: usize,
        uf: &UnionFind,
        chosen: &mut Vec<usize>,
        out: &mut Vec<SpanningTree>,
        cap: usize,
    ) -> Result<()> {
        if chosen.len() == n - 1 {
            if out.len() == cap {
                return Err(too_many(cap));
            }
            out.push(SpanningTree::new(chosen.clone()));
            return Ok(());
        }
        if i == ends.len() || chosen.len() + (ends.len() - i) < n - 1 {
            return Ok(());
        }
        let (a, b) = ends[i];
        let mut with = uf.clone();
        if with.union(a, b) {
            chosen.push(i);
            rec(n, ends, i + 1, &with, chosen, out, cap)?;
            chosen.pop();
        }
        if can_span(n, ends, chosen, i + 1..ends.len()) {
            rec(n, ends, i + 1, uf, chosen, out, cap)?;
        }
        Ok(())
    }

    if can_span(n, &ends, &[], 0..m) {
        rec(n, &ends, 0, &UnionFind::new(n), &mut Vec::new(), &mut out, cap)?;
    }
    Ok(out)
}

fn set_cost(set: &[usize], cost: &[f64]) -> f64 {
    set.iter().map(|&e| cost[e]).sum()
}

/// Cost vectors the adversary may choose from.
#[derive(Debug, Clone, Copy)]
pub enum ScenarioSet<'a> {
    /// An explicit list of realised cost vectors.
    Listed(&'a [Vec<f64>]),
    /// `{c̄ + δ : 0 <= δ <= ĉ, Σδ <= Γ}`.
    Budgeted {
        nominal: &'a [f64],
        deviation: &'a [f64],
        gamma: f64,
    },
}

/// Cheapest solution within distance `k` of `initial` under `cost`.
/// Returns the value and the index of the chosen solution.
pub fn oracle_incremental(
    solutions: &[Vec<usize>],
    universe: usize,
    initial: &[usize],
    metric: DistanceMetric,
    k: usize,
    cost: &[f64],
) -> Option<(f64, usize)> {
    let member = Membership::new(universe, initial);
    let mut best: Option<(f64, usize)> = None;
    for (i, sol) in solutions.iter().enumerate() {
        if member.distance(metric, sol) > k {
            continue;
        }
        let c = set_cost(sol, cost);
        if best.is_none_or(|(b, _)| c < b) {
            best = Some((c, i));
        }
    }
    best
}

/// Worst incremental value of `initial` over the listed cost vectors.
/// Returns the value and the index of the worst one.
pub fn oracle_adversarial_listed(
    solutions: &[Vec<usize>],
    universe: usize,
    initial: &[usize],
    metric: DistanceMetric,
    k: usize,
    scenarios: &[Vec<f64>],
) -> Option<(f64, usize)> {
    let mut worst: Option<(f64, usize)> = None;
    for (j, c) in scenarios.iter().enumerate() {
        let (v, _) = oracle_incremental(solutions, universe, initial, metric, k, c)?;
        if worst.is_none_or(|(w, _)| v > w) {
            worst = Some((v, j));
        }
    }
    worst
}

/// Worst incremental value of `initial` over the budgeted box.
///
/// The incremental value is a minimum of linear functions of the cost, so
/// its maximum over the box can sit strictly inside the box (two unit
/// arcs and `Γ = 1` give `1/2` at `δ = (1/2, 1/2)` but `0` at every vertex).
/// Evaluating it at the vertices alone is therefore only a lower bound.
/// Instead, by the minimax theorem,
///
/// `max_δ min_y c(y) = min_{λ} max_{v vertex} Σ_y λ_y (c̄ + v)(y)`
///
/// over mixtures `λ` of the solutions in the ball, which is one LP with a
/// row per box vertex and a column per solution.
pub fn oracle_adversarial_budgeted(
    solutions: &[Vec<usize>],
    universe: usize,
    initial: &[usize],
    metric: DistanceMetric,
    k: usize,
    vertices: &[Vec<f64>],
    nominal: &[f64],
) -> Result<f64> {
    let member = Membership::new(universe, initial);
    let ball: Vec<&Vec<usize>> = solutions
        .iter()
        .filter(|s| member.distance(metric, s) <= k)
        .collect();
    if ball.is_empty() {
        return Err(Error::NoFeasiblePath);
    }
    let mut b = LpBuilder::new(Sense::Minimize);
    let t = b.add_var(1.0, -f64::INFINITY, f64::INFINITY);
    let lambda = b.add_vars(&vec![0.0; ball.len()], 0.0, f64::INFINITY);
    b.add_row((0..ball.len()).map(|i| (lambda + i, 1.0)).collect(), Relation::Eq, 1.0);
    for v in vertices {
        let mut terms = vec![(t, 1.0)];
        for (i, sol) in ball.iter().enumerate() {
            let c: f64 = sol.iter().map(|&e| nominal[e] + v[e]).sum();
            if c != 0.0 {
                terms.push((lambda + i, -c));
            }
        }
        b.add_row(terms, Relation::Ge, 0.0);
    }
    Ok(lp::solve(&b.build())?.into_optimal()?.objective)
}

/// Worst incremental value of `initial` over `set`.
pub fn oracle_adversarial(
    solutions: &[Vec<usize>],
    universe: usize,
    initial: &[usize],
    metric: DistanceMetric,
    k: usize,
    set: ScenarioSet,
) -> Result<f64> {
    match set {
        ScenarioSet::Listed(list) => oracle_adversarial_listed(solutions, universe, initial, metric, k, list)
            .map(|(v, _)| v)
            .ok_or(Error::NoFeasiblePath),
        ScenarioSet::Budgeted {
            nominal,
            deviation,
            gamma,
        } => {
            let vertices = enumerate_u1_vertices(deviation, gamma)?;
            oracle_adversarial_budgeted(solutions, universe, initial, metric, k, &vertices, nominal)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxResult {
    pub value: f64,
    /// Index of the best initial solution.
    pub initial: usize,
}

/// `min_x d(x) + max_c min_{y : dist(x, y) <= k} c(y)` by enumerating
/// every listed solution as `x` and as `y`. Ties keep the earliest `x`.
pub fn oracle_minimax(
    solutions: &[Vec<usize>],
    universe: usize,
    set: ScenarioSet,
    metric: DistanceMetric,
    k: usize,
    d: &[f64],
) -> Result<MinimaxResult> {
    let vertices = match set {
        ScenarioSet::Budgeted { deviation, gamma, .. } => enumerate_u1_vertices(deviation, gamma)?,
        ScenarioSet::Listed(_) => Vec::new(),
    };
    let mut best: Option<MinimaxResult> = None;
    for (i, x) in solutions.iter().enumerate() {
        let adv = match set {
            ScenarioSet::Budgeted { nominal, .. } => {
                oracle_adversarial_budgeted(solutions, universe, x, metric, k, &vertices, nominal)?
            }
            listed => oracle_adversarial(solutions, universe, x, metric, k, listed)?,
        };
        let value = set_cost(x, d) + adv;
        if best.as_ref().is_none_or(|b| value < b.value - 1e-12) {
            best = Some(MinimaxResult { value, initial: i });
        }
    }
    best.ok_or(Error::NoFeasiblePath)
}

/// Worst case over the U1 box for a continuous instance: the epigraph LP
/// `min t` s.t. `t >= (c̄ + v)'y` for every box vertex `v`, with `y` ranging
/// over the recourse polytope of `x`.
pub fn oracle_adversarial_lp_u1(inst: &LpInstance, x: &[f64], k: f64, gamma: f64) -> Result<f64> {
    let (m, n) = (inst.num_constraints(), inst.num_vars());
    let vertices = enumerate_u1_vertices(&inst.deviation, gamma)?;
    let mut b = LpBuilder::new(Sense::Minimize);
    let t = b.add_var(1.0, -f64::INFINITY, f64::INFINITY);
    let y = b.add_vars(&vec![0.0; n], 0.0, f64::INFINITY);
    let up = b.add_vars(&vec![0.0; n], 0.0, f64::INFINITY);
    let down = b.add_vars(&vec![0.0; n], 0.0, f64::INFINITY);
    for i in 0..m {
        b.add_row((0..n).map(|j| (y + j, inst.matrix[i][j])).collect(), Relation::Eq, inst.rhs[i]);
    }
    for j in 0..n {
        // y - x = up - down
        b.add_row(vec![(y + j, 1.0), (up + j, -1.0), (down + j, 1.0)], Relation::Eq, x[j]);
    }
    if k.is_finite() {
        b.add_row((0..n).flat_map(|j| [(up + j, 1.0), (down + j, 1.0)]).collect(), Relation::Le, k);
    }
    for v in &vertices {
        let mut terms = vec![(t, 1.0)];
        terms.extend((0..n).map(|j| (y + j, -(inst.nominal_cost[j] + v[j]))));
        b.add_row(terms, Relation::Ge, 0.0);
    }
    Ok(lp::solve(&b.build())?.into_optimal()?.objective)
}

/// Path arc lists, for feeding paths into the set-based oracles.
pub fn path_sets(paths: &[Path]) -> Vec<Vec<usize>> {
    paths.iter().map(|p| p.arcs.clone()).collect()
}

/// Tree arc lists, for feeding trees into the set-based oracles.
pub fn tree_sets(trees: &[SpanningTree]) -> Vec<Vec<usize>> {
    trees.iter().map(|t| t.arcs.clone()).collect()
}

/// Smallest lexicographic set of at most `gamma` arcs whose removal leaves
/// less than `k` units of `s`-`t` capacity, if one exists.
pub fn interdiction_oracle(net: &Network, s: usize, t: usize, k: f64, gamma: usize) -> Result<Option<Vec<usize>>> {
    let m = net.num_arcs();
    check_cap(count_subsets_up_to(m, gamma), DEFAULT_CAP as u128)?;
    let mut found = None;
    for_each_subset_up_to(m, gamma, |set| {
        if found.is_some() {
            return;
        }
        let mut removed = vec![false; m];
        for &a in set {
            removed[a] = true;
        }
        if network_max_flow(net, s, t, &removed) < k - 1e-9 {
            found = Some(set.to_vec());
        }
    });
    Ok(found)
}

/// Shortest `s`-`t` distance by Bellman-Ford, skipping removed arcs.
pub fn bellman_ford(net: &Network, s: usize, t: usize, cost: &[f64], removed: &[bool]) -> f64 {
    let n = net.num_nodes();
    let mut dist = vec![f64::INFINITY; n];
    dist[s] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for (k, a) in net.arcs.iter().enumerate() {
            if removed.get(k).copied().unwrap_or(false) || dist[a.tail].is_infinite() {
                continue;
            }
            let cand = dist[a.tail] + cost[k];
            if cand < dist[a.head] {
                dist[a.head] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist[t]
}

/// Minimum spanning tree weight by Prim, skipping removed edges;
/// infinite when the remaining graph is disconnected.
pub fn prim(net: &Network, cost: &[f64], removed: &[bool]) -> f64 {
    let n = net.num_nodes();
    if n == 0 {
        return 0.0;
    }
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    key[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| key[a].total_cmp(&key[b]))
            .unwrap();
        if key[u].is_infinite() {
            return f64::INFINITY;
        }
        in_tree[u] = true;
        total += key[u];
        for (k, a) in net.arcs.iter().enumerate() {
            if removed.get(k).copied().unwrap_or(false) {
                continue;
            }
            let v = match (a.tail == u, a.head == u) {
                (true, _) => a.head,
                (_, true) => a.tail,
                _ => continue,
            };
            if !in_tree[v] && cost[k] < key[v] {
                key[v] = cost[k];
            }
        }
    }
    total
}

/// Largest value of `eval(removed)` over all sets of at most `gamma` removed
/// arcs; returns the value and the lexicographically first maximising set.
pub fn most_vital_arcs<F: FnMut(&[bool]) -> f64>(m: usize, gamma: usize, mut eval: F) -> Result<(f64, Vec<usize>)> {
    check_cap(count_subsets_up_to(m, gamma), DEFAULT_CAP as u128)?;
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for_each_subset_up_to(m, gamma, |set| {
        let mut removed = vec![false; m];
        for &a in set {
            removed[a] = true;
        }
        let v = eval(&removed);
        if v > best.0 {
            best = (v, set.to_vec());
        }
    });
    Ok(best)
}

/// Largest `x(E(S)) - (|S| - 1)` over every node set with at least two
/// nodes, by scanning all subsets; returns the violation and the first
/// maximising set in bitmask order.
pub fn subtour_scan(net: &Network, x: &[f64]) -> Result<(f64, Vec<usize>)> {
    let n = net.num_nodes();
    if n > MAX_VERTEX_DIMENSION {
        return Err(Error::EnumerationTooLarge {
            count: 1u128 << n,
            cap: 1u128 << MAX_VERTEX_DIMENSION,
        });
    }
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let packed: f64 = net
            .arcs
            .iter()
            .zip(x)
            .filter(|(a, _)| a.tail != a.head && mask >> a.tail & 1 == 1 && mask >> a.head & 1 == 1)
            .map(|(_, v)| v)
            .sum();
        let v = packed - (mask.count_ones() as f64 - 1.0);
        if v > best.0 {
            best = (v, (0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Network {
        crate::generate::figure_one().0
    }

    #[test]
    fn box_vertices_when_budget_is_slack() {
        let v = enumerate_u1_vertices(&[1.0, 1.0], 2.0).unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn simplex_vertices() {
        let v = enumerate_u1_vertices(&[1.0, 1.0], 1.0).unwrap();
        assert_eq!(v, vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn mixed_vertices() {
        let v = enumerate_u1_vertices(&[2.0, 2.0], 3.0).unwrap();
        assert!(v.contains(&vec![2.0, 1.0]));
        assert!(v.contains(&vec![1.0, 2.0]));
        assert_eq!(v.len(), 5);
    }

    #[test]
    fn vertex_guard() {
        assert!(enumerate_u1_vertices(&[1.0; 21], 1.0).is_err());
    }

    #[test]
    fn five_paths_in_figure_network() {
        let net = fig1();
        let (s, t) = (net.node("s").unwrap(), net.node("t").unwrap());
        let paths = enumerate_paths(&net, s, t, 100).unwrap();
        assert_eq!(paths.len(), 5);
        let queue = enumerate_paths_queue(&net, s, t, 100).unwrap();
        let a: BTreeSet<_> = paths.iter().map(|p| p.arcs.clone()).collect();
        let b: BTreeSet<_> = queue.iter().map(|p| p.arcs.clone()).collect();
        assert_eq!(a, b);
        assert!(enumerate_paths(&net, s, t, 2).is_err());
    }

    #[test]
    fn cayley_count_for_k4() {
        let mut net = Network::new(false);
        for a in 0..4 {
            for b in a + 1..4 {
                net.add_arc(&format!("e{a}{b}"), &format!("v{a}"), &format!("v{b}"), 1.0, 0.0);
            }
        }
        assert_eq!(enumerate_spanning_trees(&net, 100).unwrap().len(), 16);
    }

    #[test]
    fn minimax_on_single_path() {
        let mut net = Network::new(true);
        net.add_arc("a", "s", "t", 2.0, 1.0);
        let paths = path_sets(&enumerate_paths(&net, 0, 1, 10).unwrap());
        let set = ScenarioSet::Budgeted {
            nominal: &[2.0],
            deviation: &[1.0],
            gamma: 5.0,
        };
        let r = oracle_minimax(&paths, 1, set, DistanceMetric::Inclusion, 0, &[0.5]).unwrap();
        assert!((r.value - 3.5).abs() < 1e-12);
    }

    #[test]
    fn interior_worst_case_beats_vertices() {
        // Two parallel unit-deviation arcs, Γ = 1, free recourse.
        let mut net = Network::new(true);
        net.add_arc("a", "s", "t", 0.0, 1.0);
        net.add_arc("b", "s", "t", 0.0, 1.0);
        let paths = path_sets(&enumerate_paths(&net, 0, 1, 10).unwrap());
        let (nominal, deviation) = ([0.0, 0.0], [1.0, 1.0]);
        let corners = u1_scenarios(&nominal, &deviation, 1.0).unwrap();
        let (at_vertices, _) =
            oracle_adversarial_listed(&paths, 2, &[0], DistanceMetric::Inclusion, 1, &corners).unwrap();
        assert_eq!(at_vertices, 0.0);
        let set = ScenarioSet::Budgeted {
            nominal: &nominal,
            deviation: &deviation,
            gamma: 1.0,
        };
        let exact = oracle_adversarial(&paths, 2, &[0], DistanceMetric::Inclusion, 1, set).unwrap();
        assert!((exact - 0.5).abs() < 1e-12);
        // A dense grid over the box never exceeds it and gets close.
        let mut grid = 0.0f64;
        for i in 0..=100 {
            for j in 0..=(100 - i) {
                let c = vec![i as f64 / 100.0, j as f64 / 100.0];
                let (v, _) = oracle_incremental(&paths, 2, &[0], DistanceMetric::Inclusion, 1, &c).unwrap();
                grid = grid.max(v);
            }
        }
        assert!(grid <= exact + 1e-12 && grid >= exact - 1e-2);
    }

    #[test]
    fn prim_and_bellman_ford() {
        let net = fig1();
        let c = net.nominal_costs();
        assert_eq!(bellman_ford(&net, 0, net.node("t").unwrap(), &c, &[]), 4.0);
        let mut und = net.clone();
        und.directed = false;
        // s-l, i-j, l-t, l-j.
        assert_eq!(prim(&und, &c, &[]), 6.0);
    }
}
