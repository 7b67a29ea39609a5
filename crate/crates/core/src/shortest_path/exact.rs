//! Exact solvers by path enumeration, for every distance metric and for the
//! discrete uncertainty set.

use serde::Serialize;

use super::adversarial::{check_costs, solve_adversarial_sp_u1};
use super::time_expanded::{build_time_expanded, erase_loops};
use crate::combinatorics::{argmax_subset, DEFAULT_ENUMERATION_CAP};
use crate::model::Membership;
use crate::oracles::{enumerate_paths, enumerate_u1_vertices, oracle_adversarial_budgeted};
use crate::{DistanceMetric, Error, Network, Path, Result, UncertaintyBudget, UncertaintyKind};

/// Cap on enumerated paths for incremental and adversarial problems.
pub const PATH_CAP: usize = 1_000_000;
/// Cap on candidate initial paths for the robust incremental problem.
pub const ROBINC_PATH_CAP: usize = 100_000;

/// Shortest `s`-`t` path by Dijkstra. Costs must be non-negative.
pub fn solve_sp(net: &Network, s: usize, t: usize, cost: &[f64]) -> Result<(f64, Path)> {
    if let Some(c) = cost.iter().find(|c| **c < 0.0) {
        return Err(Error::InvalidInstance(format!("negative arc cost {c}")));
    }
    let n = net.num_nodes();
    let adj = net.adjacency();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    while let Some(u) = (0..n)
        .filter(|&v| !done[v] && dist[v].is_finite())
        .min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
    {
        done[u] = true;
        for &a in &adj[u] {
            let v = net.other_end(a, u);
            if dist[u] + cost[a] < dist[v] {
                dist[v] = dist[u] + cost[a];
                pred[v] = a;
            }
        }
    }
    if s == t || dist[t].is_infinite() {
        return Err(Error::NoFeasiblePath);
    }
    let mut arcs = Vec::new();
    let mut v = t;
    while v != s {
        arcs.push(pred[v]);
        v = net.other_end(pred[v], v);
    }
    arcs.reverse();
    Ok((dist[t], Path::new(arcs)))
}

fn endpoints(net: &Network, p0: &Path) -> Result<(usize, usize)> {
    let s = p0.source(net).ok_or_else(|| Error::NotASimplePath("empty path".into()))?;
    let t = p0.sink(net).ok_or_else(|| Error::NotASimplePath("empty path".into()))?;
    p0.check(net, s, t)?;
    Ok((s, t))
}

/// Cheapest path with at most `k` arcs outside `p0`, through the layered
/// network; the layered optimum is a walk and is returned loop-free.
pub fn solve_incremental_sp_inclusion(net: &Network, p0: &Path, k: usize, cost: &[f64]) -> Result<(f64, Path)> {
    if let Some(c) = cost.iter().find(|c| **c < 0.0) {
        return Err(Error::InvalidInstance(format!("negative arc cost {c}")));
    }
    let ten = build_time_expanded(net, p0, k)?;
    let (value, layered) = ten.shortest_path(cost)?;
    Ok((value, Path::new(erase_loops(net, &ten.walk(&layered)))))
}

/// Index of the cheapest path within distance `k` of `initial`; ties keep
/// the earliest.
fn best_in_ball(paths: &[Path], member: &Membership, metric: DistanceMetric, k: usize, cost: &[f64]) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (i, p) in paths.iter().enumerate() {
        if member.distance(metric, &p.arcs) <= k {
            let c = p.cost(cost);
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, i));
            }
        }
    }
    best
}

/// Cheapest simple path within distance `k` of `p0` under `metric`.
pub fn solve_incremental_sp_enum(
    net: &Network,
    p0: &Path,
    k: usize,
    metric: DistanceMetric,
    cost: &[f64],
) -> Result<(f64, Path)> {
    let (s, t) = endpoints(net, p0)?;
    let paths = enumerate_paths(net, s, t, PATH_CAP)?;
    let member = Membership::new(net.num_arcs(), &p0.arcs);
    let (v, i) = best_in_ball(&paths, &member, metric, k, cost).ok_or(Error::NoFeasiblePath)?;
    Ok((v, paths[i].clone()))
}

fn u2_worst(
    net: &Network,
    paths: &[Path],
    p0: &Path,
    k: usize,
    metric: DistanceMetric,
    gamma: usize,
) -> Result<(f64, Vec<f64>)> {
    let member = Membership::new(net.num_arcs(), &p0.arcs);
    let nominal = net.nominal_costs();
    let (value, set) = argmax_subset(net.num_arcs(), gamma, DEFAULT_ENUMERATION_CAP, |raised| {
        let mut cost = nominal.clone();
        for &a in raised {
            cost[a] += net.arcs[a].deviation;
        }
        best_in_ball(paths, &member, metric, k, &cost)
            .map(|(v, _)| v)
            .ok_or(Error::NoFeasiblePath)
    })?;
    let mut delta = vec![0.0; net.num_arcs()];
    for a in set {
        delta[a] = 1.0;
    }
    Ok((value, delta))
}

/// Worst case over raising at most `gamma` arcs by their deviation.
/// Returns the value and the 0/1 raise vector.
pub fn solve_adversarial_sp_u2(
    net: &Network,
    p0: &Path,
    k: usize,
    metric: DistanceMetric,
    gamma: usize,
) -> Result<(f64, Vec<f64>)> {
    check_costs(net)?;
    let (s, t) = endpoints(net, p0)?;
    let paths = enumerate_paths(net, s, t, PATH_CAP)?;
    u2_worst(net, &paths, p0, k, metric, gamma)
}

fn u1_worst_enum(
    net: &Network,
    paths: &[Path],
    vertices: &[Vec<f64>],
    p0: &Path,
    k: usize,
    metric: DistanceMetric,
) -> Result<f64> {
    let sets: Vec<Vec<usize>> = paths.iter().map(|p| p.arcs.clone()).collect();
    oracle_adversarial_budgeted(&sets, net.num_arcs(), &p0.arcs, metric, k, vertices, &net.nominal_costs())
}

/// Worst case over the continuous budget for any metric, from the enumerated
/// paths and box vertices (mixture LP, see the oracles module).
pub fn solve_adversarial_sp_u1_enum(
    net: &Network,
    p0: &Path,
    k: usize,
    metric: DistanceMetric,
    gamma: f64,
) -> Result<f64> {
    check_costs(net)?;
    let (s, t) = endpoints(net, p0)?;
    let paths = enumerate_paths(net, s, t, PATH_CAP)?;
    let vertices = enumerate_u1_vertices(&net.deviations(), gamma)?;
    u1_worst_enum(net, &paths, &vertices, p0, k, metric)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobIncSpSolution {
    pub value: f64,
    pub initial: Path,
    /// Worst-case recourse value of `initial`, without its first-stage cost.
    pub adversarial: f64,
    /// Which inner solver was used.
    pub method: &'static str,
}

/// `min_{P0} d(P0) + Z_Adv(P0)` over every simple `s`-`t` path. Ties break
/// toward fewer arcs, then lexicographically smaller arc ids.
pub fn solve_robinc_sp_exact(
    net: &Network,
    s: usize,
    t: usize,
    k: usize,
    metric: DistanceMetric,
    budget: UncertaintyBudget,
    d: &[f64],
) -> Result<RobIncSpSolution> {
    check_costs(net)?;
    let paths = enumerate_paths(net, s, t, ROBINC_PATH_CAP)?;
    let vertices = match budget.kind {
        UncertaintyKind::U1 if metric != DistanceMetric::Inclusion => {
            enumerate_u1_vertices(&net.deviations(), budget.gamma)?
        }
        _ => Vec::new(),
    };
    let method = match (budget.kind, metric) {
        (UncertaintyKind::U1, DistanceMetric::Inclusion) => "lp",
        (UncertaintyKind::U1, _) => "enumeration-lp",
        (UncertaintyKind::U2, _) => "enumeration",
    };
    let mut best: Option<(RobIncSpSolution, Vec<String>)> = None;
    for p0 in &paths {
        let adversarial = match (budget.kind, metric) {
            (UncertaintyKind::U1, DistanceMetric::Inclusion) => solve_adversarial_sp_u1(net, p0, k, budget.gamma)?.0,
            (UncertaintyKind::U1, _) => u1_worst_enum(net, &paths, &vertices, p0, k, metric)?,
            (UncertaintyKind::U2, _) => u2_worst(net, &paths, p0, k, metric, budget.count())?.0,
        };
        let value = p0.cost(d) + adversarial;
        let ids = p0.ids(net);
        let better = match &best {
            None => true,
            Some((b, b_ids)) => {
                if value < b.value - 1e-9 {
                    true
                } else if value <= b.value + 1e-9 {
                    (p0.len(), &ids) < (b.initial.len(), b_ids)
                } else {
                    false
                }
            }
        };
        if better {
            best = Some((
                RobIncSpSolution {
                    value,
                    initial: p0.clone(),
                    adversarial,
                    method,
                },
                ids,
            ));
        }
    }
    best.map(|(b, _)| b).ok_or(Error::NoFeasiblePath)
}
