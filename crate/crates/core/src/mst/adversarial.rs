//! Worst-case spanning-tree recourse. The continuous budget is one LP over
//! the subtour polytope, solved by adding violated subtour cuts; the
//! discrete budget is a most-vital-arcs enumeration.

use serde::Serialize;

use super::lagrangian::solve_incremental_mst;
use super::separation::{separate_subtour, SEPARATION_TOL};
use super::check_undirected;
use crate::combinatorics::{argmax_subset, DEFAULT_ENUMERATION_CAP};
use crate::lp::{self, LpBuilder, Relation, Sense};
use crate::model::Membership;
use crate::{Error, Network, Result, SpanningTree};

/// Agreement required between the cut LP and the tree re-evaluation.
const CERTIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MstAdversarialSolution {
    /// Fractional arc vector in the subtour polytope.
    pub x: Vec<f64>,
    pub beta: Vec<f64>,
    pub theta: f64,
    /// Node sets of every subtour row in the final LP, initial rows first.
    pub cuts: Vec<Vec<usize>>,
    /// Number of initial rows in `cuts`.
    pub initial_cuts: usize,
    /// Worst-case deviation read from the duals of the covering rows.
    pub delta: Vec<f64>,
    /// LP value after each round.
    pub trace: Vec<f64>,
    pub objective: f64,
    /// Incremental tree value at `c̄ + delta`.
    pub recomputed: f64,
}

impl MstAdversarialSolution {
    /// Cuts added by separation.
    pub fn generated_cuts(&self) -> usize {
        self.cuts.len() - self.initial_cuts
    }

    /// Largest violation of `x <= β + θ`, `β, θ, x >= 0`, the new-arc row,
    /// `Σx >= n-1` and the listed subtour rows.
    pub fn max_violation(&self, net: &Network, t0: &SpanningTree, k: usize) -> f64 {
        let member = Membership::new(net.num_arcs(), &t0.arcs);
        let mut worst = (-self.theta).max(0.0);
        for (x, b) in self.x.iter().zip(&self.beta) {
            worst = worst.max(x - b - self.theta).max(-x).max(-b);
        }
        let outside: f64 = (0..net.num_arcs()).filter(|&a| !member.contains(a)).map(|a| self.x[a]).sum();
        worst = worst.max(outside - k as f64);
        worst = worst.max(net.num_nodes() as f64 - 1.0 - self.x.iter().sum::<f64>());
        for s in &self.cuts {
            let mut inside = vec![false; net.num_nodes()];
            for &v in s {
                inside[v] = true;
            }
            worst = worst.max(super::separation::subtour_violation(net, &self.x, &inside));
        }
        worst
    }
}

/// Guard on the cut family: `10 * 2^n`.
fn cut_guard(n: usize) -> usize {
    1usize.checked_shl(n as u32).map_or(usize::MAX, |p| p.saturating_mul(10))
}

fn initial_cuts(net: &Network) -> Vec<Vec<usize>> {
    let n = net.num_nodes();
    let mut pairs: Vec<Vec<usize>> = net
        .arcs
        .iter()
        .filter(|a| a.tail != a.head)
        .map(|a| vec![a.tail.min(a.head), a.tail.max(a.head)])
        .collect();
    pairs.sort();
    pairs.dedup();
    if n > 2 {
        pairs.push((0..n).collect());
    }
    pairs
}

/// `min c̄'x + ĉ'β + Γθ` s.t. `x <= β + θ`, at most `k` new arcs, `x` in
/// the subtour polytope. Equals `max_{c ∈ U1} Z_Inc(T0, c)`.
pub fn solve_adversarial_mst_u1(
    net: &Network,
    t0: &SpanningTree,
    k: usize,
    gamma: f64,
) -> Result<(f64, MstAdversarialSolution)> {
    check_undirected(net)?;
    t0.check(net)?;
    if gamma < 0.0 || gamma.is_nan() {
        return Err(Error::InvalidInstance(format!("invalid budget {gamma}")));
    }
    if let Some(a) = net.arcs.iter().find(|a| a.deviation < 0.0) {
        return Err(Error::InvalidInstance(format!("arc {} has a negative deviation", a.id)));
    }
    let n = net.num_nodes();
    let m = net.num_arcs();
    let k = k.min(n.saturating_sub(1));
    let member = Membership::new(m, &t0.arcs);
    let mut cuts = initial_cuts(net);
    let first = cuts.len();
    let guard = cut_guard(n);
    let mut trace = Vec::new();
    loop {
        let mut b = LpBuilder::new(Sense::Minimize);
        for a in &net.arcs {
            let hi = if a.tail == a.head { 0.0 } else { f64::INFINITY };
            b.add_var(a.nominal_cost, 0.0, hi);
        }
        for a in &net.arcs {
            b.add_var(a.deviation, 0.0, f64::INFINITY);
        }
        let theta = if gamma.is_finite() {
            b.add_var(gamma, 0.0, f64::INFINITY)
        } else {
            b.add_var(0.0, 0.0, 0.0)
        };
        for a in 0..m {
            b.add_row(vec![(a, -1.0), (m + a, 1.0), (theta, 1.0)], Relation::Ge, 0.0);
        }
        b.add_row(
            (0..m).filter(|&a| !member.contains(a)).map(|a| (a, 1.0)).collect(),
            Relation::Le,
            k as f64,
        );
        b.add_row((0..m).map(|a| (a, 1.0)).collect(), Relation::Ge, n as f64 - 1.0);
        for s in &cuts {
            let mut inside = vec![false; n];
            for &v in s {
                inside[v] = true;
            }
            let terms = net
                .arcs
                .iter()
                .enumerate()
                .filter(|(_, a)| a.tail != a.head && inside[a.tail] && inside[a.head])
                .map(|(i, _)| (i, 1.0))
                .collect();
            b.add_row(terms, Relation::Le, s.len() as f64 - 1.0);
        }
        let res = lp::solve(&b.build())?.into_optimal()?;
        trace.push(res.objective);
        let x: Vec<f64> = res.primal[..m].iter().map(|v| v.max(0.0)).collect();
        match separate_subtour(net, &x) {
            Some(cut) if cut.violation > SEPARATION_TOL => {
                if cuts.contains(&cut.nodes) {
                    return Err(Error::NumericalFailure("separation returned a cut already present".into()));
                }
                cuts.push(cut.nodes);
                if cuts.len() > guard {
                    return Err(Error::CutLoopStalled(cuts.len()));
                }
            }
            _ => {
                let delta: Vec<f64> = (0..m)
                    .map(|a| res.duals[a].clamp(0.0, net.arcs[a].deviation))
                    .collect();
                let cost: Vec<f64> = net.arcs.iter().zip(&delta).map(|(a, d)| a.nominal_cost + d).collect();
                let (recomputed, _) = solve_incremental_mst(net, t0, k, &cost)?;
                let value = res.objective;
                if (recomputed - value).abs() > CERTIFY_TOL * (1.0 + value.abs()) {
                    return Err(Error::NumericalFailure(format!(
                        "cut LP value {value} but the tree at its worst case costs {recomputed}"
                    )));
                }
                let solution = MstAdversarialSolution {
                    x,
                    beta: res.primal[m..2 * m].to_vec(),
                    theta: res.primal[theta],
                    cuts,
                    initial_cuts: first,
                    delta,
                    trace,
                    objective: value,
                    recomputed,
                };
                return Ok((value, solution));
            }
        }
    }
}

/// Worst case over raising at most `gamma` arcs to `c̄ + ĉ`. Returns the
/// value and the raised arcs.
pub fn solve_adversarial_mst_u2(net: &Network, t0: &SpanningTree, k: usize, gamma: usize) -> Result<(f64, Vec<usize>)> {
    check_undirected(net)?;
    t0.check(net)?;
    let nominal = net.nominal_costs();
    argmax_subset(net.num_arcs(), gamma, DEFAULT_ENUMERATION_CAP, |raised| {
        let mut cost = nominal.clone();
        for &a in raised {
            cost[a] += net.arcs[a].deviation;
        }
        Ok(solve_incremental_mst(net, t0, k, &cost)?.0)
    })
}
