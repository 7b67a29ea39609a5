//! Linear-programming formulations for robust optimisation with an L1
//! recourse budget.
//!
//! The feasible region is `S = {y >= 0 : A y = b, y <= u}` (the upper bound is
//! only used by flow instances). For a fixed first-stage point `x` the
//! recourse set is `S_x = {y in S : |y - x|_1 <= K}`, written with
//! `y = x + z⁺ - z⁻`. The builders below produce:
//!
//! * the incremental LP `min c'y` over `S_x` and its dual,
//! * the adversarial LP that maximises the incremental value over the
//!   budgeted box `{0 <= δ <= ĉ, Σδ <= Γ}`, and its dual,
//! * a single LP for the robust incremental problem over first-stage `x`.
//!
//! The dual pairs are solved independently so that every value can be
//! checked against a second formulation.

use crate::combinatorics::{argmax_subset, DEFAULT_ENUMERATION_CAP};
use crate::lp::{self, GeneralLp, LpBuilder, LpResult, Relation, Sense};
use crate::tolerance::{approx_eq, OBJECTIVE_TOL};
use crate::{Error, LpInstance, Result};
use serde::Serialize;

const INF: f64 = f64::INFINITY;

/// Tolerance for checking a caller-supplied first-stage point.
pub const POINT_TOL: f64 = 1e-7;

/// `{y >= 0 : A y = b, y <= u}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Region<'a> {
    pub matrix: &'a [Vec<f64>],
    pub rhs: &'a [f64],
    pub upper: Option<&'a [f64]>,
}

impl<'a> Region<'a> {
    pub fn of(inst: &'a LpInstance) -> Self {
        Region {
            matrix: &inst.matrix,
            rhs: &inst.rhs,
            upper: None,
        }
    }

    fn n(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    fn upper_at(&self, j: usize) -> f64 {
        self.upper.map_or(INF, |u| u[j])
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::InfeasibleInitialPoint(format!(
                "point has {} entries, expected {n}",
                x.len()
            )));
        }
        let scale = 1.0 + self.rhs.iter().fold(0.0f64, |m, b| m.max(b.abs()));
        for (j, &v) in x.iter().enumerate() {
            if v < -POINT_TOL * scale || v > self.upper_at(j) + POINT_TOL * scale {
                return Err(Error::InfeasibleInitialPoint(format!("x[{j}] = {v} out of bounds")));
            }
        }
        for (i, (row, b)) in self.matrix.iter().zip(self.rhs).enumerate() {
            let ax = lp::dot(row, x);
            if (ax - b).abs() > POINT_TOL * scale {
                return Err(Error::InfeasibleInitialPoint(format!("row {i}: A x = {ax}, b = {b}")));
            }
        }
        Ok(())
    }

    /// Adds `A (plus - minus) = 0` and returns the first row index.
    fn add_balance_rows(&self, b: &mut LpBuilder, plus: usize, minus: usize) -> usize {
        let n = self.n();
        let mut first = usize::MAX;
        for row in self.matrix {
            let terms = (0..n)
                .filter(|&j| row[j] != 0.0)
                .flat_map(|j| [(plus + j, row[j]), (minus + j, -row[j])])
                .collect();
            first = first.min(b.add_row(terms, Relation::Eq, 0.0));
        }
        first
    }
}

fn budget_terms(plus: usize, minus: usize, n: usize) -> Vec<(usize, f64)> {
    (0..n).flat_map(|j| [(plus + j, 1.0), (minus + j, 1.0)]).collect()
}

fn cancel(zp: &mut [f64], zm: &mut [f64]) {
    for (p, m) in zp.iter_mut().zip(zm.iter_mut()) {
        let common = p.min(*m).max(0.0);
        *p = (*p - common).max(0.0);
        *m = (*m - common).max(0.0);
    }
}

/// An LP together with the constant that must be added to its objective.
#[derive(Debug, Clone)]
pub struct Formulation {
    pub lp: GeneralLp,
    pub offset: f64,
}

impl Formulation {
    pub fn solve(&self) -> Result<(LpResult, f64)> {
        let res = lp::solve(&self.lp)?.into_optimal()?;
        let value = res.objective + self.offset;
        Ok((res, value))
    }
}

#[derive(Debug, Clone, Copy)]
struct IncLayout {
    n: usize,
    m: usize,
    budget_row: Option<usize>,
    lower_rows: usize,
}

const ZP: usize = 0;

fn incremental_primal(region: Region, x: &[f64], k: f64, cost: &[f64]) -> (Formulation, IncLayout) {
    let n = region.n();
    let mut b = LpBuilder::new(Sense::Minimize);
    b.add_vars(cost, 0.0, INF);
    let neg: Vec<f64> = cost.iter().map(|c| -c).collect();
    let zm = b.add_vars(&neg, 0.0, INF);
    region.add_balance_rows(&mut b, ZP, zm);
    let budget_row = k
        .is_finite()
        .then(|| b.add_row(budget_terms(ZP, zm, n), Relation::Le, k));
    let mut lower_rows = usize::MAX;
    for j in 0..n {
        lower_rows = lower_rows.min(b.add_row(vec![(zm + j, 1.0)], Relation::Le, x[j]));
    }
    for j in 0..n {
        let u = region.upper_at(j);
        if u.is_finite() {
            b.add_row(vec![(ZP + j, 1.0), (zm + j, -1.0)], Relation::Le, u - x[j]);
        }
    }
    let layout = IncLayout {
        n,
        m: region.matrix.len(),
        budget_row,
        lower_rows,
    };
    (
        Formulation {
            lp: b.build(),
            offset: lp::dot(cost, x),
        },
        layout,
    )
}

/// Optimal recourse `y = x + z⁺ - z⁻` for a fixed cost vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncrementalLpSolution {
    pub y: Vec<f64>,
    pub z_plus: Vec<f64>,
    pub z_minus: Vec<f64>,
    pub objective: f64,
    /// Dual values recovered from the primal solve.
    pub dual: IncrementalDualCertificate,
}

/// Multipliers `w` (balance rows), `v` (`z⁻ <= x`) and `alpha` (budget).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncrementalDualCertificate {
    pub w: Vec<f64>,
    pub v: Vec<f64>,
    pub alpha: f64,
    pub objective: f64,
}

impl IncrementalDualCertificate {
    /// Largest violation of `w'A - α <= c` and `-w'A - α - v <= -c`, or of
    /// the sign conditions.
    pub fn max_violation(&self, matrix: &[Vec<f64>], cost: &[f64]) -> f64 {
        let mut worst = (-self.alpha).max(0.0);
        for (j, c) in cost.iter().enumerate() {
            let wa: f64 = matrix.iter().zip(&self.w).map(|(row, w)| row[j] * w).sum();
            worst = worst
                .max(wa - self.alpha - c)
                .max(-wa - self.alpha - self.v[j] + c)
                .max(-self.v[j]);
        }
        worst
    }
}

fn incremental_from(
    region: Region,
    x: &[f64],
    k: f64,
    cost: &[f64],
) -> Result<IncrementalLpSolution> {
    region.check_point(x)?;
    if k < 0.0 {
        return Err(Error::InvalidInstance(format!("recourse budget {k} < 0")));
    }
    let (form, layout) = incremental_primal(region, x, k, cost);
    let (res, objective) = form.solve()?;
    let n = layout.n;
    let mut z_plus = res.primal[ZP..ZP + n].to_vec();
    let mut z_minus = res.primal[n..2 * n].to_vec();
    cancel(&mut z_plus, &mut z_minus);
    let y = (0..n).map(|j| x[j] + z_plus[j] - z_minus[j]).collect();
    let dual = IncrementalDualCertificate {
        w: res.duals[..layout.m].to_vec(),
        v: (0..n).map(|j| -res.duals[layout.lower_rows + j]).collect(),
        alpha: layout.budget_row.map_or(0.0, |r| -res.duals[r]),
        objective,
    };
    Ok(IncrementalLpSolution {
        y,
        z_plus,
        z_minus,
        objective,
        dual,
    })
}

pub(crate) fn solve_incremental_region(
    region: Region,
    x: &[f64],
    k: f64,
    cost: &[f64],
) -> Result<IncrementalLpSolution> {
    incremental_from(region, x, k, cost)
}

/// Best recourse from `x` within L1 distance `k` under `cost`.
pub fn solve_incremental_lp(
    inst: &LpInstance,
    x: &[f64],
    k: f64,
    cost: &[f64],
) -> Result<IncrementalLpSolution> {
    if cost.len() != inst.num_vars() {
        return Err(Error::InvalidInstance("cost vector length mismatch".into()));
    }
    incremental_from(Region::of(inst), x, k, cost)
}

/// The incremental primal as a standalone LP (objective offset `c'x`).
pub fn incremental_primal_lp(inst: &LpInstance, x: &[f64], k: f64, cost: &[f64]) -> Formulation {
    incremental_primal(Region::of(inst), x, k, cost).0
}

/// The dual of the incremental LP:
/// `max c'x - αK - x'v` s.t. `w'A - α <= c`, `-w'A - α - v <= -c`, `α, v >= 0`.
/// Variables are ordered `w, v, α` (`α` omitted when `k` is infinite).
pub fn incremental_dual_lp(inst: &LpInstance, x: &[f64], k: f64, cost: &[f64]) -> Formulation {
    let (m, n) = (inst.num_constraints(), inst.num_vars());
    let mut b = LpBuilder::new(Sense::Maximize);
    let w = b.add_vars(&vec![0.0; m], -INF, INF);
    let neg_x: Vec<f64> = x.iter().map(|v| -v).collect();
    let v = b.add_vars(&neg_x, 0.0, INF);
    let alpha = k.is_finite().then(|| b.add_var(-k, 0.0, INF));
    for j in 0..n {
        let wa: Vec<(usize, f64)> = (0..m)
            .filter(|&r| inst.matrix[r][j] != 0.0)
            .map(|r| (w + r, inst.matrix[r][j]))
            .collect();
        let mut up = wa.clone();
        let mut down: Vec<(usize, f64)> = wa.iter().map(|&(i, a)| (i, -a)).collect();
        down.push((v + j, -1.0));
        if let Some(a) = alpha {
            up.push((a, -1.0));
            down.push((a, -1.0));
        }
        b.add_row(up, Relation::Le, cost[j]);
        b.add_row(down, Relation::Le, -cost[j]);
    }
    Formulation {
        lp: b.build(),
        offset: lp::dot(cost, x),
    }
}

/// Solves the dual LP directly and returns its optimal multipliers.
pub fn solve_incremental_dual_lp(
    inst: &LpInstance,
    x: &[f64],
    k: f64,
    cost: &[f64],
) -> Result<IncrementalDualCertificate> {
    inst.check_feasible(x, POINT_TOL)?;
    let (m, n) = (inst.num_constraints(), inst.num_vars());
    let (res, objective) = incremental_dual_lp(inst, x, k, cost).solve()?;
    Ok(IncrementalDualCertificate {
        w: res.primal[..m].to_vec(),
        v: res.primal[m..m + n].to_vec(),
        alpha: if k.is_finite() { res.primal[m + n] } else { 0.0 },
        objective,
    })
}

/// The adversary's LP: the incremental dual with the cost deviation `δ`
/// as extra variables. Variables are ordered `w, v, δ, α`.
pub fn adversarial_lp(inst: &LpInstance, x: &[f64], k: f64, gamma: f64) -> Formulation {
    let (m, n) = (inst.num_constraints(), inst.num_vars());
    let mut b = LpBuilder::new(Sense::Maximize);
    let w = b.add_vars(&vec![0.0; m], -INF, INF);
    let neg_x: Vec<f64> = x.iter().map(|v| -v).collect();
    let v = b.add_vars(&neg_x, 0.0, INF);
    let delta = b.num_vars();
    for j in 0..n {
        b.add_var(x[j], 0.0, inst.deviation[j]);
    }
    let alpha = k.is_finite().then(|| b.add_var(-k, 0.0, INF));
    for j in 0..n {
        let wa: Vec<(usize, f64)> = (0..m)
            .filter(|&r| inst.matrix[r][j] != 0.0)
            .map(|r| (w + r, inst.matrix[r][j]))
            .collect();
        let mut up = wa.clone();
        up.push((delta + j, -1.0));
        let mut down: Vec<(usize, f64)> = wa.iter().map(|&(i, a)| (i, -a)).collect();
        down.push((v + j, -1.0));
        down.push((delta + j, 1.0));
        if let Some(a) = alpha {
            up.push((a, -1.0));
            down.push((a, -1.0));
        }
        b.add_row(up, Relation::Le, inst.nominal_cost[j]);
        b.add_row(down, Relation::Le, -inst.nominal_cost[j]);
    }
    if gamma.is_finite() {
        b.add_row((0..n).map(|j| (delta + j, 1.0)).collect(), Relation::Le, gamma);
    }
    Formulation {
        lp: b.build(),
        offset: lp::dot(&inst.nominal_cost, x),
    }
}

#[derive(Debug, Clone, Copy)]
struct AdvLayout {
    n: usize,
    zm: usize,
    beta: Option<usize>,
    q: usize,
    coupling_rows: usize,
    /// Index of the first-stage variables when `x` is a decision.
    x: Option<usize>,
}

/// Builds the minimisation dual to the adversary's LP. With `first_stage`
/// set, `x` becomes a variable constrained to the region with extra cost
/// `d`; otherwise `x` is the given point.
fn adversarial_dual(
    region: Region,
    nominal: &[f64],
    deviation: &[f64],
    k: f64,
    gamma: f64,
    point: Option<&[f64]>,
    initial_cost: &[f64],
) -> (Formulation, AdvLayout) {
    let n = region.n();
    let mut b = LpBuilder::new(Sense::Minimize);
    let x = point.is_none().then(|| {
        let first = b.num_vars();
        for j in 0..n {
            b.add_var(nominal[j] + initial_cost[j], 0.0, region.upper_at(j));
        }
        first
    });
    let zp = b.add_vars(nominal, 0.0, INF);
    let neg: Vec<f64> = nominal.iter().map(|c| -c).collect();
    let zm = b.add_vars(&neg, 0.0, INF);
    let beta = gamma.is_finite().then(|| b.add_var(gamma, 0.0, INF));
    let q = b.add_vars(deviation, 0.0, INF);
    if let Some(x) = x {
        for (row, &rhs) in region.matrix.iter().zip(region.rhs) {
            let terms = (0..n).filter(|&j| row[j] != 0.0).map(|j| (x + j, row[j])).collect();
            b.add_row(terms, Relation::Eq, rhs);
        }
    }
    region.add_balance_rows(&mut b, zp, zm);
    if k.is_finite() {
        b.add_row(budget_terms(zp, zm, n), Relation::Le, k);
    }
    // β + q_j >= y_j = x_j + z⁺_j - z⁻_j
    let mut coupling_rows = usize::MAX;
    for j in 0..n {
        let mut terms = vec![(zp + j, -1.0), (zm + j, 1.0), (q + j, 1.0)];
        if let Some(beta) = beta {
            terms.push((beta, 1.0));
        }
        let rhs = match (x, point) {
            (Some(x), _) => {
                terms.push((x + j, -1.0));
                0.0
            }
            (None, Some(p)) => p[j],
            (None, None) => unreachable!(),
        };
        coupling_rows = coupling_rows.min(b.add_row(terms, Relation::Ge, rhs));
    }
    for j in 0..n {
        match (x, point) {
            (Some(x), _) => b.add_row(vec![(zm + j, 1.0), (x + j, -1.0)], Relation::Le, 0.0),
            (None, Some(p)) => b.add_row(vec![(zm + j, 1.0)], Relation::Le, p[j]),
            (None, None) => unreachable!(),
        };
    }
    for j in 0..n {
        let u = region.upper_at(j);
        if !u.is_finite() {
            continue;
        }
        match (x, point) {
            (Some(x), _) => b.add_row(
                vec![(x + j, 1.0), (zp + j, 1.0), (zm + j, -1.0)],
                Relation::Le,
                u,
            ),
            (None, Some(p)) => b.add_row(vec![(zp + j, 1.0), (zm + j, -1.0)], Relation::Le, u - p[j]),
            (None, None) => unreachable!(),
        };
    }
    let offset = point.map_or(0.0, |p| lp::dot(nominal, p));
    (
        Formulation {
            lp: b.build(),
            offset,
        },
        AdvLayout {
            n,
            zm,
            beta,
            q,
            coupling_rows,
            x,
        },
    )
}

/// The minimisation dual of [`adversarial_lp`]:
/// `min c̄'(x + z⁺ - z⁻) + βΓ + ĉ'q` over the recourse polytope with
/// `β + q_j >= x_j + z⁺_j - z⁻_j`.
pub fn adversarial_dual_lp(inst: &LpInstance, x: &[f64], k: f64, gamma: f64) -> Formulation {
    adversarial_dual(
        Region::of(inst),
        &inst.nominal_cost,
        &inst.deviation,
        k,
        gamma,
        Some(x),
        &inst.initial_cost,
    )
    .0
}

/// Worst-case deviation plus the matching dual solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversarialLpCertificate {
    pub delta: Vec<f64>,
    pub z_plus: Vec<f64>,
    pub z_minus: Vec<f64>,
    pub q: Vec<f64>,
    pub beta: f64,
    /// Value of the adversary's maximisation.
    pub primal_objective: f64,
    /// Value of its minimisation dual.
    pub dual_objective: f64,
}

impl AdversarialLpCertificate {
    /// Largest violation of `0 <= δ <= ĉ` and `Σδ <= Γ`.
    pub fn delta_violation(&self, deviation: &[f64], gamma: f64) -> f64 {
        let box_v = self
            .delta
            .iter()
            .zip(deviation)
            .fold(0.0f64, |m, (d, h)| m.max(-d).max(d - h));
        let sum: f64 = self.delta.iter().sum();
        box_v.max(if gamma.is_finite() { sum - gamma } else { 0.0 })
    }
}

fn certificate_from_dual(res: &LpResult, layout: AdvLayout, value: f64) -> AdversarialLpCertificate {
    let n = layout.n;
    let zp = layout.x.map_or(0, |x| x + n);
    let mut z_plus = res.primal[zp..zp + n].to_vec();
    let mut z_minus = res.primal[layout.zm..layout.zm + n].to_vec();
    cancel(&mut z_plus, &mut z_minus);
    AdversarialLpCertificate {
        delta: (0..n)
            .map(|j| res.duals[layout.coupling_rows + j].max(0.0))
            .collect(),
        z_plus,
        z_minus,
        q: res.primal[layout.q..layout.q + n].to_vec(),
        beta: layout.beta.map_or(0.0, |b| res.primal[b]),
        primal_objective: value,
        dual_objective: value,
    }
}

pub(crate) fn solve_adversarial_region(
    region: Region,
    nominal: &[f64],
    deviation: &[f64],
    x: &[f64],
    k: f64,
    gamma: f64,
) -> Result<(f64, AdversarialLpCertificate)> {
    region.check_point(x)?;
    let (form, layout) = adversarial_dual(region, nominal, deviation, k, gamma, Some(x), &[]);
    let (res, value) = form.solve()?;
    Ok((value, certificate_from_dual(&res, layout, value)))
}

/// Worst-case incremental value of `x` over `U1`.
///
/// The adversary's maximisation supplies `δ`; its dual supplies the
/// certificate. The two objectives must agree.
pub fn solve_adversarial_lp_u1(
    inst: &LpInstance,
    x: &[f64],
    k: f64,
    gamma: f64,
) -> Result<(f64, AdversarialLpCertificate)> {
    inst.check_feasible(x, POINT_TOL)?;
    let n = inst.num_vars();
    let (primal, value) = adversarial_lp(inst, x, k, gamma).solve()?;
    let (mut cert_value, mut cert) = solve_adversarial_region(
        Region::of(inst),
        &inst.nominal_cost,
        &inst.deviation,
        x,
        k,
        gamma,
    )?;
    if !approx_eq(value, cert_value, OBJECTIVE_TOL) {
        return Err(Error::NumericalFailure(format!(
            "adversarial value {value} and its dual {cert_value} disagree"
        )));
    }
    let m = inst.num_constraints();
    cert.delta = primal.primal[m + n..m + 2 * n]
        .iter()
        .zip(&inst.deviation)
        .map(|(d, h)| d.clamp(0.0, *h))
        .collect();
    cert.primal_objective = value;
    std::mem::swap(&mut cert.dual_objective, &mut cert_value);
    Ok((value, cert))
}

/// Optimal robust incremental first-stage decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobIncLpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    pub certificate: AdversarialLpCertificate,
    /// `d'x + Z_Adv(x)` recomputed through the adversary's LP pair.
    pub recomputed: f64,
}

/// The single robust incremental LP: the adversarial dual with `x` free in
/// `S` and the first-stage cost `d'x` added.
pub fn robinc_lp(inst: &LpInstance, k: f64, gamma: f64) -> Formulation {
    adversarial_dual(
        Region::of(inst),
        &inst.nominal_cost,
        &inst.deviation,
        k,
        gamma,
        None,
        &inst.initial_cost,
    )
    .0
}

pub(crate) fn solve_robinc_region(
    region: Region,
    nominal: &[f64],
    deviation: &[f64],
    initial_cost: &[f64],
    k: f64,
    gamma: f64,
) -> Result<(f64, Vec<f64>, AdversarialLpCertificate)> {
    let (form, layout) = adversarial_dual(region, nominal, deviation, k, gamma, None, initial_cost);
    let (res, value) = form.solve()?;
    let n = layout.n;
    let x0 = layout.x.unwrap_or(0);
    let x: Vec<f64> = res.primal[x0..x0 + n].iter().map(|v| v.max(0.0)).collect();
    Ok((value, x, certificate_from_dual(&res, layout, value)))
}

/// Solves the robust incremental problem over `U1` with one LP, then
/// re-evaluates the returned `x` through [`solve_adversarial_lp_u1`].
pub fn solve_robinc_lp(inst: &LpInstance, k: f64, gamma: f64) -> Result<RobIncLpSolution> {
    let (value, x, certificate) = solve_robinc_region(
        Region::of(inst),
        &inst.nominal_cost,
        &inst.deviation,
        &inst.initial_cost,
        k,
        gamma,
    )?;
    let (adv, _) = solve_adversarial_lp_u1(inst, &x, k, gamma)?;
    let recomputed = lp::dot(&inst.initial_cost, &x) + adv;
    if !approx_eq(value, recomputed, OBJECTIVE_TOL) {
        return Err(Error::NumericalFailure(format!(
            "robust value {value} differs from re-evaluation {recomputed}"
        )));
    }
    Ok(RobIncLpSolution {
        value,
        x,
        certificate,
        recomputed,
    })
}

/// Worst case over `U2` by enumerating every deviation set of size at most
/// `gamma`. Returns the value and the 0/1 deviation vector.
pub fn solve_adversarial_u2_bruteforce(
    inst: &LpInstance,
    x: &[f64],
    k: f64,
    gamma: usize,
) -> Result<(f64, Vec<f64>)> {
    inst.check_feasible(x, POINT_TOL)?;
    let n = inst.num_vars();
    let (value, set) = argmax_subset(n, gamma, DEFAULT_ENUMERATION_CAP, |s| {
        let mut cost = inst.nominal_cost.clone();
        for &j in s {
            cost[j] += inst.deviation[j];
        }
        Ok(solve_incremental_lp(inst, x, k, &cost)?.objective)
    })?;
    let mut delta = vec![0.0; n];
    for j in set {
        delta[j] = 1.0;
    }
    Ok((value, delta))
}

/// A point of `S` minimising `direction' x` (any point when `None`).
pub fn feasible_point(inst: &LpInstance, direction: Option<&[f64]>) -> Result<Vec<f64>> {
    let n = inst.num_vars();
    let mut b = LpBuilder::new(Sense::Minimize);
    match direction {
        Some(d) => b.add_vars(d, 0.0, INF),
        None => b.add_vars(&vec![0.0; n], 0.0, INF),
    };
    for (row, &rhs) in inst.matrix.iter().zip(&inst.rhs) {
        b.add_row(row.iter().copied().enumerate().collect(), Relation::Eq, rhs);
    }
    let res = lp::solve(&b.build())?.into_optimal()?;
    Ok(res.primal.into_iter().map(|v| v.max(0.0)).collect())
}
