use log::{debug, trace};

use super::lu::Lu;
use super::{GeneralLp, LpResult, LpStatus, Relation, Sense};
use crate::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const PHASE1_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    /// Defaults to `50 * (columns + rows)` of the standard form.
    pub max_iterations: Option<usize>,
    pub refactor_every: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub bland_after: usize,
    /// Log every pivot at `trace` level.
    pub trace: bool,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: None,
            refactor_every: 50,
            bland_after: 20,
            trace: false,
        }
    }
}

pub fn solve(lp: &GeneralLp) -> Result<LpResult> {
    solve_with(lp, &SimplexOptions::default())
}

pub fn solve_with(lp: &GeneralLp, opts: &SimplexOptions) -> Result<LpResult> {
    lp.check_shape()?;
    let std = match StandardForm::build(lp) {
        Some(s) => s,
        None => return Ok(non_optimal(lp, LpStatus::Infeasible, 0)),
    };
    let mut tab = Tableau::new(&std, opts)?;

    if tab.art_start < tab.ncols {
        let phase1: Vec<f64> = (0..tab.ncols)
            .map(|j| if j >= tab.art_start { 1.0 } else { 0.0 })
            .collect();
        match tab.run(&phase1, true)? {
            Outcome::Optimal => {}
            Outcome::Unbounded => {
                return Err(Error::NumericalFailure("phase 1 reported unbounded".into()))
            }
        }
        let infeas: f64 = tab
            .basis
            .iter()
            .zip(&tab.xb)
            .filter(|(&j, _)| j >= tab.art_start)
            .map(|(_, &v)| v.max(0.0))
            .sum();
        let bscale = 1.0 + std.b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if infeas > PHASE1_TOL * bscale {
            debug!("phase 1 ended with infeasibility {infeas:e}");
            return Ok(non_optimal(lp, LpStatus::Infeasible, tab.iterations));
        }
        tab.drive_out_artificials()?;
    }

    let mut cost = std.cost.clone();
    cost.resize(tab.ncols, 0.0);
    match tab.run(&cost, false)? {
        Outcome::Optimal => {}
        Outcome::Unbounded => return Ok(non_optimal(lp, LpStatus::Unbounded, tab.iterations)),
    }
    tab.refactor()?;

    let mut xs = vec![0.0; tab.ncols];
    for (pos, &j) in tab.basis.iter().enumerate() {
        xs[j] = tab.xb[pos].max(0.0);
    }
    let ystd = tab.row_prices(&cost);
    Ok(std.recover(lp, &xs, &ystd, tab.iterations))
}

fn non_optimal(lp: &GeneralLp, status: LpStatus, iterations: usize) -> LpResult {
    LpResult {
        status,
        primal: vec![0.0; lp.num_vars()],
        duals: vec![0.0; lp.num_rows()],
        reduced_costs: vec![0.0; lp.num_vars()],
        objective: match (status, lp.sense) {
            (LpStatus::Infeasible, Sense::Minimize) | (LpStatus::Unbounded, Sense::Maximize) => {
                f64::INFINITY
            }
            _ => f64::NEG_INFINITY,
        },
        iterations,
    }
}

#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lo + col`
    Shift { col: usize, lo: f64 },
    /// `x = hi - col`
    Mirror { col: usize, hi: f64 },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

/// `min cost'x + constant, A x = b, x >= 0, b >= 0`.
struct StandardForm {
    m: usize,
    /// Column-major sparse columns.
    cols: Vec<Vec<(usize, f64)>>,
    b: Vec<f64>,
    cost: Vec<f64>,
    var_map: Vec<VarMap>,
    /// Standard row and sign flip of every original row.
    row_map: Vec<(usize, f64)>,
    /// A column that is a `+1` unit vector on the row, if any.
    unit_col: Vec<Option<usize>>,
}

impl StandardForm {
    fn build(lp: &GeneralLp) -> Option<StandardForm> {
        let sigma = match lp.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let mut cost = Vec::new();
        let mut var_map = Vec::with_capacity(lp.num_vars());
        // Upper-bound rows `col + slack = hi - lo`.
        let mut ub_rows: Vec<(usize, f64)> = Vec::new();
        for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
            let c = sigma * lp.objective[j];
            if lo > hi + 1e-12 || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return None;
            }
            if lo.is_finite() {
                let col = cost.len();
                cost.push(c);
                var_map.push(VarMap::Shift { col, lo });
                if hi.is_finite() {
                    ub_rows.push((col, (hi - lo).max(0.0)));
                }
            } else if hi.is_finite() {
                let col = cost.len();
                cost.push(-c);
                var_map.push(VarMap::Mirror { col, hi });
            } else {
                let pos = cost.len();
                cost.push(c);
                cost.push(-c);
                var_map.push(VarMap::Split { pos, neg: pos + 1 });
            }
        }
        let nstruct = cost.len();

        // Dense rows over structural columns, then slack columns appended.
        let mut rows: Vec<(Vec<f64>, Option<f64>, f64)> = Vec::new();
        for con in &lp.constraints {
            let mut coeffs = vec![0.0; nstruct];
            let mut rhs = con.rhs;
            for (j, &a) in con.coeffs.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                match var_map[j] {
                    VarMap::Shift { col, lo } => {
                        coeffs[col] += a;
                        rhs -= a * lo;
                    }
                    VarMap::Mirror { col, hi } => {
                        coeffs[col] -= a;
                        rhs -= a * hi;
                    }
                    VarMap::Split { pos, neg } => {
                        coeffs[pos] += a;
                        coeffs[neg] -= a;
                    }
                }
            }
            let slack = match con.relation {
                Relation::Le => Some(1.0),
                Relation::Ge => Some(-1.0),
                Relation::Eq => None,
            };
            rows.push((coeffs, slack, rhs));
        }
        for &(col, ub) in &ub_rows {
            let mut coeffs = vec![0.0; nstruct];
            coeffs[col] = 1.0;
            rows.push((coeffs, Some(1.0), ub));
        }

        let m = rows.len();
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nstruct];
        let mut b = vec![0.0; m];
        let mut unit_col = vec![None; m];
        let mut row_map = Vec::with_capacity(lp.num_rows());
        for (r, (coeffs, slack, rhs)) in rows.into_iter().enumerate() {
            let sign = if rhs < 0.0 { -1.0 } else { 1.0 };
            b[r] = sign * rhs;
            for (j, a) in coeffs.into_iter().enumerate() {
                if a != 0.0 {
                    cols[j].push((r, sign * a));
                }
            }
            if let Some(s) = slack {
                let coef = sign * s;
                cols.push(vec![(r, coef)]);
                cost.push(0.0);
                if coef > 0.0 {
                    unit_col[r] = Some(cols.len() - 1);
                }
            }
            if r < lp.num_rows() {
                row_map.push((r, sign));
            }
        }
        Some(StandardForm {
            m,
            cols,
            b,
            cost,
            var_map,
            row_map,
            unit_col,
        })
    }

    fn recover(&self, lp: &GeneralLp, xs: &[f64], ystd: &[f64], iterations: usize) -> LpResult {
        let sigma = match lp.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let primal: Vec<f64> = self
            .var_map
            .iter()
            .map(|vm| match *vm {
                VarMap::Shift { col, lo } => lo + xs[col],
                VarMap::Mirror { col, hi } => hi - xs[col],
                VarMap::Split { pos, neg } => xs[pos] - xs[neg],
            })
            .collect();
        let duals: Vec<f64> = self
            .row_map
            .iter()
            .map(|&(r, sign)| sigma * sign * ystd[r])
            .collect();
        let reduced_costs: Vec<f64> = (0..lp.num_vars())
            .map(|j| {
                lp.objective[j]
                    - lp
                        .constraints
                        .iter()
                        .zip(&duals)
                        .map(|(c, y)| c.coeffs[j] * y)
                        .sum::<f64>()
            })
            .collect();
        LpResult {
            status: LpStatus::Optimal,
            objective: lp.objective_value(&primal),
            primal,
            duals,
            reduced_costs,
            iterations,
        }
    }
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau<'a> {
    m: usize,
    ncols: usize,
    art_start: usize,
    cols: Vec<Vec<(usize, f64)>>,
    b: &'a [f64],
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    /// Row-major `B^{-1}`.
    binv: Vec<f64>,
    xb: Vec<f64>,
    iterations: usize,
    max_iterations: usize,
    since_refactor: usize,
    opts: &'a SimplexOptions,
}

impl<'a> Tableau<'a> {
    fn new(std: &'a StandardForm, opts: &'a SimplexOptions) -> Result<Self> {
        let m = std.m;
        let mut cols = std.cols.clone();
        let art_start = cols.len();
        let mut basis = Vec::with_capacity(m);
        for r in 0..m {
            match std.unit_col[r] {
                Some(j) => basis.push(j),
                None => {
                    cols.push(vec![(r, 1.0)]);
                    basis.push(cols.len() - 1);
                }
            }
        }
        let ncols = cols.len();
        let mut is_basic = vec![false; ncols];
        for &j in &basis {
            is_basic[j] = true;
        }
        let mut binv = vec![0.0; m * m];
        for r in 0..m {
            binv[r * m + r] = 1.0;
        }
        let max_iterations = opts.max_iterations.unwrap_or(50 * (ncols + m).max(1));
        Ok(Tableau {
            m,
            ncols,
            art_start,
            cols,
            b: &std.b,
            basis,
            is_basic,
            binv,
            xb: std.b.clone(),
            iterations: 0,
            max_iterations,
            since_refactor: 0,
            opts,
        })
    }

    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        let mut dense = vec![0.0; m * m];
        for (pos, &j) in self.basis.iter().enumerate() {
            for &(r, a) in &self.cols[j] {
                dense[r * m + pos] = a;
            }
        }
        let lu = Lu::factor(m, dense)
            .ok_or_else(|| Error::NumericalFailure("singular basis during refactorisation".into()))?;
        self.binv = lu.inverse();
        self.xb = lu.solve(self.b);
        for v in &mut self.xb {
            if v.abs() < 1e-13 {
                *v = 0.0;
            }
        }
        self.since_refactor = 0;
        Ok(())
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut alpha = vec![0.0; m];
        for &(r, a) in &self.cols[j] {
            for (i, al) in alpha.iter_mut().enumerate() {
                *al += self.binv[i * m + r] * a;
            }
        }
        alpha
    }

    fn row_prices(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (pos, &j) in self.basis.iter().enumerate() {
            let cb = cost[j];
            if cb != 0.0 {
                for (r, yr) in y.iter_mut().enumerate() {
                    *yr += cb * self.binv[pos * m + r];
                }
            }
        }
        y
    }

    fn reduced_cost(&self, cost: &[f64], y: &[f64], j: usize) -> f64 {
        cost[j] - self.cols[j].iter().map(|&(r, a)| y[r] * a).sum::<f64>()
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[f64]) {
        let m = self.m;
        let theta = self.xb[r] / alpha[r];
        for i in 0..m {
            if i != r {
                self.xb[i] -= theta * alpha[i];
                if self.xb[i] < 0.0 && self.xb[i] > -1e-11 {
                    self.xb[i] = 0.0;
                }
            }
        }
        self.xb[r] = theta;
        let piv = alpha[r];
        for k in 0..m {
            self.binv[r * m + k] /= piv;
        }
        for i in 0..m {
            if i != r && alpha[i] != 0.0 {
                let f = alpha[i];
                for k in 0..m {
                    self.binv[i * m + k] -= f * self.binv[r * m + k];
                }
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
        self.since_refactor += 1;
    }

    fn run(&mut self, cost: &[f64], phase1: bool) -> Result<Outcome> {
        let mut degenerate = 0usize;
        loop {
            if self.since_refactor >= self.opts.refactor_every {
                self.refactor()?;
            }
            let y = self.row_prices(cost);
            let bland = degenerate >= self.opts.bland_after;

            let mut entering: Option<(usize, Vec<f64>)> = None;
            let mut best_score = 0.0;
            for j in 0..self.ncols {
                if self.is_basic[j] || (!phase1 && j >= self.art_start) {
                    continue;
                }
                let d = self.reduced_cost(cost, &y, j);
                if d >= -COST_TOL {
                    continue;
                }
                let alpha = self.ftran(j);
                if bland {
                    entering = Some((j, alpha));
                    break;
                }
                let norm2: f64 = 1.0 + alpha.iter().map(|a| a * a).sum::<f64>();
                let score = d * d / norm2;
                if score > best_score {
                    best_score = score;
                    entering = Some((j, alpha));
                }
            }
            let Some((q, alpha)) = entering else {
                return Ok(Outcome::Optimal);
            };

            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.m {
                if alpha[i] > PIVOT_TOL {
                    let ratio = self.xb[i].max(0.0) / alpha[i];
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            if ratio < best_ratio - 1e-12 {
                                true
                            } else if ratio <= best_ratio + 1e-12 {
                                if bland {
                                    self.basis[i] < self.basis[l]
                                } else {
                                    alpha[i] > alpha[l]
                                }
                            } else {
                                false
                            }
                        }
                    };
                    if better {
                        best_ratio = best_ratio.min(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else {
                return Ok(Outcome::Unbounded);
            };

            if self.opts.trace {
                trace!(
                    "pivot {}: enter {q}, leave {} (row {r}), step {best_ratio:e}, bland={bland}",
                    self.iterations,
                    self.basis[r]
                );
            }
            degenerate = if best_ratio <= 1e-12 { degenerate + 1 } else { 0 };
            self.pivot(r, q, &alpha);
            self.iterations += 1;
            if self.iterations > self.max_iterations {
                return Err(Error::NumericalFailure(format!(
                    "iteration cap {} exceeded",
                    self.max_iterations
                )));
            }
        }
    }

    /// Pivots zero-level artificials out of the basis where possible; the
    /// ones left sit on redundant rows and never move again.
    fn drive_out_artificials(&mut self) -> Result<()> {
        let m = self.m;
        for r in 0..m {
            if self.basis[r] < self.art_start {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.art_start {
                if self.is_basic[j] {
                    continue;
                }
                let v: f64 = self.cols[j].iter().map(|&(k, a)| self.binv[r * m + k] * a).sum();
                if v.abs() > 1e-7 && best.is_none_or(|(_, bv)| v.abs() > bv) {
                    best = Some((j, v.abs()));
                }
            }
            if let Some((q, _)) = best {
                let alpha = self.ftran(q);
                self.pivot(r, q, &alpha);
            }
        }
        self.refactor()
    }
}
