use super::{GeneralLp, LpResult, LpStatus, Relation, Sense};

const PRIMAL_TOL: f64 = 1e-7;
const DUAL_TOL: f64 = 1e-6;

/// Residuals of a claimed optimal primal/dual pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub ok: bool,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub complementarity: f64,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub gap: f64,
    /// Names of the residuals that exceeded their tolerance.
    pub failures: Vec<String>,
}

/// Recomputes every optimality condition of `result` from scratch.
///
/// Works in minimisation form: for a maximisation the objective, duals and
/// reduced costs are negated first. Reduced costs are recomputed from the
/// duals rather than taken from `result`.
pub fn check_duality(lp: &GeneralLp, result: &LpResult) -> DualityReport {
    let mut failures = Vec::new();
    if result.status != LpStatus::Optimal {
        failures.push("status".to_string());
        return DualityReport {
            ok: false,
            primal_residual: f64::INFINITY,
            dual_residual: f64::INFINITY,
            complementarity: f64::INFINITY,
            primal_objective: result.objective,
            dual_objective: f64::NAN,
            gap: f64::INFINITY,
            failures,
        };
    }
    let sigma = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let x = &result.primal;
    let y: Vec<f64> = result.duals.iter().map(|v| sigma * v).collect();

    let mut primal_residual = 0.0f64;
    let mut dual_residual = 0.0f64;
    let mut complementarity = 0.0f64;
    let mut dual_objective = 0.0;

    for (row, &yi) in lp.constraints.iter().zip(&y) {
        let ax = super::dot(&row.coeffs, x);
        let slack = row.rhs - ax;
        let (viol, wrong_sign) = match row.relation {
            Relation::Le => ((-slack).max(0.0), yi.max(0.0)),
            Relation::Ge => (slack.max(0.0), (-yi).max(0.0)),
            Relation::Eq => (slack.abs(), 0.0),
        };
        primal_residual = primal_residual.max(viol);
        dual_residual = dual_residual.max(wrong_sign);
        complementarity += (yi * slack).abs();
        dual_objective += yi * row.rhs;
    }

    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        primal_residual = primal_residual
            .max((lo - x[j]).max(0.0))
            .max((x[j] - hi).max(0.0));
        let d = sigma * lp.objective[j]
            - lp
                .constraints
                .iter()
                .zip(&y)
                .map(|(r, yi)| r.coeffs[j] * yi)
                .sum::<f64>();
        if d > 0.0 {
            if lo.is_finite() {
                dual_objective += d * lo;
                complementarity += (d * (x[j] - lo)).abs();
            } else {
                dual_residual = dual_residual.max(d);
            }
        } else if d < 0.0 {
            if hi.is_finite() {
                dual_objective += d * hi;
                complementarity += (d * (hi - x[j])).abs();
            } else {
                dual_residual = dual_residual.max(-d);
            }
        }
    }

    let primal_min = sigma * lp.objective_value(x);
    let gap = (primal_min - dual_objective).abs();
    let scale = 1.0 + primal_min.abs();
    if primal_residual > PRIMAL_TOL {
        failures.push("primal_residual".into());
    }
    if dual_residual > DUAL_TOL {
        failures.push("dual_residual".into());
    }
    if gap > DUAL_TOL * scale {
        failures.push("gap".into());
    }
    if complementarity > DUAL_TOL * scale {
        failures.push("complementarity".into());
    }
    DualityReport {
        ok: failures.is_empty(),
        primal_residual,
        dual_residual,
        complementarity,
        primal_objective: sigma * primal_min,
        dual_objective: sigma * dual_objective,
        gap,
        failures,
    }
}
