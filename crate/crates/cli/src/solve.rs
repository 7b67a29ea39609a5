//! `solve`: dispatch from (problem, kind, uncertainty, metric) to a solver.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use recourse_core::mcflow::{
    solve_adversarial_mcf_u1, solve_adversarial_mcf_u2, solve_incremental_mcf, solve_mcf, solve_robinc_mcf,
    FlowInstance,
};
use recourse_core::model::format::{InstanceFile, ProblemKind};
use recourse_core::model::Validate;
use recourse_core::mst::{
    maximize_lagrangian, solve_adversarial_mst_u1, solve_adversarial_mst_u2, solve_incremental_mst, solve_mst,
};
use recourse_core::robinc_lp::{
    feasible_point, solve_adversarial_lp_u1, solve_adversarial_u2_bruteforce, solve_incremental_lp, solve_robinc_lp,
};
use recourse_core::shortest_path::{
    solve_adversarial_sp_u1, solve_adversarial_sp_u1_enum, solve_adversarial_sp_u2, solve_incremental_sp_enum,
    solve_incremental_sp_inclusion, solve_robinc_sp_exact, solve_sp,
};
use recourse_core::{
    DistanceMetric, Error, LpInstance, Network, Path, RecourseBudget, UncertaintyBudget, UncertaintyKind,
};

use crate::report::by_id;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Nominal,
    Incremental,
    Adversarial,
    Robinc,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub problem: Problem,
    pub kind: ProblemKind,
    /// Solver path taken.
    pub solver: String,
    pub objective: f64,
    /// Recourse solution, or the nominal optimum.
    pub solution: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl SolveReport {
    fn new(problem: Problem, kind: ProblemKind, solver: impl Into<String>, objective: f64, solution: Value) -> Self {
        SolveReport {
            problem,
            kind,
            solver: solver.into(),
            objective,
            solution,
            initial: None,
            scenario: None,
            certificate: None,
            trace: Vec::new(),
            wall_time_ms: None,
        }
    }

    fn scenario(mut self, v: Value) -> Self {
        self.scenario = Some(v);
        self
    }

    fn certificate<T: Serialize>(mut self, c: &T) -> Self {
        self.certificate = Some(serde_json::to_value(c).expect("certificates serialise"));
        self
    }

    fn initial(mut self, v: Value) -> Self {
        self.initial = Some(v);
        self
    }
}

/// Budgets of an instance, parsed and checked.
pub struct Budgets {
    pub uncertainty: UncertaintyBudget,
    pub recourse: RecourseBudget,
}

impl Budgets {
    pub fn of(file: &InstanceFile) -> Result<Self, Error> {
        Ok(Budgets {
            uncertainty: file.uncertainty_budget()?,
            recourse: file.recourse_budget()?,
        })
    }
}

pub fn checked_lp(file: &InstanceFile) -> Result<LpInstance, CliError> {
    let inst = file.to_lp()?;
    let issues = inst.validate();
    if issues.is_empty() {
        Ok(inst)
    } else {
        Err(CliError::Invalid(issues))
    }
}

pub fn checked_network(file: &InstanceFile) -> Result<Network, CliError> {
    let net = file.to_network()?;
    let issues = net.validate();
    if issues.is_empty() {
        Ok(net)
    } else {
        Err(CliError::Invalid(issues))
    }
}

fn unsupported(what: String) -> CliError {
    Error::Unsupported(what).into()
}

fn require_metric(problem: Problem, b: &Budgets, allowed: &[DistanceMetric], kind: &str) -> Result<(), CliError> {
    if problem != Problem::Nominal && !allowed.contains(&b.recourse.metric) {
        return Err(unsupported(format!("{kind} with metric {:?}", b.recourse.metric)));
    }
    Ok(())
}

fn ids(net: &Network) -> Vec<String> {
    net.arcs.iter().map(|a| a.id.clone()).collect()
}

fn path_value(net: &Network, p: &Path) -> Value {
    json!(p.ids(net))
}

fn raised_ids(net: &Network, raised: impl IntoIterator<Item = usize>) -> Value {
    json!({ "raised": raised.into_iter().map(|a| net.arcs[a].id.clone()).collect::<Vec<_>>() })
}

fn u2_cost(nominal: &[f64], deviation: &[f64], delta: &[f64]) -> Vec<f64> {
    nominal.iter().zip(deviation).zip(delta).map(|((c, d), z)| c + d * z).collect()
}

pub fn solve(file: &InstanceFile, problem: Problem) -> Result<SolveReport, CliError> {
    let b = Budgets::of(file)?;
    match file.kind {
        ProblemKind::Lp => solve_lp(file, problem, &b),
        ProblemKind::Sp => solve_path(file, problem, &b),
        ProblemKind::Mst => solve_tree(file, problem, &b),
        ProblemKind::Mcf => solve_flow(file, problem, &b),
    }
}

fn solve_lp(file: &InstanceFile, problem: Problem, b: &Budgets) -> Result<SolveReport, CliError> {
    let inst = checked_lp(file)?;
    require_metric(problem, b, &[DistanceMetric::L1], "lp")?;
    let (k, gamma) = (b.recourse.k, b.uncertainty.gamma);
    let kind = ProblemKind::Lp;
    let report = match (problem, b.uncertainty.kind) {
        (Problem::Nominal, _) => {
            let x = feasible_point(&inst, Some(&inst.nominal_cost))?;
            let v = recourse_core::lp::dot(&inst.nominal_cost, &x);
            SolveReport::new(problem, kind, "LP", v, json!(x))
        }
        (Problem::Incremental, _) => {
            let x = file.initial_values()?;
            let sol = solve_incremental_lp(&inst, &x, k, &inst.nominal_cost)?;
            SolveReport::new(problem, kind, "LP reformulation", sol.objective, json!(sol.y)).certificate(&sol.dual)
        }
        (Problem::Adversarial, UncertaintyKind::U1) => {
            let x = file.initial_values()?;
            let (v, cert) = solve_adversarial_lp_u1(&inst, &x, k, gamma)?;
            let y = solve_incremental_lp(&inst, &x, k, &inst.realized_cost(&cert.delta))?.y;
            SolveReport::new(problem, kind, "LP reformulation", v, json!(y))
                .scenario(json!({ "delta": cert.delta }))
                .certificate(&cert)
        }
        (Problem::Adversarial, UncertaintyKind::U2) => {
            let x = file.initial_values()?;
            let (v, delta) = solve_adversarial_u2_bruteforce(&inst, &x, k, b.uncertainty.count())?;
            let y = solve_incremental_lp(&inst, &x, k, &u2_cost(&inst.nominal_cost, &inst.deviation, &delta))?.y;
            SolveReport::new(problem, kind, "enumeration", v, json!(y)).scenario(json!({ "delta": delta }))
        }
        (Problem::Robinc, UncertaintyKind::U1) => {
            let sol = solve_robinc_lp(&inst, k, gamma)?;
            let y = solve_incremental_lp(&inst, &sol.x, k, &inst.realized_cost(&sol.certificate.delta))?.y;
            SolveReport::new(problem, kind, "LP reformulation", sol.value, json!(y))
                .initial(json!(sol.x))
                .scenario(json!({ "delta": sol.certificate.delta }))
                .certificate(&sol.certificate)
        }
        (Problem::Robinc, UncertaintyKind::U2) => return Err(unsupported("robust incremental lp under U2".into())),
    };
    Ok(report)
}

fn solve_path(file: &InstanceFile, problem: Problem, b: &Budgets) -> Result<SolveReport, CliError> {
    let net = checked_network(file)?;
    use DistanceMetric::*;
    require_metric(problem, b, &[Inclusion, Exclusion, SymDiff], "sp")?;
    let (s, t) = file.endpoints(&net)?;
    let c = net.nominal_costs();
    let (k, metric) = (b.recourse.count(), b.recourse.metric);
    let kind = ProblemKind::Sp;
    let initial = || -> Result<Path, Error> {
        let p0 = file.initial_path(&net)?;
        p0.check(&net, s, t)?;
        Ok(p0)
    };
    let recourse = |cost: &[f64], p0: &Path| -> Result<(f64, Path), Error> {
        if metric == Inclusion {
            solve_incremental_sp_inclusion(&net, p0, k, cost)
        } else {
            solve_incremental_sp_enum(&net, p0, k, metric, cost)
        }
    };
    let report = match (problem, b.uncertainty.kind) {
        (Problem::Nominal, _) => {
            let (v, p) = solve_sp(&net, s, t, &c)?;
            SolveReport::new(problem, kind, "Dijkstra", v, path_value(&net, &p))
        }
        (Problem::Incremental, _) => {
            let p0 = initial()?;
            let (v, p) = recourse(&c, &p0)?;
            let solver = if metric == Inclusion { "DAG" } else { "enumeration" };
            SolveReport::new(problem, kind, solver, v, path_value(&net, &p))
        }
        (Problem::Adversarial, UncertaintyKind::U1) if metric == Inclusion => {
            let p0 = initial()?;
            let (v, cert) = solve_adversarial_sp_u1(&net, &p0, k, b.uncertainty.gamma)?;
            let cost: Vec<f64> = c.iter().zip(&cert.delta).map(|(a, d)| a + d).collect();
            let (_, p) = recourse(&cost, &p0)?;
            SolveReport::new(problem, kind, "LP reformulation", v, path_value(&net, &p))
                .scenario(json!({ "delta": by_id(&ids(&net), &cert.delta) }))
                .certificate(&cert)
        }
        (Problem::Adversarial, UncertaintyKind::U1) => {
            let p0 = initial()?;
            let v = solve_adversarial_sp_u1_enum(&net, &p0, k, metric, b.uncertainty.gamma)?;
            SolveReport::new(problem, kind, "enumeration", v, Value::Null)
        }
        (Problem::Adversarial, UncertaintyKind::U2) => {
            let p0 = initial()?;
            let (v, delta) = solve_adversarial_sp_u2(&net, &p0, k, metric, b.uncertainty.count())?;
            let (_, p) = recourse(&u2_cost(&c, &net.deviations(), &delta), &p0)?;
            let raised = delta.iter().enumerate().filter(|(_, z)| **z > 0.0).map(|(a, _)| a);
            SolveReport::new(problem, kind, "enumeration", v, path_value(&net, &p)).scenario(raised_ids(&net, raised))
        }
        (Problem::Robinc, _) => {
            let d = file.initial_cost_vector();
            let sol = solve_robinc_sp_exact(&net, s, t, k, metric, b.uncertainty, &d)?;
            let inner = match sol.method {
                "lp" => "LP reformulation",
                _ => "enumeration",
            };
            SolveReport::new(problem, kind, format!("enumeration of initial paths, {inner} inside"), sol.value, Value::Null)
                .initial(path_value(&net, &sol.initial))
                .certificate(&json!({ "adversarial": sol.adversarial }))
        }
    };
    Ok(report)
}

fn solve_tree(file: &InstanceFile, problem: Problem, b: &Budgets) -> Result<SolveReport, CliError> {
    let net = checked_network(file)?;
    use DistanceMetric::*;
    require_metric(problem, b, &[Inclusion, Exclusion, SymDiff], "mst")?;
    // Trees share their size, so every combinatorial metric counts new arcs.
    let k = match b.recourse.metric {
        SymDiff => b.recourse.count() / 2,
        _ => b.recourse.count(),
    };
    let c = net.nominal_costs();
    let kind = ProblemKind::Mst;
    let tree_value = |t: &recourse_core::SpanningTree| json!(t.ids(&net));
    let report = match (problem, b.uncertainty.kind) {
        (Problem::Nominal, _) => {
            let (tree, v) = solve_mst(&net, &c)?;
            SolveReport::new(problem, kind, "Kruskal", v, tree_value(&tree))
        }
        (Problem::Incremental, _) => {
            let t0 = file.initial_tree(&net)?;
            let (v, tree) = solve_incremental_mst(&net, &t0, k, &c)?;
            let (_, lambda, dual) = maximize_lagrangian(&net, &t0, k, &c)?;
            SolveReport::new(problem, kind, "Lagrangian", v, tree_value(&tree))
                .certificate(&json!({ "lambda": lambda, "dual": dual }))
        }
        (Problem::Adversarial, UncertaintyKind::U1) => {
            let t0 = file.initial_tree(&net)?;
            let (v, sol) = solve_adversarial_mst_u1(&net, &t0, k, b.uncertainty.gamma)?;
            let cost: Vec<f64> = c.iter().zip(&sol.delta).map(|(a, d)| a + d).collect();
            let (_, tree) = solve_incremental_mst(&net, &t0, k, &cost)?;
            let mut report = SolveReport::new(problem, kind, "cutting-plane", v, tree_value(&tree))
                .scenario(json!({ "delta": by_id(&ids(&net), &sol.delta) }))
                .certificate(&json!({
                    "initial_cuts": sol.initial_cuts,
                    "generated_cuts": sol.generated_cuts(),
                    "recomputed": sol.recomputed,
                }));
            report.trace = sol.trace;
            report
        }
        (Problem::Adversarial, UncertaintyKind::U2) => {
            let t0 = file.initial_tree(&net)?;
            let (v, raised) = solve_adversarial_mst_u2(&net, &t0, k, b.uncertainty.count())?;
            let mut cost = c.clone();
            for &a in &raised {
                cost[a] += net.arcs[a].deviation;
            }
            let (_, tree) = solve_incremental_mst(&net, &t0, k, &cost)?;
            SolveReport::new(problem, kind, "enumeration", v, tree_value(&tree)).scenario(raised_ids(&net, raised))
        }
        (Problem::Robinc, _) => return Err(unsupported("robust incremental spanning tree".into())),
    };
    Ok(report)
}

fn solve_flow(file: &InstanceFile, problem: Problem, b: &Budgets) -> Result<SolveReport, CliError> {
    let net = checked_network(file)?;
    require_metric(problem, b, &[DistanceMetric::L1], "mcf")?;
    let names = ids(&net);
    let inst = FlowInstance::new(net)?;
    let c = inst.network.nominal_costs();
    let (k, gamma) = (b.recourse.k, b.uncertainty.gamma);
    let kind = ProblemKind::Mcf;
    let flow = |x: &[f64]| by_id(&names, x);
    let report = match (problem, b.uncertainty.kind) {
        (Problem::Nominal, _) => {
            let sol = solve_mcf(&inst, &c)?;
            SolveReport::new(problem, kind, "LP", sol.objective, flow(&sol.flow.values))
                .certificate(&json!({ "potentials": sol.potentials, "dual_objective": sol.dual_objective }))
        }
        (Problem::Incremental, _) => {
            let x = file.initial_values()?;
            let sol = solve_incremental_mcf(&inst, &x, k, &c)?;
            SolveReport::new(problem, kind, "LP reformulation", sol.objective, flow(&sol.y)).certificate(&sol.dual)
        }
        (Problem::Adversarial, UncertaintyKind::U1) => {
            let x = file.initial_values()?;
            let (v, cert) = solve_adversarial_mcf_u1(&inst, &x, k, gamma)?;
            let cost: Vec<f64> = c.iter().zip(&cert.delta).map(|(a, d)| a + d).collect();
            let y = solve_incremental_mcf(&inst, &x, k, &cost)?.y;
            SolveReport::new(problem, kind, "LP reformulation", v, flow(&y))
                .scenario(json!({ "delta": by_id(&names, &cert.delta) }))
                .certificate(&cert)
        }
        (Problem::Adversarial, UncertaintyKind::U2) => {
            let x = file.initial.as_ref().map(|_| file.initial_values()).transpose()?;
            let (v, raised) = solve_adversarial_mcf_u2(&inst, x.as_deref(), k, b.uncertainty.count())?;
            let mut cost = c.clone();
            for &a in &raised {
                cost[a] += inst.network.arcs[a].deviation;
            }
            let y = match &x {
                Some(x) => solve_incremental_mcf(&inst, x, k, &cost)?.y,
                None => solve_mcf(&inst, &cost)?.flow.values,
            };
            SolveReport::new(problem, kind, "enumeration", v, flow(&y)).scenario(raised_ids(&inst.network, raised))
        }
        (Problem::Robinc, UncertaintyKind::U1) => {
            let d = file.initial_cost_vector();
            let sol = solve_robinc_mcf(&inst, &d, k, gamma)?;
            let cost: Vec<f64> = c.iter().zip(&sol.certificate.delta).map(|(a, d)| a + d).collect();
            let y = solve_incremental_mcf(&inst, &sol.x, k, &cost)?.y;
            SolveReport::new(problem, kind, "LP reformulation", sol.value, flow(&y))
                .initial(flow(&sol.x))
                .scenario(json!({ "delta": by_id(&names, &sol.certificate.delta) }))
                .certificate(&sol.certificate)
        }
        (Problem::Robinc, UncertaintyKind::U2) => return Err(unsupported("robust incremental flow under U2".into())),
    };
    Ok(report)
}
