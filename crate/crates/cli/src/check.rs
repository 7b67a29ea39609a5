//! `verify`: solver against brute-force oracle on one instance, or the
//! seeded random corpus.

use serde::Serialize;

use recourse_core::mcflow::{solve_incremental_mcf, solve_mcf, FlowInstance};
use recourse_core::model::format::{InstanceFile, ProblemKind};
use recourse_core::oracles::*;
use recourse_core::robinc_lp::{feasible_point, solve_incremental_dual_lp};
use recourse_core::{Error, Network, UncertaintyKind};

use crate::solve::{checked_lp, checked_network, solve, Budgets, Problem};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub problem: Problem,
    pub kind: ProblemKind,
    pub solver_path: String,
    pub oracle_path: &'static str,
    pub solver: f64,
    pub oracle: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

fn no_solution() -> Error {
    Error::NoFeasiblePath
}

/// Cost vectors the oracle ranges over: the listed U2 scenarios, or `None`
/// for the U1 box.
fn listed(net: &Network, b: &Budgets) -> Result<Option<Vec<Vec<f64>>>, Error> {
    match b.uncertainty.kind {
        UncertaintyKind::U1 => Ok(None),
        UncertaintyKind::U2 => {
            u2_scenarios(&net.nominal_costs(), &net.deviations(), b.uncertainty.count(), DEFAULT_CAP).map(Some)
        }
    }
}

/// Oracle over an enumerated family of arc sets (paths or trees).
fn family_oracle(
    family: &[Vec<usize>],
    net: &Network,
    initial: Option<&[usize]>,
    problem: Problem,
    b: &Budgets,
    d: &[f64],
) -> Result<f64, Error> {
    let (nominal, deviation) = (net.nominal_costs(), net.deviations());
    let scenarios = listed(net, b)?;
    let set = match &scenarios {
        Some(list) => ScenarioSet::Listed(list),
        None => ScenarioSet::Budgeted {
            nominal: &nominal,
            deviation: &deviation,
            gamma: b.uncertainty.gamma,
        },
    };
    let (m, metric, k) = (net.num_arcs(), b.recourse.metric, b.recourse.count());
    let need = || initial.ok_or_else(|| Error::Parse("missing field \"initial\"".into()));
    match problem {
        Problem::Nominal => unreachable!("nominal oracles are direct"),
        Problem::Incremental => Ok(oracle_incremental(family, m, need()?, metric, k, &nominal).ok_or_else(no_solution)?.0),
        Problem::Adversarial => oracle_adversarial(family, m, need()?, metric, k, set),
        Problem::Robinc => Ok(oracle_minimax(family, m, set, metric, k, d)?.value),
    }
}

fn oracle(file: &InstanceFile, problem: Problem) -> Result<(f64, &'static str), CliError> {
    let b = Budgets::of(file)?;
    let (k, gamma) = (b.recourse.k, b.uncertainty.gamma);
    let out = match file.kind {
        ProblemKind::Sp => {
            let net = checked_network(file)?;
            let (s, t) = file.endpoints(&net)?;
            if problem == Problem::Nominal {
                (bellman_ford(&net, s, t, &net.nominal_costs(), &[]), "Bellman-Ford")
            } else {
                let paths = path_sets(&enumerate_paths(&net, s, t, DEFAULT_CAP)?);
                let p0 = file.initial.as_ref().map(|_| file.initial_path(&net)).transpose()?;
                let init = p0.as_ref().map(|p| p.arcs.as_slice());
                let v = family_oracle(&paths, &net, init, problem, &b, &file.initial_cost_vector())?;
                (v, "path enumeration")
            }
        }
        ProblemKind::Mst => {
            let net = checked_network(file)?;
            if problem == Problem::Nominal {
                (prim(&net, &net.nominal_costs(), &[]), "Prim")
            } else {
                let trees = tree_sets(&enumerate_spanning_trees(&net, DEFAULT_CAP)?);
                let t0 = file.initial.as_ref().map(|_| file.initial_tree(&net)).transpose()?;
                let init = t0.as_ref().map(|t| t.arcs.as_slice());
                let v = family_oracle(&trees, &net, init, problem, &b, &file.initial_cost_vector())?;
                (v, "tree enumeration")
            }
        }
        ProblemKind::Lp => {
            let inst = checked_lp(file)?;
            let c = &inst.nominal_cost;
            match (problem, b.uncertainty.kind) {
                (Problem::Nominal, _) => {
                    let x = feasible_point(&inst, None)?;
                    (solve_incremental_dual_lp(&inst, &x, f64::INFINITY, c)?.objective, "dual LP")
                }
                (Problem::Incremental, _) => {
                    let x = file.initial_values()?;
                    (solve_incremental_dual_lp(&inst, &x, k, c)?.objective, "dual LP")
                }
                (Problem::Adversarial, UncertaintyKind::U1) => {
                    let x = file.initial_values()?;
                    (oracle_adversarial_lp_u1(&inst, &x, k, gamma)?, "vertex epigraph LP")
                }
                (Problem::Adversarial, UncertaintyKind::U2) => {
                    let x = file.initial_values()?;
                    let scen = u2_scenarios(c, &inst.deviation, b.uncertainty.count(), DEFAULT_CAP)?;
                    let mut worst = f64::NEG_INFINITY;
                    for cost in &scen {
                        worst = worst.max(solve_incremental_dual_lp(&inst, &x, k, cost)?.objective);
                    }
                    (worst, "scenario list, dual LP")
                }
                (Problem::Robinc, _) => {
                    let report = solve(file, problem)?;
                    let x: Vec<f64> = serde_json::from_value(report.initial.unwrap_or_default()).map_err(Error::from)?;
                    let d = file.initial_cost_vector();
                    let first = recourse_core::lp::dot(&d, &x);
                    (first + oracle_adversarial_lp_u1(&inst, &x, k, gamma)?, "vertex epigraph LP at the returned point")
                }
            }
        }
        ProblemKind::Mcf => {
            let inst = FlowInstance::new(checked_network(file)?)?;
            let c = inst.network.nominal_costs();
            match (problem, b.uncertainty.kind) {
                (Problem::Nominal, _) => (solve_mcf(&inst, &c)?.dual_objective, "node potentials"),
                (Problem::Incremental, _) => {
                    let x = file.initial_values()?;
                    (solve_incremental_mcf(&inst, &x, k, &c)?.dual.objective, "dual multipliers")
                }
                (Problem::Adversarial, UncertaintyKind::U2) => {
                    let x = file.initial.as_ref().map(|_| file.initial_values()).transpose()?;
                    let scen = listed(&inst.network, &b)?.unwrap_or_default();
                    let mut worst = f64::NEG_INFINITY;
                    for cost in &scen {
                        let v = match &x {
                            Some(x) => solve_incremental_mcf(&inst, x, k, cost)?.objective,
                            None => solve_mcf(&inst, cost)?.objective,
                        };
                        worst = worst.max(v);
                    }
                    (worst, "scenario list")
                }
                _ => return Err(Error::Unsupported("no flow oracle for this problem under U1".into()).into()),
            }
        }
    };
    Ok(out)
}

/// Solves `file` and compares with the oracle. `tolerance` is absolute.
pub fn check(file: &InstanceFile, problem: Problem, tolerance: f64) -> Result<CheckReport, CliError> {
    let report = solve(file, problem)?;
    let (oracle_value, oracle_path) = oracle(file, problem)?;
    let gap = (report.objective - oracle_value).abs();
    let agree = gap <= tolerance || report.objective == oracle_value;
    Ok(CheckReport {
        problem,
        kind: file.kind,
        solver_path: report.solver,
        oracle_path,
        solver: report.objective,
        oracle: oracle_value,
        gap,
        tolerance,
        agree,
        wall_time_ms: None,
    })
}
