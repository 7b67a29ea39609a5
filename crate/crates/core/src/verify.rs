//! Seeded verification corpus: each tractable solver and each gadget value
//! is checked against a brute-force oracle on small random instances.
//!
//! Criteria are numbered 1 to 11. Criteria 1 to 10 each run one corpus;
//! criterion 11 bounds the total time of the other ten.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generate::*;
use crate::lp::dot;
use crate::mcflow::{build_interdiction_gadget, InterdictionGadget};
use crate::mst::{maximize_lagrangian, solve_adversarial_mst_u1, solve_incremental_mst};
use crate::oracles::*;
use crate::robinc_lp::{
    feasible_point, solve_adversarial_lp_u1, solve_incremental_dual_lp, solve_incremental_lp, solve_robinc_lp,
};
use crate::shortest_path::{
    build_symdiff_gadget, build_theorem4_gadget, solve_adversarial_sp_u1, solve_adversarial_sp_u2,
    solve_incremental_sp_enum, solve_incremental_sp_inclusion, solve_robinc_sp_exact,
};
use crate::{DistanceMetric, Network, Path, Result, SpanningTree, UncertaintyBudget};

/// Agreement required between a solver and its oracle.
pub const GAP_TOL: f64 = 1e-6;
/// Agreement required for the pair-gadget values.
pub const GADGET_TOL: f64 = 1e-9;
/// Time limit for criterion 1, in seconds.
pub const DUAL_CHAIN_SECONDS: f64 = 30.0;
/// Time limit for criteria 1 to 10 together, in seconds.
pub const CORPUS_SECONDS: f64 = 300.0;
/// Cutting-plane rounds allowed per adversarial tree instance.
pub const MAX_CUTS: usize = 100;

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "LP adversary: primal, dual and inner value agree"),
    (2, "LP robust incremental: single LP equals re-evaluation"),
    (3, "incremental path: layered solver equals enumeration"),
    (4, "adversarial path over U1: LP equals vertex oracle"),
    (5, "pair gadget under U1: robust value 0.5 (yes) or 1 (no)"),
    (6, "pair gadget under U2: zero worst case iff yes"),
    (7, "symmetric-difference gadget: value n+1 iff yes"),
    (8, "interdiction gadget: positive worst case iff yes"),
    (9, "tree Lagrangian equals enumeration"),
    (10, "adversarial tree over U1: cutting plane equals oracle"),
    (11, "criteria 1 to 10 within the time limit"),
];

pub fn title(id: u8) -> &'static str {
    CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1)
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// Largest gap seen against a reference value.
    pub max_gap: f64,
    pub first_failure: Option<String>,
    pub seconds: f64,
}

impl CriterionReport {
    /// One line of the form `criterion N: PASS ...`.
    pub fn summary(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {}: {status} ({} cases, {} failed, max gap {:.3e}, {:.2}s) {}",
            self.id, self.cases, self.failures, self.max_gap, self.seconds, self.title
        );
        if let Some(f) = &self.first_failure {
            line.push_str(&format!(" | first failure: {f}"));
        }
        line
    }
}

#[derive(Debug, Clone)]
pub struct CorpusOptions {
    pub seed: u64,
    /// Worker threads; criteria are distributed over them.
    pub jobs: usize,
    /// Criteria to run, from 1 to 10.
    pub criteria: Vec<u8>,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            seed: 0,
            jobs: 1,
            criteria: (1..=10).collect(),
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    max_gap: f64,
    first_failure: Option<String>,
}

impl Tally {
    fn fail(&mut self, msg: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(msg);
    }

    /// Runs one case; an error counts as a failure.
    fn case(&mut self, label: impl Fn() -> String, f: impl FnOnce(&mut Tally) -> Result<()>) {
        self.cases += 1;
        let had_failure = self.first_failure.is_some();
        if let Err(e) = f(self) {
            self.fail(e.to_string());
        }
        if !had_failure {
            self.first_failure = self.first_failure.take().map(|msg| format!("{}: {msg}", label()));
        }
    }

    fn gap(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let gap = (got - want).abs();
        if gap.is_finite() {
            self.max_gap = self.max_gap.max(gap);
        }
        if !(gap <= tol) {
            self.fail(format!("{what} {got} vs {want}"));
        }
    }

    fn exact(&mut self, what: &str, got: f64, want: f64) {
        self.gap(what, got, want, 0.0);
    }

    fn holds(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }

    fn report(self, id: u8, seconds: f64) -> CriterionReport {
        CriterionReport {
            id,
            title: title(id),
            passed: self.failures == 0,
            cases: self.cases,
            failures: self.failures,
            max_gap: self.max_gap,
            first_failure: self.first_failure,
            seconds,
        }
    }
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ u64::from(id))
}

fn graph(nodes: usize, arcs: usize) -> GraphParams {
    GraphParams {
        nodes,
        arcs,
        ..Default::default()
    }
}

fn lp_case(rng: &mut ChaCha8Rng) -> crate::LpInstance {
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(1..=5.min(n));
    random_lp(
        rng,
        &LpParams {
            num_vars: n,
            num_constraints: m,
            ..Default::default()
        },
    )
}

fn dual_chain(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..200 {
        let inst = lp_case(rng);
        let n = inst.num_vars();
        let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let k = rng.gen_range(0.0..3.0);
        let gamma = rng.gen_range(0.0..3.0);
        t.case(
            || format!("instance {i}"),
            |t| {
                let x = feasible_point(&inst, Some(&dir))?;
                let (adv, cert) = solve_adversarial_lp_u1(&inst, &x, k, gamma)?;
                let c = inst.realized_cost(&cert.delta);
                let inner = solve_incremental_lp(&inst, &x, k, &c)?;
                let inner_dual = solve_incremental_dual_lp(&inst, &x, k, &c)?;
                t.gap("adversary primal vs dual", cert.primal_objective, cert.dual_objective, GAP_TOL);
                t.gap("adversary vs inner value", adv, inner.objective, GAP_TOL);
                t.gap("inner primal vs dual", inner.objective, inner_dual.objective, GAP_TOL);
                t.holds(cert.delta_violation(&inst.deviation, gamma) <= 1e-9, || "δ outside U1".into());
                Ok(())
            },
        );
    }
}

fn robinc_consistency(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..100 {
        let inst = lp_case(rng);
        let n = inst.num_vars();
        let k = rng.gen_range(0.0..2.0);
        let gamma = rng.gen_range(0.0..2.0);
        let dirs: Vec<Vec<f64>> = (0..20).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        t.case(
            || format!("instance {i}"),
            |t| {
                let value_at = |x: &[f64]| -> Result<f64> {
                    let (_, cert) = solve_adversarial_lp_u1(&inst, x, k, gamma)?;
                    let inner = solve_incremental_lp(&inst, x, k, &inst.realized_cost(&cert.delta))?;
                    Ok(dot(&inst.initial_cost, x) + inner.objective)
                };
                let sol = solve_robinc_lp(&inst, k, gamma)?;
                t.gap("single LP vs re-evaluation", sol.value, value_at(&sol.x)?, GAP_TOL);
                for dir in &dirs {
                    let other = value_at(&feasible_point(&inst, Some(dir))?)?;
                    t.holds(other >= sol.value - GAP_TOL, || format!("sampled point {other} beats {}", sol.value));
                }
                Ok(())
            },
        );
    }
}

fn sp_case(rng: &mut ChaCha8Rng, max_nodes: usize, max_arcs: usize) -> (Network, usize, usize, Path) {
    let nodes = rng.gen_range(3..=max_nodes);
    let arcs = rng.gen_range(nodes..=max_arcs);
    random_sp_network(rng, &graph(nodes, arcs))
}

fn incremental_paths(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..100 {
        let (net, s, tt, p0) = sp_case(rng, 8, 16);
        t.case(
            || format!("graph {i}"),
            |t| {
                let paths = path_sets(&enumerate_paths(&net, s, tt, DEFAULT_CAP)?);
                let c = net.nominal_costs();
                for k in 0..=2 {
                    let (v, _) = solve_incremental_sp_inclusion(&net, &p0, k, &c)?;
                    let (o, _) =
                        oracle_incremental(&paths, net.num_arcs(), &p0.arcs, DistanceMetric::Inclusion, k, &c)
                            .ok_or(crate::Error::NoFeasiblePath)?;
                    t.exact(&format!("K={k}"), v, o);
                }
                Ok(())
            },
        );
    }
}

fn adversarial_paths(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..50 {
        let (net, s, tt, p0) = sp_case(rng, 7, 10);
        t.case(
            || format!("graph {i}"),
            |t| {
                let paths = path_sets(&enumerate_paths(&net, s, tt, DEFAULT_CAP)?);
                let (nominal, deviation) = (net.nominal_costs(), net.deviations());
                for gamma in [0.0, 0.7, 1.0, 2.0] {
                    for k in 0..=1 {
                        let (v, _) = solve_adversarial_sp_u1(&net, &p0, k, gamma)?;
                        let set = ScenarioSet::Budgeted {
                            nominal: &nominal,
                            deviation: &deviation,
                            gamma,
                        };
                        let o = oracle_adversarial(&paths, net.num_arcs(), &p0.arcs, DistanceMetric::Inclusion, k, set)?;
                        t.gap(&format!("Γ={gamma} K={k}"), v, o, GAP_TOL);
                    }
                }
                Ok(())
            },
        );
    }
}

/// The four fixed bases followed by small random ones.
fn two_pair_bases(rng: &mut ChaCha8Rng) -> Vec<TwoPairBase> {
    let mut bases = vec![disjoint_arcs_base(), crossing_yes_base(), shared_node_base(), bottleneck_no_base()];
    for _ in 0..6 {
        let extra = rng.gen_range(0..=2);
        let arcs = rng.gen_range(3..=7);
        bases.push(random_two_pair_base(rng, extra, arcs));
    }
    bases
}

fn pair_gadget_continuous(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (i, base) in two_pair_bases(rng).iter().enumerate() {
        t.case(
            || format!("base {i}"),
            |t| {
                let g = build_theorem4_gadget(&base.network, base.s1, base.t1, base.s2, base.t2)?;
                let d = vec![0.0; g.network.num_arcs()];
                let budget = UncertaintyBudget::u1(1.0);
                let sol = solve_robinc_sp_exact(&g.network, g.source, g.sink, 1, DistanceMetric::Inclusion, budget, &d)?;
                let yes = has_disjoint_paths(base);
                let want = if yes { 0.5 } else { 1.0 };
                t.gap(if yes { "yes base" } else { "no base" }, sol.value, want, GADGET_TOL);
                Ok(())
            },
        );
    }
}

fn pair_gadget_discrete(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (i, base) in two_pair_bases(rng).iter().enumerate() {
        t.case(
            || format!("base {i}"),
            |t| {
                let g = build_theorem4_gadget(&base.network, base.s1, base.t1, base.s2, base.t2)?;
                let m = g.network.num_arcs();
                let all = enumerate_paths(&g.network, g.source, g.sink, DEFAULT_CAP)?;
                let paths = path_sets(&all);
                let scen = u2_scenarios(&g.network.nominal_costs(), &g.network.deviations(), 1, DEFAULT_CAP)?;
                let mut best = f64::INFINITY;
                for p0 in &all {
                    let (v, _) = solve_adversarial_sp_u2(&g.network, p0, 1, DistanceMetric::Inclusion, 1)?;
                    let (o, _) = oracle_adversarial_listed(&paths, m, &p0.arcs, DistanceMetric::Inclusion, 1, &scen)
                        .ok_or(crate::Error::NoFeasiblePath)?;
                    t.exact("worst case of an initial path", v, o);
                    best = best.min(v);
                }
                let yes = has_disjoint_paths(base);
                t.holds((best == 0.0) == yes, || format!("yes={yes} but best worst case {best}"));
                Ok(())
            },
        );
    }
}

fn symdiff_gadget(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for (i, base) in two_pair_bases(rng).iter().enumerate() {
        t.case(
            || format!("base {i}"),
            |t| {
                let g = build_symdiff_gadget(&base.network, base.s1, base.t1, base.s2, base.t2)?;
                let c = g.network.nominal_costs();
                let (v, _) = solve_incremental_sp_enum(&g.network, &g.initial, g.k, DistanceMetric::SymDiff, &c)?;
                let paths = path_sets(&enumerate_paths(&g.network, g.source, g.sink, DEFAULT_CAP)?);
                let (o, _) = oracle_incremental(&paths, g.network.num_arcs(), &g.initial.arcs, DistanceMetric::SymDiff, g.k, &c)
                    .ok_or(crate::Error::NoFeasiblePath)?;
                t.exact("solver vs enumeration", v, o);
                let target = base.network.num_nodes() as f64 + 1.0;
                if has_disjoint_paths(base) {
                    t.exact("yes base", v, target);
                } else {
                    t.holds(v > target, || format!("no base reaches {v} <= {target}"));
                }
                Ok(())
            },
        );
    }
}

fn interdiction(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..20 {
        let nodes = rng.gen_range(3..=6);
        let arcs = rng.gen_range(nodes..=12);
        let (base, s, tt, k) = random_interdiction_base(rng, nodes, arcs, 3);
        t.case(
            || format!("base {i}"),
            |t| {
                for gamma in 0..=3 {
                    let g = build_interdiction_gadget(&base, s, tt, k, gamma)?;
                    let (v, _) = g.adversarial_value()?;
                    let yes = interdiction_oracle(&base, s, tt, f64::from(k), gamma)?.is_some();
                    t.holds(InterdictionGadget::is_positive(v) == yes, || {
                        format!("Γ={gamma}: worst case {v} but interdiction answer {yes}")
                    });
                }
                Ok(())
            },
        );
    }
}

fn tree_case(rng: &mut ChaCha8Rng, max_arcs: usize) -> (Network, SpanningTree) {
    let nodes = rng.gen_range(2..=6);
    let arcs = rng.gen_range(nodes - 1..=max_arcs);
    let net = random_connected_graph(rng, &graph(nodes, arcs));
    let t0 = random_spanning_tree(rng, &net);
    (net, t0)
}

fn tree_lagrangian(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..50 {
        let (net, t0) = tree_case(rng, 11);
        t.case(
            || format!("graph {i}"),
            |t| {
                let trees = tree_sets(&enumerate_spanning_trees(&net, DEFAULT_CAP)?);
                let c = net.nominal_costs();
                for k in 0..net.num_nodes() {
                    let (l, _, _) = maximize_lagrangian(&net, &t0, k, &c)?;
                    let (v, _) = solve_incremental_mst(&net, &t0, k, &c)?;
                    let (o, _) = oracle_incremental(&trees, net.num_arcs(), &t0.arcs, DistanceMetric::Inclusion, k, &c)
                        .ok_or(crate::Error::Disconnected)?;
                    t.exact(&format!("Lagrangian K={k}"), l, o);
                    t.exact(&format!("tree K={k}"), v, o);
                }
                Ok(())
            },
        );
    }
}

fn adversarial_trees(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for i in 0..30 {
        let (net, t0) = tree_case(rng, 9);
        t.case(
            || format!("graph {i}"),
            |t| {
                let trees = tree_sets(&enumerate_spanning_trees(&net, DEFAULT_CAP)?);
                let (nominal, deviation) = (net.nominal_costs(), net.deviations());
                for gamma in [0.0, 1.0, 2.0] {
                    for k in 0..=2 {
                        let (v, sol) = solve_adversarial_mst_u1(&net, &t0, k, gamma)?;
                        let set = ScenarioSet::Budgeted {
                            nominal: &nominal,
                            deviation: &deviation,
                            gamma,
                        };
                        let o = oracle_adversarial(&trees, net.num_arcs(), &t0.arcs, DistanceMetric::Inclusion, k, set)?;
                        t.gap(&format!("Γ={gamma} K={k}"), v, o, GAP_TOL);
                        let cuts = sol.generated_cuts();
                        t.holds(cuts < MAX_CUTS, || format!("Γ={gamma} K={k}: {cuts} cuts"));
                    }
                }
                Ok(())
            },
        );
    }
}

/// Runs one of criteria 1 to 10.
pub fn run_criterion(id: u8, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, id);
    let mut t = Tally::default();
    let body: fn(&mut ChaCha8Rng, &mut Tally) = match id {
        1 => dual_chain,
        2 => robinc_consistency,
        3 => incremental_paths,
        4 => adversarial_paths,
        5 => pair_gadget_continuous,
        6 => pair_gadget_discrete,
        7 => symdiff_gadget,
        8 => interdiction,
        9 => tree_lagrangian,
        10 => adversarial_trees,
        _ => |_, t| t.fail("no such criterion".into()),
    };
    body(&mut rng, &mut t);
    let seconds = start.elapsed().as_secs_f64();
    if id == 1 && seconds >= DUAL_CHAIN_SECONDS {
        t.fail(format!("took {seconds:.1}s, limit {DUAL_CHAIN_SECONDS}s"));
    }
    t.report(id, seconds)
}

/// Runs the selected criteria on `jobs` threads, sorted by id. When all of
/// 1 to 10 are selected, criterion 11 is appended.
pub fn run_corpus(opts: &CorpusOptions) -> Vec<CriterionReport> {
    let start = Instant::now();
    let mut ids = opts.criteria.clone();
    ids.sort_unstable();
    ids.dedup();
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::with_capacity(ids.len()));
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.clamp(1, ids.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&id) = ids.get(i) else { break };
                let report = run_criterion(id, opts.seed);
                out.lock().expect("no worker panicked").push(report);
            });
        }
    });
    let mut reports = out.into_inner().expect("no worker panicked");
    reports.sort_by_key(|r| r.id);
    if (1..=10).all(|id| ids.contains(&id)) {
        let seconds = start.elapsed().as_secs_f64();
        let mut t = Tally {
            cases: 1,
            ..Default::default()
        };
        t.holds(seconds < CORPUS_SECONDS, || format!("took {seconds:.1}s, limit {CORPUS_SECONDS}s"));
        reports.push(t.report(11, seconds));
    }
    reports
}
