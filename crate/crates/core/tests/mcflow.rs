use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recourse_core::generate::{random_flow_network, random_interdiction_base, GraphParams};
use recourse_core::lp::{self, LpBuilder, Relation, Sense};
use recourse_core::mcflow::*;
use recourse_core::oracles::{enumerate_u1_vertices, interdiction_oracle, u2_scenarios};
use recourse_core::{Error, Network};

fn instance(seed: u64) -> FlowInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rng.gen_range(3..=6);
    let arcs = rng.gen_range(nodes..=10);
    let p = GraphParams {
        nodes,
        arcs,
        ..Default::default()
    };
    FlowInstance::new(random_flow_network(&mut rng, &p, 4)).unwrap()
}

/// Cheapest way to ship the single source's supply to the single sink by
/// successive shortest augmenting paths in the residual graph.
fn successive_shortest_paths(net: &Network, cost: &[f64]) -> Option<f64> {
    let n = net.num_nodes();
    let s = net.supplies.iter().position(|b| *b > 0.0)?;
    let t = net.supplies.iter().position(|b| *b < 0.0)?;
    let mut left = net.supplies[s];
    let mut flow = vec![0.0; net.num_arcs()];
    let mut total = 0.0;
    while left > 1e-12 {
        // Residual arcs: (arc, forward?)
        let mut dist = vec![f64::INFINITY; n];
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        dist[s] = 0.0;
        for _ in 0..n {
            for (j, a) in net.arcs.iter().enumerate() {
                if flow[j] < a.capacity && dist[a.tail] + cost[j] < dist[a.head] - 1e-12 {
                    dist[a.head] = dist[a.tail] + cost[j];
                    pred[a.head] = Some((j, true));
                }
                if flow[j] > 0.0 && dist[a.head] - cost[j] < dist[a.tail] - 1e-12 {
                    dist[a.tail] = dist[a.head] - cost[j];
                    pred[a.tail] = Some((j, false));
                }
            }
        }
        if dist[t].is_infinite() {
            return None;
        }
        let mut push = left;
        let mut v = t;
        while v != s {
            let (j, fwd) = pred[v].unwrap();
            let a = &net.arcs[j];
            push = push.min(if fwd { a.capacity - flow[j] } else { flow[j] });
            v = if fwd { a.tail } else { a.head };
        }
        let mut v = t;
        while v != s {
            let (j, fwd) = pred[v].unwrap();
            let a = &net.arcs[j];
            flow[j] += if fwd { push } else { -push };
            v = if fwd { a.tail } else { a.head };
        }
        total += push * dist[t];
        left -= push;
    }
    Some(total)
}

/// `max_{c ∈ U1}` of the incremental flow value, as `min t` with
/// `t >= (c̄ + v)'y` for every box vertex `v` over recourse flows `y`.
fn vertex_epigraph(inst: &FlowInstance, x: &[f64], k: f64, gamma: f64) -> f64 {
    let net = &inst.network;
    let m = net.num_arcs();
    let vertices = enumerate_u1_vertices(&net.deviations(), gamma).unwrap();
    let mut b = LpBuilder::new(Sense::Minimize);
    let t = b.add_var(1.0, f64::NEG_INFINITY, f64::INFINITY);
    let y0 = b.num_vars();
    for a in &net.arcs {
        b.add_var(0.0, 0.0, a.capacity);
    }
    let up = b.add_vars(&vec![0.0; m], 0.0, f64::INFINITY);
    let down = b.add_vars(&vec![0.0; m], 0.0, f64::INFINITY);
    for (row, &supply) in inst.incidence.iter().zip(&net.supplies) {
        b.add_row(row.iter().enumerate().map(|(j, &v)| (y0 + j, v)).collect(), Relation::Eq, supply);
    }
    for j in 0..m {
        b.add_row(vec![(y0 + j, 1.0), (up + j, -1.0), (down + j, 1.0)], Relation::Eq, x[j]);
    }
    if k.is_finite() {
        b.add_row((0..m).flat_map(|j| [(up + j, 1.0), (down + j, 1.0)]).collect(), Relation::Le, k);
    }
    for v in &vertices {
        let mut terms = vec![(t, 1.0)];
        terms.extend(net.arcs.iter().enumerate().map(|(j, a)| (y0 + j, -(a.nominal_cost + v[j]))));
        b.add_row(terms, Relation::Ge, 0.0);
    }
    lp::solve(&b.build()).unwrap().into_optimal().unwrap().objective
}

#[test]
fn min_cost_flow_matches_augmenting_paths() {
    for seed in 0..60 {
        let inst = instance(seed);
        let c = inst.network.nominal_costs();
        let sol = solve_mcf(&inst, &c).unwrap();
        sol.flow.check(&inst.network, 1e-7).unwrap();
        assert!((sol.objective - sol.flow.cost(&c)).abs() < 1e-7);
        assert!((sol.objective - sol.dual_objective).abs() < 1e-6, "seed {seed}");
        let oracle = successive_shortest_paths(&inst.network, &c).unwrap();
        assert!((sol.objective - oracle).abs() < 1e-7, "seed {seed}: {} vs {oracle}", sol.objective);
    }
}

#[test]
fn incremental_flow_is_bracketed() {
    for seed in 0..30 {
        let inst = instance(100 + seed);
        let c = inst.network.nominal_costs();
        let x = solve_mcf(&inst, &inst.network.deviations()).unwrap().flow.values;
        let free = solve_mcf(&inst, &c).unwrap().objective;
        let stay: f64 = x.iter().zip(&c).map(|(a, b)| a * b).sum();
        let mut prev = stay;
        for k in [0.0, 0.5, 1.0, 2.0, 4.0, f64::INFINITY] {
            let sol = solve_incremental_mcf(&inst, &x, k, &c).unwrap();
            let moved: f64 = sol.z_plus.iter().chain(&sol.z_minus).sum();
            assert!(moved <= k + 1e-7);
            assert!(sol.objective <= prev + 1e-9 && sol.objective >= free - 1e-7);
            prev = sol.objective;
        }
        assert!((prev - free).abs() < 1e-7);
    }
}

#[test]
fn adversarial_flow_matches_vertex_epigraph() {
    for seed in 0..30 {
        let inst = instance(200 + seed);
        let x = solve_mcf(&inst, &inst.network.nominal_costs()).unwrap().flow.values;
        for gamma in [0.0, 1.0, 2.5] {
            for k in [0.0, 1.0, f64::INFINITY] {
                let (v, cert) = solve_adversarial_mcf_u1(&inst, &x, k, gamma).unwrap();
                let o = vertex_epigraph(&inst, &x, k, gamma);
                assert!((v - o).abs() < 1e-6, "seed {seed} gamma {gamma} k {k}: {v} vs {o}");
                assert!(cert.delta_violation(&inst.network.deviations(), gamma) < 1e-7);
            }
        }
    }
}

#[test]
fn robust_flow_beats_sampled_first_stages() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..20 {
        let inst = instance(300 + seed);
        let d: Vec<f64> = inst.network.arcs.iter().map(|_| rng.gen_range(0.0..2.0)).collect();
        let (k, gamma) = (1.0, 1.5);
        let sol = solve_robinc_mcf(&inst, &d, k, gamma).unwrap();
        let at = |x: &[f64]| -> f64 {
            let first: f64 = x.iter().zip(&d).map(|(a, b)| a * b).sum();
            first + solve_adversarial_mcf_u1(&inst, x, k, gamma).unwrap().0
        };
        assert!((at(&sol.x) - sol.value).abs() < 1e-6);
        for _ in 0..10 {
            let dir: Vec<f64> = inst.network.arcs.iter().map(|_| rng.gen_range(-3.0..3.0)).collect();
            let x = solve_mcf(&inst, &dir).unwrap().flow.values;
            assert!(at(&x) >= sol.value - 1e-6);
        }
    }
}

#[test]
fn discrete_adversary_matches_scenarios() {
    for seed in 0..20 {
        let inst = instance(400 + seed);
        let net = &inst.network;
        let x = solve_mcf(&inst, &net.nominal_costs()).unwrap().flow.values;
        for gamma in 0..=2 {
            let scen = u2_scenarios(&net.nominal_costs(), &net.deviations(), gamma, 1_000_000).unwrap();
            let full = scen
                .iter()
                .map(|c| solve_mcf(&inst, c).unwrap().objective)
                .fold(f64::NEG_INFINITY, f64::max);
            let (v, raised) = solve_adversarial_mcf_u2(&inst, None, f64::INFINITY, gamma).unwrap();
            assert!((v - full).abs() < 1e-9);
            assert!(raised.len() <= gamma);
            let inc = scen
                .iter()
                .map(|c| solve_incremental_mcf(&inst, &x, 1.0, c).unwrap().objective)
                .fold(f64::NEG_INFINITY, f64::max);
            let (v, _) = solve_adversarial_mcf_u2(&inst, Some(&x), 1.0, gamma).unwrap();
            assert!((v - inc).abs() < 1e-9);
        }
        let (v, _) = solve_adversarial_mcf_u2(&inst, None, f64::INFINITY, 0).unwrap();
        assert_eq!(v, solve_mcf(&inst, &net.nominal_costs()).unwrap().objective);
    }
}

#[test]
fn interdiction_gadget_agrees_with_max_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let nodes = rng.gen_range(3..=6);
        let arcs = rng.gen_range(nodes..=12);
        let (base, s, t, k) = random_interdiction_base(&mut rng, nodes, arcs, 3);
        for gamma in 0..=3 {
            let g = build_interdiction_gadget(&base, s, t, k, gamma).unwrap();
            assert!(g.instance.network.arcs.iter().all(|a| a.nominal_cost == 0.0 && a.deviation == 1.0));
            let (v, _) = g.adversarial_value().unwrap();
            let yes = interdiction_oracle(&base, s, t, k as f64, gamma).unwrap().is_some();
            assert_eq!(InterdictionGadget::is_positive(v), yes);
        }
    }
}

#[test]
fn disjoint_routes_survive_interdiction() {
    // Three parallel two-arc routes of capacity 2; one raised arc is avoided.
    let mut net = Network::new(true);
    for r in 0..3 {
        let mid = format!("m{r}");
        net.add_arc(&format!("in{r}"), "s", &mid, 0.0, 0.0);
        net.add_arc(&format!("out{r}"), &mid, "t", 0.0, 0.0);
    }
    for a in &mut net.arcs {
        a.capacity = 2.0;
    }
    let (s, t) = (net.node("s").unwrap(), net.node("t").unwrap());
    let g = build_interdiction_gadget(&net, s, t, 2, 2).unwrap();
    assert_eq!(g.adversarial_value().unwrap().0, 0.0);
    let g = build_interdiction_gadget(&net, s, t, 2, 3).unwrap();
    assert!(g.adversarial_value().unwrap().0 > 0.0);
    assert!(matches!(build_interdiction_gadget(&net, s, s, 1, 1), Err(Error::InvalidInstance(_))));
}
