use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recourse_core::generate::{random_connected_graph, random_spanning_tree, GraphParams};
use recourse_core::mst::*;
use recourse_core::oracles::*;
use recourse_core::{DistanceMetric, Network, SpanningTree};

fn instance(seed: u64, max_nodes: usize, max_arcs: usize) -> (Network, SpanningTree) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rng.gen_range(2..=max_nodes);
    let arcs = rng.gen_range(nodes - 1..=max_arcs.max(nodes - 1));
    let net = random_connected_graph(
        &mut rng,
        &GraphParams {
            nodes,
            arcs,
            ..Default::default()
        },
    );
    let t0 = random_spanning_tree(&mut rng, &net);
    (net, t0)
}

fn incremental_oracle(net: &Network, trees: &[Vec<usize>], t0: &SpanningTree, k: usize, cost: &[f64]) -> f64 {
    oracle_incremental(trees, net.num_arcs(), &t0.arcs, DistanceMetric::Inclusion, k, cost)
        .unwrap()
        .0
}

#[test]
fn nominal_tree_matches_enumeration() {
    for seed in 0..60 {
        let (net, _) = instance(seed, 6, 11);
        let c = net.nominal_costs();
        let (tree, v) = solve_mst(&net, &c).unwrap();
        tree.check(&net).unwrap();
        let best = enumerate_spanning_trees(&net, 100_000)
            .unwrap()
            .iter()
            .map(|t| t.cost(&c))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(v, best);
        assert_eq!(v, prim(&net, &c, &[]));
    }
}

#[test]
fn incremental_tree_matches_enumeration() {
    for seed in 0..50 {
        let (net, t0) = instance(100 + seed, 6, 11);
        let trees = tree_sets(&enumerate_spanning_trees(&net, 100_000).unwrap());
        let c = net.nominal_costs();
        let n = net.num_nodes();
        for k in 0..n {
            let (v, tree) = solve_incremental_mst(&net, &t0, k, &c).unwrap();
            tree.check(&net).unwrap();
            assert_eq!(tree.cost(&c), v);
            assert!(tree.arcs.iter().filter(|a| !t0.arcs.contains(a)).count() <= k);
            let oracle = incremental_oracle(&net, &trees, &t0, k, &c);
            assert!((v - oracle).abs() < 1e-9, "seed {seed} k {k}: {v} vs {oracle}");
            let (l, lambda, dual) = maximize_lagrangian(&net, &t0, k, &c).unwrap();
            assert!((l - oracle).abs() < 1e-9);
            assert!(lambda >= 0.0);
            assert!(dual.max_violation(&net, &t0, &c) < 1e-7);
            assert!((dual.objective(n, k) - l).abs() < 1e-7);
        }
        assert_eq!(solve_incremental_mst(&net, &t0, 0, &c).unwrap().0, t0.cost(&c));
        assert_eq!(solve_incremental_mst(&net, &t0, n - 1, &c).unwrap().0, solve_mst(&net, &c).unwrap().1);
        assert_eq!(maximize_lagrangian(&net, &t0, n - 1, &c).unwrap().1, 0.0);
    }
}

#[test]
fn tied_multiplier_still_exact() {
    // Every arc costs the same, so every multiplier is a breakpoint.
    for seed in 0..20 {
        let (mut net, t0) = instance(200 + seed, 6, 12);
        for a in &mut net.arcs {
            a.nominal_cost = 1.0;
        }
        for a in &t0.arcs {
            net.arcs[*a].nominal_cost = 2.0;
        }
        let trees = tree_sets(&enumerate_spanning_trees(&net, 100_000).unwrap());
        let c = net.nominal_costs();
        for k in 0..net.num_nodes() {
            let (v, _) = solve_incremental_mst(&net, &t0, k, &c).unwrap();
            assert_eq!(v, incremental_oracle(&net, &trees, &t0, k, &c));
        }
    }
}

#[test]
fn lagrangian_is_concave() {
    for seed in 0..20 {
        let (net, t0) = instance(300 + seed, 6, 11);
        let c = net.nominal_costs();
        let grid: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        let vals: Vec<f64> = grid
            .iter()
            .map(|&l| evaluate_lagrangian(&net, &t0, 1, &c, l).unwrap())
            .collect();
        for w in vals.windows(3) {
            assert!(w[1] >= w[0].min(w[2]) - 1e-9);
            assert!(2.0 * w[1] >= w[0] + w[2] - 1e-9);
        }
        let (best, _, _) = maximize_lagrangian(&net, &t0, 1, &c).unwrap();
        assert!(vals.iter().all(|&v| v <= best + 1e-9));
    }
}

#[test]
fn separation_matches_subset_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..80 {
        let (net, _) = instance(400 + seed, 10, 18);
        let x: Vec<f64> = (0..net.num_arcs())
            .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.2) })
            .collect();
        let (scan, _) = subtour_scan(&net, &x).unwrap();
        match separate_subtour(&net, &x) {
            Some(cut) => {
                assert!((cut.violation - scan).abs() < 1e-9, "seed {seed}");
                assert!(cut.nodes.len() >= 2);
            }
            None => assert!(scan <= SEPARATION_TOL),
        }
    }
}

#[test]
fn trees_pass_separation() {
    for seed in 0..20 {
        let (net, t0) = instance(500 + seed, 9, 16);
        let mut x = vec![0.0; net.num_arcs()];
        for &a in &t0.arcs {
            x[a] = 1.0;
        }
        assert_eq!(separate_subtour(&net, &x), None);
    }
}

#[test]
fn cutting_plane_matches_tree_oracle() {
    for seed in 0..30 {
        let (net, t0) = instance(600 + seed, 6, 9);
        let trees = tree_sets(&enumerate_spanning_trees(&net, 100_000).unwrap());
        let (nominal, deviation) = (net.nominal_costs(), net.deviations());
        let raised: Vec<f64> = nominal.iter().zip(&deviation).map(|(a, b)| a + b).collect();
        for gamma in [0.0, 1.0, 2.0] {
            for k in 0..=2 {
                let (v, sol) = solve_adversarial_mst_u1(&net, &t0, k, gamma).unwrap();
                let set = ScenarioSet::Budgeted {
                    nominal: &nominal,
                    deviation: &deviation,
                    gamma,
                };
                let oracle = oracle_adversarial(&trees, net.num_arcs(), &t0.arcs, DistanceMetric::Inclusion, k, set).unwrap();
                assert!((v - oracle).abs() < 1e-6, "seed {seed} gamma {gamma} k {k}: {v} vs {oracle}");
                assert!(sol.generated_cuts() < 100);
                assert!(sol.max_violation(&net, &t0, k) < 1e-7);
                assert!(separate_subtour(&net, &sol.x).is_none());
                assert!(sol.trace.windows(2).all(|w| w[1] >= w[0] - 1e-9));
                assert!(sol.delta.iter().sum::<f64>() <= gamma + 1e-7);
                let lo = solve_incremental_mst(&net, &t0, k, &nominal).unwrap().0;
                let hi = solve_incremental_mst(&net, &t0, k, &raised).unwrap().0;
                assert!(lo - 1e-9 <= v && v <= hi + 1e-9);
            }
        }
    }
}

#[test]
fn cutting_plane_limits() {
    for seed in 0..10 {
        let (mut net, t0) = instance(700 + seed, 7, 14);
        let raised: Vec<f64> = net.arcs.iter().map(|a| a.nominal_cost + a.deviation).collect();
        let (v, _) = solve_adversarial_mst_u1(&net, &t0, 1, f64::INFINITY).unwrap();
        assert!((v - solve_incremental_mst(&net, &t0, 1, &raised).unwrap().0).abs() < 1e-6);
        for a in &mut net.arcs {
            a.deviation = 0.0;
        }
        let (v, _) = solve_adversarial_mst_u1(&net, &t0, 1, 3.0).unwrap();
        assert!((v - solve_incremental_mst(&net, &t0, 1, &net.nominal_costs()).unwrap().0).abs() < 1e-6);
    }
}

#[test]
fn discrete_adversary_matches_oracles() {
    for seed in 0..20 {
        let (mut net, t0) = instance(800 + seed, 6, 9);
        let trees = tree_sets(&enumerate_spanning_trees(&net, 100_000).unwrap());
        let (nominal, deviation) = (net.nominal_costs(), net.deviations());
        let n = net.num_nodes();
        for gamma in 0..=2 {
            let (v, raised) = solve_adversarial_mst_u2(&net, &t0, 1, gamma).unwrap();
            assert!(raised.len() <= gamma);
            let scen = u2_scenarios(&nominal, &deviation, gamma, 1_000_000).unwrap();
            let (o, _) = oracle_adversarial_listed(&trees, net.num_arcs(), &t0.arcs, DistanceMetric::Inclusion, 1, &scen).unwrap();
            assert_eq!(v, o);
        }
        assert_eq!(solve_adversarial_mst_u2(&net, &t0, 1, 0).unwrap().0, solve_incremental_mst(&net, &t0, 1, &nominal).unwrap().0);
        let all: Vec<f64> = nominal.iter().zip(&deviation).map(|(a, b)| a + b).collect();
        let m = net.num_arcs();
        assert_eq!(solve_adversarial_mst_u2(&net, &t0, 1, m).unwrap().0, solve_incremental_mst(&net, &t0, 1, &all).unwrap().0);
        for a in &mut net.arcs {
            a.deviation = 1e6;
        }
        let (v, _) = solve_adversarial_mst_u2(&net, &t0, n - 1, 1).unwrap();
        let (mv, _) = most_vital_arcs(m, 1, |removed| prim(&net, &nominal, removed)).unwrap();
        if mv.is_finite() {
            assert_eq!(v, mv);
        } else {
            assert!(v >= 1e6);
        }
    }
}

#[test]
fn directed_graphs_rejected() {
    let mut net = Network::new(true);
    net.add_arc("ab", "a", "b", 1.0, 0.0);
    assert!(solve_mst(&net, &[1.0]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn adversarial_value_is_sandwiched(seed in 0u64..10_000, gamma in 0.0f64..3.0, k in 0usize..3) {
        let (net, t0) = instance(seed, 6, 10);
        let nominal = net.nominal_costs();
        let raised: Vec<f64> = nominal.iter().zip(net.deviations()).map(|(a, b)| a + b).collect();
        let (v, sol) = solve_adversarial_mst_u1(&net, &t0, k, gamma).unwrap();
        let lo = solve_incremental_mst(&net, &t0, k, &nominal).unwrap().0;
        let hi = solve_incremental_mst(&net, &t0, k, &raised).unwrap().0;
        prop_assert!(lo - 1e-7 <= v && v <= hi + 1e-7);
        prop_assert!((sol.recomputed - v).abs() < 1e-6);
    }

    #[test]
    fn lagrangian_equals_tree_optimum(seed in 0u64..10_000, k in 0usize..5) {
        let (net, t0) = instance(seed, 6, 11);
        let trees = tree_sets(&enumerate_spanning_trees(&net, 100_000).unwrap());
        let c = net.nominal_costs();
        let (l, _, _) = maximize_lagrangian(&net, &t0, k, &c).unwrap();
        prop_assert!((l - incremental_oracle(&net, &trees, &t0, k, &c)).abs() < 1e-9);
    }
}
