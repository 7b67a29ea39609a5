use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recourse_core::generate::{figure_one, random_connected_graph, random_sp_network, random_spanning_tree, GraphParams};
use recourse_core::model::{embed_incremental_as_robinc, embed_path_as_robinc, EmbeddedRobInc, Validate};
use recourse_core::mst::solve_incremental_mst;
use recourse_core::oracles::*;
use recourse_core::shortest_path::{solve_incremental_sp_inclusion, solve_robinc_sp_exact, solve_sp};
use recourse_core::{DistanceMetric, LpInstance, Network, Path, UncertaintyBudget};

/// `min_P0 d(P0) + Z_Inc(P0, c)` with the single scenario `c`.
fn embedded_value(solutions: &[Vec<usize>], universe: usize, emb: &EmbeddedRobInc, k: usize) -> f64 {
    let scenarios = vec![emb.scenario.clone()];
    oracle_minimax(
        solutions,
        universe,
        ScenarioSet::Listed(&scenarios),
        DistanceMetric::Inclusion,
        k,
        &emb.initial_cost,
    )
    .unwrap()
    .value
}

#[test]
fn figure_one_is_valid() {
    let (net, _) = figure_one();
    assert!(net.validate().is_empty());
}

#[test]
fn negative_deviation_and_unbalanced_supply() {
    let inst = LpInstance {
        matrix: vec![vec![1.0, 1.0]],
        rhs: vec![1.0],
        nominal_cost: vec![1.0, 1.0],
        deviation: vec![-1.0, 0.0],
        initial_cost: vec![0.0, 0.0],
    };
    let report = inst.validate();
    assert!(report.iter().any(|v| v.code == "negative deviation"));
    let mut net = Network::new(true);
    net.add_arc("st", "s", "t", 1.0, 0.0);
    net.supplies[0] = 1.0;
    assert!(net.validate().iter().any(|v| v.code == "unbalanced supplies"));
}

#[test]
fn figure_one_embedding() {
    let (net, p0) = figure_one();
    let c = net.nominal_costs();
    let emb = embed_path_as_robinc(&net, &p0, &c).unwrap();
    let paths = path_sets(&enumerate_paths(&net, 0, 4, 100).unwrap());
    assert_eq!(embedded_value(&paths, net.num_arcs(), &emb, 1), 7.0);
    // The same value through the robust incremental path solver.
    let mut fixed = net.clone();
    for a in &mut fixed.arcs {
        a.deviation = 0.0;
    }
    let sol = solve_robinc_sp_exact(&fixed, 0, 4, 1, DistanceMetric::Inclusion, UncertaintyBudget::u1(0.0), &emb.initial_cost).unwrap();
    assert_eq!(sol.value, 7.0);
    assert_eq!(sol.initial, p0);
    // Unlimited recourse reaches the nominal optimum.
    let n = net.num_arcs();
    assert_eq!(embedded_value(&paths, n, &emb, n), solve_sp(&net, 0, 4, &c).unwrap().0);
}

#[test]
fn single_arc_embedding() {
    let mut net = Network::new(true);
    net.add_arc("st", "s", "t", 4.5, 0.0);
    let p0 = Path::new(vec![0]);
    let emb = embed_path_as_robinc(&net, &p0, &[4.5]).unwrap();
    assert_eq!(embedded_value(&[vec![0]], 1, &emb, 0), 4.5);
}

#[test]
fn path_embedding_matches_incremental_solver() {
    for seed in 0..40 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = rng.gen_range(3..=8);
        let arcs = rng.gen_range(nodes..=14);
        let (net, s, t, p0) = random_sp_network(
            &mut rng,
            &GraphParams {
                nodes,
                arcs,
                ..Default::default()
            },
        );
        let c = net.nominal_costs();
        let paths = path_sets(&enumerate_paths(&net, s, t, 100_000).unwrap());
        let emb = embed_path_as_robinc(&net, &p0, &c).unwrap();
        for k in 0..=2 {
            let direct = solve_incremental_sp_inclusion(&net, &p0, k, &c).unwrap().0;
            assert_eq!(embedded_value(&paths, net.num_arcs(), &emb, k), direct, "seed {seed} k {k}");
        }
    }
}

#[test]
fn tree_embedding_matches_incremental_solver() {
    for seed in 0..30 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let nodes = rng.gen_range(2..=6);
        let net = random_connected_graph(
            &mut rng,
            &GraphParams {
                nodes,
                arcs: nodes + 3,
                ..Default::default()
            },
        );
        let t0 = random_spanning_tree(&mut rng, &net);
        let c = net.nominal_costs();
        let mut x = vec![0.0; net.num_arcs()];
        for &a in &t0.arcs {
            x[a] = 1.0;
        }
        let emb = embed_incremental_as_robinc(&x, &c).unwrap();
        let trees = tree_sets(&enumerate_spanning_trees(&net, 100_000).unwrap());
        for k in 0..nodes {
            let direct = solve_incremental_mst(&net, &t0, k, &c).unwrap().0;
            assert_eq!(embedded_value(&trees, net.num_arcs(), &emb, k), direct);
        }
    }
}

#[test]
fn figure_one_minimax_without_uncertainty() {
    let (net, _) = figure_one();
    let paths = path_sets(&enumerate_paths(&net, 0, 4, 100).unwrap());
    let nominal = net.nominal_costs();
    let zero = vec![0.0; net.num_arcs()];
    let set = ScenarioSet::Budgeted {
        nominal: &nominal,
        deviation: &zero,
        gamma: 0.0,
    };
    let res = oracle_minimax(&paths, net.num_arcs(), set, DistanceMetric::Inclusion, 1, &zero).unwrap();
    assert_eq!(res.value, 4.0);
    let initial = Path::new(paths[res.initial].clone());
    let ids = initial.ids(&net);
    assert!(ids.contains(&"sl".to_string()) && ids.contains(&"lt".to_string()));
}
