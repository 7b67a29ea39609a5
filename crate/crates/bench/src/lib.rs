//! Shared fixtures for the criterion benches.

use recourse_core::generate::{self, GraphParams, LpParams};
use recourse_core::mst::solve_mst;
use recourse_core::{LpInstance, Network, Path, SpanningTree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_lp(seed: u64, n: usize, m: usize) -> LpInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate::random_lp(&mut rng, &LpParams { num_vars: n, num_constraints: m, ..Default::default() })
}

/// Digraph with a reachable pair and an initial path between them.
pub fn random_digraph(seed: u64, n: usize, m: usize) -> (Network, Path) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (net, _, _, p0) = generate::random_sp_network(&mut rng, &GraphParams { nodes: n, arcs: m, ..Default::default() });
    (net, p0)
}

/// Connected graph with its nominal minimum spanning tree.
pub fn random_graph(seed: u64, n: usize, m: usize) -> (Network, SpanningTree) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let net = generate::random_connected_graph(&mut rng, &GraphParams { nodes: n, arcs: m, ..Default::default() });
    let (tree, _) = solve_mst(&net, &net.nominal_costs()).expect("generated graphs are connected");
    (net, tree)
}
