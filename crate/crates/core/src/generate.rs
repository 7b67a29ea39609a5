//! Seeded instance generators and small fixed fixtures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::combinatorics::UnionFind;
use crate::maxflow::network_max_flow;
use crate::{LpInstance, Network, Path, SpanningTree};

#[derive(Debug, Clone)]
pub struct LpParams {
    pub num_vars: usize,
    pub num_constraints: usize,
    /// Matrix entries are drawn from `[-entry_range, entry_range]`.
    pub entry_range: f64,
    pub cost_range: f64,
    pub max_deviation: f64,
    pub max_initial_cost: f64,
}

impl Default for LpParams {
    fn default() -> Self {
        LpParams {
            num_vars: 5,
            num_constraints: 3,
            entry_range: 5.0,
            cost_range: 5.0,
            max_deviation: 3.0,
            max_initial_cost: 2.0,
        }
    }
}

/// A feasible, bounded LP: the first row has positive entries, so
/// `{x >= 0 : A x = b}` is a polytope, and `b = A x0` for a random `x0 >= 0`.
pub fn random_lp<R: Rng + ?Sized>(rng: &mut R, p: &LpParams) -> LpInstance {
    let (n, m) = (p.num_vars.max(1), p.num_constraints.max(1));
    let r = p.entry_range;
    let matrix: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..n)
                .map(|_| {
                    if i == 0 {
                        rng.gen_range(0.5..=r.max(0.5))
                    } else {
                        rng.gen_range(-r..=r)
                    }
                })
                .collect()
        })
        .collect();
    let x0: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..2.0) })
        .collect();
    let rhs = matrix.iter().map(|row| crate::lp::dot(row, &x0)).collect();
    let nominal = (0..n).map(|_| rng.gen_range(-p.cost_range..=p.cost_range)).collect();
    let deviation = (0..n).map(|_| rng.gen_range(0.0..=p.max_deviation)).collect();
    let d = (0..n).map(|_| rng.gen_range(0.0..=p.max_initial_cost)).collect();
    LpInstance::new(matrix, rhs, nominal, deviation, Some(d)).expect("generated shapes agree")
}

#[derive(Debug, Clone)]
pub struct GraphParams {
    pub nodes: usize,
    pub arcs: usize,
    /// Costs are integers in `0..=max_cost` when `integer_costs`, else reals.
    pub max_cost: f64,
    pub max_deviation: f64,
    pub integer_costs: bool,
}

impl Default for GraphParams {
    fn default() -> Self {
        GraphParams {
            nodes: 6,
            arcs: 10,
            max_cost: 9.0,
            max_deviation: 3.0,
            integer_costs: true,
        }
    }
}

fn draw_cost<R: Rng + ?Sized>(rng: &mut R, p: &GraphParams) -> (f64, f64) {
    if p.integer_costs {
        (
            rng.gen_range(0..=p.max_cost as u32) as f64,
            rng.gen_range(0..=p.max_deviation as u32) as f64,
        )
    } else {
        (rng.gen_range(0.0..=p.max_cost), rng.gen_range(0.0..=p.max_deviation))
    }
}

/// Random digraph with a guaranteed `s`-`t` path. Returns the network, the
/// source, the sink and that path, which serves as an initial path.
pub fn random_sp_network<R: Rng + ?Sized>(rng: &mut R, p: &GraphParams) -> (Network, usize, usize, Path) {
    let n = p.nodes.max(2);
    let mut net = Network::new(true);
    for i in 0..n {
        net.add_node(&format!("v{i}"));
    }
    let (s, t) = (0, n - 1);
    let mut middle: Vec<usize> = (1..n - 1).collect();
    middle.shuffle(rng);
    let len = rng.gen_range(0..=middle.len());
    let mut route = vec![s];
    route.extend(&middle[..len]);
    route.push(t);
    let mut path = Vec::new();
    for w in route.windows(2) {
        let (c, d) = draw_cost(rng, p);
        let id = format!("a{}", net.num_arcs());
        path.push(net.push_arc(&id, w[0], w[1], c, d, f64::INFINITY));
    }
    while net.num_arcs() < p.arcs.max(path.len()) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || b == s || a == t {
            continue;
        }
        let (c, d) = draw_cost(rng, p);
        let id = format!("a{}", net.num_arcs());
        net.push_arc(&id, a, b, c, d, f64::INFINITY);
    }
    (net, s, t, Path::new(path))
}

/// Random connected undirected multigraph: a random spanning tree plus
/// extra edges without self-loops.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, p: &GraphParams) -> Network {
    let n = p.nodes.max(1);
    let mut net = Network::new(false);
    for i in 0..n {
        net.add_node(&format!("v{i}"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (c, d) = draw_cost(rng, p);
        let id = format!("e{}", net.num_arcs());
        net.push_arc(&id, parent, order[i], c, d, f64::INFINITY);
    }
    while n > 1 && net.num_arcs() < p.arcs.max(n - 1) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let (c, d) = draw_cost(rng, p);
        let id = format!("e{}", net.num_arcs());
        net.push_arc(&id, a.min(b), a.max(b), c, d, f64::INFINITY);
    }
    net
}

/// Spanning tree drawn by running Kruskal on random weights.
pub fn random_spanning_tree<R: Rng + ?Sized>(rng: &mut R, net: &Network) -> SpanningTree {
    let mut order: Vec<usize> = (0..net.num_arcs()).collect();
    order.shuffle(rng);
    let mut uf = UnionFind::new(net.num_nodes());
    SpanningTree::new(
        order
            .into_iter()
            .filter(|&a| uf.union(net.arcs[a].tail, net.arcs[a].head))
            .collect(),
    )
}

/// A base instance for the two-disjoint-paths question.
#[derive(Debug, Clone)]
pub struct TwoPairBase {
    pub network: Network,
    pub s1: usize,
    pub t1: usize,
    pub s2: usize,
    pub t2: usize,
}

impl TwoPairBase {
    fn from_arcs(arcs: &[(&str, &str)]) -> Self {
        let mut network = Network::new(true);
        for name in ["s1", "t1", "s2", "t2"] {
            network.add_node(name);
        }
        for (k, (a, b)) in arcs.iter().enumerate() {
            network.add_arc(&format!("b{k}"), a, b, 0.0, 0.0);
        }
        TwoPairBase {
            s1: 0,
            t1: 1,
            s2: 2,
            t2: 3,
            network,
        }
    }
}

/// Two unrelated arcs `s1 -> t1` and `s2 -> t2`.
pub fn disjoint_arcs_base() -> TwoPairBase {
    TwoPairBase::from_arcs(&[("s1", "t1"), ("s2", "t2")])
}

/// Both pairs are joined only through one shared middle node.
pub fn shared_node_base() -> TwoPairBase {
    TwoPairBase::from_arcs(&[("s1", "x"), ("x", "t1"), ("s2", "x"), ("x", "t2")])
}

/// Yes-instance with detours: each pair has a private route and there are
/// cross arcs that a careless choice could use.
pub fn crossing_yes_base() -> TwoPairBase {
    TwoPairBase::from_arcs(&[
        ("s1", "a"),
        ("a", "t1"),
        ("s2", "b"),
        ("b", "t2"),
        ("s1", "b"),
        ("a", "t2"),
    ])
}

/// No-instance where every route of either pair crosses one of two
/// bottleneck nodes used by the other pair.
pub fn bottleneck_no_base() -> TwoPairBase {
    TwoPairBase::from_arcs(&[
        ("s1", "x"),
        ("x", "y"),
        ("y", "t1"),
        ("s2", "x"),
        ("s2", "y"),
        ("x", "t2"),
        ("y", "t2"),
        ("x", "y"),
    ])
}

/// Random two-pair base on the four terminals plus `extra` inner nodes.
/// Arcs never enter `s1`, `s2` or leave `t1`, `t2`.
pub fn random_two_pair_base<R: Rng + ?Sized>(rng: &mut R, extra: usize, arcs: usize) -> TwoPairBase {
    let mut base = TwoPairBase::from_arcs(&[]);
    for i in 0..extra {
        base.network.add_node(&format!("x{i}"));
    }
    let n = base.network.num_nodes();
    let mut seen = std::collections::BTreeSet::new();
    let mut tries = 0;
    while seen.len() < arcs && tries < 100 * arcs {
        tries += 1;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b || [1, 3].contains(&a) || [0, 2].contains(&b) || !seen.insert((a, b)) {
            continue;
        }
        let id = format!("b{}", base.network.num_arcs());
        base.network.push_arc(&id, a, b, 0.0, 0.0, f64::INFINITY);
    }
    base
}

/// Brute-force answer to the two-disjoint-paths question on `base`.
pub fn has_disjoint_paths(base: &TwoPairBase) -> bool {
    let cap = 100_000;
    let first = crate::oracles::enumerate_paths(&base.network, base.s1, base.t1, cap).unwrap_or_default();
    let second = crate::oracles::enumerate_paths(&base.network, base.s2, base.t2, cap).unwrap_or_default();
    first.iter().any(|p| {
        let used = p.nodes(&base.network);
        second
            .iter()
            .any(|q| q.nodes(&base.network).iter().all(|v| !used.contains(v)))
    })
}

/// Small digraph with integer capacities in `1..=max_cap` from node 0 to
/// node `n-1`, together with a demand `k` not exceeding its max flow.
pub fn random_interdiction_base<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    arcs: usize,
    max_cap: u32,
) -> (Network, usize, usize, u32) {
    loop {
        let mut net = Network::new(true);
        let n = nodes.max(2);
        for i in 0..n {
            net.add_node(&format!("v{i}"));
        }
        while net.num_arcs() < arcs {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b || b == 0 || a == n - 1 {
                continue;
            }
            let id = format!("a{}", net.num_arcs());
            let cap = rng.gen_range(1..=max_cap) as f64;
            net.push_arc(&id, a, b, 0.0, 0.0, cap);
        }
        let flow = network_max_flow(&net, 0, n - 1, &[]);
        if flow >= 1.0 {
            let k = rng.gen_range(1..=flow.round() as u32);
            return (net, 0, n - 1, k);
        }
    }
}

/// Random flow instance: an interdiction base with costs and deviations
/// drawn as in `p`, shipping its demand from node 0 to node `n-1`.
pub fn random_flow_network<R: Rng + ?Sized>(rng: &mut R, p: &GraphParams, max_cap: u32) -> Network {
    let (mut net, s, t, k) = random_interdiction_base(rng, p.nodes, p.arcs, max_cap);
    for a in &mut net.arcs {
        let (c, d) = draw_cost(rng, p);
        a.nominal_cost = c;
        a.deviation = d;
    }
    net.supplies[s] = k as f64;
    net.supplies[t] = -(k as f64);
    net
}

/// The five-node example network with initial path `s, i, j, t` of cost 8.
pub fn figure_one() -> (Network, Path) {
    let mut net = Network::new(true);
    for name in ["s", "i", "j", "l", "t"] {
        net.add_node(name);
    }
    for (id, a, b, c) in [
        ("si", "s", "i", 3.0),
        ("sl", "s", "l", 2.0),
        ("ij", "i", "j", 1.0),
        ("it", "i", "t", 5.0),
        ("lt", "l", "t", 2.0),
        ("lj", "l", "j", 1.0),
        ("sj", "s", "j", 3.0),
        ("jt", "j", "t", 4.0),
    ] {
        net.add_arc(id, a, b, c, 0.0);
    }
    let p0 = Path::from_ids(&net, &["si", "ij", "jt"]).expect("fixture arcs exist");
    (net, p0)
}
