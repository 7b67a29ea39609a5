//! Minimum-cost flows with recourse, and the interdiction gadget.
//!
//! A flow instance is the LP region `{x : N x = b, 0 <= x <= u}` with `N`
//! the node-arc incidence matrix, so the incremental, adversarial and
//! robust incremental problems reuse the LP formulations with capacities as
//! upper bounds.

use serde::Serialize;

use crate::combinatorics::{argmax_subset, DEFAULT_ENUMERATION_CAP};
use crate::lp::{self, LpBuilder, Relation, Sense};
use crate::robinc_lp::{
    solve_adversarial_region, solve_incremental_region, solve_robinc_region, AdversarialLpCertificate,
    IncrementalLpSolution, Region,
};
use crate::{Error, Flow, Network, Result};

/// Supplies must sum to zero within this tolerance.
const BALANCE_TOL: f64 = 1e-9;
/// Adversarial values above this count as strictly positive.
pub const POSITIVE_TOL: f64 = 1e-7;

/// Directed network with capacities and balanced supplies.
#[derive(Debug, Clone, Serialize)]
pub struct FlowInstance {
    pub network: Network,
    /// Node-arc incidence matrix: `+1` at the tail, `-1` at the head.
    pub incidence: Vec<Vec<f64>>,
}

impl FlowInstance {
    pub fn new(network: Network) -> Result<Self> {
        if !network.directed {
            return Err(Error::Unsupported("flows need a directed network".into()));
        }
        if network.supplies.len() != network.num_nodes() {
            return Err(Error::InvalidInstance("one supply per node is required".into()));
        }
        let total: f64 = network.supplies.iter().sum();
        let scale = 1.0 + network.supplies.iter().fold(0.0f64, |m, b| m.max(b.abs()));
        if total.abs() > BALANCE_TOL * scale {
            return Err(Error::InvalidInstance(format!("supplies sum to {total}, not 0")));
        }
        if let Some(a) = network.arcs.iter().find(|a| a.capacity.is_nan() || a.capacity <= 0.0) {
            return Err(Error::InvalidInstance(format!("arc {} has capacity {}", a.id, a.capacity)));
        }
        let mut incidence = vec![vec![0.0; network.num_arcs()]; network.num_nodes()];
        for (j, a) in network.arcs.iter().enumerate() {
            if a.tail != a.head {
                incidence[a.tail][j] += 1.0;
                incidence[a.head][j] -= 1.0;
            }
        }
        Ok(FlowInstance { network, incidence })
    }

    fn capacities(&self) -> Vec<f64> {
        self.network.capacities()
    }

    fn region<'a>(&'a self, upper: &'a [f64]) -> Region<'a> {
        Region {
            matrix: &self.incidence,
            rhs: &self.network.supplies,
            upper: Some(upper),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McfSolution {
    pub flow: Flow,
    pub objective: f64,
    /// Dual value of each conservation row.
    pub potentials: Vec<f64>,
    /// `b'π + Σ u_ij min(0, c_ij - π_i + π_j)` over finite capacities.
    pub dual_objective: f64,
}

/// Cheapest feasible flow.
pub fn solve_mcf(inst: &FlowInstance, cost: &[f64]) -> Result<McfSolution> {
    let net = &inst.network;
    let mut b = LpBuilder::new(Sense::Minimize);
    for (a, &c) in net.arcs.iter().zip(cost) {
        b.add_var(c, 0.0, a.capacity);
    }
    for (row, &supply) in inst.incidence.iter().zip(&net.supplies) {
        let terms = row.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(j, &v)| (j, v)).collect();
        b.add_row(terms, Relation::Eq, supply);
    }
    let res = lp::solve(&b.build())?.into_optimal()?;
    let potentials = res.duals.clone();
    let mut dual_objective: f64 = net.supplies.iter().zip(&potentials).map(|(b, p)| b * p).sum();
    for (a, &c) in net.arcs.iter().zip(cost) {
        if a.capacity.is_finite() {
            dual_objective += a.capacity * (c - potentials[a.tail] + potentials[a.head]).min(0.0);
        }
    }
    let values = res
        .primal
        .iter()
        .zip(&net.arcs)
        .map(|(x, a)| x.clamp(0.0, a.capacity))
        .collect();
    Ok(McfSolution {
        flow: Flow { values },
        objective: res.objective,
        potentials,
        dual_objective,
    })
}

/// Cheapest flow within L1 distance `k` of the flow `x`.
pub fn solve_incremental_mcf(inst: &FlowInstance, x: &[f64], k: f64, cost: &[f64]) -> Result<IncrementalLpSolution> {
    let upper = inst.capacities();
    solve_incremental_region(inst.region(&upper), x, k, cost)
}

/// Worst case over the continuous budget of the incremental flow value.
pub fn solve_adversarial_mcf_u1(
    inst: &FlowInstance,
    x: &[f64],
    k: f64,
    gamma: f64,
) -> Result<(f64, AdversarialLpCertificate)> {
    let upper = inst.capacities();
    let net = &inst.network;
    solve_adversarial_region(inst.region(&upper), &net.nominal_costs(), &net.deviations(), x, k, gamma)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobIncMcfSolution {
    pub value: f64,
    /// First-stage flow.
    pub x: Vec<f64>,
    pub certificate: AdversarialLpCertificate,
}

/// `min_x d'x + Z_Adv(x)` over feasible flows, as one LP.
pub fn solve_robinc_mcf(inst: &FlowInstance, initial_cost: &[f64], k: f64, gamma: f64) -> Result<RobIncMcfSolution> {
    let upper = inst.capacities();
    let net = &inst.network;
    let (value, x, certificate) = solve_robinc_region(
        inst.region(&upper),
        &net.nominal_costs(),
        &net.deviations(),
        initial_cost,
        k,
        gamma,
    )?;
    Ok(RobIncMcfSolution { value, x, certificate })
}

/// Worst case over raising at most `gamma` arcs. Without an initial flow
/// the inner problem is the full min-cost flow; with one it is the
/// incremental flow within L1 distance `k`. Returns the value and the
/// raised arcs.
pub fn solve_adversarial_mcf_u2(
    inst: &FlowInstance,
    initial: Option<&[f64]>,
    k: f64,
    gamma: usize,
) -> Result<(f64, Vec<usize>)> {
    let net = &inst.network;
    let nominal = net.nominal_costs();
    let upper = inst.capacities();
    argmax_subset(net.num_arcs(), gamma, DEFAULT_ENUMERATION_CAP, |raised| {
        let mut cost = nominal.clone();
        for &a in raised {
            cost[a] += net.arcs[a].deviation;
        }
        match initial {
            None => Ok(solve_mcf(inst, &cost)?.objective),
            Some(x) => Ok(solve_incremental_region(inst.region(&upper), x, k, &cost)?.objective),
        }
    })
}

/// Flow instance whose worst case is positive exactly when deleting
/// `gamma` arcs of the base drops the `s`-`t` max flow below `k`.
#[derive(Debug, Clone, Serialize)]
pub struct InterdictionGadget {
    pub source: usize,
    pub sink: usize,
    /// Units shipped from `source` to `sink`.
    pub k: u32,
    pub gamma: usize,
    pub instance: FlowInstance,
}

impl InterdictionGadget {
    /// Worst case over raising `gamma` arcs, with full recourse.
    pub fn adversarial_value(&self) -> Result<(f64, Vec<usize>)> {
        solve_adversarial_mcf_u2(&self.instance, None, f64::INFINITY, self.gamma)
    }

    pub fn is_positive(value: f64) -> bool {
        value > POSITIVE_TOL
    }
}

/// Copies the base with nominal costs 0, deviations 1, its capacities, and
/// supplies `k` at `s` and `-k` at `t`.
pub fn build_interdiction_gadget(base: &Network, s: usize, t: usize, k: u32, gamma: usize) -> Result<InterdictionGadget> {
    let n = base.num_nodes();
    if s >= n || t >= n || s == t {
        return Err(Error::InvalidInstance("source and sink must be distinct nodes".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInstance("flow amount must be at least 1".into()));
    }
    let mut net = base.clone();
    for a in &mut net.arcs {
        a.nominal_cost = 0.0;
        a.deviation = 1.0;
    }
    net.supplies = vec![0.0; n];
    net.supplies[s] = k as f64;
    net.supplies[t] = -(k as f64);
    Ok(InterdictionGadget {
        source: s,
        sink: t,
        k,
        gamma,
        instance: FlowInstance::new(net)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node(arcs: &[(f64, f64)], supply: f64) -> FlowInstance {
        let mut net = Network::new(true);
        for (i, &(c, u)) in arcs.iter().enumerate() {
            net.add_arc(&format!("a{i}"), "s", "t", c, 0.0);
            net.arcs[i].capacity = u;
        }
        net.supplies = vec![supply, -supply];
        FlowInstance::new(net).unwrap()
    }

    #[test]
    fn single_arc() {
        let inst = two_node(&[(2.0, 5.0)], 3.0);
        let sol = solve_mcf(&inst, &inst.network.nominal_costs()).unwrap();
        assert!((sol.objective - 6.0).abs() < 1e-9);
        assert!((sol.flow.values[0] - 3.0).abs() < 1e-9);
        assert!((sol.dual_objective - 6.0).abs() < 1e-9);
    }

    #[test]
    fn parallel_arcs() {
        let inst = two_node(&[(1.0, 1.0), (2.0, 10.0)], 3.0);
        let sol = solve_mcf(&inst, &inst.network.nominal_costs()).unwrap();
        assert!((sol.objective - 5.0).abs() < 1e-9);
        assert!((sol.dual_objective - 5.0).abs() < 1e-9);
    }

    #[test]
    fn zero_supplies() {
        let inst = two_node(&[(1.0, 1.0)], 0.0);
        assert_eq!(solve_mcf(&inst, &[1.0]).unwrap().objective, 0.0);
    }

    #[test]
    fn unroutable_demand() {
        let inst = two_node(&[(1.0, 1.0)], 2.0);
        assert!(matches!(solve_mcf(&inst, &[1.0]), Err(Error::Infeasible)));
    }

    #[test]
    fn unbalanced_supplies_rejected() {
        let mut net = Network::new(true);
        net.add_arc("a", "s", "t", 1.0, 0.0);
        net.supplies = vec![1.0, 0.0];
        assert!(FlowInstance::new(net).is_err());
    }

    #[test]
    fn lone_arc_gadget() {
        let mut net = Network::new(true);
        net.add_arc("st", "s", "t", 0.0, 0.0);
        net.arcs[0].capacity = 2.0;
        let g = build_interdiction_gadget(&net, 0, 1, 2, 1).unwrap();
        assert_eq!(g.adversarial_value().unwrap().0, 2.0);
    }
}
