//! Worst-case cost raise against an initial path under the continuous
//! budget, as one LP over layered node potentials.

use serde::Serialize;

use super::time_expanded::{build_time_expanded, TimeExpandedNetwork};
use crate::lp::{self, LpBuilder, Relation, Sense};
use crate::{Error, Network, Path, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpAdversarialCertificate {
    /// One potential per layered node, indexed as in the layered network.
    pub potentials: Vec<f64>,
    /// Deviation per original arc.
    pub delta: Vec<f64>,
    /// `π(s_0) - π(t_K)`.
    pub objective: f64,
}

impl SpAdversarialCertificate {
    /// Largest violation of `π_u - π_v <= c̄ + δ` over layered arcs, of
    /// `0 <= δ <= ĉ` and of `Σδ <= Γ`.
    pub fn max_violation(&self, ten: &TimeExpandedNetwork, net: &Network, gamma: f64) -> f64 {
        let mut worst = 0.0f64;
        for a in &ten.arcs {
            let c = a
                .original
                .map_or(0.0, |o| net.arcs[o].nominal_cost + self.delta[o]);
            worst = worst.max(self.potentials[a.tail] - self.potentials[a.head] - c);
        }
        for (d, arc) in self.delta.iter().zip(&net.arcs) {
            worst = worst.max(-d).max(d - arc.deviation);
        }
        let total: f64 = self.delta.iter().sum();
        if gamma.is_finite() {
            worst = worst.max(total - gamma);
        }
        worst.max((self.objective - (self.potentials[ten.source] - self.potentials[ten.sink])).abs())
    }
}

pub(crate) fn check_costs(net: &Network) -> Result<()> {
    if let Some(a) = net
        .arcs
        .iter()
        .find(|a| a.nominal_cost < 0.0 || a.deviation < 0.0)
    {
        return Err(Error::InvalidInstance(format!(
            "arc {} has a negative cost or deviation",
            a.id
        )));
    }
    Ok(())
}

/// `max π(s_0) - π(t_K)` s.t. `π_u - π_v <= c̄_a + δ_a` on every layered
/// arc (0 on waiting arcs), `0 <= δ <= ĉ`, `Σδ <= Γ`; `π(t_K)` is fixed
/// at 0.
pub fn solve_adversarial_sp_u1(
    net: &Network,
    p0: &Path,
    k: usize,
    gamma: f64,
) -> Result<(f64, SpAdversarialCertificate)> {
    check_costs(net)?;
    if gamma < 0.0 {
        return Err(Error::InvalidInstance(format!("negative budget {gamma}")));
    }
    let ten = build_time_expanded(net, p0, k)?;
    // Reachability of t_K is guaranteed by p0 itself.
    ten.shortest_path(&net.nominal_costs())?;
    let nn = ten.num_nodes();
    let mut b = LpBuilder::new(Sense::Maximize);
    for v in 0..nn {
        let c = if v == ten.source { 1.0 } else { 0.0 };
        if v == ten.sink {
            b.add_var(0.0, 0.0, 0.0);
        } else {
            b.add_var(c, f64::NEG_INFINITY, f64::INFINITY);
        }
    }
    let delta = b.num_vars();
    for a in &net.arcs {
        b.add_var(0.0, 0.0, a.deviation);
    }
    for a in &ten.arcs {
        let mut terms = vec![(a.tail, 1.0), (a.head, -1.0)];
        let rhs = match a.original {
            Some(o) => {
                terms.push((delta + o, -1.0));
                net.arcs[o].nominal_cost
            }
            None => 0.0,
        };
        b.add_row(terms, Relation::Le, rhs);
    }
    if gamma.is_finite() {
        b.add_row((0..net.num_arcs()).map(|o| (delta + o, 1.0)).collect(), Relation::Le, gamma);
    }
    let res = lp::solve(&b.build())?.into_optimal()?;
    let value = res.objective;
    let cert = SpAdversarialCertificate {
        potentials: res.primal[..nn].to_vec(),
        delta: res.primal[delta..]
            .iter()
            .zip(&net.arcs)
            .map(|(d, a)| d.clamp(0.0, a.deviation))
            .collect(),
        objective: value,
    };
    Ok((value, cert))
}
