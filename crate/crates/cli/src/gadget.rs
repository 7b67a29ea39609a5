//! `gadget`: builds a reduction instance from a base graph file.

use clap::ValueEnum;

use recourse_core::mcflow::build_interdiction_gadget;
use recourse_core::model::format::{InitialSpec, InstanceFile, ProblemKind};
use recourse_core::shortest_path::{build_symdiff_gadget, build_theorem4_gadget};
use recourse_core::{DistanceMetric, Error, Network, RecourseBudget, UncertaintyBudget};

use crate::solve::checked_network;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    /// Flow instance whose discrete worst case is positive iff `gamma`
    /// arc deletions push the max flow below `k`.
    Interdiction,
    /// Pair gadget under the continuous budget `Γ = 1`, `K = 1`.
    Theorem4,
    /// Pair gadget under the discrete budget `Γ = 1`, `K = 1`.
    Theorem5,
    /// Symmetric-difference gadget with `K = n + 1`.
    Symdiff,
}

impl GadgetKind {
    fn tag(self) -> &'static str {
        match self {
            GadgetKind::Interdiction => "interdiction",
            GadgetKind::Theorem4 => "theorem4",
            GadgetKind::Theorem5 => "theorem5",
            GadgetKind::Symdiff => "symdiff",
        }
    }
}

pub struct GadgetParams {
    /// Flow amount for the interdiction gadget.
    pub k: Option<u32>,
    /// Deletion budget for the interdiction gadget.
    pub gamma: Option<usize>,
}

fn named(net: &Network, v: usize) -> Option<String> {
    Some(net.nodes[v].clone())
}

fn pair_file(net: &Network, source: usize, sink: usize, u: UncertaintyBudget, tag: &str) -> Result<InstanceFile, Error> {
    let r = RecourseBudget::new(DistanceMetric::Inclusion, 1.0)?;
    let mut file = InstanceFile::for_network(ProblemKind::Sp, net, u, r);
    file.source = named(net, source);
    file.sink = named(net, sink);
    file.gadget = Some(tag.into());
    Ok(file)
}

pub fn build(kind: GadgetKind, base: &InstanceFile, params: &GadgetParams) -> Result<InstanceFile, CliError> {
    let net = checked_network(base)?;
    let tag = kind.tag();
    let file = match kind {
        GadgetKind::Interdiction => {
            let (s, t) = base.endpoints(&net)?;
            let k = params.k.ok_or_else(|| Error::Parse("interdiction needs --k".into()))?;
            let gamma = params.gamma.ok_or_else(|| Error::Parse("interdiction needs --gamma".into()))?;
            let g = build_interdiction_gadget(&net, s, t, k, gamma)?;
            let gnet = &g.instance.network;
            // No initial flow: the adversary faces full recourse, and an L1
            // radius of the total capacity never binds.
            let reach: f64 = gnet.capacities().iter().filter(|u| u.is_finite()).sum::<f64>() + f64::from(k);
            let r = RecourseBudget::new(DistanceMetric::L1, reach)?;
            let mut file = InstanceFile::for_network(ProblemKind::Mcf, gnet, UncertaintyBudget::u2(gamma), r);
            file.source = named(gnet, s);
            file.sink = named(gnet, t);
            file.gadget = Some(tag.into());
            file
        }
        GadgetKind::Theorem4 | GadgetKind::Theorem5 => {
            let [s1, t1, s2, t2] = base.terminal_nodes(&net)?;
            let g = build_theorem4_gadget(&net, s1, t1, s2, t2)?;
            let u = if kind == GadgetKind::Theorem4 {
                UncertaintyBudget::u1(1.0)
            } else {
                UncertaintyBudget::u2(1)
            };
            pair_file(&g.network, g.source, g.sink, u, tag)?
        }
        GadgetKind::Symdiff => {
            let [s1, t1, s2, t2] = base.terminal_nodes(&net)?;
            let g = build_symdiff_gadget(&net, s1, t1, s2, t2)?;
            let r = RecourseBudget::new(DistanceMetric::SymDiff, g.k as f64)?;
            let mut file = InstanceFile::for_network(ProblemKind::Sp, &g.network, UncertaintyBudget::u1(0.0), r);
            file.source = named(&g.network, g.source);
            file.sink = named(&g.network, g.sink);
            file.initial = Some(InitialSpec::ArcIds(g.initial.ids(&g.network)));
            file.gadget = Some(tag.into());
            file
        }
    };
    Ok(file)
}
