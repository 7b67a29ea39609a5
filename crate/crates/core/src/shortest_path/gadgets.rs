//! Reductions from the two-disjoint-paths question to path problems with
//! recourse.

use crate::{Error, Network, Path, Result};

fn distinct(terminals: [usize; 4], n: usize) -> Result<()> {
    for (i, &a) in terminals.iter().enumerate() {
        if a >= n {
            return Err(Error::InvalidInstance(format!("terminal {a} is not a node")));
        }
        if terminals[i + 1..].contains(&a) {
            return Err(Error::InvalidInstance("terminals must be distinct".into()));
        }
    }
    Ok(())
}

fn fresh_node(net: &mut Network, name: &str) -> Result<usize> {
    if net.node(name).is_some() {
        return Err(Error::InvalidInstance(format!("base already has a node named {name}")));
    }
    Ok(net.add_node(name))
}

/// Base graph wrapped with entry and exit nodes for both pairs.
#[derive(Debug, Clone)]
pub struct PairGadget {
    pub network: Network,
    pub source: usize,
    pub sink: usize,
    /// Arc `s1' -> s1`.
    pub enter_first: usize,
    /// Arc `t1 -> t1'`.
    pub leave_first: usize,
    /// Arc `s2' -> s2`.
    pub enter_second: usize,
    /// Arc `t2 -> t2'`.
    pub leave_second: usize,
    /// The two parallel arcs `t1' -> s2'`.
    pub links: [usize; 2],
}

impl PairGadget {
    /// Initial path through the base: `s1'`, `first`, `t1'`, the first link,
    /// `s2'`, `second`, `t2'`.
    pub fn initial_path(&self, first: &Path, second: &Path) -> Path {
        let mut arcs = vec![self.enter_first];
        arcs.extend(&first.arcs);
        arcs.push(self.leave_first);
        arcs.push(self.links[0]);
        arcs.push(self.enter_second);
        arcs.extend(&second.arcs);
        arcs.push(self.leave_second);
        Path::new(arcs)
    }
}

/// Adds `s1', t1', s2', t2'`, the arcs `(s1',s1)`, `(s1',t1')`, `(t1,t1')`,
/// `(s2',s2)`, `(s2',t2')`, `(t2,t2')` and two parallel `t1' -> s2'` arcs.
/// Every arc gets nominal cost 0 and deviation 1. Source is `s1'`, sink `t2'`.
pub fn build_theorem4_gadget(base: &Network, s1: usize, t1: usize, s2: usize, t2: usize) -> Result<PairGadget> {
    if !base.directed {
        return Err(Error::Unsupported("gadget needs a directed base".into()));
    }
    distinct([s1, t1, s2, t2], base.num_nodes())?;
    let mut net = base.clone();
    for a in &mut net.arcs {
        a.nominal_cost = 0.0;
        a.deviation = 1.0;
        a.capacity = f64::INFINITY;
    }
    net.supplies = vec![0.0; net.num_nodes()];
    let name = |v: usize| base.nodes[v].clone();
    let s1p = fresh_node(&mut net, &format!("{}'", name(s1)))?;
    let t1p = fresh_node(&mut net, &format!("{}'", name(t1)))?;
    let s2p = fresh_node(&mut net, &format!("{}'", name(s2)))?;
    let t2p = fresh_node(&mut net, &format!("{}'", name(t2)))?;
    net.supplies.resize(net.num_nodes(), 0.0);
    let add = |net: &mut Network, a: usize, b: usize, tag: &str| -> Result<usize> {
        let id = format!("{}>{}{tag}", net.nodes[a], net.nodes[b]);
        if net.arc_index(&id).is_some() {
            return Err(Error::InvalidInstance(format!("base already has an arc named {id}")));
        }
        Ok(net.push_arc(&id, a, b, 0.0, 1.0, f64::INFINITY))
    };
    let enter_first = add(&mut net, s1p, s1, "")?;
    add(&mut net, s1p, t1p, "")?;
    let leave_first = add(&mut net, t1, t1p, "")?;
    let enter_second = add(&mut net, s2p, s2, "")?;
    add(&mut net, s2p, t2p, "")?;
    let leave_second = add(&mut net, t2, t2p, "")?;
    let links = [add(&mut net, t1p, s2p, "/a")?, add(&mut net, t1p, s2p, "/b")?];
    Ok(PairGadget {
        network: net,
        source: s1p,
        sink: t2p,
        enter_first,
        leave_first,
        enter_second,
        leave_second,
        links,
    })
}

#[derive(Debug, Clone)]
pub struct SymDiffGadget {
    pub network: Network,
    pub source: usize,
    pub sink: usize,
    pub initial: Path,
    /// Recourse budget `n + 1` for a base with `n` nodes.
    pub k: usize,
}

/// Adds arcs `(s1,t1)`, `(s2,t2)` and a chain `t1 -> i_1 -> ... -> i_n -> s2`
/// of `n + 1` arcs. Base arcs cost 0, added arcs cost 1, no deviation.
/// The initial path is `(s1,t1)`, the chain, `(s2,t2)`.
pub fn build_symdiff_gadget(base: &Network, s1: usize, t1: usize, s2: usize, t2: usize) -> Result<SymDiffGadget> {
    if !base.directed {
        return Err(Error::Unsupported("gadget needs a directed base".into()));
    }
    distinct([s1, t1, s2, t2], base.num_nodes())?;
    let n = base.num_nodes();
    let mut net = base.clone();
    for a in &mut net.arcs {
        a.nominal_cost = 0.0;
        a.deviation = 0.0;
        a.capacity = f64::INFINITY;
    }
    let mut chain_nodes = Vec::with_capacity(n);
    for i in 1..=n {
        chain_nodes.push(fresh_node(&mut net, &format!("i{i}"))?);
    }
    net.supplies = vec![0.0; net.num_nodes()];
    let add = |net: &mut Network, a: usize, b: usize| -> Result<usize> {
        let id = format!("{}>{}", net.nodes[a], net.nodes[b]);
        if net.arc_index(&id).is_some() {
            return Err(Error::InvalidInstance(format!("base already has an arc named {id}")));
        }
        Ok(net.push_arc(&id, a, b, 1.0, 0.0, f64::INFINITY))
    };
    let mut initial = vec![add(&mut net, s1, t1)?];
    let mut prev = t1;
    for &c in chain_nodes.iter().chain(std::iter::once(&s2)) {
        initial.push(add(&mut net, prev, c)?);
        prev = c;
    }
    initial.push(add(&mut net, s2, t2)?);
    Ok(SymDiffGadget {
        network: net,
        source: s1,
        sink: t2,
        initial: Path::new(initial),
        k: n + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{disjoint_arcs_base, shared_node_base};

    #[test]
    fn pair_gadget_adds_eight_arcs() {
        let base = disjoint_arcs_base();
        let g = build_theorem4_gadget(&base.network, base.s1, base.t1, base.s2, base.t2).unwrap();
        assert_eq!(g.network.num_arcs(), base.network.num_arcs() + 8);
        assert!(g.network.arcs.iter().all(|a| a.nominal_cost == 0.0 && a.deviation == 1.0));
        let p = g.initial_path(&Path::new(vec![0]), &Path::new(vec![1]));
        p.check(&g.network, g.source, g.sink).unwrap();
    }

    #[test]
    fn symdiff_initial_cost() {
        let base = shared_node_base();
        let g = build_symdiff_gadget(&base.network, base.s1, base.t1, base.s2, base.t2).unwrap();
        let n = base.network.num_nodes();
        g.initial.check(&g.network, g.source, g.sink).unwrap();
        assert_eq!(g.initial.cost(&g.network.nominal_costs()), (n + 3) as f64);
        assert_eq!(g.k, n + 1);
    }

    #[test]
    fn terminals_must_differ() {
        let base = disjoint_arcs_base();
        assert!(build_theorem4_gadget(&base.network, 0, 0, 2, 3).is_err());
    }
}
