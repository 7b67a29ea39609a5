use serde::Serialize;

use super::{LpInstance, Network};

/// One broken invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

impl Violation {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Violation {
            code,
            message: message.into(),
        }
    }
}

pub trait Validate {
    /// Every violated invariant; empty when the instance is valid.
    fn validate(&self) -> Vec<Violation>;
}

impl Validate for LpInstance {
    fn validate(&self) -> Vec<Violation> {
        validate_lp(self)
    }
}

impl Validate for Network {
    fn validate(&self) -> Vec<Violation> {
        validate_network(self)
    }
}

pub fn validate_lp(inst: &LpInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = inst.nominal_cost.len();
    let m = inst.rhs.len();
    if n == 0 {
        out.push(Violation::new("no variables", "instance has no variables"));
    }
    if inst.matrix.len() != m {
        out.push(Violation::new(
            "dimension mismatch",
            format!("matrix has {} rows but rhs has {m}", inst.matrix.len()),
        ));
    }
    for (i, row) in inst.matrix.iter().enumerate() {
        if row.len() != n {
            out.push(Violation::new(
                "dimension mismatch",
                format!("row {i} has {} entries, expected {n}", row.len()),
            ));
        }
    }
    for (name, v) in [("deviation", &inst.deviation), ("initial_cost", &inst.initial_cost)] {
        if v.len() != n {
            out.push(Violation::new(
                "dimension mismatch",
                format!("{name} has {} entries, expected {n}", v.len()),
            ));
        }
    }
    for (i, d) in inst.deviation.iter().enumerate() {
        if *d < 0.0 {
            out.push(Violation::new("negative deviation", format!("deviation[{i}] = {d}")));
        }
    }
    let all = inst
        .matrix
        .iter()
        .flatten()
        .chain(&inst.rhs)
        .chain(&inst.nominal_cost)
        .chain(&inst.deviation)
        .chain(&inst.initial_cost);
    if all.into_iter().any(|v| !v.is_finite()) {
        out.push(Violation::new("non-finite value", "instance contains NaN or infinity"));
    }
    out
}

pub fn validate_network(net: &Network) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = net.num_nodes();
    if net.supplies.len() != n {
        out.push(Violation::new(
            "dimension mismatch",
            format!("{} supplies for {n} nodes", net.supplies.len()),
        ));
    }
    let mut names: Vec<&String> = net.nodes.iter().collect();
    names.sort();
    if names.windows(2).any(|w| w[0] == w[1]) {
        out.push(Violation::new("duplicate node", "node names are not unique"));
    }
    let mut ids: Vec<&str> = net.arcs.iter().map(|a| a.id.as_str()).collect();
    ids.sort_unstable();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            out.push(Violation::new("duplicate arc id", format!("arc id {:?} repeats", w[0])));
        }
    }
    for a in &net.arcs {
        if a.tail >= n || a.head >= n {
            out.push(Violation::new("unknown node", format!("arc {} has an unknown endpoint", a.id)));
        }
        if a.deviation < 0.0 {
            out.push(Violation::new(
                "negative deviation",
                format!("arc {} has deviation {}", a.id, a.deviation),
            ));
        }
        if a.capacity.is_nan() || a.capacity <= 0.0 {
            out.push(Violation::new(
                "non-positive capacity",
                format!("arc {} has capacity {}", a.id, a.capacity),
            ));
        }
        if !a.nominal_cost.is_finite() || !a.deviation.is_finite() {
            out.push(Violation::new("non-finite value", format!("arc {} has a non-finite cost", a.id)));
        }
    }
    let total: f64 = net.supplies.iter().sum();
    let scale = 1.0 + net.supplies.iter().map(|b| b.abs()).sum::<f64>();
    if total.abs() > 1e-9 * scale {
        out.push(Violation::new("unbalanced supplies", format!("supplies sum to {total}")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_deviation_is_reported() {
        let inst = LpInstance {
            matrix: vec![vec![1.0, 1.0]],
            rhs: vec![1.0],
            nominal_cost: vec![1.0, 1.0],
            deviation: vec![-1.0, 0.0],
            initial_cost: vec![0.0, 0.0],
        };
        let report = inst.validate();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].code, "negative deviation");
    }

    #[test]
    fn unbalanced_supplies_are_reported() {
        let mut net = Network::new(true);
        net.add_arc("a", "s", "t", 1.0, 0.0);
        net.supplies[0] = 1.0;
        let report = net.validate();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].code, "unbalanced supplies");
    }

    #[test]
    fn parallel_arcs_need_distinct_ids() {
        let mut net = Network::new(true);
        net.add_arc("a", "s", "t", 1.0, 0.0);
        net.add_arc("b", "s", "t", 1.0, 0.0);
        assert!(net.validate().is_empty());
        net.add_arc("b", "t", "s", 1.0, 0.0);
        assert_eq!(net.validate()[0].code, "duplicate arc id");
    }
}
