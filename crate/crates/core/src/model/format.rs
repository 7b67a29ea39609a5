//! JSON instance files.
//!
//! One schema covers all four problem kinds. Shared fields are `kind`,
//! `uncertainty` and `recourse`; LP payloads carry `matrix`, `rhs`,
//! `nominal_cost`, `deviation` and optionally `initial_cost`; graph payloads
//! carry `nodes`, `arcs`, and depending on the kind `source`/`sink`,
//! `supplies` or `terminals`. `initial` is either a list of numbers (LP point
//! or per-arc flow) or a list of arc ids (initial path or tree). Unknown
//! fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    DistanceMetric, LpInstance, Network, Path, RecourseBudget, SpanningTree, UncertaintyBudget,
    UncertaintyKind,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Lp,
    Sp,
    Mst,
    Mcf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UncertaintySpec {
    pub kind: UncertaintyKind,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricSpec {
    L1,
    #[serde(rename = "incl")]
    Inclusion,
    #[serde(rename = "excl")]
    Exclusion,
    #[serde(rename = "sym")]
    SymDiff,
}

impl From<MetricSpec> for DistanceMetric {
    fn from(m: MetricSpec) -> Self {
        match m {
            MetricSpec::L1 => DistanceMetric::L1,
            MetricSpec::Inclusion => DistanceMetric::Inclusion,
            MetricSpec::Exclusion => DistanceMetric::Exclusion,
            MetricSpec::SymDiff => DistanceMetric::SymDiff,
        }
    }
}

impl From<DistanceMetric> for MetricSpec {
    fn from(m: DistanceMetric) -> Self {
        match m {
            DistanceMetric::L1 => MetricSpec::L1,
            DistanceMetric::Inclusion => MetricSpec::Inclusion,
            DistanceMetric::Exclusion => MetricSpec::Exclusion,
            DistanceMetric::SymDiff => MetricSpec::SymDiff,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecourseSpec {
    pub k: f64,
    pub metric: MetricSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub cost: f64,
    #[serde(default)]
    pub deviation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialSpec {
    Values(Vec<f64>),
    ArcIds(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: ProblemKind,
    pub uncertainty: UncertaintySpec,
    pub recourse: RecourseSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nominal_cost: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deviation: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_cost: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<ArcSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sink: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supplies: Option<BTreeMap<String, f64>>,
    /// `[s1, t1, s2, t2]` of a two-disjoint-paths base instance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gadget: Option<String>,
}

fn missing(field: &str) -> Error {
    Error::Parse(format!("missing field {field:?}"))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.check_payload()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialisation cannot fail")
    }

    /// Payload fields must match `kind`.
    fn check_payload(&self) -> Result<()> {
        let lp_fields = self.matrix.is_some() || self.rhs.is_some() || self.nominal_cost.is_some();
        let graph_fields = self.nodes.is_some() || self.arcs.is_some();
        match self.kind {
            ProblemKind::Lp if graph_fields => {
                Err(Error::Parse("lp instance carries graph fields".into()))
            }
            ProblemKind::Sp | ProblemKind::Mst | ProblemKind::Mcf if lp_fields => {
                Err(Error::Parse("graph instance carries lp fields".into()))
            }
            _ => Ok(()),
        }
    }

    /// A blank graph instance; `directed` follows from `kind`.
    pub fn for_network(kind: ProblemKind, net: &Network, uncertainty: UncertaintyBudget, recourse: RecourseBudget) -> Self {
        let arcs = net
            .arcs
            .iter()
            .map(|a| ArcSpec {
                id: a.id.clone(),
                tail: net.nodes[a.tail].clone(),
                head: net.nodes[a.head].clone(),
                cost: a.nominal_cost,
                deviation: a.deviation,
                capacity: a.capacity.is_finite().then_some(a.capacity),
                initial_cost: None,
            })
            .collect();
        let supplies: BTreeMap<String, f64> = net
            .nodes
            .iter()
            .zip(&net.supplies)
            .filter(|(_, b)| **b != 0.0)
            .map(|(n, b)| (n.clone(), *b))
            .collect();
        InstanceFile {
            kind,
            uncertainty: UncertaintySpec {
                kind: uncertainty.kind,
                gamma: uncertainty.gamma,
            },
            recourse: RecourseSpec {
                k: recourse.k,
                metric: recourse.metric.into(),
            },
            matrix: None,
            rhs: None,
            nominal_cost: None,
            deviation: None,
            initial_cost: None,
            nodes: Some(net.nodes.clone()),
            arcs: Some(arcs),
            source: None,
            sink: None,
            supplies: (!supplies.is_empty()).then_some(supplies),
            terminals: None,
            initial: None,
            gadget: None,
        }
    }

    pub fn for_lp(inst: &LpInstance, uncertainty: UncertaintyBudget, recourse: RecourseBudget) -> Self {
        InstanceFile {
            kind: ProblemKind::Lp,
            uncertainty: UncertaintySpec {
                kind: uncertainty.kind,
                gamma: uncertainty.gamma,
            },
            recourse: RecourseSpec {
                k: recourse.k,
                metric: recourse.metric.into(),
            },
            matrix: Some(inst.matrix.clone()),
            rhs: Some(inst.rhs.clone()),
            nominal_cost: Some(inst.nominal_cost.clone()),
            deviation: Some(inst.deviation.clone()),
            initial_cost: inst
                .initial_cost
                .iter()
                .any(|d| *d != 0.0)
                .then(|| inst.initial_cost.clone()),
            nodes: None,
            arcs: None,
            source: None,
            sink: None,
            supplies: None,
            terminals: None,
            initial: None,
            gadget: None,
        }
    }

    pub fn uncertainty_budget(&self) -> Result<UncertaintyBudget> {
        UncertaintyBudget::new(self.uncertainty.kind, self.uncertainty.gamma)
    }

    pub fn recourse_budget(&self) -> Result<RecourseBudget> {
        RecourseBudget::new(self.recourse.metric.into(), self.recourse.k)
    }

    pub fn to_lp(&self) -> Result<LpInstance> {
        if self.kind != ProblemKind::Lp {
            return Err(Error::Parse("not an lp instance".into()));
        }
        let nominal = self.nominal_cost.clone().ok_or_else(|| missing("nominal_cost"))?;
        let deviation = self
            .deviation
            .clone()
            .unwrap_or_else(|| vec![0.0; nominal.len()]);
        LpInstance::new(
            self.matrix.clone().ok_or_else(|| missing("matrix"))?,
            self.rhs.clone().ok_or_else(|| missing("rhs"))?,
            nominal,
            deviation,
            self.initial_cost.clone(),
        )
    }

    pub fn to_network(&self) -> Result<Network> {
        let mut net = Network::new(self.kind != ProblemKind::Mst);
        for name in self.nodes.as_ref().ok_or_else(|| missing("nodes"))? {
            if net.node(name).is_some() {
                return Err(Error::InvalidInstance(format!("node {name:?} repeats")));
            }
            net.add_node(name);
        }
        for a in self.arcs.as_ref().ok_or_else(|| missing("arcs"))? {
            let lookup = |name: &str| {
                net.node(name)
                    .ok_or_else(|| Error::InvalidInstance(format!("arc {} uses unknown node {name:?}", a.id)))
            };
            let (tail, head) = (lookup(&a.tail)?, lookup(&a.head)?);
            net.push_arc(&a.id, tail, head, a.cost, a.deviation, a.capacity.unwrap_or(f64::INFINITY));
        }
        if let Some(supplies) = &self.supplies {
            for (name, b) in supplies {
                let i = net
                    .node(name)
                    .ok_or_else(|| Error::InvalidInstance(format!("supply for unknown node {name:?}")))?;
                net.supplies[i] = *b;
            }
        }
        Ok(net)
    }

    /// First-stage cost `d`; zero when absent.
    pub fn initial_cost_vector(&self) -> Vec<f64> {
        match self.kind {
            ProblemKind::Lp => self.initial_cost.clone().unwrap_or_else(|| {
                vec![0.0; self.nominal_cost.as_ref().map_or(0, Vec::len)]
            }),
            _ => self
                .arcs
                .iter()
                .flatten()
                .map(|a| a.initial_cost.unwrap_or(0.0))
                .collect(),
        }
    }

    pub fn endpoints(&self, net: &Network) -> Result<(usize, usize)> {
        let find = |field: &Option<String>, what: &str| -> Result<usize> {
            let name = field.as_ref().ok_or_else(|| missing(what))?;
            net.node(name)
                .ok_or_else(|| Error::InvalidInstance(format!("{what} {name:?} is not a node")))
        };
        Ok((find(&self.source, "source")?, find(&self.sink, "sink")?))
    }

    pub fn terminal_nodes(&self, net: &Network) -> Result<[usize; 4]> {
        let t = self.terminals.as_ref().ok_or_else(|| missing("terminals"))?;
        if t.len() != 4 {
            return Err(Error::InvalidInstance("terminals must list s1, t1, s2, t2".into()));
        }
        let mut out = [0; 4];
        for (slot, name) in out.iter_mut().zip(t) {
            *slot = net
                .node(name)
                .ok_or_else(|| Error::InvalidInstance(format!("terminal {name:?} is not a node")))?;
        }
        Ok(out)
    }

    fn initial_ids(&self) -> Result<Vec<&str>> {
        match &self.initial {
            Some(InitialSpec::ArcIds(ids)) => Ok(ids.iter().map(String::as_str).collect()),
            // An empty list parses as numbers.
            Some(InitialSpec::Values(v)) if v.is_empty() => Ok(Vec::new()),
            Some(InitialSpec::Values(_)) => Err(Error::Parse("initial must list arc ids".into())),
            None => Err(missing("initial")),
        }
    }

    pub fn initial_path(&self, net: &Network) -> Result<Path> {
        Path::from_ids(net, &self.initial_ids()?)
    }

    pub fn initial_tree(&self, net: &Network) -> Result<SpanningTree> {
        SpanningTree::from_ids(net, &self.initial_ids()?)
    }

    pub fn initial_values(&self) -> Result<Vec<f64>> {
        match &self.initial {
            Some(InitialSpec::Values(v)) => Ok(v.clone()),
            Some(InitialSpec::ArcIds(_)) => Err(Error::Parse("initial must list numbers".into())),
            None => Err(missing("initial")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIG1: &str = r#"{
        "kind": "sp",
        "uncertainty": {"kind": "U1", "gamma": 0},
        "recourse": {"k": 1, "metric": "incl"},
        "nodes": ["s", "i", "j", "l", "t"],
        "arcs": [
            {"id": "si", "tail": "s", "head": "i", "cost": 3},
            {"id": "sl", "tail": "s", "head": "l", "cost": 2},
            {"id": "ij", "tail": "i", "head": "j", "cost": 1},
            {"id": "it", "tail": "i", "head": "t", "cost": 5},
            {"id": "lt", "tail": "l", "head": "t", "cost": 2},
            {"id": "lj", "tail": "l", "head": "j", "cost": 1},
            {"id": "sj", "tail": "s", "head": "j", "cost": 3},
            {"id": "jt", "tail": "j", "head": "t", "cost": 4}
        ],
        "source": "s",
        "sink": "t",
        "initial": ["si", "ij", "jt"]
    }"#;

    #[test]
    fn parses_figure_one() {
        let f = InstanceFile::parse(FIG1).unwrap();
        let net = f.to_network().unwrap();
        assert_eq!(net.num_nodes(), 5);
        assert_eq!(net.num_arcs(), 8);
        let p = f.initial_path(&net).unwrap();
        let (s, t) = f.endpoints(&net).unwrap();
        p.check(&net, s, t).unwrap();
        assert_eq!(p.cost(&net.nominal_costs()), 8.0);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = FIG1.replace("\"sink\": \"t\",", "\"sink\": \"t\", \"colour\": 1,");
        assert!(matches!(InstanceFile::parse(&bad), Err(Error::Parse(_))));
        let bad_arc = FIG1.replace("\"cost\": 3}", "\"cost\": 3, \"weight\": 1}");
        assert!(InstanceFile::parse(&bad_arc).is_err());
    }

    #[test]
    fn mixed_payload_is_rejected() {
        let bad = FIG1.replace("\"source\": \"s\",", "\"source\": \"s\", \"rhs\": [1],");
        assert!(InstanceFile::parse(&bad).is_err());
    }

    fn arb_arc(nodes: usize) -> impl Strategy<Value = (usize, usize, f64, f64, Option<f64>, Option<f64>)> {
        (
            0..nodes,
            0..nodes,
            -10.0f64..10.0,
            0.0f64..5.0,
            proptest::option::of(0.5f64..9.0),
            proptest::option::of(0.0f64..4.0),
        )
    }

    proptest! {
        #[test]
        fn graph_files_round_trip(
            arcs in proptest::collection::vec(arb_arc(5), 1..10),
            gamma in 0u32..4,
            k in 0u32..4,
        ) {
            let file = InstanceFile {
                kind: ProblemKind::Mcf,
                uncertainty: UncertaintySpec { kind: UncertaintyKind::U2, gamma: gamma as f64 },
                recourse: RecourseSpec { k: k as f64, metric: MetricSpec::SymDiff },
                matrix: None, rhs: None, nominal_cost: None, deviation: None, initial_cost: None,
                nodes: Some((0..5).map(|i| format!("v{i}")).collect()),
                arcs: Some(arcs.iter().enumerate().map(|(i, a)| ArcSpec {
                    id: format!("a{i}"),
                    tail: format!("v{}", a.0),
                    head: format!("v{}", a.1),
                    cost: a.2,
                    deviation: a.3,
                    capacity: a.4,
                    initial_cost: a.5,
                }).collect()),
                source: Some("v0".into()),
                sink: Some("v4".into()),
                supplies: Some([("v0".to_string(), 2.0), ("v4".to_string(), -2.0)].into_iter().collect()),
                terminals: None,
                initial: Some(InitialSpec::Values(vec![0.5; arcs.len()])),
                gadget: Some("interdiction".into()),
            };
            let back = InstanceFile::parse(&file.to_json()).unwrap();
            prop_assert_eq!(&back, &file);
            let net = back.to_network().unwrap();
            let again = InstanceFile::for_network(ProblemKind::Mcf, &net, back.uncertainty_budget().unwrap(), back.recourse_budget().unwrap());
            prop_assert_eq!(again.to_network().unwrap(), net);
        }

        #[test]
        fn lp_files_round_trip(
            rows in proptest::collection::vec(proptest::collection::vec(-5.0f64..5.0, 3), 1..4),
            cost in proptest::collection::vec(-5.0f64..5.0, 3),
            dev in proptest::collection::vec(0.0f64..3.0, 3),
            d in proptest::collection::vec(0.0f64..3.0, 3),
        ) {
            let inst = LpInstance::new(rows.clone(), vec![1.0; rows.len()], cost, dev, Some(d)).unwrap();
            let file = InstanceFile::for_lp(&inst, UncertaintyBudget::u1(1.5), RecourseBudget::new(DistanceMetric::L1, 0.5).unwrap());
            let back = InstanceFile::parse(&file.to_json()).unwrap();
            prop_assert_eq!(back.to_lp().unwrap(), inst);
        }
    }
}
