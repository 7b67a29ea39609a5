use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::tolerance::EPS;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UncertaintyKind {
    /// `{ c̄ + δ : 0 <= δ <= ĉ, Σδ <= Γ }`
    U1,
    /// `{ c̄ + δ∘ĉ : δ ∈ {0,1}^n, Σδ <= Γ }`
    U2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyBudget {
    pub gamma: f64,
    pub kind: UncertaintyKind,
}

impl UncertaintyBudget {
    pub fn new(kind: UncertaintyKind, gamma: f64) -> Result<Self> {
        if gamma.is_nan() || gamma < 0.0 {
            return Err(Error::InvalidInstance(format!("gamma must be non-negative, got {gamma}")));
        }
        if kind == UncertaintyKind::U2 && (gamma.fract() != 0.0 || gamma.is_infinite()) {
            return Err(Error::InvalidInstance(format!("U2 gamma must be an integer, got {gamma}")));
        }
        Ok(UncertaintyBudget { gamma, kind })
    }

    pub fn u1(gamma: f64) -> Self {
        Self::new(UncertaintyKind::U1, gamma).expect("invalid U1 budget")
    }

    pub fn u2(gamma: usize) -> Self {
        UncertaintyBudget {
            gamma: gamma as f64,
            kind: UncertaintyKind::U2,
        }
    }

    /// Number of coordinates the U2 adversary may raise.
    pub fn count(&self) -> usize {
        self.gamma as usize
    }

    /// Draws a random member of the set.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, nominal: &[f64], deviation: &[f64]) -> Scenario {
        let n = deviation.len();
        let mut delta = vec![0.0; n];
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        match self.kind {
            UncertaintyKind::U1 => {
                let mut left = self.gamma;
                for &i in &order {
                    let v = (rng.gen::<f64>() * deviation[i]).min(left).max(0.0);
                    delta[i] = v;
                    left -= v;
                }
                Scenario::u1(nominal, delta)
            }
            UncertaintyKind::U2 => {
                let raised = rng.gen_range(0..=self.count().min(n));
                for &i in order.iter().take(raised) {
                    delta[i] = 1.0;
                }
                Scenario::u2(nominal, deviation, delta)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceMetric {
    /// `Σ |x_i - y_i|`
    L1,
    /// New elements: `|P \ P⁰|`.
    Inclusion,
    /// Dropped elements: `|P⁰ \ P|`.
    Exclusion,
    /// `|P ⊕ P⁰|`.
    SymDiff,
}

impl DistanceMetric {
    pub fn is_combinatorial(self) -> bool {
        !matches!(self, DistanceMetric::L1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecourseBudget {
    pub k: f64,
    pub metric: DistanceMetric,
}

impl RecourseBudget {
    pub fn new(metric: DistanceMetric, k: f64) -> Result<Self> {
        if k.is_nan() || k < 0.0 {
            return Err(Error::InvalidInstance(format!("K must be non-negative, got {k}")));
        }
        if metric.is_combinatorial() && k.is_finite() && k.fract() != 0.0 {
            return Err(Error::InvalidInstance(format!(
                "K must be an integer for {metric:?}, got {k}"
            )));
        }
        Ok(RecourseBudget { k, metric })
    }

    /// Integer budget for combinatorial metrics; infinite `K` saturates.
    pub fn count(&self) -> usize {
        if self.k.is_infinite() {
            usize::MAX
        } else {
            self.k as usize
        }
    }
}

/// Marks the elements of an initial solution for fast distance queries.
#[derive(Debug, Clone)]
pub struct Membership {
    mask: Vec<bool>,
    size: usize,
}

impl Membership {
    pub fn new(universe: usize, members: &[usize]) -> Self {
        let mut mask = vec![false; universe];
        for &e in members {
            mask[e] = true;
        }
        let size = mask.iter().filter(|b| **b).count();
        Membership { mask, size }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.mask[e]
    }

    /// Distance from the initial set to `candidate` (elements must be distinct).
    pub fn distance(&self, metric: DistanceMetric, candidate: &[usize]) -> usize {
        let shared = candidate.iter().filter(|&&e| self.mask[e]).count();
        let added = candidate.len() - shared;
        let dropped = self.size - shared;
        match metric {
            DistanceMetric::Inclusion => added,
            DistanceMetric::Exclusion => dropped,
            DistanceMetric::SymDiff | DistanceMetric::L1 => added + dropped,
        }
    }
}

/// A realised cost vector together with the deviation that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub delta: Vec<f64>,
    pub realized_cost: Vec<f64>,
}

impl Scenario {
    pub fn nominal(nominal: &[f64]) -> Self {
        Scenario {
            delta: vec![0.0; nominal.len()],
            realized_cost: nominal.to_vec(),
        }
    }

    pub fn u1(nominal: &[f64], delta: Vec<f64>) -> Self {
        let realized_cost = nominal.iter().zip(&delta).map(|(c, d)| c + d).collect();
        Scenario { delta, realized_cost }
    }

    pub fn u2(nominal: &[f64], deviation: &[f64], delta: Vec<f64>) -> Self {
        let realized_cost = nominal
            .iter()
            .zip(deviation)
            .zip(&delta)
            .map(|((c, h), d)| c + d * h)
            .collect();
        Scenario { delta, realized_cost }
    }

    /// Whether the scenario is a member of the budgeted set.
    pub fn is_member(&self, budget: &UncertaintyBudget, deviation: &[f64]) -> bool {
        let total: f64 = self.delta.iter().sum();
        if total > budget.gamma + EPS * (1.0 + budget.gamma.min(1e12)) {
            return false;
        }
        match budget.kind {
            UncertaintyKind::U1 => self
                .delta
                .iter()
                .zip(deviation)
                .all(|(d, h)| *d >= -EPS && *d <= h + EPS),
            UncertaintyKind::U2 => self.delta.iter().all(|d| *d == 0.0 || *d == 1.0),
        }
    }
}
