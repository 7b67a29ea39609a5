use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `S = { x >= 0 : A x = b }` with nominal costs `c̄`, deviations `ĉ` and
/// first-stage costs `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpInstance {
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub nominal_cost: Vec<f64>,
    pub deviation: Vec<f64>,
    pub initial_cost: Vec<f64>,
}

impl LpInstance {
    /// `initial_cost` defaults to zero. Only shapes are checked here; see
    /// [`crate::model::validate_lp`] for the full invariant list.
    pub fn new(
        matrix: Vec<Vec<f64>>,
        rhs: Vec<f64>,
        nominal_cost: Vec<f64>,
        deviation: Vec<f64>,
        initial_cost: Option<Vec<f64>>,
    ) -> Result<Self> {
        let n = nominal_cost.len();
        let inst = LpInstance {
            initial_cost: initial_cost.unwrap_or_else(|| vec![0.0; n]),
            matrix,
            rhs,
            nominal_cost,
            deviation,
        };
        if n == 0 {
            return Err(Error::InvalidInstance("no variables".into()));
        }
        if inst.matrix.len() != inst.rhs.len()
            || inst.matrix.iter().any(|r| r.len() != n)
            || inst.deviation.len() != n
            || inst.initial_cost.len() != n
        {
            return Err(Error::InvalidInstance("dimension mismatch".into()));
        }
        Ok(inst)
    }

    pub fn num_vars(&self) -> usize {
        self.nominal_cost.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rhs.len()
    }

    /// `c̄ + δ` for a U1 deviation vector.
    pub fn realized_cost(&self, delta: &[f64]) -> Vec<f64> {
        self.nominal_cost.iter().zip(delta).map(|(c, d)| c + d).collect()
    }

    /// Fails with [`Error::InfeasibleInitialPoint`] unless `x >= 0` and `Ax = b`.
    pub fn check_feasible(&self, x: &[f64], tol: f64) -> Result<()> {
        if x.len() != self.num_vars() {
            return Err(Error::InfeasibleInitialPoint(format!(
                "point has {} entries, expected {}",
                x.len(),
                self.num_vars()
            )));
        }
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| **v < -tol) {
            return Err(Error::InfeasibleInitialPoint(format!("x[{i}] = {v} < 0")));
        }
        for (i, (row, b)) in self.matrix.iter().zip(&self.rhs).enumerate() {
            let ax: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
            if (ax - b).abs() > tol * (1.0 + b.abs()) {
                return Err(Error::InfeasibleInitialPoint(format!(
                    "row {i}: A x = {ax}, b = {b}"
                )));
            }
        }
        Ok(())
    }
}
