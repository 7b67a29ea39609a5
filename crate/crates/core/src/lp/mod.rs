//! Dense two-phase revised simplex with dual certificates.
//!
//! Problems are stated as [`GeneralLp`]: any objective sense, rows with
//! `<=`, `=` or `>=`, and per-variable bounds that may be infinite. The
//! solver reports primal values, one dual value per row and the reduced cost
//! of every variable. Duals are sensitivities of the optimal objective with
//! respect to the row right-hand side, so for a minimisation a `>=` row has
//! a non-negative dual and a `<=` row a non-positive one (signs flip for a
//! maximisation).

mod duality;
mod lu;
mod simplex;

pub use duality::{check_duality, DualityReport};
pub use simplex::{solve, solve_with, SimplexOptions};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralLp {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    /// `(lo, hi)` per variable; `lo` may be `-inf`, `hi` may be `+inf`.
    pub bounds: Vec<(f64, f64)>,
}

impl GeneralLp {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.constraints.len()
    }

    /// Checks that every row and the bound list match the variable count.
    pub fn check_shape(&self) -> crate::Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(crate::Error::InvalidInstance(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(crate::Error::InvalidInstance(format!(
                    "row {i} has {} coefficients, expected {n}",
                    row.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        dot(&self.objective, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    pub duals: Vec<f64>,
    pub reduced_costs: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Turns a non-optimal status into the matching error.
    pub fn into_optimal(self) -> crate::Result<LpResult> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(crate::Error::Infeasible),
            LpStatus::Unbounded => Err(crate::Error::Unbounded),
        }
    }
}

/// Incremental construction of a [`GeneralLp`] from sparse rows.
#[derive(Debug, Clone)]
pub struct LpBuilder {
    sense: Sense,
    objective: Vec<f64>,
    bounds: Vec<(f64, f64)>,
    rows: Vec<(Vec<(usize, f64)>, Relation, f64)>,
}

impl LpBuilder {
    pub fn new(sense: Sense) -> Self {
        Self {
            sense,
            objective: Vec::new(),
            bounds: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn add_var(&mut self, cost: f64, lo: f64, hi: f64) -> usize {
        self.objective.push(cost);
        self.bounds.push((lo, hi));
        self.objective.len() - 1
    }

    /// Adds `count` variables sharing the same bounds; returns the first index.
    pub fn add_vars(&mut self, costs: &[f64], lo: f64, hi: f64) -> usize {
        let first = self.objective.len();
        for &c in costs {
            self.add_var(c, lo, hi);
        }
        first
    }

    pub fn add_row(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) -> usize {
        self.rows.push((terms, relation, rhs));
        self.rows.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn build(self) -> GeneralLp {
        let n = self.objective.len();
        let constraints = self
            .rows
            .into_iter()
            .map(|(terms, relation, rhs)| {
                let mut coeffs = vec![0.0; n];
                for (j, a) in terms {
                    coeffs[j] += a;
                }
                Constraint {
                    coeffs,
                    relation,
                    rhs,
                }
            })
            .collect();
        GeneralLp {
            sense: self.sense,
            objective: self.objective,
            constraints,
            bounds: self.bounds,
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
