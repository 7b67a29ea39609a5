use serde::{Deserialize, Serialize};

use super::{Network, Path};
use crate::{Error, Result};

/// A robust-incremental instance over a 0/1 ground set whose optimum equals
/// the incremental optimum from a fixed reference solution.
///
/// Elements outside the reference get a first-stage cost of `n·C`
/// (`C = max c_i`), so no other initial solution can beat the reference, and
/// the uncertainty set is the single cost vector `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedRobInc {
    pub initial_cost: Vec<f64>,
    pub scenario: Vec<f64>,
    /// Support of the reference solution.
    pub reference: Vec<usize>,
}

/// Costs must be non-negative and `x` must be a 0/1 vector.
pub fn embed_incremental_as_robinc(x: &[f64], cost: &[f64]) -> Result<EmbeddedRobInc> {
    if x.len() != cost.len() {
        return Err(Error::InvalidInstance("x and cost differ in length".into()));
    }
    if let Some(v) = x.iter().find(|v| **v != 0.0 && **v != 1.0) {
        return Err(Error::InvalidInstance(format!("ground set is not binary: found {v}")));
    }
    if cost.iter().any(|c| *c < 0.0 || !c.is_finite()) {
        return Err(Error::InvalidInstance("embedding needs finite non-negative costs".into()));
    }
    let n = x.len() as f64;
    let big = n * cost.iter().cloned().fold(0.0, f64::max);
    Ok(EmbeddedRobInc {
        initial_cost: x.iter().map(|&v| if v == 1.0 { 0.0 } else { big }).collect(),
        scenario: cost.to_vec(),
        reference: x
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == 1.0)
            .map(|(i, _)| i)
            .collect(),
    })
}

pub fn embed_path_as_robinc(net: &Network, p0: &Path, cost: &[f64]) -> Result<EmbeddedRobInc> {
    let mut x = vec![0.0; net.num_arcs()];
    for &a in &p0.arcs {
        x[a] = 1.0;
    }
    embed_incremental_as_robinc(&x, cost)
}
