//! Solvers for robust optimization with incremental recourse.
//!
//! A decision maker commits to an initial solution `x`, an adversary then
//! picks a cost vector from an uncertainty set, and finally the decision
//! maker may move to any solution within distance `K` of `x`. The crate
//! covers four nested problems for linear programs, shortest paths, minimum
//! spanning trees and minimum-cost flows:
//!
//! * nominal: `min c'y` at fixed costs,
//! * incremental: `Z_Inc(x, c) = min { c'y : F(x, y) <= K }`,
//! * adversarial: `Z_Adv(x) = max_{c in U} Z_Inc(x, c)`,
//! * robust incremental: `min_x d'x + Z_Adv(x)`.
//!
//! Every tractable solver is paired with a brute-force routine in
//! [`oracles`] so that results can be cross-checked on small instances.

pub mod combinatorics;
pub mod error;
pub mod generate;
pub mod lp;
pub mod maxflow;
pub mod mcflow;
pub mod model;
pub mod mst;
pub mod oracles;
pub mod robinc_lp;
pub mod shortest_path;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use lp::{GeneralLp, LpBuilder, LpResult, LpStatus, Relation, Sense};
pub use model::{
    Arc, DistanceMetric, Flow, LpInstance, Network, Path, RecourseBudget, Scenario,
    SpanningTree, UncertaintyBudget, UncertaintyKind,
};
