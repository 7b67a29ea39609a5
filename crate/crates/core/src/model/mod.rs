//! Problem data shared by every solver: LP instances, networks, budgets,
//! scenarios and combinatorial solutions, plus validation and the JSON
//! instance format.

mod budget;
mod embed;
pub mod format;
mod lp_instance;
mod network;
mod solution;
mod validate;

pub use budget::{
    DistanceMetric, Membership, RecourseBudget, Scenario, UncertaintyBudget, UncertaintyKind,
};
pub use embed::{embed_incremental_as_robinc, embed_path_as_robinc, EmbeddedRobInc};
pub use lp_instance::LpInstance;
pub use network::{Arc, Network};
pub use solution::{Flow, Path, SpanningTree};
pub use validate::{validate_lp, validate_network, Validate, Violation};
