//! Shortest paths with recourse: the layered-network solver for the
//! inclusion metric, the adversarial LP over node potentials, enumeration
//! solvers for the other metrics and for discrete uncertainty, and gadget
//! generators.

mod adversarial;
mod exact;
mod gadgets;
mod time_expanded;

pub use adversarial::{solve_adversarial_sp_u1, SpAdversarialCertificate};
pub use exact::{
    solve_adversarial_sp_u1_enum, solve_adversarial_sp_u2, solve_incremental_sp_enum,
    solve_incremental_sp_inclusion, solve_robinc_sp_exact, solve_sp, RobIncSpSolution, PATH_CAP,
    ROBINC_PATH_CAP,
};
pub use gadgets::{build_symdiff_gadget, build_theorem4_gadget, PairGadget, SymDiffGadget};
pub use time_expanded::{build_time_expanded, erase_loops, LayeredArc, TimeExpandedNetwork};
