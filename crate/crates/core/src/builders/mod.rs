//! Explicit witness constructions.

pub mod feasibility;
pub mod lift;
pub mod pair;
pub mod progression;
pub mod random;

pub use feasibility::{check_feasibility, default_sample_count, Feasibility};
pub use lift::{lift_integer_window, lift_via_quotient, lift_via_subgroup, IntegerLift, WindowMode};
pub use pair::{find_pair_witness, pair_witness_check};
pub use progression::{ap_decide_and_build, ApDescriptor};
pub use random::{random_witness, random_witness_with, RandomBuildTrace};
