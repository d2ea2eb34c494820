//! Minimal additive complements and maximal supplements in finite abelian groups.
//!
//! Groups are products of cyclic factors with elements encoded as dense
//! indices, so every subset is a bitmask and sumsets are word-parallel.

mod bits;
mod smith;

pub mod builders;
pub mod certificate;
pub mod complement;
pub mod diffset;
pub mod error;
pub mod exec;
pub mod group;
pub mod literal;
pub mod oracle;
pub mod report;
pub mod scan;
mod search;
pub mod set;
pub mod subgroup;
pub mod sumset;
pub mod supplement;

pub use certificate::{DecisionCertificate, Method, SearchLimits, Verdict};
pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{Element, Group};
pub use set::GroupSet;
pub use subgroup::{Homomorphism, Subgroup};
