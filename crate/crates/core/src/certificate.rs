use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::set::GroupSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    /// The search budget ran out before a decision; never a negative.
    Unknown,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `C = G`, a singleton, or another case with an immediate witness.
    Trivial,
    /// Explicit witness for an arithmetic progression, or the progression criterion.
    ConstructionAp,
    /// `W = {0, a}` characterization.
    ConstructionPair,
    /// Randomized sampling construction with event checking.
    RandomConstruction,
    /// Exhaustive search over normalized `W`.
    Exhaustive,
    /// `2n/3 < |C| < n` size bound.
    SizeBound,
    /// `C` inside a subgroup of order `m` with `2nm/(m+2n) < |C| < m`.
    SubgroupBound,
    /// Supplement side: `C` is not solid.
    NonSolid,
    /// Supplement side: `W` with `W - W = (G \ (C - C)) + {0}`.
    Completion,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::ConstructionAp => "construction-ap",
            Method::ConstructionPair => "construction-pair",
            Method::RandomConstruction => "random-construction",
            Method::Exhaustive => "exhaustive",
            Method::SizeBound => "size-bound",
            Method::SubgroupBound => "subgroup-bound",
            Method::NonSolid => "non-solid",
            Method::Completion => "completion",
        }
    }
}

/// Evidence for a decision. A `Yes` always carries a witness that was
/// re-verified before the certificate was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionCertificate {
    pub verdict: Verdict,
    pub witness: Option<GroupSet>,
    pub method: Method,
    pub detail: String,
}

impl DecisionCertificate {
    pub(crate) fn yes(witness: GroupSet, method: Method, detail: impl Into<String>) -> Self {
        DecisionCertificate {
            verdict: Verdict::Yes,
            witness: Some(witness),
            method,
            detail: detail.into(),
        }
    }

    pub(crate) fn no(method: Method, detail: impl Into<String>) -> Self {
        DecisionCertificate {
            verdict: Verdict::No,
            witness: None,
            method,
            detail: detail.into(),
        }
    }

    pub(crate) fn unknown(method: Method, detail: impl Into<String>) -> Self {
        DecisionCertificate {
            verdict: Verdict::Unknown,
            witness: None,
            method,
            detail: detail.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Budgets and policy shared by the decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Node budget for each independent search branch.
    pub max_nodes: u64,
    /// Attempts for the randomized construction.
    pub random_retries: u32,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 2_000_000,
            random_retries: 10,
            seed: 1,
            exec: Exec::Parallel,
        }
    }
}

impl SearchLimits {
    pub fn sequential(self) -> Self {
        SearchLimits {
            exec: Exec::Sequential,
            ..self
        }
    }
}
