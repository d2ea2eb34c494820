//! Sufficient condition for the randomized construction and the derived
//! lower bounds on how large a set is guaranteed to be a minimal complement.
//!
//! Logarithms are natural throughout.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub holds: bool,
    /// `s^2 k^3 / n`, `e^s k^{3s} / n^{s-1}`, `k (s^2 k^3 / n)^s`.
    pub terms: [f64; 3],
}

impl Feasibility {
    pub fn sum(&self) -> f64 {
        self.terms.iter().sum()
    }
}

/// Evaluates `s^2 k^3/n + e^s k^{3s}/n^{s-1} + k (s^2 k^3/n)^s < 1` in log space.
pub fn check_feasibility(n: u64, k: u64, s: u64) -> Feasibility {
    assert!(n >= 2 && k >= 1 && s >= 1, "need n >= 2, k >= 1, s >= 1");
    let (ln_n, ln_k, ln_s) = ((n as f64).ln(), (k as f64).ln(), (s as f64).ln());
    let s_f = s as f64;
    let log_t1 = 2.0 * ln_s + 3.0 * ln_k - ln_n;
    let log_t2 = s_f + 3.0 * s_f * ln_k - (s_f - 1.0) * ln_n;
    let log_t3 = ln_k + s_f * log_t1;
    let terms = [log_t1.exp(), log_t2.exp(), log_t3.exp()];
    Feasibility {
        holds: terms.iter().sum::<f64>() < 1.0,
        terms,
    }
}

/// Smallest `s <= s_max` for which the condition holds.
pub fn smallest_feasible_s(n: u64, k: u64, s_max: u64) -> Option<u64> {
    (1..=s_max).find(|&s| check_feasibility(n, k, s).holds)
}

/// `s = ceil(1.5 ln n)`.
pub fn default_sample_count(n: u64) -> u64 {
    ((1.5 * (n as f64).ln()).ceil() as u64).max(1)
}

/// `2^{2/3} n^{1/3} / (3 e ln n)^{2/3}`.
pub fn size_bound_natural_log(n: u64) -> f64 {
    let n = n as f64;
    2f64.powf(2.0 / 3.0) * n.cbrt() / (3.0 * std::f64::consts::E * n.ln()).powf(2.0 / 3.0)
}

/// `n^{1/3} / (2 (log2 n)^{2/3})`.
pub fn size_bound_binary_log(n: u64) -> f64 {
    let n = n as f64;
    n.cbrt() / (2.0 * n.log2().powf(2.0 / 3.0))
}
