//! Moving witnesses between a group, its subgroups and its quotients, and
//! periodic witnesses for finite sets of integers.

use std::sync::Arc;

use serde::Serialize;

use crate::certificate::{Method, SearchLimits, Verdict};
use crate::complement::{exists_witness, is_minimal_complement_for, verify_minimal_complement};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::set::GroupSet;
use crate::subgroup::{Homomorphism, Subgroup};
use crate::sumset::{sumset, translate, CoverTally};

/// `C` is a minimal complement for `W` inside `H`, all three living in `G`.
fn minimal_inside(w: &GroupSet, c: &GroupSet, h: &Subgroup) -> bool {
    if !w.is_subset(h.members()) || !c.is_subset(h.members()) || c.is_empty() {
        return false;
    }
    let tally = CoverTally::new_unchecked(w, c);
    if tally.once != *h.members() {
        return false;
    }
    let unique = tally.unique();
    c.iter().all(|x| translate(w, x).intersects(&unique))
}

/// `Wh + K` for the least-index transversal `K` of `H`.
///
/// `wh` and `c` are subsets of `H` given as sets of the parent group, with
/// `C` a minimal complement for `Wh` inside `H`.
pub fn lift_via_subgroup(wh: &GroupSet, c: &GroupSet, h: &Subgroup) -> Result<GroupSet> {
    wh.same_group(c)?;
    if !Arc::ptr_eq(wh.group(), h.parent()) && **wh.group() != **h.parent() {
        return Err(Error::GroupMismatch {
            left: wh.group().spec(),
            right: h.parent().spec(),
        });
    }
    if !minimal_inside(wh, c, h) {
        return Err(Error::PreconditionFailed(format!(
            "{c} is not a minimal complement for {wh} inside the subgroup {}",
            h.members()
        )));
    }
    let w = sumset(wh, &h.coset_representatives())?;
    verify_minimal_complement(&w, c)?;
    Ok(w)
}

/// `pi^{-1}(Wq)`, for `pi` injective on `C` and `pi(C)` a minimal complement for `Wq`.
pub fn lift_via_quotient(wq: &GroupSet, c: &GroupSet, pi: &Homomorphism) -> Result<GroupSet> {
    if !pi.is_injective_on(c) {
        return Err(Error::NotInjective);
    }
    let image = pi.image(c)?;
    if !is_minimal_complement_for(wq, &image)? {
        return Err(Error::PreconditionFailed(format!(
            "{image} is not a minimal complement for {wq} in the quotient"
        )));
    }
    let w = pi.preimage(wq)?;
    verify_minimal_complement(&w, c)?;
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowMode {
    /// `M = 100 k^4 + 1`, raised to `diam/2 + 1` for widely spread sets.
    BoundM,
    /// Least `M` with `2M` above the diameter for which a witness is found.
    MinimalM,
}

/// A `2M`-periodic witness `W = W0 + 2M Z` for a finite `C` in the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLift {
    pub c: Vec<i64>,
    pub half_modulus: u64,
    pub modulus: u64,
    /// `C` lies in `[window_start, window_start + 2M)`.
    pub window_start: i64,
    pub c_residues: GroupSet,
    pub witness: GroupSet,
    pub method: Method,
}

impl IntegerLift {
    /// Checks the periodic witness directly on `[window_start - 2M*periods, window_start + 2M*periods)`.
    ///
    /// An integer `x` has `#{c : (x - c) mod 2M in W0}` representations; every
    /// `x` needs one, and every `c` needs some `x` represented only through it.
    pub fn check_periodic(&self, periods: i64) -> bool {
        let m = self.modulus as i64;
        let lo = self.window_start - m * periods;
        let hi = self.window_start + m * periods;
        let mut essential = vec![false; self.c.len()];
        for x in lo..hi {
            let reps: Vec<usize> = (0..self.c.len())
                .filter(|&i| self.witness.contains((x - self.c[i]).rem_euclid(m) as usize))
                .collect();
            match reps.as_slice() {
                [] => return false,
                [i] => essential[*i] = true,
                _ => {}
            }
        }
        essential.iter().all(|&e| e)
    }
}

pub fn lift_integer_window(c: &[i64], mode: WindowMode, limits: &SearchLimits) -> Result<IntegerLift> {
    let mut c: Vec<i64> = c.to_vec();
    c.sort_unstable();
    c.dedup();
    let (&lo, &hi) = match (c.first(), c.last()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::EmptySet),
    };
    let k = c.len() as u64;
    let diameter = u64::try_from(hi - lo).map_err(|_| Error::OrderOverflow)?;
    let bound_m = k
        .checked_pow(4)
        .and_then(|v| v.checked_mul(100))
        .map(|v| v + 1)
        .ok_or(Error::OrderOverflow)?
        .max(diameter / 2 + 1);
    let first_m = match mode {
        WindowMode::BoundM => bound_m,
        WindowMode::MinimalM => diameter / 2 + 1,
    };
    for half in first_m..=bound_m {
        let modulus = 2 * half;
        let group = Group::cyclic(usize::try_from(modulus).map_err(|_| Error::OrderOverflow)?);
        let residues = GroupSet::from_elements(&group, c.iter().map(|&x| (x - lo) as usize))?;
        let c_residues = translate(&residues, (lo.rem_euclid(modulus as i64)) as usize);
        let cert = exists_witness(&c_residues, limits)?;
        match (cert.verdict, cert.witness) {
            (Verdict::Yes, Some(witness)) => {
                verify_minimal_complement(&witness, &c_residues)?;
                return Ok(IntegerLift {
                    c,
                    half_modulus: half,
                    modulus,
                    window_start: lo,
                    c_residues,
                    witness,
                    method: cert.method,
                });
            }
            _ if mode == WindowMode::BoundM => {
                return Err(Error::VerificationFailed(format!(
                    "no witness for the residues of C modulo {modulus}: {}",
                    cert.detail
                )));
            }
            _ => {}
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no modulus up to {} produced a witness",
        2 * bound_m
    )))
}
