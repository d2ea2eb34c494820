//! Arithmetic progressions: exact decision and explicit witnesses.
//!
//! A progression `{a, a + d, ..., a + (k-1)d}` with `m = ord(d)` is a minimal
//! complement iff `k <= 2nm/(2n + m)` or `k = m`. Witnesses are built inside
//! `H = <d>`, identified with `Z/m` via `j -> j*d`:
//!
//! - `k = m`: `{0}`;
//! - `k <= m/2`: `{0, k, k+1, ..., m-k}`;
//! - `m/2 < k <= 2m/3`: `{0, k}`;
//!
//! then lifted to `G` by adding a coset transversal. For `2m/3 < k` the
//! witness takes two elements `g_i, g_i + s_i` from each coset `g_i + H` with
//! `s_i = i(m-k)` for the first `ceil(k / (2(m-k)))` cosets and `s_i = m-k`
//! on the rest.

use std::sync::Arc;

use crate::certificate::{DecisionCertificate, Method};
use crate::complement::verify_minimal_complement;
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::set::GroupSet;
use crate::subgroup::Subgroup;
use crate::sumset::{sumset_unchecked, translate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApDescriptor {
    group: Arc<Group>,
    pub start: Element,
    pub step: Element,
    pub len: usize,
    /// Order of the subgroup generated by `step`.
    pub subgroup_order: usize,
}

impl ApDescriptor {
    pub fn new(group: &Arc<Group>, start: Element, step: Element, len: usize) -> Result<Self> {
        group.check(start)?;
        group.check(step)?;
        if len == 0 {
            return Err(Error::DegenerateProgression("length 0".into()));
        }
        if step == 0 && len > 1 {
            return Err(Error::DegenerateProgression("zero step with repeated terms".into()));
        }
        let m = group.element_order(step);
        if len > m {
            return Err(Error::DegenerateProgression(format!(
                "length {len} exceeds the order {m} of the step"
            )));
        }
        Ok(ApDescriptor {
            group: Arc::clone(group),
            start,
            step,
            len,
            subgroup_order: m,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn terms(&self) -> GroupSet {
        let mut s = GroupSet::empty(&self.group);
        let mut x = self.start;
        for _ in 0..self.len {
            s.insert(x);
            x = self.group.add(x, self.step);
        }
        s
    }

    /// Recognizes `c` as a progression; the least start and step (by index) win.
    pub fn detect(c: &GroupSet) -> Option<ApDescriptor> {
        let group = c.group();
        let k = c.len();
        let first = c.first()?;
        if k == 1 {
            return ApDescriptor::new(group, first, 0, 1).ok();
        }
        let elems = c.to_vec();
        for &start in &elems {
            for &other in &elems {
                if other == start {
                    continue;
                }
                let step = group.sub(other, start);
                if group.element_order(step) < k {
                    continue;
                }
                let mut x = start;
                let mut ok = true;
                for _ in 0..k {
                    if !c.contains(x) {
                        ok = false;
                        break;
                    }
                    x = group.add(x, step);
                }
                if ok {
                    return ApDescriptor::new(group, start, step, k).ok();
                }
            }
        }
        None
    }

    /// `k <= 2nm/(2n+m)` or `k = m`.
    pub fn criterion_holds(&self) -> bool {
        let n = self.group.order() as u128;
        let m = self.subgroup_order as u128;
        let k = self.len as u128;
        k == m || k * (2 * n + m) <= 2 * n * m
    }
}

fn embed(group: &Arc<Group>, step: Element, offsets: impl IntoIterator<Item = usize>) -> GroupSet {
    let mut s = GroupSet::empty(group);
    for j in offsets {
        s.insert(group.mul(j, step));
    }
    s
}

/// Decides the progression exactly; a `Yes` carries a verified witness.
pub fn ap_decide_and_build(ap: &ApDescriptor) -> Result<DecisionCertificate> {
    let group = ap.group();
    let n = group.order();
    let (k, m, d) = (ap.len, ap.subgroup_order, ap.step);
    if !ap.criterion_holds() {
        return Ok(DecisionCertificate::no(
            Method::ConstructionAp,
            format!("progression of length {k} with step order {m} in a group of order {n}: k > 2nm/(2n+m) and k != m"),
        ));
    }
    let h = Subgroup::cyclic(group, d)?;
    let transversal = h.coset_representatives();
    let (normalized, case) = if k == m {
        (
            sumset_unchecked(&embed(group, d, [0]), &transversal),
            "full subgroup coset",
        )
    } else if 2 * k <= m {
        let w_h = embed(group, d, std::iter::once(0).chain(k..=m - k));
        (sumset_unchecked(&w_h, &transversal), "W = {0, k, ..., m-k} in <step>")
    } else if 3 * k <= 2 * m {
        let w_h = embed(group, d, [0, k]);
        (sumset_unchecked(&w_h, &transversal), "W = {0, k} in <step>")
    } else {
        let gap = m - k;
        let spread = k.div_ceil(2 * gap);
        let reps = transversal.to_vec();
        if spread > reps.len() {
            return Err(Error::VerificationFailed(format!(
                "needs {spread} cosets of <step>, only {} exist",
                reps.len()
            )));
        }
        let mut w = GroupSet::empty(group);
        for (i, &g) in reps.iter().enumerate() {
            let s = if i < spread { (i + 1) * gap } else { gap };
            w.insert(g);
            w.insert(group.add(g, group.mul(s, d)));
        }
        (w, "two elements per coset of <step>")
    };
    let witness = translate(&normalized, group.neg(ap.start));
    let c = ap.terms();
    verify_minimal_complement(&witness, &c)?;
    Ok(DecisionCertificate::yes(
        witness,
        Method::ConstructionAp,
        format!("progression of length {k}, step order {m}: {case}"),
    ))
}
