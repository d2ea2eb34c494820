//! Sumsets, difference sets, translates and representation counts.
//!
//! The sumset kernel ORs translates of the larger operand, one per element
//! of the smaller, so the cost is `min(|A|, |B|)` word-parallel passes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::set::GroupSet;

pub fn translate(a: &GroupSet, g: Element) -> GroupSet {
    let mut out = GroupSet::empty(a.group());
    a.group().or_translate(out.words_mut(), a.words(), g);
    out
}

/// `A + B`.
pub fn sumset(a: &GroupSet, b: &GroupSet) -> Result<GroupSet> {
    a.same_group(b)?;
    Ok(sumset_unchecked(a, b))
}

pub(crate) fn sumset_unchecked(a: &GroupSet, b: &GroupSet) -> GroupSet {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let group = a.group();
    let mut out = GroupSet::empty(group);
    let n = group.order();
    for x in small.iter() {
        group.or_translate(out.words_mut(), large.words(), x);
        if out.len() == n {
            break;
        }
    }
    out
}

/// `A - A`.
pub fn difference_set(a: &GroupSet) -> GroupSet {
    sumset_unchecked(a, &a.negated())
}

/// `A - B`.
pub fn difference(a: &GroupSet, b: &GroupSet) -> Result<GroupSet> {
    sumset(a, &b.negated())
}

/// Elements of `W + C` hit at least once and at least twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTally {
    pub once: GroupSet,
    pub twice: GroupSet,
}

impl CoverTally {
    pub fn new(w: &GroupSet, c: &GroupSet) -> Result<Self> {
        w.same_group(c)?;
        Ok(Self::new_unchecked(w, c))
    }

    pub(crate) fn new_unchecked(w: &GroupSet, c: &GroupSet) -> Self {
        let group = w.group();
        let (small, large) = if w.len() <= c.len() { (w, c) } else { (c, w) };
        let mut once = GroupSet::empty(group);
        let mut twice = GroupSet::empty(group);
        let mut t = GroupSet::empty(group);
        for x in small.iter() {
            t.words_mut().iter_mut().for_each(|v| *v = 0);
            group.or_translate(t.words_mut(), large.words(), x);
            for ((o, tw), &v) in once.words_mut().iter_mut().zip(twice.words_mut()).zip(t.words()) {
                *tw |= *o & v;
                *o |= v;
            }
        }
        CoverTally { once, twice }
    }

    /// Elements with exactly one representation.
    pub fn unique(&self) -> GroupSet {
        self.once.difference(&self.twice)
    }
}

/// Exact representation counts `counts[g] = #{(w, c) : w + c = g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageProfile {
    group: Arc<Group>,
    counts: Vec<u16>,
    saturated: bool,
}

impl CoverageProfile {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn counts(&self) -> &[u16] {
        &self.counts
    }

    pub fn count(&self, g: Element) -> u16 {
        self.counts[g]
    }

    /// True when some counter hit `u16::MAX`; counts are then lower bounds.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn support(&self) -> GroupSet {
        self.filter(|c| c > 0)
    }

    pub fn uniquely_covered(&self) -> GroupSet {
        self.filter(|c| c == 1)
    }

    fn filter(&self, keep: impl Fn(u16) -> bool) -> GroupSet {
        let mut s = GroupSet::empty(&self.group);
        for (g, &c) in self.counts.iter().enumerate() {
            if keep(c) {
                s.insert(g);
            }
        }
        s
    }
}

pub fn coverage(w: &GroupSet, c: &GroupSet) -> Result<CoverageProfile> {
    w.same_group(c)?;
    let group = w.group();
    let (small, large) = if w.len() <= c.len() { (w, c) } else { (c, w) };
    let mut counts = vec![0u16; group.order()];
    let mut saturated = false;
    for x in small.iter() {
        let t = translate(large, x);
        for g in t.iter() {
            match counts[g].checked_add(1) {
                Some(v) => counts[g] = v,
                None => saturated = true,
            }
        }
    }
    Ok(CoverageProfile {
        group: Arc::clone(group),
        counts,
        saturated,
    })
}

pub(crate) fn require_non_empty(s: &GroupSet) -> Result<()> {
    if s.is_empty() {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}
