//! Naive reference implementations. Every fast routine is tested against these.
//!
//! Nothing here uses the bitset kernels beyond membership and insertion; the
//! only optimization allowed is fixing `0 in W`, and the unnormalized search
//! exists to check that too.

use std::collections::HashSet;
use std::sync::Arc;

use crate::group::Group;
use crate::set::GroupSet;

pub fn naive_sumset(a: &GroupSet, b: &GroupSet) -> GroupSet {
    let group = a.group();
    let mut out = GroupSet::empty(group);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(group.add(x, y));
        }
    }
    out
}

pub fn naive_coverage(w: &GroupSet, c: &GroupSet) -> Vec<u64> {
    let group = w.group();
    let mut counts = vec![0u64; group.order()];
    for x in w.iter() {
        for y in c.iter() {
            counts[group.add(x, y)] += 1;
        }
    }
    counts
}

pub fn naive_difference_set(a: &GroupSet) -> GroupSet {
    let group = a.group();
    let mut out = GroupSet::empty(group);
    for x in a.iter() {
        for y in a.iter() {
            out.insert(group.sub(x, y));
        }
    }
    out
}

/// `C` is a complement for `W` and no `C \ {c}` is.
pub fn naive_is_minimal(w: &GroupSet, c: &GroupSet) -> bool {
    if c.is_empty() || !naive_sumset(w, c).is_full() {
        return false;
    }
    c.iter().all(|x| {
        let mut smaller = c.clone();
        smaller.remove(x);
        !naive_sumset(w, &smaller).is_full()
    })
}

fn subsets(group: &Arc<Group>) -> impl Iterator<Item = GroupSet> + '_ {
    let n = group.order();
    assert!(n < 32, "oracle enumeration needs n < 32");
    (0u64..1 << n).map(move |m| GroupSet::from_elements(group, (0..n).filter(|&i| m >> i & 1 == 1)).expect("in range"))
}

/// First `W` containing 0, in mask order, for which `C` is minimal.
pub fn oracle_exists_witness(c: &GroupSet) -> Option<GroupSet> {
    subsets(c.group())
        .filter(|w| w.contains(0))
        .find(|w| naive_is_minimal(w, c))
}

/// Same scan over every `W`, without fixing `0 in W`.
pub fn oracle_exists_witness_unnormalized(c: &GroupSet) -> Option<GroupSet> {
    subsets(c.group()).find(|w| naive_is_minimal(w, c))
}

/// `C`'s `W`-translates are pairwise disjoint.
pub fn naive_is_supplement(w: &GroupSet, c: &GroupSet) -> bool {
    naive_coverage(w, c).iter().all(|&k| k <= 1)
}

/// A supplement for `W` with no proper superset that is still one.
pub fn naive_is_maximal_supplement(w: &GroupSet, c: &GroupSet) -> bool {
    if !naive_is_supplement(w, c) {
        return false;
    }
    (0..c.group().order()).filter(|&x| !c.contains(x)).all(|x| {
        let mut bigger = c.clone();
        bigger.insert(x);
        !naive_is_supplement(w, &bigger)
    })
}

/// First non-empty `W` in mask order for which `C` is a maximal supplement.
pub fn oracle_maximal_supplement(c: &GroupSet) -> Option<GroupSet> {
    subsets(c.group())
        .filter(|w| !w.is_empty())
        .find(|w| naive_is_maximal_supplement(w, c))
}

/// No `D` strictly containing `C` has `D - D = C - C`.
pub fn oracle_solid(c: &GroupSet) -> bool {
    let target = naive_difference_set(c);
    subsets(c.group())
        .filter(|d| c.is_subset(d) && d != c)
        .all(|d| naive_difference_set(&d) != target)
}

/// Every `V` that equals `A - A` for some non-empty `A`.
pub fn oracle_diffset_table(group: &Arc<Group>) -> HashSet<GroupSet> {
    subsets(group)
        .filter(|a| !a.is_empty())
        .map(|a| naive_difference_set(&a))
        .collect()
}
