//! Complement-side decisions: covering, essentiality, minimality, pruning,
//! the exact "is `C` a minimal complement for some `W`" procedure, `T(G)`
//! and the subgroup gap family.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::builders::feasibility::{check_feasibility, default_sample_count, smallest_feasible_s};
use crate::builders::pair::find_pair_witness;
use crate::builders::progression::{ap_decide_and_build, ApDescriptor};
use crate::builders::random::random_witness_with;
use crate::certificate::{DecisionCertificate, Method, SearchLimits, Verdict};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Exec};
use crate::group::{Element, Group};
use crate::search::{ComplementSearch, Outcome, WORD_SEARCH_LIMIT};
use crate::set::GroupSet;
use crate::subgroup::{enumerate_subgroups, Subgroup};
use crate::sumset::{coverage, difference_set, require_non_empty, sumset, translate, CoverTally};

/// `W + C = G`.
pub fn is_complement(w: &GroupSet, c: &GroupSet) -> Result<bool> {
    Ok(sumset(w, c)?.is_full())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialityReport {
    pub w: GroupSet,
    pub c: GroupSet,
    pub essential: GroupSet,
    /// `c -> x(c)`: the least uniquely covered element of `c + W`.
    pub witnesses: BTreeMap<Element, Element>,
}

impl EssentialityReport {
    pub fn is_minimal(&self) -> bool {
        self.essential == self.c
    }
}

/// Requires `W + C = G`; one coverage pass decides every `c` at once.
pub fn essentiality(w: &GroupSet, c: &GroupSet) -> Result<EssentialityReport> {
    let profile = coverage(w, c)?;
    if !profile.support().is_full() {
        return Err(Error::NotAComplement);
    }
    let unique = profile.uniquely_covered();
    let mut essential = GroupSet::empty(c.group());
    let mut witnesses = BTreeMap::new();
    for x in c.iter() {
        if let Some(g) = translate(w, x).intersection(&unique).first() {
            essential.insert(x);
            witnesses.insert(x, g);
        }
    }
    Ok(EssentialityReport {
        w: w.clone(),
        c: c.clone(),
        essential,
        witnesses,
    })
}

/// `C` is a complement for `W` and no element of `C` can be dropped.
pub fn is_minimal_complement_for(w: &GroupSet, c: &GroupSet) -> Result<bool> {
    let tally = CoverTally::new(w, c)?;
    if c.is_empty() || !tally.once.is_full() {
        return Ok(false);
    }
    let unique = tally.unique();
    Ok(c.iter().all(|x| translate(w, x).intersects(&unique)))
}

/// Errors unless `C` is a minimal complement for `W`.
pub fn verify_minimal_complement(w: &GroupSet, c: &GroupSet) -> Result<()> {
    if is_minimal_complement_for(w, c)? {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!(
            "{c} is not a minimal complement for {w} in {}",
            c.group().spec()
        )))
    }
}

/// Drops the least non-essential element until every element is essential.
pub fn prune_to_minimal(w: &GroupSet, c: &GroupSet) -> Result<GroupSet> {
    if !is_complement(w, c)? {
        return Err(Error::NotAComplement);
    }
    let mut current = c.clone();
    loop {
        let tally = CoverTally::new_unchecked(w, &current);
        let unique = tally.unique();
        let removable = current.iter().find(|&x| !translate(w, x).intersects(&unique));
        match removable {
            Some(x) => current.remove(x),
            None => return Ok(current),
        }
    }
}

/// `|C| <= n|W| / (2|W| - 1)`, necessary whenever `C != G` is a minimal
/// complement for `W`.
pub fn size_bound_allows(n: usize, w: usize, k: usize) -> bool {
    w == 0 || (k as u128) * (2 * w as u128 - 1) <= (n as u128) * (w as u128)
}

/// `2n/3 < k < n`: no set of size `k` is a minimal complement.
pub fn in_size_gap(n: usize, k: usize) -> bool {
    3 * k > 2 * n && k < n
}

/// `2nm/(m+2n) < k < m`: no `k`-subset of a subgroup of order `m` is a minimal complement.
pub fn in_subgroup_gap(n: usize, m: usize, k: usize) -> bool {
    let (n, m, k) = (n as u128, m as u128, k as u128);
    k * (m + 2 * n) > 2 * n * m && k < m
}

/// Decides whether `C` is a minimal complement for some `W`.
///
/// Cheap criteria and constructions run first; the exhaustive search is the
/// exact fallback for groups of order at most 64. A `Yes` always carries a
/// re-verified witness; `Unknown` means a budget or size limit was hit.
pub fn exists_witness(c: &GroupSet, limits: &SearchLimits) -> Result<DecisionCertificate> {
    require_non_empty(c)?;
    let group = c.group();
    let n = group.order();
    let k = c.len();
    if k == n {
        let w = GroupSet::singleton(group, 0)?;
        verify_minimal_complement(&w, c)?;
        return Ok(DecisionCertificate::yes(w, Method::Trivial, "C = G is minimal for {0}"));
    }
    if k == 1 {
        let w = GroupSet::full(group);
        verify_minimal_complement(&w, c)?;
        return Ok(DecisionCertificate::yes(
            w,
            Method::Trivial,
            "a singleton is minimal for W = G",
        ));
    }
    if in_size_gap(n, k) {
        return Ok(DecisionCertificate::no(
            Method::SizeBound,
            format!("2n/3 < |C| < n with |C| = {k}, n = {n}"),
        ));
    }
    let base = c.first().expect("non-empty");
    let h = Subgroup::generated(&difference_set(c))?;
    if in_subgroup_gap(n, h.order(), k) {
        return Ok(DecisionCertificate::no(
            Method::SubgroupBound,
            format!(
                "C - {base} lies in a subgroup of order {} and 2nm/(m+2n) < {k} < m",
                h.order()
            ),
        ));
    }
    if let Some(ap) = ApDescriptor::detect(c) {
        return ap_decide_and_build(&ap);
    }
    if let Some((a, w)) = find_pair_witness(c) {
        verify_minimal_complement(&w, c)?;
        return Ok(DecisionCertificate::yes(
            w,
            Method::ConstructionPair,
            format!("W = {{0, {a}}}"),
        ));
    }
    if n > WORD_SEARCH_LIMIT || check_feasibility(n as u64, k as u64, default_sample_count(n as u64)).holds {
        let s = smallest_feasible_s(n as u64, k as u64, 4 * default_sample_count(n as u64))
            .unwrap_or_else(|| default_sample_count(n as u64));
        let trace = random_witness_with(c, s as usize, limits.random_retries, limits.seed, limits.exec)?;
        if let Some(w) = trace.result {
            verify_minimal_complement(&w, c)?;
            return Ok(DecisionCertificate::yes(
                w,
                Method::RandomConstruction,
                format!("s = {s}, attempt {} of {}", trace.retries_used, limits.random_retries),
            ));
        }
        if n > WORD_SEARCH_LIMIT {
            return Ok(DecisionCertificate::unknown(
                Method::RandomConstruction,
                format!(
                    "no verified witness after {} attempts with s = {s}; exhaustive search needs n <= {WORD_SEARCH_LIMIT}",
                    limits.random_retries
                ),
            ));
        }
    }
    exhaustive_decision(c, limits)
}

/// Exhaustive search alone, without any shortcut.
pub fn exhaustive_decision(c: &GroupSet, limits: &SearchLimits) -> Result<DecisionCertificate> {
    require_non_empty(c)?;
    let group = c.group();
    let n = group.order();
    if n > WORD_SEARCH_LIMIT {
        return Ok(DecisionCertificate::unknown(
            Method::Exhaustive,
            format!("exhaustive search needs n <= {WORD_SEARCH_LIMIT}, got {n}"),
        ));
    }
    let search = ComplementSearch::new(group, c.word(), limits.max_nodes);
    Ok(match search.run(limits.exec) {
        Outcome::Found(mask) => {
            let w = GroupSet::from_word(group, mask);
            verify_minimal_complement(&w, c)?;
            DecisionCertificate::yes(w, Method::Exhaustive, "found by exhaustive search over W containing 0")
        }
        Outcome::Exhausted => DecisionCertificate::no(
            Method::Exhaustive,
            format!("no W containing 0 among 2^{} candidates", n - 1),
        ),
        Outcome::Budget => DecisionCertificate::unknown(
            Method::Exhaustive,
            format!("node budget of {} per branch exhausted", limits.max_nodes),
        ),
    })
}

/// A failing set found while computing `T(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingSet {
    pub c: GroupSet,
    pub certificate: DecisionCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TReport {
    pub t: usize,
    /// Every failing set of size `t + 1`, one per symmetry class, in
    /// increasing canonical order. Empty when every size passes.
    pub failing: Vec<FailingSet>,
    /// Number of symmetry classes decided.
    pub classes_checked: usize,
}

/// Largest `T` such that every non-empty `C` with `|C| <= T` is a minimal
/// complement. Sets are enumerated up to translation and multiplication by
/// units, which preserve the answer.
pub fn compute_t(group: &Arc<Group>, limits: &SearchLimits) -> Result<TReport> {
    let n = group.order();
    if n > WORD_SEARCH_LIMIT {
        return Err(Error::Config(format!("T(G) needs n <= {WORD_SEARCH_LIMIT}, got {n}")));
    }
    let units = group.units();
    let inner = SearchLimits {
        exec: Exec::Sequential,
        ..*limits
    };
    let mut classes_checked = 0;
    for k in 1..=n {
        let reps: Vec<u64> = (1..n)
            .combinations(k - 1)
            .map(|rest| rest.into_iter().fold(1u64, |m, x| m | (1 << x)))
            .filter(|&m| canonical_mask(group, &units, m) == m)
            .collect();
        classes_checked += reps.len();
        let decided = map_collect(limits.exec, &reps, |&m| {
            let c = GroupSet::from_word(group, m);
            exists_witness(&c, &inner).map(|cert| (c, cert))
        });
        let mut failing = Vec::new();
        for entry in decided {
            let (c, certificate) = entry?;
            match certificate.verdict {
                Verdict::Yes => {}
                Verdict::No => failing.push(FailingSet { c, certificate }),
                Verdict::Unknown => {
                    return Err(Error::BudgetExhausted(format!("undecided set {c} of size {k}")));
                }
            }
        }
        if !failing.is_empty() {
            return Ok(TReport {
                t: k - 1,
                failing,
                classes_checked,
            });
        }
    }
    Ok(TReport {
        t: n,
        failing: vec![],
        classes_checked,
    })
}

/// `T(n)`: the minimum of `T(G)` over the abelian groups of order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TOrderReport {
    pub n: usize,
    pub t: usize,
    /// One entry per group, cyclic first.
    pub groups: Vec<(Arc<Group>, TReport)>,
}

impl TOrderReport {
    /// The groups attaining the minimum.
    pub fn minimizers(&self) -> impl Iterator<Item = &Arc<Group>> {
        self.groups.iter().filter(|(_, r)| r.t == self.t).map(|(g, _)| g)
    }
}

pub fn compute_t_order(n: usize, limits: &SearchLimits) -> Result<TOrderReport> {
    if n == 0 || n > WORD_SEARCH_LIMIT {
        return Err(Error::Config(format!(
            "T(n) needs 1 <= n <= {WORD_SEARCH_LIMIT}, got {n}"
        )));
    }
    let groups = Group::all_of_order(n)
        .into_iter()
        .map(|g| compute_t(&g, limits).map(|r| (g, r)))
        .collect::<Result<Vec<_>>>()?;
    let t = groups
        .iter()
        .map(|(_, r)| r.t)
        .min()
        .expect("at least the cyclic group");
    Ok(TOrderReport { n, t, groups })
}

/// Least mask in the orbit of `m` under `x -> u x + t`, among images containing 0.
fn canonical_mask(group: &Group, units: &[usize], m: u64) -> u64 {
    let mut best = m;
    for &u in units {
        let mut scaled = 0u64;
        let mut rest = m;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            scaled |= 1 << group.mul(u, x);
        }
        let mut elems = scaled;
        while elems != 0 {
            let x = elems.trailing_zeros() as usize;
            elems &= elems - 1;
            best = best.min(group.translate_word(scaled, group.neg(x)));
        }
    }
    best
}

/// A subgroup `H` and the sizes `k` for which no `k`-subset of `H` is a
/// minimal complement in `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRange {
    pub subgroup: Subgroup,
    pub k_min: usize,
    pub k_max: usize,
}

/// Non-empty ranges `2nm/(m+2n) < k < m` over the subgroups of `G`, by subgroup order.
pub fn subgroup_gap_family(group: &Arc<Group>) -> Vec<GapRange> {
    let n = group.order() as u128;
    enumerate_subgroups(group)
        .into_iter()
        .filter_map(|h| {
            let m = h.order() as u128;
            let k_min = (2 * n * m / (m + 2 * n) + 1) as usize;
            let k_max = h.order().checked_sub(1)?;
            (k_min <= k_max).then_some(GapRange {
                subgroup: h,
                k_min,
                k_max,
            })
        })
        .collect()
}

/// Orders `n = (k+1)(ceil(k/2) - 1)` where a subgroup of order `k+1` has a
/// `k`-subset that is not a minimal complement.
pub fn gap_family_order(k: usize) -> usize {
    (k + 1) * (k.div_ceil(2) - 1)
}

/// Sizes `s` such that some `C` of size `s` is a minimal complement in `Z/n`
/// by the progression criterion.
pub fn progression_size_spectrum(n: usize) -> BTreeSet<usize> {
    let g = Group::cyclic(n);
    (1..=n)
        .filter(|&k| ApDescriptor::new(&g, 0, 1.min(n - 1), k).is_ok_and(|ap| ap.criterion_holds()))
        .collect()
}
