//! Supplement-side checks and the decision "is `C` a maximal supplement for some `W`".
//!
//! `C` is a supplement for `W` when `(C - C) & (W - W) = {0}` and a maximal
//! one when additionally `C + W - W = G`.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::bits;
use crate::certificate::{DecisionCertificate, Method, SearchLimits};
use crate::diffset::{diffset_representation, DiffsetStatus};
use crate::error::{Error, Result};
use crate::exec::find_map_first;
use crate::group::{Element, Group};
use crate::set::GroupSet;
use crate::sumset::{difference_set, require_non_empty, sumset, sumset_unchecked, translate};

pub fn is_supplement(w: &GroupSet, c: &GroupSet) -> Result<bool> {
    w.same_group(c)?;
    require_non_empty(w)?;
    require_non_empty(c)?;
    let common = difference_set(c).intersection(&difference_set(w));
    Ok(common.len() == 1)
}

pub fn is_maximal_supplement_for(w: &GroupSet, c: &GroupSet) -> Result<bool> {
    w.same_group(c)?;
    if w.is_empty() || c.is_empty() {
        return Ok(false);
    }
    let dw = difference_set(w);
    Ok(difference_set(c).intersection(&dw).len() == 1 && sumset_unchecked(c, &dw).is_full())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolidityReport {
    pub c: GroupSet,
    pub solid: bool,
    /// Least `x` outside `C` with `x - C` inside `C - C`.
    pub violator: Option<Element>,
}

/// `C` is solid iff no `x` outside `C` has `x - C` inside `C - C`; adding such
/// an `x` keeps the difference set unchanged.
pub fn is_solid(c: &GroupSet) -> Result<SolidityReport> {
    require_non_empty(c)?;
    let d = difference_set(c);
    let mut extensions = GroupSet::full(c.group());
    for x in c.iter() {
        extensions = extensions.intersection(&translate(&d, x));
    }
    let violator = extensions.difference(c).first();
    if let Some(x) = violator {
        let mut bigger = c.clone();
        bigger.insert(x);
        if difference_set(&bigger) != d {
            return Err(Error::VerificationFailed(format!("adding {x} to {c} changes C - C")));
        }
    }
    Ok(SolidityReport {
        c: c.clone(),
        solid: violator.is_none(),
        violator,
    })
}

fn verified_yes(w: GroupSet, c: &GroupSet, method: Method, detail: String) -> Result<DecisionCertificate> {
    if !is_maximal_supplement_for(&w, c)? {
        return Err(Error::VerificationFailed(format!(
            "{c} is not a maximal supplement for {w}"
        )));
    }
    Ok(DecisionCertificate::yes(w, method, detail))
}

/// Decides whether `C` is a maximal supplement for some `W`.
///
/// Non-solid sets are rejected outright. Otherwise a `W` with
/// `W - W = (G \ (C - C)) + {0}` is searched for; failing that, an exhaustive
/// search over `W` containing 0 (groups of order at most 64) decides exactly.
pub fn maximal_supplement_witness(c: &GroupSet, limits: &SearchLimits) -> Result<DecisionCertificate> {
    require_non_empty(c)?;
    let group = c.group();
    let n = group.order();
    if c.is_full() {
        let w = GroupSet::singleton(group, 0)?;
        return verified_yes(w, c, Method::Trivial, "C = G is maximal for {0}".into());
    }
    if c.len() == 1 {
        return verified_yes(
            GroupSet::full(group),
            c,
            Method::Trivial,
            "a singleton is maximal for W = G".into(),
        );
    }
    let solidity = is_solid(c)?;
    if let Some(x) = solidity.violator {
        return Ok(DecisionCertificate::no(
            Method::NonSolid,
            format!("not solid: adding {x} leaves C - C unchanged"),
        ));
    }
    let dc = difference_set(c);
    let mut v = dc.complement();
    v.insert(0);
    let completion = diffset_representation(&v, limits)?;
    if let Some(a) = completion.a {
        return verified_yes(
            a,
            c,
            Method::Completion,
            format!(
                "W - W = (G \\ (C - C)) + {{0}} after {} nodes",
                completion.nodes_explored
            ),
        );
    }
    if n > bits::WORD {
        return Ok(DecisionCertificate::unknown(
            Method::Completion,
            format!("no completion found and exhaustive search needs n <= {}", bits::WORD),
        ));
    }
    let route = match completion.status {
        DiffsetStatus::ProvenNone => "no completion exists",
        _ => "completion search gave up",
    };
    let search = IndependentSetSearch::new(group, c.word(), dc.word(), limits.max_nodes);
    match search.run(limits.exec) {
        SearchResult::Found(w) => verified_yes(
            GroupSet::from_word(group, w),
            c,
            Method::Exhaustive,
            format!("{route}; found by exhaustive search"),
        ),
        SearchResult::None => Ok(DecisionCertificate::no(
            Method::Exhaustive,
            format!("{route}; no W containing 0 works"),
        )),
        SearchResult::Budget => Ok(DecisionCertificate::unknown(
            Method::Exhaustive,
            format!("{route}; node budget of {} per branch exhausted", limits.max_nodes),
        )),
    }
}

enum SearchResult {
    Found(u64),
    None,
    Budget,
}

/// `W - W` avoiding `D = (C - C) \ {0}` means `W` is independent in the Cayley
/// graph on `D`; since `C + W - W = G` only gets easier as `W` grows, it is
/// enough to test maximal independent sets containing 0. They are listed by
/// Bron-Kerbosch with pivoting on the graph of allowed pairs.
struct IndependentSetSearch<'a> {
    group: &'a Group,
    full: u64,
    c: u64,
    /// `allowed[x]`: the `y != x` with `y - x` outside `C - C`.
    allowed: Vec<u64>,
    max_nodes: u64,
}

#[derive(Clone, Copy)]
struct Frame {
    r: u64,
    p: u64,
    x: u64,
}

impl<'a> IndependentSetSearch<'a> {
    fn new(group: &'a Group, c: u64, dc: u64, max_nodes: u64) -> Self {
        let n = group.order();
        let full = bits::low_mask(n);
        let allowed = (0..n).map(|x| full & !group.translate_word(dc, x)).collect();
        IndependentSetSearch {
            group,
            full,
            c,
            allowed,
            max_nodes,
        }
    }

    fn covers(&self, w: u64) -> bool {
        let neg: u64 = bits::Ones::new(&[w]).fold(0, |acc, x| acc | 1 << self.group.neg(x));
        let mut dw = 0u64;
        for x in bits::Ones::new(&[w]) {
            dw |= self.group.translate_word(neg, x);
        }
        let mut reach = 0u64;
        for x in bits::Ones::new(&[self.c]) {
            reach |= self.group.translate_word(dw, x);
        }
        reach == self.full
    }

    /// Branches in Bron-Kerbosch order, each with its own `P` and `X`.
    fn children(&self, f: &Frame) -> Vec<Frame> {
        let pivot = bits::Ones::new(&[f.p | f.x])
            .max_by_key(|&u| ((f.p & self.allowed[u]).count_ones(), std::cmp::Reverse(u)))
            .expect("P or X non-empty");
        let mut p = f.p;
        let mut x = f.x;
        let mut out = Vec::new();
        for v in bits::Ones::new(&[f.p & !self.allowed[pivot]]) {
            out.push(Frame {
                r: f.r | 1 << v,
                p: p & self.allowed[v],
                x: x & self.allowed[v],
            });
            p &= !(1 << v);
            x |= 1 << v;
        }
        out
    }

    fn dfs(&self, f: Frame, nodes: &mut u64) -> std::result::Result<Option<u64>, ()> {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return Err(());
        }
        if f.p == 0 {
            return Ok((f.x == 0 && self.covers(f.r)).then_some(f.r));
        }
        // every W below lies inside R + P
        if !self.covers(f.r | f.p) {
            return Ok(None);
        }
        for child in self.children(&f) {
            if let Some(w) = self.dfs(child, nodes)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn run(&self, exec: crate::exec::Exec) -> SearchResult {
        let root = Frame {
            r: 1,
            p: self.allowed[0],
            x: 0,
        };
        let tasks = if root.p == 0 { vec![root] } else { self.children(&root) };
        let hit = AtomicBool::new(false);
        let found = find_map_first(exec, &tasks, |&t| {
            let mut nodes = 0;
            match self.dfs(t, &mut nodes) {
                Ok(w) => w,
                Err(()) => {
                    hit.store(true, Ordering::Relaxed);
                    None
                }
            }
        });
        match found {
            Some(w) => SearchResult::Found(w),
            None if hit.load(Ordering::Relaxed) => SearchResult::Budget,
            None => SearchResult::None,
        }
    }
}

/// `C + W - W`, for reports.
pub fn supplement_reach(w: &GroupSet, c: &GroupSet) -> Result<GroupSet> {
    sumset(c, &difference_set(w))
}
