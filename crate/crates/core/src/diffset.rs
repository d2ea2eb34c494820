//! Searching for `A` with `A - A = V`.
//!
//! `A` is normalized to contain 0. For groups of order at most 64 the search
//! is a complete include/exclude backtrack: candidates are elements whose
//! differences with `A` all lie in `V`, the next candidate is the one covering
//! the most still-missing elements of `V` (least index on ties), and a branch
//! dies once `P - P` with `P = A + candidates` no longer contains `V`. Above
//! that size, greedy randomized restarts are tried; they never prove absence.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits;
use crate::certificate::SearchLimits;
use crate::error::{Error, Result};
use crate::exec::find_map_first;
use crate::group::Group;
use crate::set::GroupSet;
use crate::sumset::difference_set;

const SPLIT_DEPTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffsetStatus {
    Found,
    /// The complete search finished without a solution.
    ProvenNone,
    /// Budget hit, or the incomplete search gave up.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffsetInstance {
    pub v: GroupSet,
    pub a: Option<GroupSet>,
    pub nodes_explored: u64,
    pub status: DiffsetStatus,
}

pub fn diffset_representation(v: &GroupSet, limits: &SearchLimits) -> Result<DiffsetInstance> {
    if !v.contains(0) || v.negated() != *v {
        return Err(Error::PreconditionFailed(format!(
            "{v} must be symmetric and contain 0"
        )));
    }
    let group = v.group();
    let n = group.order();
    if n <= bits::WORD {
        let search = WordSearch {
            group,
            v: v.word(),
            max_nodes: limits.max_nodes,
        };
        let (found, nodes, budget_hit) = search.run(limits.exec);
        if let Some(a) = found {
            return finish(v, GroupSet::from_word(group, a), nodes);
        }
        if !budget_hit {
            return Ok(DiffsetInstance {
                v: v.clone(),
                a: None,
                nodes_explored: nodes,
                status: DiffsetStatus::ProvenNone,
            });
        }
    }
    let mut nodes = 0;
    for attempt in 0..limits.random_retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
        rng.set_stream(u64::from(attempt));
        let (a, steps) = greedy(v, &mut rng);
        nodes += steps;
        if let Some(a) = a {
            return finish(v, a, nodes);
        }
    }
    Ok(DiffsetInstance {
        v: v.clone(),
        a: None,
        nodes_explored: nodes,
        status: DiffsetStatus::BudgetExhausted,
    })
}

fn finish(v: &GroupSet, a: GroupSet, nodes: u64) -> Result<DiffsetInstance> {
    if difference_set(&a) != *v {
        return Err(Error::VerificationFailed(format!("{a} - {a} differs from {v}")));
    }
    Ok(DiffsetInstance {
        v: v.clone(),
        a: Some(a),
        nodes_explored: nodes,
        status: DiffsetStatus::Found,
    })
}

/// Adds a random maximum-gain candidate until none is left.
fn greedy(v: &GroupSet, rng: &mut ChaCha8Rng) -> (Option<GroupSet>, u64) {
    let group = v.group();
    let mut a = GroupSet::singleton(group, 0).expect("0 is valid");
    let mut cand = v.clone();
    cand.remove(0);
    let mut covered = a.clone();
    let mut steps = 0;
    while covered != *v {
        steps += 1;
        let gains: Vec<(usize, usize)> = cand
            .iter()
            .map(|x| {
                let mut fresh = 0;
                for y in a.iter() {
                    fresh += usize::from(!covered.contains(group.sub(x, y)));
                    fresh += usize::from(!covered.contains(group.sub(y, x)) && group.sub(y, x) != group.sub(x, y));
                }
                (x, fresh)
            })
            .collect();
        let Some(best) = gains.iter().map(|&(_, g)| g).max() else {
            return (None, steps);
        };
        let top: Vec<usize> = gains.iter().filter(|&&(_, g)| g == best).map(|&(x, _)| x).collect();
        let x = *top.choose(rng).expect("non-empty");
        for y in a.iter() {
            covered.insert(group.sub(x, y));
            covered.insert(group.sub(y, x));
        }
        a.insert(x);
        cand.remove(x);
        let keep: Vec<usize> = cand.iter().filter(|&y| !v.contains(group.sub(y, x))).collect();
        for y in keep {
            cand.remove(y);
        }
    }
    (Some(a), steps)
}

struct WordSearch<'a> {
    group: &'a Group,
    v: u64,
    max_nodes: u64,
}

#[derive(Clone, Copy)]
struct State {
    a: u64,
    cand: u64,
    covered: u64,
}

enum Step {
    Prune,
    Found(u64),
    Branch(usize),
}

impl WordSearch<'_> {
    fn neg(&self, m: u64) -> u64 {
        bits::Ones::new(&[m]).fold(0, |acc, x| acc | 1 << self.group.neg(x))
    }

    fn diff(&self, m: u64) -> u64 {
        let neg = self.neg(m);
        bits::Ones::new(&[m]).fold(0, |acc, x| acc | self.group.translate_word(neg, x))
    }

    fn step(&self, s: &State) -> Step {
        if s.covered == self.v {
            return Step::Found(s.a);
        }
        if s.cand == 0 || self.v & !self.diff(s.a | s.cand) != 0 {
            return Step::Prune;
        }
        let neg_a = self.neg(s.a);
        let missing = self.v & !s.covered;
        let best = bits::Ones::new(&[s.cand])
            .max_by_key(|&x| {
                let gain =
                    (self.group.translate_word(neg_a, x) | self.neg(self.group.translate_word(neg_a, x))) & missing;
                (gain.count_ones(), std::cmp::Reverse(x))
            })
            .expect("non-empty");
        Step::Branch(best)
    }

    fn include(&self, s: &State, x: usize) -> State {
        let a = s.a | 1 << x;
        let fwd = self.group.translate_word(self.neg(s.a), x);
        State {
            a,
            cand: s.cand & !(1 << x) & self.group.translate_word(self.v, x),
            covered: s.covered | fwd | self.neg(fwd),
        }
    }

    fn exclude(s: &State, x: usize) -> State {
        State {
            cand: s.cand & !(1 << x),
            ..*s
        }
    }

    fn dfs(&self, s: State, nodes: &mut u64) -> std::result::Result<Option<u64>, ()> {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return Err(());
        }
        match self.step(&s) {
            Step::Prune => Ok(None),
            Step::Found(a) => Ok(Some(a)),
            Step::Branch(x) => {
                if let Some(a) = self.dfs(self.include(&s, x), nodes)? {
                    return Ok(Some(a));
                }
                self.dfs(Self::exclude(&s, x), nodes)
            }
        }
    }

    fn expand(&self, s: State, depth: usize, out: &mut Vec<State>) {
        if depth == 0 {
            out.push(s);
            return;
        }
        match self.step(&s) {
            Step::Branch(x) => {
                self.expand(self.include(&s, x), depth - 1, out);
                self.expand(Self::exclude(&s, x), depth - 1, out);
            }
            _ => out.push(s),
        }
    }

    /// `(solution, nodes, budget hit)`; node counts stop at the winning task,
    /// so they do not depend on the execution policy.
    fn run(&self, exec: crate::exec::Exec) -> (Option<u64>, u64, bool) {
        let start = State {
            a: 1,
            cand: self.v & !1,
            covered: 1,
        };
        let mut tasks = Vec::new();
        self.expand(start, SPLIT_DEPTH, &mut tasks);
        let counts: Vec<AtomicU64> = tasks.iter().map(|_| AtomicU64::new(0)).collect();
        let budget_hit = AtomicBool::new(false);
        let indexed: Vec<usize> = (0..tasks.len()).collect();
        let found = find_map_first(exec, &indexed, |&i| {
            let mut nodes = 0;
            let r = self.dfs(tasks[i], &mut nodes);
            counts[i].store(nodes, Ordering::Relaxed);
            match r {
                Ok(Some(a)) => Some((i, a)),
                Ok(None) => None,
                Err(()) => {
                    budget_hit.store(true, Ordering::Relaxed);
                    None
                }
            }
        });
        let upto = found.map_or(tasks.len(), |(i, _)| i + 1);
        let nodes = counts[..upto].iter().map(|c| c.load(Ordering::Relaxed)).sum();
        let hit = found.is_none() && budget_hit.load(Ordering::Relaxed);
        (found.map(|(_, a)| a), nodes, hit)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exec::Exec;
    use crate::oracle::oracle_diffset_table;

    fn set(g: &Arc<Group>, xs: &[usize]) -> GroupSet {
        GroupSet::from_elements(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        let limits = SearchLimits::default();
        let g5 = Group::cyclic(5);
        let r = diffset_representation(&set(&g5, &[0, 1, 4]), &limits).unwrap();
        assert_eq!(r.a.unwrap().to_vec(), vec![0, 1]);
        let r = diffset_representation(&set(&g5, &[0]), &limits).unwrap();
        assert_eq!(r.a.unwrap().to_vec(), vec![0]);
        let g4 = Group::cyclic(4);
        let r = diffset_representation(&set(&g4, &[0, 2]), &limits).unwrap();
        assert_eq!(r.a.unwrap().to_vec(), vec![0, 2]);
        assert!(diffset_representation(&set(&g5, &[0, 1]), &limits).is_err());
        assert!(diffset_representation(&set(&g5, &[1, 4]), &limits).is_err());
    }

    #[test]
    fn proven_none() {
        // only odd differences allowed, so A has at most two elements
        let g8 = Group::cyclic(8);
        let v = set(&g8, &[0, 1, 3, 5, 7]);
        let r = diffset_representation(&v, &SearchLimits::default()).unwrap();
        assert_eq!(r.status, DiffsetStatus::ProvenNone);
    }

    #[test]
    fn matches_table() {
        let limits = SearchLimits::default();
        for n in 1..=10 {
            let g = Group::cyclic(n);
            let table = oracle_diffset_table(&g);
            for m in 0u64..(1 << n) {
                let v = GroupSet::from_word(&g, m);
                if !v.contains(0) || v.negated() != v {
                    continue;
                }
                let r = diffset_representation(&v, &limits).unwrap();
                assert_eq!(r.status == DiffsetStatus::Found, table.contains(&v), "n={n} v={v}");
                assert_ne!(r.status, DiffsetStatus::BudgetExhausted);
            }
        }
    }

    #[test]
    fn policy_independent() {
        let g = Group::cyclic(40);
        let c = set(&g, &[0, 1, 5]);
        let mut v = difference_set(&c).complement();
        v.insert(0);
        let seq = diffset_representation(&v, &SearchLimits::default().sequential()).unwrap();
        let par = diffset_representation(
            &v,
            &SearchLimits {
                exec: Exec::Parallel,
                ..SearchLimits::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn greedy_above_word_size() {
        let g = Group::cyclic(101);
        let c = set(&g, &[0, 1, 3]);
        let mut v = difference_set(&c).complement();
        v.insert(0);
        let r = diffset_representation(&v, &SearchLimits::default()).unwrap();
        if let Some(a) = &r.a {
            assert_eq!(difference_set(a), v);
        }
    }
}
