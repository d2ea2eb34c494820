//! Exhaustive witness search for "is `C` a minimal complement for some `W`".
//!
//! `W` is normalized to contain `0` and decided element by element in index
//! order (include before exclude). Sets are single words, so this engine is
//! limited to groups of order at most 64.
//!
//! Pruning, with `I` the included elements and `P = I + undecided`:
//! - `P + C` must still cover `G`;
//! - every `c` needs some `x` in `c + P` not already hit by `(C \ {c}) + I`;
//! - `|C| <= n|I| / (2|I| - 1)`, which only gets stricter as `I` grows.
//!
//! The top levels of the tree are expanded into independent tasks listed in
//! depth-first order, so parallel and sequential runs return the same witness.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::bits;
use crate::exec::{find_map_first, Exec};
use crate::group::Group;

pub(crate) const WORD_SEARCH_LIMIT: usize = bits::WORD;
const SPLIT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(u64),
    Exhausted,
    Budget,
}

pub(crate) struct ComplementSearch<'a> {
    group: &'a Group,
    n: usize,
    full: u64,
    c: Vec<usize>,
    max_nodes: u64,
}

enum Node {
    Prune,
    Found(u64),
    Open,
}

enum Task {
    Found(u64),
    Subtree { inc: u64, pos: usize },
}

impl<'a> ComplementSearch<'a> {
    pub(crate) fn new(group: &'a Group, c_mask: u64, max_nodes: u64) -> Self {
        let n = group.order();
        assert!(n <= WORD_SEARCH_LIMIT);
        let c = bits::Ones::new(&[c_mask]).collect();
        ComplementSearch {
            group,
            n,
            full: bits::low_mask(n),
            c,
            max_nodes,
        }
    }

    #[inline]
    fn undecided(&self, pos: usize) -> u64 {
        if pos >= self.n {
            0
        } else {
            self.full & !bits::low_mask(pos)
        }
    }

    fn evaluate(&self, inc: u64, pos: usize) -> Node {
        let k = self.c.len();
        let w = inc.count_ones() as usize;
        if k * (2 * w - 1) > self.n * w {
            return Node::Prune;
        }
        let possible = inc | self.undecided(pos);
        let mut reach = 0u64;
        for &c in &self.c {
            reach |= self.group.translate_word(possible, c);
        }
        if reach != self.full {
            return Node::Prune;
        }
        let mut shifted = [0u64; WORD_SEARCH_LIMIT];
        let (mut once, mut twice) = (0u64, 0u64);
        for (slot, &c) in shifted.iter_mut().zip(&self.c) {
            let t = self.group.translate_word(inc, c);
            *slot = t;
            twice |= once & t;
            once |= t;
        }
        let unique = once & !twice;
        if once == self.full && shifted[..k].iter().all(|&t| t & unique != 0) {
            return Node::Found(inc);
        }
        for (&t, &c) in shifted[..k].iter().zip(&self.c) {
            let blocked = twice | (once & !t);
            if self.group.translate_word(possible, c) & !blocked == 0 {
                return Node::Prune;
            }
        }
        Node::Open
    }

    fn dfs(&self, inc: u64, pos: usize, nodes: &mut u64) -> Outcome {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return Outcome::Budget;
        }
        match self.evaluate(inc, pos) {
            Node::Prune => Outcome::Exhausted,
            Node::Found(w) => Outcome::Found(w),
            Node::Open => {
                if pos >= self.n {
                    return Outcome::Exhausted;
                }
                let mut budget_hit = false;
                for next in [inc | (1 << pos), inc] {
                    match self.dfs(next, pos + 1, nodes) {
                        Outcome::Found(w) => return Outcome::Found(w),
                        Outcome::Budget => {
                            budget_hit = true;
                            break;
                        }
                        Outcome::Exhausted => {}
                    }
                }
                if budget_hit {
                    Outcome::Budget
                } else {
                    Outcome::Exhausted
                }
            }
        }
    }

    fn expand(&self, inc: u64, pos: usize, depth: usize, out: &mut Vec<Task>) {
        match self.evaluate(inc, pos) {
            Node::Prune => {}
            Node::Found(w) => out.push(Task::Found(w)),
            Node::Open => {
                if pos >= self.n {
                    return;
                }
                if depth == 0 {
                    out.push(Task::Subtree { inc, pos });
                    return;
                }
                self.expand(inc | (1 << pos), pos + 1, depth - 1, out);
                self.expand(inc, pos + 1, depth - 1, out);
            }
        }
    }

    pub(crate) fn run(&self, exec: Exec) -> Outcome {
        if self.c.is_empty() {
            return Outcome::Exhausted;
        }
        let mut tasks = Vec::new();
        self.expand(1, 1, SPLIT_DEPTH.min(self.n), &mut tasks);
        let budget_hit = AtomicBool::new(false);
        let found = find_map_first(exec, &tasks, |task| match *task {
            Task::Found(w) => Some(w),
            Task::Subtree { inc, pos } => {
                let mut nodes = 0;
                match self.dfs(inc, pos, &mut nodes) {
                    Outcome::Found(w) => Some(w),
                    Outcome::Budget => {
                        budget_hit.store(true, Ordering::Relaxed);
                        None
                    }
                    Outcome::Exhausted => None,
                }
            }
        });
        match found {
            Some(w) => Outcome::Found(w),
            None if budget_hit.load(Ordering::Relaxed) => Outcome::Budget,
            None => Outcome::Exhausted,
        }
    }
}
