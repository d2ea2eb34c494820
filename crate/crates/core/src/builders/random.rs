//! Randomized witness construction for small sets.
//!
//! For `C = {c_1 < ... < c_k}` each attempt draws `s` uniform elements
//! `w_i^(p)` per index `i` and sets `g_i^(p) = w_i^(p) + c_i`. The attempt is
//! rejected when one of three bad events occurs:
//!
//! - **E1**: some `g_i^(p)` lies in `w_j^(q) + C` for a distinct pair;
//! - **E2**: some `z` lies in `g_i^(p) + (C - C)` for at least `s` pairs;
//! - **E3**: for some `i`, every `p` admits `z`, `j != i`, `q` with
//!   `k/s < |(g_i^(p) - C) & (z - C)| < k` and `g_j^(q) - C` containing the
//!   first element (in the order of `C`) of `(z - C) \ (g_i^(p) - C)`.
//!
//! Otherwise each `i` keeps a `p` without an E3 violation and
//! `W = {w_i^(p_i)} + {w : w + C misses every chosen g}`. The result is
//! re-verified; an unverified `W` is never returned.
//!
//! Randomness: ChaCha8 from `rand_chacha`, seeded with `seed_from_u64(seed)`,
//! one stream per attempt (`set_stream(attempt)`), uniform draws by rejection.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::complement::is_minimal_complement_for;
use crate::error::{Error, Result};
use crate::exec::{find_map_first, Exec};
use crate::group::Element;
use crate::set::GroupSet;
use crate::sumset::difference_set;

/// Diagnostics from the E2/E3 checks of one attempt.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TraceDebug {
    /// Size of `Z(g)`: translates `z - C` meeting `g - C` in more than `k/s`
    /// and fewer than `k` elements. Independent of `g`.
    pub overlap_translates: usize,
    /// Largest number of pairs `(i, p)` with `z` in `g_i^(p) + (C - C)`.
    pub max_pair_multiplicity: usize,
    /// `violations[i][p]`: the E3 condition holds at `(i, p)`.
    pub violations: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomBuildTrace {
    pub group: String,
    /// `c_1 < ... < c_k`.
    pub c: Vec<Element>,
    pub s: usize,
    /// `samples[i][p] = w_i^(p)`.
    pub samples: Vec<Vec<Element>>,
    /// `derived[i][p] = g_i^(p)`.
    pub derived: Vec<Vec<Element>>,
    pub e1: bool,
    pub e2: bool,
    pub e3: bool,
    /// Chosen `p` for each `i`, empty when the attempt was rejected.
    pub chosen: Vec<usize>,
    #[serde(serialize_with = "hex_opt")]
    pub result: Option<GroupSet>,
    pub retries_used: u32,
    pub rng_seed: u64,
    pub debug: TraceDebug,
}

fn hex_opt<S: Serializer>(set: &Option<GroupSet>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match set {
        Some(w) => s.serialize_some(&w.to_hex()),
        None => s.serialize_none(),
    }
}

impl RandomBuildTrace {
    pub fn succeeded(&self) -> bool {
        self.result.is_some()
    }
}

pub fn random_witness(c: &GroupSet, s: usize, max_retries: u32, seed: u64) -> Result<RandomBuildTrace> {
    random_witness_with(c, s, max_retries, seed, Exec::Sequential)
}

/// Attempts may run speculatively in parallel; the lowest successful attempt wins.
pub fn random_witness_with(
    c: &GroupSet,
    s: usize,
    max_retries: u32,
    seed: u64,
    exec: Exec,
) -> Result<RandomBuildTrace> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    if s == 0 {
        return Err(Error::Config("sample count s must be at least 1".into()));
    }
    let builder = Builder::new(c, s);
    if c.len() == 1 {
        let mut trace = builder.blank_trace(seed);
        trace.result = Some(GroupSet::full(c.group()));
        return Ok(trace);
    }
    let attempts: Vec<u32> = (0..max_retries).collect();
    let success = find_map_first(exec, &attempts, |&a| {
        let trace = builder.attempt(seed, a);
        trace.succeeded().then_some(trace)
    });
    match success {
        Some(t) => Ok(t),
        None if max_retries == 0 => Ok(builder.blank_trace(seed)),
        None => Ok(builder.attempt(seed, max_retries - 1)),
    }
}

struct Builder<'a> {
    c: &'a GroupSet,
    elems: Vec<Element>,
    s: usize,
    /// `(d, r(d))` for `d` in `C - C`, with `r(d) = #{(a, b) : c_b - c_a = d}`.
    differences: Vec<(Element, usize)>,
}

impl<'a> Builder<'a> {
    fn new(c: &'a GroupSet, s: usize) -> Self {
        let group = c.group();
        let elems = c.to_vec();
        let mut reps: HashMap<Element, usize> = HashMap::new();
        for &a in &elems {
            for &b in &elems {
                *reps.entry(group.sub(b, a)).or_default() += 1;
            }
        }
        let differences = difference_set(c).iter().map(|d| (d, reps[&d])).collect();
        Builder {
            c,
            elems,
            s,
            differences,
        }
    }

    fn blank_trace(&self, seed: u64) -> RandomBuildTrace {
        RandomBuildTrace {
            group: self.c.group().spec(),
            c: self.elems.clone(),
            s: self.s,
            samples: vec![],
            derived: vec![],
            e1: false,
            e2: false,
            e3: false,
            chosen: vec![],
            result: None,
            retries_used: 0,
            rng_seed: seed,
            debug: TraceDebug::default(),
        }
    }

    fn attempt(&self, seed: u64, attempt: u32) -> RandomBuildTrace {
        let group = self.c.group();
        let n = group.order();
        let (k, s) = (self.elems.len(), self.s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(attempt));
        let samples: Vec<Vec<Element>> = (0..k)
            .map(|_| (0..s).map(|_| rng.random_range(0..n)).collect())
            .collect();
        let derived: Vec<Vec<Element>> = samples
            .iter()
            .zip(&self.elems)
            .map(|(row, &ci)| row.iter().map(|&w| group.add(w, ci)).collect())
            .collect();

        let mut trace = self.blank_trace(seed);
        trace.retries_used = attempt + 1;
        trace.samples = samples;
        trace.derived = derived;
        trace.debug.overlap_translates = self
            .differences
            .iter()
            .filter(|&&(_, r)| self.overlap_in_range(r))
            .count();

        trace.e1 = self.event_one(&trace.samples, &trace.derived);
        let (e2, max_mult) = self.event_two(&trace.derived);
        trace.e2 = e2;
        trace.debug.max_pair_multiplicity = max_mult;
        let violations = self.event_three_violations(&trace.derived);
        trace.e3 = violations.iter().any(|row| row.iter().all(|&v| v));
        trace.debug.violations = violations;
        if trace.e1 || trace.e2 || trace.e3 {
            return trace;
        }

        let chosen: Vec<usize> = trace
            .debug
            .violations
            .iter()
            .map(|row| row.iter().position(|&v| !v).expect("no E3 means a free p exists"))
            .collect();
        let mut blocked = GroupSet::empty(group);
        for (i, &p) in chosen.iter().enumerate() {
            let g = trace.derived[i][p];
            for &c in &self.elems {
                blocked.insert(group.sub(g, c));
            }
        }
        let mut w = blocked.complement();
        for (i, &p) in chosen.iter().enumerate() {
            w.insert(trace.samples[i][p]);
        }
        trace.chosen = chosen;
        if is_minimal_complement_for(&w, self.c).unwrap_or(false) {
            trace.result = Some(w);
        }
        trace
    }

    fn overlap_in_range(&self, r: usize) -> bool {
        let k = self.elems.len();
        r * self.s > k && r < k
    }

    fn event_one(&self, samples: &[Vec<Element>], derived: &[Vec<Element>]) -> bool {
        let group = self.c.group();
        let pairs: Vec<(usize, usize)> = (0..self.elems.len())
            .flat_map(|i| (0..self.s).map(move |p| (i, p)))
            .collect();
        pairs.iter().any(|&(i, p)| {
            pairs
                .iter()
                .any(|&(j, q)| (i, p) != (j, q) && self.c.contains(group.sub(derived[i][p], samples[j][q])))
        })
    }

    fn event_two(&self, derived: &[Vec<Element>]) -> (bool, usize) {
        let group = self.c.group();
        let mut hits: Vec<Element> = derived
            .iter()
            .flatten()
            .flat_map(|&g| self.differences.iter().map(move |&(d, _)| group.add(g, d)))
            .collect();
        hits.sort_unstable();
        let max_mult = hits.chunk_by(|a, b| a == b).map(<[Element]>::len).max().unwrap_or(0);
        (max_mult >= self.s, max_mult)
    }

    fn event_three_violations(&self, derived: &[Vec<Element>]) -> Vec<Vec<bool>> {
        let group = self.c.group();
        let mut owners: HashMap<Element, Vec<usize>> = HashMap::new();
        for (i, row) in derived.iter().enumerate() {
            for &g in row {
                owners.entry(g).or_default().push(i);
            }
        }
        let covered_by_other = |u: Element, i: usize| {
            self.elems.iter().any(|&c| {
                owners
                    .get(&group.add(u, c))
                    .is_some_and(|js| js.iter().any(|&j| j != i))
            })
        };
        derived
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|&g| {
                        self.differences
                            .iter()
                            .filter(|&&(_, r)| self.overlap_in_range(r))
                            .any(|&(d, _)| {
                                let z = group.add(g, d);
                                // first z - c_b outside g - C, i.e. with g - (z - c_b) not in C
                                let u = self
                                    .elems
                                    .iter()
                                    .map(|&cb| group.sub(z, cb))
                                    .find(|&u| !self.c.contains(group.sub(g, u)))
                                    .expect("overlap below k leaves an uncovered element");
                                covered_by_other(u, i)
                            })
                    })
                    .collect()
            })
            .collect()
    }
}
