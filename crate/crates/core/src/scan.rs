//! Random-subset experiments: how often is a `p`-random set a minimal complement?
//!
//! Each trial draws `C` by keeping every element independently with
//! probability `p` and decides it exactly. Trial `t` of grid point `j` uses
//! ChaCha8 seeded with `seed` on stream `(j << 32) | t`, so rows do not
//! depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certificate::{SearchLimits, Verdict};
use crate::complement::exists_witness;
use crate::error::{Error, Result};
use crate::exec::{map_collect, Exec};
use crate::group::Group;
use crate::set::GroupSet;

/// Largest order decided without `heuristic`.
pub const EXACT_SCAN_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub p_grid: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
    pub limits: SearchLimits,
    /// Allow groups above [`EXACT_SCAN_LIMIT`], where budgets may leave trials undecided.
    pub heuristic: bool,
}

impl ExperimentConfig {
    /// `p = j/20` for `j = 0..=20`.
    pub fn default_grid() -> Vec<f64> {
        (0..=20).map(|j| f64::from(j) / 20.0).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(Error::Config("empty probability grid".into()));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Config(format!("probability {p} outside [0, 1]")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: f64,
    pub trials: u32,
    /// Trials that drew the empty set.
    pub skipped: u32,
    pub yes: u32,
    pub no: u32,
    pub unknown: u32,
    /// `yes / (yes + no)`; absent when nothing was decided.
    pub frequency: Option<f64>,
    /// Mean `|C|` over all trials.
    pub mean_size: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub group: String,
    pub seed: u64,
    pub trials: u32,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,trials,skipped,yes,no,unknown,frequency,mean_size\n");
        for r in &self.rows {
            let freq = r.frequency.map(|f| f.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.p, r.trials, r.skipped, r.yes, r.no, r.unknown, freq, r.mean_size
            ));
        }
        out
    }
}

enum Trial {
    Skipped,
    Decided { size: usize, verdict: Verdict },
}

pub fn scan_threshold(group: &std::sync::Arc<Group>, cfg: &ExperimentConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let n = group.order();
    if n > EXACT_SCAN_LIMIT && !cfg.heuristic {
        return Err(Error::Config(format!(
            "exact scans are limited to n <= {EXACT_SCAN_LIMIT}; pass the heuristic flag for n = {n}"
        )));
    }
    let inner = SearchLimits {
        exec: Exec::Sequential,
        ..cfg.limits
    };
    let jobs: Vec<(usize, u32)> = (0..cfg.p_grid.len())
        .flat_map(|j| (0..cfg.trials).map(move |t| (j, t)))
        .collect();
    let outcomes = map_collect(cfg.limits.exec, &jobs, |&(j, t)| -> Result<Trial> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(((j as u64) << 32) | u64::from(t));
        let p = cfg.p_grid[j];
        let mut c = GroupSet::empty(group);
        for x in 0..n {
            if rng.random_bool(p) {
                c.insert(x);
            }
        }
        if c.is_empty() {
            return Ok(Trial::Skipped);
        }
        let cert = exists_witness(&c, &inner)?;
        Ok(Trial::Decided {
            size: c.len(),
            verdict: cert.verdict,
        })
    });
    let mut rows: Vec<ScanRow> = cfg
        .p_grid
        .iter()
        .map(|&p| ScanRow {
            p,
            trials: cfg.trials,
            skipped: 0,
            yes: 0,
            no: 0,
            unknown: 0,
            frequency: None,
            mean_size: 0.0,
        })
        .collect();
    let mut sizes = vec![0usize; rows.len()];
    for (&(j, _), outcome) in jobs.iter().zip(outcomes) {
        let row = &mut rows[j];
        match outcome? {
            Trial::Skipped => row.skipped += 1,
            Trial::Decided { size, verdict } => {
                sizes[j] += size;
                match verdict {
                    Verdict::Yes => row.yes += 1,
                    Verdict::No => row.no += 1,
                    Verdict::Unknown => row.unknown += 1,
                }
            }
        }
    }
    for (row, total) in rows.iter_mut().zip(sizes) {
        let decided = row.yes + row.no;
        row.frequency = (decided > 0).then(|| f64::from(row.yes) / f64::from(decided));
        row.mean_size = total as f64 / f64::from(row.trials);
    }
    Ok(ScanReport {
        group: group.spec(),
        seed: cfg.seed,
        trials: cfg.trials,
        rows,
    })
}
