//! `mincomp`: decide, build and explore minimal complements and maximal supplements.
//!
//! Exit status: 0 when a question was decided (either way), 2 when a budget
//! left it undecided, 1 for usage or internal errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mincomp::builders::{
    ap_decide_and_build, check_feasibility, default_sample_count, find_pair_witness, lift_integer_window,
    pair_witness_check, random_witness_with, ApDescriptor, WindowMode,
};
use mincomp::complement::{
    compute_t, compute_t_order, essentiality, exhaustive_decision, exists_witness, is_complement,
    is_minimal_complement_for, subgroup_gap_family, TReport,
};
use mincomp::literal::{parse_element, parse_group, parse_integer_set, parse_set};
use mincomp::report::Report;
use mincomp::scan::{scan_threshold, ExperimentConfig};
use mincomp::supplement::{is_maximal_supplement_for, is_solid, is_supplement, maximal_supplement_witness};
use mincomp::{DecisionCertificate, Error, Exec, GroupSet, Method, SearchLimits, Verdict};

#[derive(Parser)]
#[command(
    name = "mincomp",
    version,
    about = "Minimal complements and maximal supplements in finite abelian groups"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Node budget per search branch
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_nodes: u64,
    /// Attempts for randomized constructions
    #[arg(long, global = true, default_value_t = 10)]
    retries: u32,
    /// Run single-threaded
    #[arg(long, global = true)]
    sequential: bool,
    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timing: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Complement, supplement and solidity checks for a pair (W, C)
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        c: String,
    },
    /// Decide whether C is a minimal complement for some W
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Decide an arithmetic progression and build its witness
    Ap {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long)]
        step: String,
        #[arg(long)]
        len: usize,
    },
    /// Test C against W = {0, a}, or search for such an a
    Pair {
        #[arg(long)]
        group: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        a: Option<String>,
    },
    /// Randomized witness construction with event tracing
    RandomBuild {
        #[arg(long)]
        group: String,
        #[arg(long)]
        c: String,
        /// Samples per element of C (default: ceil(1.5 ln n))
        #[arg(long)]
        s: Option<usize>,
    },
    /// Decide whether C is a maximal supplement for some W
    Supplement {
        #[arg(long)]
        group: String,
        #[arg(long)]
        c: String,
    },
    /// Largest T such that every set of size at most T is a minimal complement,
    /// for one group or minimized over every abelian group of a given order
    #[command(group = clap::ArgGroup::new("target").required(true))]
    Tmin {
        #[arg(long, group = "target")]
        group: Option<String>,
        #[arg(long, group = "target")]
        order: Option<usize>,
    },
    /// Frequency of minimal complements among p-random subsets
    ScanThreshold {
        #[arg(long)]
        group: String,
        /// Comma-separated probabilities (default: 0, 0.05, ..., 1)
        #[arg(long, value_delimiter = ',')]
        p_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 200)]
        trials: u32,
        /// Allow groups above order 16
        #[arg(long)]
        heuristic: bool,
        /// Also write the rows as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Periodic witness for a finite set of integers
    LiftZ {
        /// Integer set, e.g. "{0,1,2}"
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, value_enum, default_value_t = Mode::MinimalM)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Ap,
    Pair,
    Random,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    BoundM,
    MinimalM,
}

struct Outcome {
    report: Report,
    undecided: bool,
}

impl Outcome {
    fn decided(report: Report) -> Self {
        Outcome {
            report,
            undecided: false,
        }
    }

    fn from_certificate(report: Report, cert: &DecisionCertificate) -> Self {
        Outcome {
            report: report.certificate(cert),
            undecided: cert.verdict == Verdict::Unknown,
        }
    }
}

fn limits(common: &Common) -> SearchLimits {
    SearchLimits {
        max_nodes: common.max_nodes,
        random_retries: common.retries,
        seed: common.seed,
        exec: if common.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
    }
}

fn non_empty(set: GroupSet, name: &str) -> mincomp::Result<GroupSet> {
    if set.is_empty() {
        Err(Error::Config(format!("{name} must be non-empty")))
    } else {
        Ok(set)
    }
}

fn elements(set: &GroupSet) -> Value {
    json!(set.to_vec())
}

fn run(cli: &Cli) -> mincomp::Result<Outcome> {
    let limits = limits(&cli.common);
    match &cli.command {
        Command::Check { group, w, c } => {
            let g = parse_group(group)?;
            let w = parse_set(&g, w)?;
            let c = non_empty(parse_set(&g, c)?, "C")?;
            let complement = is_complement(&w, &c)?;
            let essential = if complement {
                let r = essentiality(&w, &c)?;
                json!({
                    "essential": r.essential.to_hex(),
                    "essential_elements": elements(&r.essential),
                    "unique_witness": r.witnesses,
                })
            } else {
                Value::Null
            };
            let solidity = is_solid(&c)?;
            let supplement = !w.is_empty() && is_supplement(&w, &c)?;
            let result = json!({
                "complement": complement,
                "minimal_complement": is_minimal_complement_for(&w, &c)?,
                "supplement": supplement,
                "maximal_supplement": is_maximal_supplement_for(&w, &c)?,
                "solid": solidity.solid,
                "solidity_violator": solidity.violator,
                "essentiality": essential,
            });
            Ok(Outcome::decided(
                Report::new("check", &g).input("w", &w).input("c", &c).result(result),
            ))
        }
        Command::Witness { group, c, strategy } => {
            let g = parse_group(group)?;
            let c = non_empty(parse_set(&g, c)?, "C")?;
            let cert = match strategy {
                Strategy::Auto => exists_witness(&c, &limits)?,
                Strategy::Exhaustive => exhaustive_decision(&c, &limits)?,
                Strategy::Ap => {
                    let ap = ApDescriptor::detect(&c)
                        .ok_or_else(|| Error::Config(format!("{c} is not an arithmetic progression")))?;
                    ap_decide_and_build(&ap)?
                }
                Strategy::Pair => pair_certificate(&c),
                Strategy::Random => random_certificate(&c, None, &limits)?.0,
            };
            Ok(Outcome::from_certificate(
                Report::new("witness", &g).input("c", &c),
                &cert,
            ))
        }
        Command::Ap {
            group,
            start,
            step,
            len,
        } => {
            let g = parse_group(group)?;
            let ap = ApDescriptor::new(&g, parse_element(&g, start)?, parse_element(&g, step)?, *len)?;
            let cert = ap_decide_and_build(&ap)?;
            let result = json!({
                "start": ap.start,
                "step": ap.step,
                "len": ap.len,
                "subgroup_order": ap.subgroup_order,
                "criterion_holds": ap.criterion_holds(),
            });
            let report = Report::new("ap", &g).input("c", &ap.terms()).result(result);
            Ok(Outcome::from_certificate(report, &cert))
        }
        Command::Pair { group, c, a } => {
            let g = parse_group(group)?;
            let c = non_empty(parse_set(&g, c)?, "C")?;
            let report = Report::new("pair", &g).input("c", &c);
            match a {
                Some(a) => {
                    let a = parse_element(&g, a)?;
                    let holds = pair_witness_check(&c, a)?;
                    Ok(Outcome::decided(
                        report.result(json!({ "a": a, "minimal_for_pair": holds })),
                    ))
                }
                None => {
                    let cert = pair_certificate(&c);
                    Ok(Outcome::from_certificate(report, &cert))
                }
            }
        }
        Command::RandomBuild { group, c, s } => {
            let g = parse_group(group)?;
            let c = non_empty(parse_set(&g, c)?, "C")?;
            let (cert, trace) = random_certificate(&c, *s, &limits)?;
            let mut report = Report::new("random-build", &g).input("c", &c).result(trace);
            report.seed = Some(limits.seed);
            Ok(Outcome::from_certificate(report, &cert))
        }
        Command::Supplement { group, c } => {
            let g = parse_group(group)?;
            let c = non_empty(parse_set(&g, c)?, "C")?;
            let solidity = is_solid(&c)?;
            let cert = maximal_supplement_witness(&c, &limits)?;
            let result = json!({ "solid": solidity.solid, "solidity_violator": solidity.violator });
            Ok(Outcome::from_certificate(
                Report::new("supplement", &g).input("c", &c).result(result),
                &cert,
            ))
        }
        Command::Tmin { group: Some(group), .. } => {
            let g = parse_group(group)?;
            let t = compute_t(&g, &limits)?;
            let gaps: Vec<Value> = subgroup_gap_family(&g)
                .iter()
                .map(|r| {
                    json!({
                        "subgroup": r.subgroup.members().to_hex(),
                        "order": r.subgroup.order(),
                        "k_min": r.k_min,
                        "k_max": r.k_max,
                    })
                })
                .collect();
            let mut result = t_json(&t);
            result["gap_family"] = json!(gaps);
            Ok(Outcome::decided(Report::new("tmin", &g).result(result)))
        }
        Command::Tmin { order, .. } => {
            let n = order.expect("clap requires --group or --order");
            let report = compute_t_order(n, &limits)?;
            let groups: Vec<Value> = report
                .groups
                .iter()
                .map(|(g, t)| {
                    let mut v = t_json(t);
                    v["group"] = json!(g.spec());
                    v
                })
                .collect();
            let result = json!({
                "n": n,
                "t": report.t,
                "minimizers": report.minimizers().map(|g| g.spec()).collect::<Vec<_>>(),
                "groups": groups,
            });
            Ok(Outcome::decided(
                Report::new("tmin", &report.groups[0].0).result(result),
            ))
        }
        Command::ScanThreshold {
            group,
            p_grid,
            trials,
            heuristic,
            csv,
        } => {
            let g = parse_group(group)?;
            let cfg = ExperimentConfig {
                p_grid: p_grid.clone().unwrap_or_else(ExperimentConfig::default_grid),
                trials: *trials,
                seed: limits.seed,
                limits,
                heuristic: *heuristic,
            };
            let scan = scan_threshold(&g, &cfg)?;
            if let Some(path) = csv {
                std::fs::write(path, scan.to_csv()).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            }
            let undecided = scan.rows.iter().any(|r| r.unknown > 0);
            let mut report =
                Report::new("scan-threshold", &g).result(serde_json::to_value(&scan).expect("scan rows serialize"));
            report.seed = Some(cfg.seed);
            Ok(Outcome { report, undecided })
        }
        Command::LiftZ { c, mode } => {
            let ints = parse_integer_set(c)?;
            let mode = match mode {
                Mode::BoundM => WindowMode::BoundM,
                Mode::MinimalM => WindowMode::MinimalM,
            };
            let lift = lift_integer_window(&ints, mode, &limits)?;
            let group = Arc::clone(lift.c_residues.group());
            let cert_detail = format!(
                "C is a minimal complement in Z for W = W0 + {}Z; W0 found by {}",
                lift.modulus,
                lift.method.as_str()
            );
            let cert = certificate_for_lift(lift.witness.clone(), lift.method, cert_detail);
            let result = json!({
                "c": lift.c,
                "mode": mode,
                "half_modulus": lift.half_modulus,
                "modulus": lift.modulus,
                "window_start": lift.window_start,
                "witness_residues": elements(&lift.witness),
            });
            let report = Report::new("lift-z", &group)
                .input("c", &lift.c_residues)
                .result(result);
            Ok(Outcome::from_certificate(report, &cert))
        }
    }
}

fn t_json(t: &TReport) -> Value {
    let failing: Vec<Value> = t
        .failing
        .iter()
        .map(|f| {
            json!({
                "c": f.c.to_hex(),
                "elements": elements(&f.c),
                "method": f.certificate.method,
                "detail": f.certificate.detail,
            })
        })
        .collect();
    json!({ "t": t.t, "classes_checked": t.classes_checked, "failing": failing })
}

fn certificate_for_lift(w: GroupSet, method: Method, detail: String) -> DecisionCertificate {
    DecisionCertificate {
        verdict: Verdict::Yes,
        witness: Some(w),
        method,
        detail,
    }
}

fn pair_certificate(c: &GroupSet) -> DecisionCertificate {
    match find_pair_witness(c) {
        Some((a, w)) => DecisionCertificate {
            verdict: Verdict::Yes,
            witness: Some(w),
            method: Method::ConstructionPair,
            detail: format!("W = {{0, {a}}}"),
        },
        None => DecisionCertificate {
            verdict: Verdict::Unknown,
            witness: None,
            method: Method::ConstructionPair,
            detail: "no two-element witness; the question stays open for larger W".into(),
        },
    }
}

fn random_certificate(
    c: &GroupSet,
    s: Option<usize>,
    limits: &SearchLimits,
) -> mincomp::Result<(DecisionCertificate, Value)> {
    let n = c.group().order() as u64;
    let s = s.unwrap_or_else(|| default_sample_count(n.max(2)) as usize);
    let feasibility = check_feasibility(n.max(2), c.len() as u64, s as u64);
    let trace = random_witness_with(c, s, limits.random_retries, limits.seed, limits.exec)?;
    let mut value = serde_json::to_value(&trace).expect("traces serialize");
    value["feasibility"] = json!({ "holds": feasibility.holds, "terms": feasibility.terms });
    let cert = match &trace.result {
        Some(w) => DecisionCertificate {
            verdict: Verdict::Yes,
            witness: Some(w.clone()),
            method: Method::RandomConstruction,
            detail: format!("s = {s}, attempt {}", trace.retries_used),
        },
        None => DecisionCertificate {
            verdict: Verdict::Unknown,
            witness: None,
            method: Method::RandomConstruction,
            detail: format!("no verified witness in {} attempts with s = {s}", limits.random_retries),
        },
    };
    Ok((cert, value))
}

fn emit(common: &Common, report: &Report) -> std::io::Result<()> {
    let text = report.to_json();
    match &common.output {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let started = Instant::now();
    match run(&cli) {
        Ok(mut outcome) => {
            if cli.common.timing {
                outcome.report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            if let Err(e) = emit(&cli.common, &outcome.report) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.undecided {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::BudgetExhausted(msg)) => {
            eprintln!("undecided: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
