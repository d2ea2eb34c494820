//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines stay readable; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mincomp::builders::{
    ap_decide_and_build, check_feasibility, lift_integer_window, lift_via_quotient, lift_via_subgroup,
    pair_witness_check, random_witness, ApDescriptor, WindowMode,
};
use mincomp::complement::{
    exhaustive_decision, exists_witness, gap_family_order, in_size_gap, in_subgroup_gap, is_minimal_complement_for,
};
use mincomp::oracle::{
    naive_coverage, naive_difference_set, naive_is_maximal_supplement, naive_is_minimal, naive_sumset,
    oracle_exists_witness, oracle_maximal_supplement, oracle_solid,
};
use mincomp::report::Report;
use mincomp::scan::{scan_threshold, ExperimentConfig};
use mincomp::subgroup::{enumerate_subgroups, quotient_map, Subgroup};
use mincomp::sumset::{coverage, difference_set, sumset};
use mincomp::supplement::{is_maximal_supplement_for, is_solid, maximal_supplement_witness};
use mincomp::{Group, GroupSet, Method, SearchLimits, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn all_sets(g: &Arc<Group>) -> impl Iterator<Item = GroupSet> + '_ {
    let n = g.order();
    (1u64..1 << n).map(move |m| GroupSet::from_elements(g, (0..n).filter(|&i| m >> i & 1 == 1)).unwrap())
}

fn random_set(g: &Arc<Group>, rng: &mut ChaCha8Rng) -> GroupSet {
    let p: f64 = rng.random();
    let mut s = GroupSet::empty(g);
    for x in 0..g.order() {
        if rng.random_bool(p) {
            s.insert(x);
        }
    }
    s
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for n in 2..=10 {
        let g = Group::cyclic(n);
        for c in all_sets(&g) {
            let cert = exists_witness(&c, &limits()).map_err(|e| e.to_string())?;
            let expected = oracle_exists_witness(&c).is_some();
            let got = match cert.verdict {
                Verdict::Yes => true,
                Verdict::No => false,
                Verdict::Unknown => return Err(format!("unknown verdict for {c} in Z/{n}")),
            };
            if got != expected {
                return Err(format!("{c} in Z/{n}: got {got}, oracle {expected}"));
            }
            if let Some(w) = &cert.witness {
                if !naive_is_minimal(w, &c) {
                    return Err(format!("witness {w} for {c} fails the naive check"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} sets over n = 2..10, 0 mismatches"))
}

fn size_spectrum() -> Outcome {
    let mut built = 0;
    for n in 3..=15usize {
        let g = Group::cyclic(n);
        let top = 2 * n / 3;
        for k in (1..=top).chain([n]) {
            let ap = ApDescriptor::new(&g, 0, 1, k).map_err(|e| e.to_string())?;
            let cert = ap_decide_and_build(&ap).map_err(|e| e.to_string())?;
            let w = cert
                .witness
                .as_ref()
                .ok_or_else(|| format!("no witness for size {k} in Z/{n}: {}", cert.detail))?;
            let c = ap.terms();
            if c.len() != k || !naive_is_minimal(w, &c) {
                return Err(format!("size {k} in Z/{n}: witness {w} does not verify"));
            }
            built += 1;
        }
        for k in top + 1..n {
            if !in_size_gap(n, k) {
                return Err(format!("size {k} in Z/{n} is not excluded by the size bound"));
            }
            let c = ApDescriptor::new(&g, 0, 1, k).unwrap().terms();
            let cert = exists_witness(&c, &limits()).map_err(|e| e.to_string())?;
            if cert.verdict != Verdict::No || cert.method != Method::SizeBound {
                return Err(format!(
                    "size {k} in Z/{n}: expected a size-bound no, got {:?}",
                    cert.verdict
                ));
            }
        }
    }
    Ok(format!("{built} verified witnesses, every gap size excluded"))
}

fn subgroup_gap() -> Outcome {
    let g = Group::cyclic(12);
    let h = Subgroup::cyclic(&g, 2).map_err(|e| e.to_string())?;
    let members = h.members().to_vec();
    let mut noes = 0;
    for skip in &members {
        let c = GroupSet::from_elements(&g, members.iter().copied().filter(|x| x != skip)).unwrap();
        let cert = exhaustive_decision(&c, &limits()).map_err(|e| e.to_string())?;
        if cert.verdict != Verdict::No || cert.method != Method::Exhaustive {
            return Err(format!(
                "{c}: expected an exhaustive no, got {:?} ({})",
                cert.verdict, cert.detail
            ));
        }
        noes += 1;
    }
    let mut family = Vec::new();
    for k in [5usize, 7, 9] {
        let n = gap_family_order(k);
        let g = Group::cyclic(n);
        let h = Subgroup::cyclic(&g, n / (k + 1)).map_err(|e| e.to_string())?;
        if h.order() != k + 1 || !in_subgroup_gap(n, k + 1, k) {
            return Err(format!("k = {k}: Z/{n} is not in the subgroup gap"));
        }
        let mut c = h.members().clone();
        c.remove(h.members().to_vec()[k]);
        let cert = exists_witness(&c, &limits()).map_err(|e| e.to_string())?;
        if cert.verdict != Verdict::No {
            return Err(format!("k = {k}, n = {n}: {c} was not refuted"));
        }
        let exhaustive = if n <= 24 {
            let cert = exhaustive_decision(&c, &limits()).map_err(|e| e.to_string())?;
            if cert.verdict != Verdict::No {
                return Err(format!(
                    "k = {k}, n = {n}: exhaustive search disagrees ({:?})",
                    cert.verdict
                ));
            }
            " exhaustive"
        } else {
            ""
        };
        family.push(format!("k={k} n={n}{exhaustive}"));
    }
    Ok(format!("{noes}/6 exhaustive no in Z/12; family {}", family.join(", ")))
}

fn random_at_scale() -> Outcome {
    let n = 1_000_000usize;
    let g = Group::cyclic(n);
    let feas = check_feasibility(n as u64, 6, 21);
    if !feas.holds || !(0.09..=0.10).contains(&feas.terms[0]) {
        return Err(format!("feasibility {:?}", feas));
    }
    let mut max_attempts = 0;
    for seed in 1..=100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = GroupSet::empty(&g);
        while c.len() < 6 {
            c.insert(rng.random_range(0..n));
        }
        let trace = random_witness(&c, 21, 10, seed).map_err(|e| e.to_string())?;
        let w = trace
            .result
            .as_ref()
            .ok_or_else(|| format!("seed {seed}: no witness in 10 attempts"))?;
        if !is_minimal_complement_for(w, &c).map_err(|e| e.to_string())? {
            return Err(format!("seed {seed}: witness does not verify"));
        }
        max_attempts = max_attempts.max(trace.retries_used + 1);
    }
    Ok(format!(
        "100/100 verified, at most {max_attempts} attempts; term1 = {:.6}",
        feas.terms[0]
    ))
}

fn pair_characterization() -> Outcome {
    let mut checked = 0;
    for n in 3..=10 {
        let g = Group::cyclic(n);
        for c in all_sets(&g).chain([GroupSet::empty(&g)]) {
            for a in 1..n {
                let w = GroupSet::from_elements(&g, [0, a]).unwrap();
                let got = pair_witness_check(&c, a).map_err(|e| e.to_string())?;
                if got != naive_is_minimal(&w, &c) {
                    return Err(format!("{c}, a = {a} in Z/{n}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (C, a) pairs, 0 mismatches"))
}

fn supplement_suite() -> Outcome {
    let mut maximal_pairs = 0;
    let mut solidity_sets = 0;
    for n in 1..=8 {
        let g = Group::cyclic(n);
        let sets: Vec<GroupSet> = all_sets(&g).collect();
        for c in &sets {
            let solid = is_solid(c).map_err(|e| e.to_string())?.solid;
            if solid != oracle_solid(c) {
                return Err(format!("(b) solidity of {c} in Z/{n}"));
            }
            solidity_sets += 1;
            for w in &sets {
                if naive_is_maximal_supplement(w, c) {
                    maximal_pairs += 1;
                    if !solid {
                        return Err(format!("(a) {c} is a maximal supplement for {w} but not solid"));
                    }
                }
            }
        }
    }
    let mut decided = 0;
    for n in 1..=10 {
        let g = Group::cyclic(n);
        for c in all_sets(&g) {
            let cert = maximal_supplement_witness(&c, &limits()).map_err(|e| e.to_string())?;
            let expected = oracle_maximal_supplement(&c).is_some();
            match cert.verdict {
                Verdict::Unknown => return Err(format!("(c) unknown for {c} in Z/{n}")),
                v if (v == Verdict::Yes) != expected => return Err(format!("(c) {c} in Z/{n}: {v:?}")),
                _ => {}
            }
            if let Some(w) = &cert.witness {
                if !naive_is_maximal_supplement(w, &c) || !is_maximal_supplement_for(w, &c).unwrap() {
                    return Err(format!("(c) witness {w} for {c} does not verify"));
                }
            }
            decided += 1;
        }
    }
    Ok(format!(
        "(a) {maximal_pairs} maximal pairs all solid; (b) {solidity_sets} sets agree; (c) {decided} verdicts agree"
    ))
}

fn small_group(rng: &mut ChaCha8Rng) -> Arc<Group> {
    #[rustfmt::skip]
    const SHAPES: &[&[usize]] = &[
        &[4], &[6], &[8], &[9], &[10], &[12], &[15], &[16], &[18], &[20], &[24], &[30], &[36], &[48],
        &[2, 2], &[2, 4], &[3, 3], &[2, 6], &[2, 8], &[4, 4], &[3, 6], &[2, 12], &[4, 6], &[2, 2, 2],
        &[2, 2, 4], &[2, 2, 6], &[2, 4, 4], &[2, 2, 2, 2], &[2, 2, 2, 3], &[2, 24], &[4, 12], &[6, 6],
    ];
    Group::new(SHAPES.choose(rng).unwrap()).unwrap()
}

fn lifting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let inner = limits().sequential();
    let (mut via_sub, mut via_quot, mut draws) = (0, 0, 0);
    while via_sub + via_quot < 1000 {
        draws += 1;
        if draws > 200_000 {
            return Err(format!("only {} instances after {draws} draws", via_sub + via_quot));
        }
        let g = small_group(&mut rng);
        let subs: Vec<Subgroup> = enumerate_subgroups(&g)
            .into_iter()
            .filter(|h| h.order() > 1 && !h.is_whole())
            .collect();
        let Some(h) = subs.choose(&mut rng) else { continue };
        if (via_sub + via_quot) % 2 == 0 {
            let (hg, embed) = h.as_group();
            let mut ch = random_set(&hg, &mut rng);
            if ch.is_empty() {
                ch.insert(0);
            }
            let cert = exists_witness(&ch, &inner).map_err(|e| e.to_string())?;
            let Some(wh) = cert.witness else { continue };
            let (c, wh) = (embed.image(&ch).unwrap(), embed.image(&wh).unwrap());
            let w = lift_via_subgroup(&wh, &c, h).map_err(|e| format!("subgroup lift in {}: {e}", g.spec()))?;
            if !naive_is_minimal(&w, &c) {
                return Err(format!("subgroup lift {w} for {c} in {}", g.spec()));
            }
            via_sub += 1;
        } else {
            let (q, pi) = quotient_map(&g, h).map_err(|e| e.to_string())?;
            let mut cosets: Vec<usize> = (0..q.order()).collect();
            cosets.shuffle(&mut rng);
            let k = rng.random_range(1..=q.order());
            let mut c = GroupSet::empty(&g);
            for &coset in &cosets[..k] {
                let fibre: Vec<usize> = (0..g.order()).filter(|&x| pi.apply(x) == coset).collect();
                c.insert(*fibre.choose(&mut rng).unwrap());
            }
            let cert = exists_witness(&pi.image(&c).unwrap(), &inner).map_err(|e| e.to_string())?;
            let Some(wq) = cert.witness else { continue };
            let w = lift_via_quotient(&wq, &c, &pi).map_err(|e| format!("quotient lift in {}: {e}", g.spec()))?;
            if !naive_is_minimal(&w, &c) {
                return Err(format!("quotient lift {w} for {c} in {}", g.spec()));
            }
            via_quot += 1;
        }
    }
    let z = lift_integer_window(&[0, 1, 2], WindowMode::MinimalM, &limits()).map_err(|e| e.to_string())?;
    if !z.check_periodic(3) {
        return Err(format!("periodic witness mod {} fails", z.modulus));
    }
    Ok(format!(
        "{via_sub} subgroup + {via_quot} quotient lifts verified; {{0,1,2}} lifts with period {}",
        z.modulus
    ))
}

fn kernels() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 6..=64 {
        let g = Group::cyclic(n);
        for _ in 0..10_000 {
            let (a, b) = (random_set(&g, &mut rng), random_set(&g, &mut rng));
            if sumset(&a, &b).unwrap() != naive_sumset(&a, &b) {
                return Err(format!("sumset {a} + {b} in Z/{n}"));
            }
            if difference_set(&a) != naive_difference_set(&a) {
                return Err(format!("difference set of {a} in Z/{n}"));
            }
            let fast: Vec<u64> = coverage(&a, &b)
                .unwrap()
                .counts()
                .iter()
                .map(|&k| u64::from(k))
                .collect();
            if fast != naive_coverage(&a, &b) {
                return Err(format!("coverage {a}, {b} in Z/{n}"));
            }
        }
    }
    Ok("59 groups x 10^4 pairs, bit-exact".into())
}

fn scan_reproducibility() -> Outcome {
    let g = Group::cyclic(16);
    let cfg = ExperimentConfig {
        p_grid: ExperimentConfig::default_grid(),
        trials: 200,
        seed: 16,
        limits: limits(),
        heuristic: false,
    };
    let run = || -> Result<(String, f64), String> {
        let scan = scan_threshold(&g, &cfg).map_err(|e| e.to_string())?;
        let top = scan.rows.last().and_then(|r| r.frequency).unwrap_or(f64::NAN);
        let report = Report::new("scan-threshold", &g).result(serde_json::to_value(&scan).unwrap());
        Ok((report.to_json(), top))
    };
    let (first, top) = run()?;
    let (second, _) = run()?;
    if first != second {
        return Err("two runs produced different JSON".into());
    }
    if top != 1.0 {
        return Err(format!("frequency at p = 1 is {top}"));
    }
    Ok(format!(
        "{} bytes identical across runs, frequency(1) = 1.0",
        first.len()
    ))
}

fn main() -> ExitCode {
    // `cargo test` passes libtest flags such as `--quiet`; nothing here takes arguments.
    let criteria: [Criterion; 9] = [
        (
            "oracle equivalence (complements)",
            oracle_equivalence,
            Duration::from_secs(600),
        ),
        ("size spectrum", size_spectrum, Duration::from_secs(60)),
        (
            "subgroup gap in Z/12 and its family",
            subgroup_gap,
            Duration::from_secs(60),
        ),
        (
            "random construction in Z/10^6",
            random_at_scale,
            Duration::from_secs(600),
        ),
        ("pair characterization", pair_characterization, Duration::from_secs(300)),
        ("supplement suite", supplement_suite, Duration::from_secs(900)),
        ("lifting soundness", lifting, Duration::from_secs(300)),
        ("kernel equivalence", kernels, Duration::from_secs(60)),
        ("scan reproducibility", scan_reproducibility, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {}s budget", budget.as_secs())),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {} {name}: {detail} [{:.2}s]", i + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
