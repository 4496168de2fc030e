//! Acceptance suite: runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ghs_core::dag::{Dag, Family};
use ghs_core::ghs::{fpp_group_check, GhsInstance};
use ghs_core::linalg::{det, minor_gcd_profile, snf, IntMatrix};
use ghs_core::sweep::{
    case_rng, labeled_graphs, random_diagonal, random_graph, random_permutation, run_suite, ConjectureSweep,
    CounterexampleLog, Suite, SuiteConfig, SweepMode,
};
use ghs_core::verify::{check_c_family, Claim, Verdict, VerificationReport};
use ghs_core::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().copied().map(BigInt::from).collect()
}

fn show(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diag_of(d: &[i64], g: Dag) -> Result<Vec<BigInt>, String> {
    let inst = GhsInstance::build(ints(d), g).map_err(|e| e.to_string())?;
    Ok(inst.snf().map_err(|e| e.to_string())?.diagonal)
}

fn constant_diag(m: u64, f: Family) -> Result<Vec<BigInt>, String> {
    let inst = GhsInstance::constant(m, f.build().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok(inst.snf().map_err(|e| e.to_string())?.diagonal)
}

fn expect(label: &str, got: Vec<BigInt>, want: &[i64]) -> Result<(), String> {
    ensure(got == ints(want), || {
        format!("{label}: got ({}), want ({})", show(&got), show(&ints(want)))
    })
}

fn golden_snf() -> Check {
    let worked = IntMatrix::from_rows(&[[3, 0, 0], [0, 6, 1], [0, 0, 9]]).unwrap();
    expect(
        "worked example",
        snf(&worked).map_err(|e| e.to_string())?.diagonal,
        &[1, 3, 54],
    )?;
    let graphs: Vec<Dag> = labeled_graphs(3).collect();
    ensure(graphs.len() == 8, || "expected 8 graphs on [3]".into())?;
    for g in graphs {
        let edges: Vec<_> = g.edges().collect();
        expect(&format!("(2,5,3) on {edges:?}"), diag_of(&[2, 5, 3], g)?, &[1, 1, 30])?;
    }
    expect(
        "(6,9,12) on K_3",
        diag_of(&[6, 9, 12], Family::Complete(3).build().unwrap())?,
        &[1, 2, 324],
    )?;
    expect("A_{6,C_2}", constant_diag(6, Family::C(2))?, &[1, 1, 2, 18, 216])?;

    // C_3 has 6 vertices; the reference vector is printed with 7 entries
    let c3 = constant_diag(6, Family::C(3))?;
    expect("A_{6,C_3}", c3.clone(), &[1, 1, 1, 3, 12, 1296])?;
    let printed = ints(&[1, 1, 1, 1, 3, 12, 1296]);
    let nonunit = |v: &[BigInt]| v.iter().filter(|a| !a.is_one()).cloned().collect::<Vec<_>>();
    ensure(nonunit(&c3) == nonunit(&printed), || {
        "C_3 nonunit part differs from reference".into()
    })?;
    let product = |v: &[BigInt]| v.iter().product::<BigInt>();
    ensure(product(&c3) == product(&printed), || {
        "C_3 product differs from reference".into()
    })?;
    Ok(format!(
        "5 golden vectors exact; note: A_{{6,C_3}} is 6x6 so its SNF is ({}), the 7-entry reference agrees on nonunit part and product",
        show(&c3)
    ))
}

fn b_table() -> Check {
    let table: [&[i64]; 5] = [&[216], &[12, 108], &[6, 18, 72], &[6, 6, 12, 108], &[6, 6, 6, 6, 216]];
    for (k, want) in table.iter().enumerate() {
        let i = k + 1;
        let diag = constant_diag(6, Family::B(i))?;
        let mut nonunit: Vec<BigInt> = diag.iter().filter(|a| !a.is_one()).cloned().collect();
        nonunit.sort();
        ensure(nonunit == ints(want), || format!("B_{i}: got {{{}}}", show(&nonunit)))?;
        let largest = BigInt::from(216 / 6u64.gcd(&(i as u64)));
        ensure(diag.last() == Some(&largest), || {
            format!("B_{i}: largest is not {largest}")
        })?;
    }
    Ok("B_1..B_5 match the table; largest = 216/gcd(6,i)".into())
}

fn c_formula() -> Check {
    let mut count = 0;
    for i in 1..=6 {
        for m in 2..=10 {
            let r = check_c_family(i, m).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Holds, || {
                format!("C_{i}, m = {m}: {}", r.to_json_line())
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} (i, m) pairs match {{gcd(i,m), m^2/gcd(i,m), m^(i+1)}}"
    ))
}

fn oracle_equivalence() -> Check {
    let (mut minors, mut cr) = (0usize, 0usize);
    for k in 0..300u64 {
        let mut rng = case_rng(2024, k);
        let n = rng.random_range(1..=7);
        let g = random_graph(&mut rng, n);
        let inst = GhsInstance::build(random_diagonal(&mut rng, n, 1, 9), g.clone()).unwrap();
        for a in 1..n {
            for b in 1..=n - a {
                let direct = det(&inst.submatrix_m(a, b).unwrap()).unwrap();
                let sum = inst.minor_det_path_sum(a, b).map_err(|e| e.to_string())?;
                ensure(sum == direct, || {
                    format!("case {k}: M_{{{a},{b}}} path sum {sum} != det {direct}")
                })?;
                minors += 1;
            }
        }
        let m: u64 = rng.random_range(1..=9);
        let constant = GhsInstance::constant(m, g).unwrap();
        for c in 1..=n {
            for r in (1..=n).filter(|&r| r != c) {
                let direct = det(&constant.submatrix_a_cr(c, r).unwrap()).unwrap();
                let poly = constant.det_a_cr_polynomial(c, r).map_err(|e| e.to_string())?;
                ensure(poly == direct, || {
                    format!("case {k}: A_{{{c},{r}}} polynomial {poly} != det {direct}")
                })?;
                cr += 1;
            }
        }
    }
    Ok(format!(
        "300 instances, {minors} M_(a,b) and {cr} A_(c,r) determinants, 0 mismatches"
    ))
}

fn failures(reports: &[VerificationReport]) -> Vec<&VerificationReport> {
    reports.iter().filter(|r| r.is_failure()).collect()
}

fn claim_counts(reports: &[VerificationReport]) -> BTreeMap<(Claim, Verdict), usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        *out.entry((r.claim, r.verdict)).or_default() += 1;
    }
    out
}

fn theorem_suites() -> Check {
    let exhaustive = SuiteConfig {
        n_max: 5,
        ms: (2..=8).collect(),
        ..SuiteConfig::default()
    };
    let mut all = run_suite(Suite::Bound, &exhaustive).map_err(|e| e.to_string())?;
    all.extend(run_suite(Suite::Exact, &exhaustive).map_err(|e| e.to_string())?);
    let cyclic = SuiteConfig {
        seed: 5,
        random: Some(500),
        ..SuiteConfig::default()
    };
    let cyc = run_suite(Suite::Cyclic, &cyclic).map_err(|e| e.to_string())?;
    let coprime = cyc
        .iter()
        .filter(|r| r.claim == Claim::PairwiseCoprime && r.verdict == Verdict::Holds)
        .count();
    ensure(coprime >= 500, || format!("only {coprime} coprime instances"))?;
    all.extend(cyc);
    let bip = SuiteConfig {
        max_part: 3,
        ms: (2..=8).collect(),
        primes: vec![2, 3, 5, 7],
        ..SuiteConfig::default()
    };
    all.extend(run_suite(Suite::Bipartite, &bip).map_err(|e| e.to_string())?);
    let bad = failures(&all);
    ensure(bad.is_empty(), || {
        format!("{} violated, first: {}", bad.len(), bad[0].to_json_line())
    })?;
    let counts = claim_counts(&all);
    let holds = |c| counts.get(&(c, Verdict::Holds)).copied().unwrap_or(0);
    Ok(format!(
        "{} reports, 0 violated (bound {}, exact {}, cyclic {}, coprime {coprime}, bipartite {}, prime {})",
        all.len(),
        holds(Claim::LargestBound),
        holds(Claim::ExactLargest),
        holds(Claim::CyclicCokernel),
        holds(Claim::BipartiteFormula),
        holds(Claim::PrimeBipartite)
    ))
}

fn random_matrix(k: u64) -> IntMatrix {
    let mut rng = case_rng(606, k);
    loop {
        let (r, c) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let data: Vec<BigInt> = (0..r * c).map(|_| BigInt::from(rng.random_range(-9..=9))).collect();
        if data.iter().any(|x| !x.is_zero()) {
            return IntMatrix::new(r, c, data).unwrap();
        }
    }
}

fn minors_cross_check() -> Check {
    for k in 0..500 {
        let a = random_matrix(k);
        let elim = snf(&a).map_err(|e| e.to_string())?.diagonal;
        let oracle = minor_gcd_profile(&a).map_err(|e| e.to_string())?.alphas();
        ensure(elim == oracle, || {
            format!("matrix {k}: snf ({}) vs minors ({})", show(&elim), show(&oracle))
        })?;
    }
    Ok("500 random matrices, 0 mismatches".into())
}

fn relabel_invariance() -> Check {
    for k in 0..200 {
        let mut rng = case_rng(77, k);
        let n = rng.random_range(1..=7);
        let inst = GhsInstance::build(random_diagonal(&mut rng, n, 1, 12), random_graph(&mut rng, n)).unwrap();
        let t = random_permutation(&mut rng, n);
        let moved = inst.relabel(&t).map_err(|e| e.to_string())?;
        let (a, b) = (inst.snf().unwrap().diagonal, moved.snf().unwrap().diagonal);
        ensure(a == b, || {
            format!("triple {k}, t = {t:?}: ({}) vs ({})", show(&a), show(&b))
        })?;
    }
    Ok("200 random (d, G, T) triples, 0 mismatches".into())
}

fn fpp_groups() -> Check {
    let mut pool: Vec<GhsInstance> = Vec::new();
    pool.push(GhsInstance::build(ints(&[3, 6, 9]), Dag::new(3, [(2, 3)]).unwrap()).unwrap());
    for g in labeled_graphs(3) {
        pool.push(GhsInstance::build(ints(&[2, 5, 3]), g).unwrap());
    }
    pool.push(GhsInstance::build(ints(&[6, 9, 12]), Family::Complete(3).build().unwrap()).unwrap());
    for f in [Family::C(2), Family::C(3)].into_iter().chain((1..=5).map(Family::B)) {
        pool.push(GhsInstance::constant(6, f.build().unwrap()).unwrap());
    }
    let cap = BigInt::from(1000);
    let mut checked = 0;
    for inst in pool {
        let d = det(inst.matrix()).unwrap();
        if d > cap {
            continue;
        }
        let c = fpp_group_check(&inst, &cap).map_err(|e| e.to_string())?;
        ensure(BigInt::from(c.point_count) == d, || {
            format!("{} points for det {d}", c.point_count)
        })?;
        ensure(c.matches, || format!("order multisets differ for det {d}"))?;
        checked += 1;
    }
    Ok(format!(
        "{checked} instances with |det| <= 1000: counts equal det, groups match"
    ))
}

fn conjecture_sweep() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let log = CounterexampleLog::new(dir.path().join("counterexamples.jsonl"));
    let run = |n_min, n_max| {
        let sweep = ConjectureSweep {
            primes: vec![2, 3, 5],
            mode: SweepMode::Exhaustive { n_min, n_max },
        };
        let start = Instant::now();
        let (cases, summary) = sweep.run().map_err(|e| e.to_string())?;
        log.append(&cases).map_err(|e| e.to_string())?;
        Ok::<_, String>((summary, start.elapsed()))
    };
    let (small, t_small) = run(1, 5)?;
    ensure(t_small < Duration::from_secs(120), || {
        format!("n <= 5 took {t_small:.1?}")
    })?;
    let (six, t_six) = run(6, 6)?;
    let logged = log.read().map_err(|e| e.to_string())?;
    for c in &logged {
        let again = c.replay().map_err(|e| e.to_string())?;
        ensure(again.verdict == Verdict::Violated, || {
            format!("logged case does not replay: {}", c.to_json_line())
        })?;
    }
    let violated = small.violated + six.violated;
    ensure(violated == 0, || {
        format!(
            "{violated} counterexamples logged (replayable): {}",
            logged[0].to_json_line()
        )
    })?;
    Ok(format!(
        "{} cases for n <= 6, p in {{2,3,5}}, 0 violations (n <= 5: {:.1?}, n = 6: {:.1?})",
        small.cases + six.cases,
        t_small,
        t_six
    ))
}

fn cli(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ghs-explorer"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let lines = |r: &[VerificationReport]| r.iter().map(|x| x.to_json_line() + "\n").collect::<String>();
    let cfg = SuiteConfig {
        seed: 42,
        random: Some(300),
        ..SuiteConfig::default()
    };
    for suite in [Suite::Bound, Suite::Cyclic] {
        let a = lines(&run_suite(suite, &cfg).map_err(|e| e.to_string())?);
        let b = lines(&run_suite(suite, &cfg).map_err(|e| e.to_string())?);
        ensure(a == b, || format!("{suite:?} suite differs between runs"))?;
    }
    let sweep = ConjectureSweep {
        primes: vec![2, 3, 5],
        mode: SweepMode::Random {
            count: 300,
            n: 7,
            seed: 7,
        },
    };
    let a = sweep.run().map_err(|e| e.to_string())?;
    let b = sweep.run().map_err(|e| e.to_string())?;
    ensure(a == b, || "random conjecture sweep differs between runs".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let verify = ["--seed", "42", "verify", "--suite", "bound", "--random", "200"];
    ensure(cli(&verify, "1")? == cli(&verify, "4")?, || {
        "verify stream differs between runs".into()
    })?;
    let mut reports = Vec::new();
    for (k, threads) in ["1", "4"].into_iter().enumerate() {
        let path = dir.path().join(format!("report{k}.jsonl"));
        let p = path.to_str().unwrap();
        let args = [
            "--seed",
            "7",
            "conjecture",
            "--random",
            "100",
            "--n",
            "7",
            "--primes",
            "2,3,5",
            "--report",
            p,
        ];
        let summary = cli(&args, threads)?;
        reports.push((summary, std::fs::read(&path).map_err(|e| e.to_string())?));
    }
    ensure(reports[0] == reports[1], || {
        "conjecture summary or report differs between runs".into()
    })?;
    Ok("library suites and sweeps, and CLI verify/conjecture streams under 1 and 4 threads, are byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden SNF values", Duration::from_secs(1), golden_snf),
        ("B_i table", Duration::from_secs(1), b_table),
        ("C_i formula", Duration::from_secs(10), c_formula),
        (
            "path-sum oracle equivalence",
            Duration::from_secs(60),
            oracle_equivalence,
        ),
        ("theorem suites", Duration::from_secs(300), theorem_suites),
        ("minors-gcd cross-check", Duration::from_secs(60), minors_cross_check),
        ("relabeling invariance", Duration::MAX, relabel_invariance),
        ("FPP group check", Duration::from_secs(120), fpp_groups),
        ("conjecture sweep", Duration::from_secs(1800), conjecture_sweep),
        ("determinism", Duration::MAX, determinism),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let budget = if *limit == Duration::MAX {
            String::new()
        } else {
            format!(" / {:?}", limit)
        };
        let (tag, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} [{:>2}] {name} ({elapsed:.2?}{budget}): {detail}", k + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
