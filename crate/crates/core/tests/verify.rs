use ghs_core::dag::{Dag, Family};
use ghs_core::ghs::GhsInstance;
use ghs_core::sweep::{
    case_rng, random_diagonal, random_graph, random_permutation, run_suite, tally, ConjectureSweep, CounterexampleLog,
    Suite, SuiteConfig, SweepMode,
};
use ghs_core::verify::{check_conjecture, check_cyclic_cokernel, Claim, Verdict};
use ghs_core::BigInt;
use num_traits::One;

#[test]
fn bound_is_never_violated_on_random_instances() {
    let cfg = SuiteConfig {
        seed: 42,
        random: Some(1000),
        ..SuiteConfig::default()
    };
    let reports = run_suite(Suite::Bound, &cfg).unwrap();
    assert_eq!(reports.len(), 1000);
    assert!(reports.iter().all(|r| r.verdict == Verdict::Holds));
    assert!(reports.iter().all(|r| r.instance.graph.n <= 7));
}

#[test]
fn path_condition_matches_direct_statement() {
    // α_{n-1} = 1 forces α_n = ∏ d_i on relabeled spanning paths
    for k in 0..200 {
        let mut rng = case_rng(11, k);
        let n = 1 + (k as usize % 7);
        let path = Family::Path(n)
            .build()
            .unwrap()
            .relabel(&random_permutation(&mut rng, n))
            .unwrap();
        let inst = GhsInstance::build(random_diagonal(&mut rng, n, 1, 12), path).unwrap();
        let r = check_cyclic_cokernel(&inst).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let alphas = inst.snf().unwrap().diagonal;
        assert!(n < 2 || alphas[n - 2].is_one());
        assert_eq!(alphas[n - 1], inst.d().iter().product::<BigInt>());
    }
}

#[test]
fn random_instances_only_hold_or_are_not_applicable() {
    for k in 0..200 {
        let mut rng = case_rng(5, k);
        let n = 1 + (k as usize % 7);
        let g = random_graph(&mut rng, n);
        let inst = GhsInstance::build(random_diagonal(&mut rng, n, 1, 12), g).unwrap();
        assert!(!check_cyclic_cokernel(&inst).unwrap().is_failure());
    }
}

#[test]
fn suites_report_no_failures() {
    let cfg = SuiteConfig {
        n_max: 4,
        ms: vec![2, 3, 4, 6],
        max_part: 2,
        ..SuiteConfig::default()
    };
    let reports = run_suite(Suite::All, &cfg).unwrap();
    assert!(reports.iter().all(|r| !r.is_failure()));
    let counts = tally(&reports);
    for claim in [
        "cyclic-cokernel",
        "largest-bound",
        "exact-largest",
        "bipartite-formula",
        "prime-bipartite",
        "c-family",
    ] {
        assert!(counts.contains_key(claim), "{claim}");
    }
    assert!(reports.iter().any(|r| r.claim == Claim::DisjointUnionPrime));
}

#[test]
fn counterexample_log_round_trip() {
    let dir = std::env::temp_dir().join(format!("ghs-log-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let log = CounterexampleLog::new(dir.join("log.jsonl"));
    assert!(log.read().unwrap().is_empty());

    let real = check_conjecture(&Family::C(2).build().unwrap(), 3).unwrap();
    assert_eq!(log.append([&real]).unwrap(), 0);
    // a forged entry: replay recomputes the true verdict and exposes it
    let mut forged = real.clone();
    forged.verdict = Verdict::Violated;
    assert_eq!(log.append([&forged, &forged]).unwrap(), 2);
    let back = log.read().unwrap();
    assert_eq!(back, vec![forged.clone(), forged.clone()]);
    assert_eq!(back[0].replay().unwrap(), real);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_exhaustive_sweep() {
    let sweep = ConjectureSweep {
        primes: vec![2, 3, 5],
        mode: SweepMode::Exhaustive { n_min: 1, n_max: 4 },
    };
    let (cases, summary) = sweep.run().unwrap();
    assert_eq!(cases.len() as u64, sweep.case_count());
    assert_eq!(summary.cases, 3 * (1 + 2 + 8 + 64));
    assert_eq!(summary.violated, 0);
    // ranks of nilpotent adjacency matrices stay below n
    assert!(cases.iter().all(|c| c.r_p < c.graph.n));
    let edgeless = check_conjecture(&Dag::edgeless(3), 2).unwrap();
    assert_eq!(edgeless.alphas, vec![BigInt::from(2); 3]);
}
