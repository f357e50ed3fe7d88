//! Acceptance suite: one test per criterion, each printing a single
//! PASS line when its assertions hold. Budgets are asserted where a
//! criterion states one.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use klv_core::bruhat;
use klv_core::interval::{Ground, IntervalPoset};
use klv_core::klv::{KlvContext, OrdinaryKl};
use klv_core::perm::Perm;
use klv_core::poly::IntPoly;
use klv_core::spm;
use klv_core::twisted;
use klv_core::verify;

fn p(s: &str) -> Perm {
    s.parse().unwrap()
}

fn poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_coeffs(coeffs.to_vec())
}

fn pass(criterion: usize, name: &str) {
    println!("ACCEPTANCE {criterion:02} {name}: PASS");
}

#[test]
fn criterion_01_cardinalities() {
    let start = Instant::now();
    for (window, expected) in [(4usize, 3usize), (6, 15), (8, 105)] {
        assert_eq!(
            twisted::enumerate_iota(window).unwrap().len(),
            expected,
            "window {window}"
        );
    }
    assert!(
        start.elapsed() < Duration::from_secs(1),
        "cardinalities took {:?}",
        start.elapsed()
    );
    pass(1, "cardinalities");
}

#[test]
fn criterion_02_golden_fixtures_n2() {
    let ctx = KlvContext::new(4).unwrap();
    let e = Perm::identity(4);
    let a = p("2 1 4 3");
    let top = p("3 4 1 2");
    let fixtures = [
        (e.clone(), a.clone(), poly(&[-1, 1])),
        (a.clone(), top.clone(), poly(&[-1, 1])),
        (e.clone(), top.clone(), poly(&[0, -1, 1])),
    ];
    // route one: the descent recurrence
    for (u, w, expected) in &fixtures {
        assert_eq!(&ctx.q_poly(u, w).unwrap(), expected, "Q({u}, {w})");
    }
    // route two: the matching-driven recurrence, via every matching
    for (u, w, expected) in &fixtures {
        let poset = IntervalPoset::build_interval(&e, w, Ground::Iota).unwrap();
        let matchings = spm::enumerate_spms(&poset).unwrap();
        assert!(!matchings.is_empty());
        for m in &matchings {
            assert_eq!(
                &ctx.q_poly_via_spm(&poset, m, u).unwrap(),
                expected,
                "matching route Q({u}, {w})"
            );
        }
    }
    // every P at this window is 1 on comparable pairs
    for u in ctx.elements() {
        for w in ctx.elements() {
            if bruhat::leq(u, w).unwrap() {
                assert_eq!(ctx.p_poly(u, w).unwrap(), IntPoly::one());
            }
        }
    }
    pass(2, "golden fixtures at n = 2");
}

#[test]
fn criterion_03_bruhat_criteria_agreement() {
    let start = Instant::now();
    for window in [4usize, 6] {
        let all = Perm::enumerate_all(window);
        for y in &all {
            let lower: HashSet<Perm> = bruhat::subword_closure(y).unwrap();
            for x in &all {
                let dots = bruhat::leq_dots(x, y).unwrap();
                let tableau = bruhat::leq_tableau(x, y).unwrap();
                let subword = lower.contains(x);
                assert!(
                    dots == tableau && tableau == subword,
                    "criteria disagree at x = {x}, y = {y}: {dots} {tableau} {subword}"
                );
            }
        }
    }
    assert!(
        start.elapsed() < Duration::from_secs(30),
        "agreement sweep took {:?}",
        start.elapsed()
    );
    pass(3, "Bruhat criteria agreement at 2n = 4 and 6");
}

#[test]
fn criterion_04_structure_suite() {
    for window in [4usize, 6, 8] {
        for (name, report) in [
            ("graded", verify::check_graded(window).unwrap()),
            ("subthin", verify::check_subthin(window).unwrap()),
            ("lifting", verify::check_lifting(window).unwrap()),
            ("covers", verify::check_covers(window).unwrap()),
            (
                "interval-lemmas",
                verify::check_interval_lemmas(window).unwrap(),
            ),
        ] {
            assert!(
                report.passed(),
                "{name} at window {window}: {:?}",
                report.failures
            );
        }
    }
    // the braid-triple lemma additionally covers the next window
    let report = verify::check_braid_triple_covers(10).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    pass(4, "structure suite at 2n <= 8 (+ braid triples at 10)");
}

#[test]
fn criterion_05_spm_suite() {
    let start = Instant::now();
    for window in [4usize, 6, 8] {
        let report = verify::check_spm_structure(window).unwrap();
        assert!(
            report.passed(),
            "matching structure at window {window}: {:?}",
            report.failures
        );
    }
    assert!(
        start.elapsed() < Duration::from_secs(300),
        "matching suite took {:?}",
        start.elapsed()
    );
    pass(5, "special partial matching suite at 2n <= 8");
}

#[test]
fn criterion_06_spm_theorem() {
    for window in [4usize, 6, 8] {
        let report = verify::check_spm_theorem(window).unwrap();
        assert!(report.passed(), "window {window}: {:?}", report.failures);
    }
    pass(
        6,
        "matching-driven recurrence equals descent recurrence at 2n <= 8",
    );
}

#[test]
fn criterion_07_invariance() {
    for window in [4usize, 6, 8] {
        let report = verify::check_invariance(window).unwrap();
        assert!(report.passed(), "window {window}: {:?}", report.failures);
    }
    pass(7, "combinatorial invariance of Q/R/P at 2n <= 8");
}

#[test]
fn criterion_08_sigma_oracle() {
    let ctx = KlvContext::new(8).unwrap();
    let oracle = OrdinaryKl::new(4).unwrap();
    let sigma: Vec<Perm> = ctx
        .elements()
        .iter()
        .filter(|w| twisted::in_sigma_n(w).unwrap())
        .cloned()
        .collect();
    assert_eq!(sigma.len(), 24);
    let one_plus_q = poly(&[1, 1]);
    let mut found_one_plus_q = false;
    for u in &sigma {
        for w in &sigma {
            let pu = twisted::phi(u).unwrap();
            let pw = twisted::phi(w).unwrap();
            let kl = oracle.kl_poly(&pu, &pw).unwrap();
            assert_eq!(
                ctx.q_poly(u, w).unwrap(),
                oracle.r_poly(&pu, &pw).unwrap(),
                "Q vs classical R at ({u}, {w})"
            );
            assert_eq!(
                ctx.p_poly(u, w).unwrap(),
                kl,
                "P vs classical KL at ({u}, {w})"
            );
            found_one_plus_q |= kl == one_plus_q;
        }
    }
    assert!(
        found_one_plus_q,
        "no pair with classical KL polynomial 1 + q"
    );
    pass(8, "classical S_4 oracle equality on the S_n-like subset");
}

#[test]
fn criterion_09_vogan_identity() {
    for window in [4usize, 6] {
        let report = verify::check_vogan(window, 1).unwrap();
        assert!(report.passed(), "window {window}: {:?}", report.failures);
    }
    // sampled tops at window 8: stride 5 over 105 elements gives 21
    let ctx = KlvContext::new(8).unwrap();
    let sampled: Vec<Perm> = ctx.elements().iter().step_by(5).cloned().collect();
    assert!(sampled.len() >= 20);
    for w in &sampled {
        let report = ctx.verify_vogan_identity(w).unwrap();
        assert!(report.holds(), "w = {w}: {:?}", report.failures);
    }
    pass(
        9,
        "free-module identity, exhaustive at 2n <= 6 and sampled at 8",
    );
}

fn run_cli(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_klv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_10_cli_determinism_and_exit_codes() {
    let deterministic_invocations: [&[&str]; 6] = [
        &["enum", "--n", "2", "--set", "iota"],
        &["enum", "--n", "3", "--set", "fpf", "--format", "json"],
        &[
            "poly", "--kind", "q", "--n", "2", "--u", "1 2 3 4", "--w", "3 4 1 2",
        ],
        &[
            "poly",
            "--kind",
            "q",
            "--n",
            "3",
            "--table",
            "--w",
            "3 2 1 6 5 4",
        ],
        &["spms", "--n", "2", "--w", "3 4 1 2"],
        &["export", "--n", "2", "--w", "3 4 1 2", "--format", "dot"],
    ];
    for args in deterministic_invocations {
        let (out1, _, code1) = run_cli(args);
        let (out2, _, code2) = run_cli(args);
        assert_eq!(code1, 0, "args {args:?}");
        assert_eq!(code1, code2);
        assert_eq!(out1, out2, "non-deterministic output for {args:?}");
        assert!(!out1.is_empty());
    }

    // exit code contract on crafted inputs
    let cases: [(&[&str], i32); 6] = [
        (&["enum", "--n", "99"], 2),
        (
            &[
                "poly", "--kind", "q", "--n", "2", "--u", "1 3 2 4", "--w", "3 4 1 2",
            ],
            2,
        ),
        (&["spms", "--n", "2", "--w", "2 1 4 3 6 5"], 2),
        (&["verify", "--n", "2", "--check", "nonsense"], 2),
        (&["verify", "--n", "2", "--check", "covers,subthin"], 0),
        (
            &["export", "--n", "2", "--w", "4 3 2 1", "--format", "dot"],
            2,
        ),
    ];
    for (args, expected) in cases {
        let (_, stderr, code) = run_cli(args);
        assert_eq!(code, expected, "args {args:?}, stderr: {stderr}");
    }

    // u not below w prints the zero polynomial and succeeds
    let (out, _, code) = run_cli(&[
        "poly", "--kind", "q", "--n", "2", "--u", "3 4 1 2", "--w", "2 1 4 3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");

    // a singleton interval reports no matchings but exits cleanly
    let (out, _, code) = run_cli(&["spms", "--n", "1", "--w", "1 2"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 matchings"));

    pass(10, "CLI determinism and exit-code contract");
}
