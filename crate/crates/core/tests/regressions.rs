//! Frozen regression values from the first verified computations.
//! The matching counts and class structure are not predicted by any
//! closed formula here; they are recorded so that refactors that change
//! them are noticed.

use klv_core::klv::{self, KlvContext};
use klv_core::verify;

#[test]
fn matching_counts_by_window() {
    // (window, matchings over all lower intervals, non-conjugation ones)
    for (window, total, non_conj) in [(4usize, 2usize, 0usize), (6, 28, 0), (8, 329, 20)] {
        let report = verify::check_spm_structure(window).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let expected = format!(
            "{total} matchings over {} lower intervals, {non_conj} non-conjugation",
            match window {
                4 => 3,
                6 => 15,
                _ => 105,
            }
        );
        assert_eq!(report.details, vec![expected]);
    }
}

#[test]
fn invariance_class_structure_by_window() {
    for (window, classes, isomorphisms) in [(4usize, 3usize, 3usize), (6, 10, 22), (8, 54, 198)] {
        let report = klv::verify_invariance(window).unwrap();
        assert!(report.holds(), "{:?}", report.mismatches);
        assert_eq!(report.classes.len(), classes, "window {window}");
        let iso_total: usize = report.classes.iter().map(|c| c.isomorphism_count).sum();
        assert_eq!(iso_total, isomorphisms, "window {window}");
    }
}

#[test]
fn rank2_interval_census_window_8() {
    let report = verify::check_subthin(8).unwrap();
    assert!(report.passed());
    assert_eq!(
        report.details[0],
        "iota rank-2 interval sizes: 120 of size 3, 435 of size 4"
    );
}

#[test]
fn q_monic_and_vanishing_at_one_window_8() {
    let ctx = KlvContext::new(8).unwrap();
    let m = ctx.elements().len();
    for wi in 0..m {
        let w = ctx.elements()[wi].clone();
        for ui in 0..m {
            let u = ctx.elements()[ui].clone();
            let q = ctx.q_poly(&u, &w).unwrap();
            if ui == wi {
                assert_eq!(q, klv_core::IntPoly::one());
            } else if ctx.leq_idx(ui, wi) {
                assert!(q.is_monic());
                assert_eq!(
                    q.degree().unwrap(),
                    ctx.rank_of_index(wi) - ctx.rank_of_index(ui)
                );
                assert_eq!(q.eval_at_one(), 0);
            } else {
                assert!(q.is_zero());
            }
        }
    }
}

#[test]
fn descent_independence_sampled_window_8() {
    let ctx = KlvContext::new(8).unwrap();
    let tops: Vec<_> = ctx.elements().iter().step_by(7).cloned().collect();
    let lowers: Vec<_> = ctx.elements().iter().step_by(3).cloned().collect();
    for w in &tops {
        for u in &lowers {
            let base = ctx.q_poly(u, w).unwrap();
            for s in w.right_descents() {
                assert_eq!(
                    ctx.q_poly_with_top_descent(u, w, s).unwrap(),
                    base,
                    "descent {s} at u = {u}, w = {w}"
                );
            }
        }
    }
}

#[test]
fn p_coefficients_nonnegative_observed() {
    // an observation about the computed tables, not an asserted theorem
    for window in [4usize, 6, 8] {
        let ctx = KlvContext::new(window).unwrap();
        for w in ctx.elements() {
            let table = ctx.table_for(klv::PolyKind::P, w).unwrap();
            for row in &table.rows {
                assert!(
                    row.poly.coeffs().iter().all(|&c| c >= 0),
                    "negative coefficient in P at ({}, {w})",
                    row.u
                );
            }
        }
    }
}
