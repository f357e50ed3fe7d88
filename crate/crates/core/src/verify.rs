//! Named verification suites over a whole window: structural facts about
//! the posets, the special-partial-matching structure theory, the
//! matching-driven recurrence, combinatorial invariance, and the
//! defining free-module identity. Each suite returns a [`CheckReport`]
//! listing summary details and any failing witnesses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bruhat;
use crate::error::{Error, Result};
use crate::interval::{self, Ground, IntervalPoset};
use crate::klv::{self, KlvContext};
use crate::perm::Perm;
use crate::spm::{self, MatchTag, SpmClass};
use crate::twisted::{self, SWord};

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub window: usize,
    pub details: Vec<String>,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str, window: usize) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            window,
            details: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: CheckReport) {
        self.details.extend(other.details);
        self.failures.extend(other.failures);
    }
}

/// The selectable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckSelector {
    SpmTheorem,
    Invariance,
    Vogan,
    Subthin,
    Lifting,
    Covers,
    Structure,
}

impl CheckSelector {
    pub fn all() -> &'static [CheckSelector] {
        &[
            CheckSelector::SpmTheorem,
            CheckSelector::Invariance,
            CheckSelector::Vogan,
            CheckSelector::Subthin,
            CheckSelector::Lifting,
            CheckSelector::Covers,
            CheckSelector::Structure,
        ]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckSelector::SpmTheorem => "spm-theorem",
            CheckSelector::Invariance => "invariance",
            CheckSelector::Vogan => "vogan",
            CheckSelector::Subthin => "subthin",
            CheckSelector::Lifting => "lifting",
            CheckSelector::Covers => "covers",
            CheckSelector::Structure => "structure",
        }
    }
}

impl fmt::Display for CheckSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckSelector> {
        CheckSelector::all()
            .iter()
            .copied()
            .find(|sel| sel.as_str() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown verification selector".to_string(),
            })
    }
}

/// Runs one selected suite at the given window.
pub fn run_check(selector: CheckSelector, window: usize) -> Result<CheckReport> {
    match selector {
        CheckSelector::SpmTheorem => check_spm_theorem(window),
        CheckSelector::Invariance => check_invariance(window),
        CheckSelector::Vogan => check_vogan(window, 1),
        CheckSelector::Subthin => check_subthin(window),
        CheckSelector::Lifting => check_lifting(window),
        CheckSelector::Covers => check_covers(window),
        CheckSelector::Structure => check_structure(window),
    }
}

fn whole_iota_poset(window: usize) -> Result<IntervalPoset> {
    IntervalPoset::build_interval(
        &Perm::identity(window),
        &twisted::iota_max(window)?,
        Ground::Iota,
    )
}

fn whole_twisted_poset(window: usize) -> Result<IntervalPoset> {
    IntervalPoset::build_interval(
        &Perm::identity(window),
        &Perm::longest_element(window),
        Ground::Twisted,
    )
}

fn graded_violations(poset: &IntervalPoset, label: &str, failures: &mut Vec<String>) {
    let m = poset.len();
    for i in 0..m {
        for j in 0..m {
            if i == j || !poset.leq_idx(i, j) {
                continue;
            }
            let between =
                (0..m).any(|k| k != i && k != j && poset.leq_idx(i, k) && poset.leq_idx(k, j));
            if !between && poset.rank(j) != poset.rank(i) + 1 {
                failures.push(format!(
                    "{label}: {} is covered by {} with rank gap {}",
                    poset.element(i),
                    poset.element(j),
                    poset.rank(j) - poset.rank(i)
                ));
            }
        }
    }
}

/// Gradedness of both posets and the rank-length relation on the
/// twisted identities.
pub fn check_graded(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("graded", window);
    let iota = whole_iota_poset(window)?;
    let tw = whole_twisted_poset(window)?;
    for t in twisted::enumerate_iota(window)?.iter() {
        if 2 * t.rank() != t.perm().length() {
            report.failures.push(format!(
                "rho-length mismatch at {}: rho {}, length {}",
                t.perm(),
                t.rank(),
                t.perm().length()
            ));
        }
    }
    graded_violations(&iota, "iota", &mut report.failures);
    graded_violations(&tw, "twisted", &mut report.failures);
    report.details.push(format!(
        "iota: {} elements up to rho {}; twisted involutions: {} elements",
        iota.len(),
        iota.max_rank(),
        tw.len()
    ));
    Ok(report)
}

/// Rank-two interval profiles: every twisted-involution interval has
/// exactly four elements, every iota interval has three or four.
pub fn check_subthin(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("subthin", window);
    let iota = whole_iota_poset(window)?;
    let tw = whole_twisted_poset(window)?;

    let iota_profile = iota.rank2_interval_profile();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &s in &iota_profile {
        match counts.iter_mut().find(|(size, _)| *size == s) {
            Some((_, c)) => *c += 1,
            None => counts.push((s, 1)),
        }
        if s != 3 && s != 4 {
            report
                .failures
                .push(format!("iota rank-2 interval of size {s}"));
        }
    }
    report.details.push(format!(
        "iota rank-2 interval sizes: {}",
        counts
            .iter()
            .map(|(s, c)| format!("{c} of size {s}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));

    let tw_profile = tw.rank2_interval_profile();
    let thin_violations = tw_profile.iter().filter(|&&s| s != 4).count();
    if thin_violations > 0 {
        report.failures.push(format!(
            "twisted involutions: {thin_violations} rank-2 intervals of size != 4"
        ));
    }
    report.details.push(format!(
        "twisted rank-2 intervals: {} checked, all of size 4: {}",
        tw_profile.len(),
        thin_violations == 0
    ));
    Ok(report)
}

/// The lifting property over the twisted involutions: for `u <= w` and
/// `s` a right descent of `w`, the underline action interacts with the
/// order in the three stated ways.
pub fn check_lifting(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("lifting", window);
    let tw = whole_twisted_poset(window)?;
    let m = tw.len();
    // underline action by element index, per generator
    let mut act = vec![vec![0usize; window]; m];
    for (i, row) in act.iter_mut().enumerate() {
        for (s, slot) in row.iter_mut().enumerate().skip(1) {
            let moved = twisted::underline_act(tw.element(i), s)?;
            *slot = tw
                .index_of(&moved)
                .expect("underline action stays among twisted involutions");
        }
    }
    let mut checked = 0usize;
    for ui in 0..m {
        for wi in 0..m {
            if !tw.leq_idx(ui, wi) {
                continue;
            }
            for s in tw.element(wi).right_descents() {
                checked += 1;
                let us = act[ui][s];
                let ws = act[wi][s];
                if !tw.leq_idx(us, wi) {
                    report.failures.push(format!(
                        "(i) fails: {} s̲_{s} not below {}",
                        tw.element(ui),
                        tw.element(wi)
                    ));
                }
                if tw.element(ui).is_right_descent(s) {
                    if !tw.leq_idx(us, ws) {
                        report.failures.push(format!(
                            "(ii) fails at u = {}, w = {}, s = {s}",
                            tw.element(ui),
                            tw.element(wi)
                        ));
                    }
                } else if !tw.leq_idx(ui, ws) {
                    report.failures.push(format!(
                        "(iii) fails at u = {}, w = {}, s = {s}",
                        tw.element(ui),
                        tw.element(wi)
                    ));
                }
            }
        }
    }
    report
        .details
        .push(format!("{checked} (pair, descent) triples checked"));
    Ok(report)
}

/// Order-theoretic covers in iota against the twisted-conjugation-by-a-
/// transposition route.
pub fn check_covers(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("covers", window);
    let top = twisted::iota_max(window)?;
    let mut checked = 0usize;
    for t in twisted::enumerate_iota(window)?.iter() {
        let by_order = interval::covers_in_iota(t.perm(), &top)?;
        let by_conjugation = interval::transposition_conjugation_covers(t.perm(), &top)?;
        checked += by_order.len();
        if by_order != by_conjugation {
            report.failures.push(format!(
                "cover routes disagree above {}: {:?} vs {:?}",
                t.perm(),
                by_order,
                by_conjugation
            ));
        }
    }
    report
        .details
        .push(format!("{checked} covers cross-checked"));
    Ok(report)
}

/// Structural lemmas about iota: overlap of three-element rank-two
/// intervals, elements covering exactly one element, the unique common
/// cover of the two twisted braid triples, determination by lower
/// covers, covers from outside iota, and the avoidance criterion for
/// the staircase pattern.
pub fn check_interval_lemmas(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("interval-lemmas", window);
    let n = window / 2;
    let iota = whole_iota_poset(window)?;
    let tw = whole_twisted_poset(window)?;
    let m = iota.len();

    // three-element rank-two intervals never share exactly two elements
    let mut small_intervals: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if iota.rank(j) == iota.rank(i) + 2 && iota.leq_idx(i, j) {
                let members: BTreeSet<usize> = (0..m)
                    .filter(|&k| iota.leq_idx(i, k) && iota.leq_idx(k, j))
                    .collect();
                if members.len() == 3 {
                    small_intervals.push(members);
                }
            }
        }
    }
    for (a, sa) in small_intervals.iter().enumerate() {
        for sb in &small_intervals[a + 1..] {
            if sa.intersection(sb).count() == 2 {
                report.failures.push(format!(
                    "three-element intervals overlap in exactly two elements: {sa:?} vs {sb:?}"
                ));
            }
        }
    }
    report.details.push(format!(
        "{} three-element rank-2 intervals",
        small_intervals.len()
    ));

    // covering exactly one element forces rank one or the exceptional top
    let exceptional = twisted::eval_sword(&SWord::new(vec![n.saturating_sub(1), n]), window)?;
    for i in 0..m {
        if iota.down_covers(i).len() == 1 && iota.rank(i) != 1 && iota.element(i) != &exceptional {
            report.failures.push(format!(
                "{} covers exactly one element at rho {}",
                iota.element(i),
                iota.rank(i)
            ));
        }
    }

    report.merge(check_braid_triple_covers(window)?);

    // distinct elements with the same lower covers have small rank
    for i in 0..m {
        for j in i + 1..m {
            if iota.down_covers(i) == iota.down_covers(j)
                && !(iota.rank(i) <= 2 && iota.rank(j) <= 2)
            {
                report.failures.push(format!(
                    "{} and {} share lower covers at rho {}",
                    iota.element(i),
                    iota.element(j),
                    iota.rank(i)
                ));
            }
        }
    }

    // outside iota, a twisted involution covers at most one iota element
    for i in 0..tw.len() {
        if twisted::is_twisted_identity(tw.element(i))? {
            continue;
        }
        let covered = tw
            .down_covers(i)
            .iter()
            .filter(|&&j| twisted::is_twisted_identity(tw.element(j)).unwrap())
            .count();
        if covered > 1 {
            report
                .failures
                .push(format!("{} covers {covered} iota elements", tw.element(i)));
        }
    }

    // staircase avoidance: tau = s̲_{i+1} s̲_i s̲_{i-1} is below w exactly
    // when w moves some of the first i-1 points past i+1
    let mut tau_checked = 0usize;
    for i in 2..=n.saturating_sub(2) {
        let tau = twisted::eval_sword(&SWord::new(vec![i + 1, i, i - 1]), window)?;
        for t in twisted::enumerate_twisted_involutions(window)?.iter() {
            tau_checked += 1;
            let avoided = !bruhat::leq(&tau, t.perm())?;
            let confined = (1..i).all(|k| t.perm().image(k) <= i + 1);
            if avoided != confined {
                report.failures.push(format!(
                    "staircase criterion fails at letter {i}, w = {}",
                    t.perm()
                ));
            }
        }
    }
    report
        .details
        .push(format!("{tau_checked} staircase avoidance cases"));
    Ok(report)
}

/// The two braid triples at an interior letter have exactly one common
/// cover in iota, the four-letter staircase.
pub fn check_braid_triple_covers(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("braid-triple-covers", window);
    let n = window / 2;
    let top = twisted::iota_max(window)?;
    let mut triples_checked = 0usize;
    for i in 2..=n.saturating_sub(2) {
        let a = twisted::eval_sword(&SWord::new(vec![i, i - 1, i]), window)?;
        let b = twisted::eval_sword(&SWord::new(vec![i, i + 1, i]), window)?;
        let expected = twisted::eval_sword(&SWord::new(vec![i, i - 1, i + 1, i]), window)?;
        let covers_b = interval::covers_in_iota(&b, &top)?;
        let common: Vec<Perm> = interval::covers_in_iota(&a, &top)?
            .into_iter()
            .filter(|c| covers_b.contains(c))
            .collect();
        triples_checked += 1;
        if common != vec![expected.clone()] {
            report.failures.push(format!(
                "common covers of the braid triples at letter {i}: {common:?}, expected {expected}"
            ));
        }
    }
    report
        .details
        .push(format!("{triples_checked} braid-triple letters checked"));
    Ok(report)
}

/// The special-partial-matching structure theory on every lower
/// interval: conjugation matchings validate, matchings restrict to
/// order ideals, fixed points are characterized by the cocovers, atoms
/// determine the matching, agreement with a conjugation on low ranks
/// forces equality, classification covers every enumerated matching,
/// and non-conjugation matchings are fixed-point-free with a commuting
/// descent.
pub fn check_spm_structure(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("spm-structure", window);
    let e = Perm::identity(window);
    let members = twisted::enumerate_iota(window)?;
    let posets: Vec<IntervalPoset> = members
        .iter()
        .map(|t| IntervalPoset::build_interval(&e, t.perm(), Ground::Iota))
        .collect::<Result<_>>()?;
    let poset_index = |x: &Perm| members.iter().position(|t| t.perm() == x).unwrap();

    let mut spm_total = 0usize;
    let mut non_conjugation_total = 0usize;
    for (wi, t) in members.iter().enumerate() {
        let w = t.perm();
        let poset = &posets[wi];

        // conjugation at every descent is a valid matching
        for s in w.right_descents() {
            if let Err(err) = spm::conjugation_spm(poset, s) {
                report
                    .failures
                    .push(format!("conjugation by {s} on [e, {w}]: {err}"));
            }
        }

        let matchings = spm::enumerate_spms(poset)?;
        spm_total += matchings.len();

        for (k, m) in matchings.iter().enumerate() {
            // restriction to the ideal below any down-matched element
            for (xi, x) in poset.elements().iter().enumerate() {
                if m.tag(xi) != MatchTag::Down {
                    continue;
                }
                let sub = &posets[poset_index(x)];
                let restricted: Result<Vec<usize>> = sub
                    .elements()
                    .iter()
                    .map(|y| {
                        let yi = poset.index_of(y).unwrap();
                        sub.index_of(poset.element(m.image(yi))).ok_or_else(|| {
                            Error::TheoremViolation(format!(
                                "restriction of matching #{k} leaves [e, {x}]"
                            ))
                        })
                    })
                    .collect();
                match restricted {
                    Ok(map) => {
                        if !spm::is_spm(sub, &map)? {
                            report.failures.push(format!(
                                "matching #{k} of [e, {w}] does not restrict to [e, {x}]"
                            ));
                        }
                    }
                    Err(err) => report.failures.push(err.to_string()),
                }
            }

            // fixed points exactly where no cocover is matched upward
            for i in 0..poset.len() {
                if poset.rank(i) < 2 {
                    continue;
                }
                let no_up_cocover = poset
                    .down_covers(i)
                    .iter()
                    .all(|&v| m.tag(v) != MatchTag::Up);
                if (m.tag(i) == MatchTag::Fixed) != no_up_cocover {
                    report.failures.push(format!(
                        "fixed-point criterion fails for matching #{k} of [e, {w}] at {}",
                        poset.element(i)
                    ));
                }
            }

            // agreement with a conjugation on ranks <= 1 forces equality
            for s in 1..window {
                let low_agree = (0..poset.len()).filter(|&i| poset.rank(i) <= 1).all(|i| {
                    let img = twisted::twisted_conjugate(poset.element(i), s).unwrap();
                    poset.index_of(&img) == Some(m.image(i))
                });
                if !low_agree {
                    continue;
                }
                let full_agree = (0..poset.len()).all(|i| {
                    let img = twisted::twisted_conjugate(poset.element(i), s).unwrap();
                    poset.index_of(&img) == Some(m.image(i))
                });
                if !full_agree {
                    report.failures.push(format!(
                        "matching #{k} of [e, {w}] agrees with conjugation by {s} \
                         on low ranks only"
                    ));
                }
            }

            // classification dichotomy, and the non-conjugation extras
            match spm::classify_spm(poset, m) {
                Ok(SpmClass::Conjugation { .. }) => {}
                Ok(SpmClass::NonConjugation { .. }) => {
                    non_conjugation_total += 1;
                    if !m.fixed_points().is_empty() {
                        report.failures.push(format!(
                            "non-conjugation matching #{k} of [e, {w}] has fixed points"
                        ));
                    }
                    if let Err(err) = spm::find_commuting_descent(poset, m) {
                        report.failures.push(format!(
                            "no commuting descent for matching #{k} of [e, {w}]: {err}"
                        ));
                    }
                }
                Err(err) => report
                    .failures
                    .push(format!("matching #{k} of [e, {w}]: {err}")),
            }
        }

        // atoms determine the matching
        for (a, ma) in matchings.iter().enumerate() {
            for mb in &matchings[a + 1..] {
                let agree_low = (0..poset.len())
                    .filter(|&i| poset.rank(i) <= 1)
                    .all(|i| ma.image(i) == mb.image(i));
                if agree_low {
                    report.failures.push(format!(
                        "two distinct matchings of [e, {w}] agree on ranks <= 1"
                    ));
                }
            }
        }
    }
    report.details.push(format!(
        "{spm_total} matchings over {} lower intervals, {non_conjugation_total} non-conjugation",
        members.len()
    ));
    Ok(report)
}

/// Aggregate structural suite: gradedness, the interval lemmas, and the
/// matching structure theory.
pub fn check_structure(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("structure", window);
    report.merge(check_graded(window)?);
    report.merge(check_interval_lemmas(window)?);
    report.merge(check_spm_structure(window)?);
    Ok(report)
}

/// The matching-driven recurrence against the descent recurrence over
/// every lower interval of the window.
pub fn check_spm_theorem(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("spm-theorem", window);
    let ctx = KlvContext::new(window)?;
    let mut spm_total = 0usize;
    let mut pairs_total = 0usize;
    for w in ctx.elements().to_vec() {
        let sub = ctx.verify_spm_theorem(&w)?;
        spm_total += sub.spm_count;
        pairs_total += sub.pairs_checked;
        report.failures.extend(sub.mismatches);
    }
    report.details.push(format!(
        "{spm_total} matchings, {pairs_total} polynomial pairs compared"
    ));
    Ok(report)
}

/// Combinatorial invariance of the Q-, R-, and P-tables along every
/// isomorphism of lower intervals.
pub fn check_invariance(window: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("invariance", window);
    let inv = klv::verify_invariance(window)?;
    let iso_total: usize = inv.classes.iter().map(|c| c.isomorphism_count).sum();
    report.details.push(format!(
        "{} classes over {} intervals, {} isomorphisms, {} polynomial comparisons",
        inv.classes.len(),
        inv.classes.iter().map(|c| c.members.len()).sum::<usize>(),
        iso_total,
        inv.poly_comparisons
    ));
    for class in &inv.classes {
        report.details.push(format!(
            "  class rep [e, {}]: {} members, {} isomorphisms",
            class.representative,
            class.members.len(),
            class.isomorphism_count
        ));
    }
    report.failures.extend(inv.mismatches);
    Ok(report)
}

/// The free-module identity for every `stride`-th top element in stable
/// order (`stride = 1` is exhaustive).
pub fn check_vogan(window: usize, stride: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("vogan", window);
    let ctx = KlvContext::new(window)?;
    let stride = stride.max(1);
    let mut tops = 0usize;
    let mut pairs = 0usize;
    for w in ctx
        .elements()
        .iter()
        .step_by(stride)
        .cloned()
        .collect::<Vec<_>>()
    {
        let sub = ctx.verify_vogan_identity(&w)?;
        tops += 1;
        pairs += sub.pairs_checked;
        report.failures.extend(sub.failures);
    }
    report
        .details
        .push(format!("{tops} top elements, {pairs} pairs expanded"));
    Ok(report)
}
