//! Special partial matchings of lower intervals in the Bruhat order on
//! twisted identities.
//!
//! A special partial matching of a finite poset with maximum `1̂` is an
//! involutive self-map `M` such that `M(1̂) ⋖ 1̂`, every element moves by
//! at most one cover step or stays fixed, and `x ⋖ y` with `M(x) != y`
//! forces `M(x) < M(y)`. Twisted conjugation by a right descent of the
//! top element always yields one; the enumeration below searches for all
//! of them by generic backtracking so that the structure theory can be
//! cross-validated against it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bruhat;
use crate::error::{Error, Result};
use crate::interval::{Ground, IntervalPoset};
use crate::perm::Perm;
use crate::twisted::{self, SWord};

/// How an element moves under a matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatchTag {
    Down,
    Fixed,
    Up,
}

/// A validated special partial matching over a specific [`IntervalPoset`].
///
/// Stores the involutive index mapping together with per-element tags;
/// two matchings are equal exactly when their mappings are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spm {
    map: Vec<usize>,
    tags: Vec<MatchTag>,
}

/// Outcome of matching an SPM against the two structural templates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpmClass {
    /// Pointwise equal to twisted conjugation by every listed generator.
    Conjugation { witnesses: Vec<usize> },
    /// Not a conjugation; `M(e)` is the atom with first moved point
    /// `atom_letter`, and `condition_set` tells which of the two
    /// template variants holds.
    NonConjugation {
        atom_letter: usize,
        condition_set: u8,
    },
}

fn check_map_shape(poset: &IntervalPoset, map: &[usize]) -> Result<()> {
    let m = poset.len();
    if map.len() != m {
        return Err(Error::MatchingSizeMismatch {
            got: map.len(),
            expected: m,
        });
    }
    for &j in map {
        if j >= m {
            return Err(Error::MatchingImageOutOfRange { image: j, size: m });
        }
    }
    for (i, &j) in map.iter().enumerate() {
        if map[j] != i {
            return Err(Error::MatchingNotInvolutive(i));
        }
    }
    Ok(())
}

/// Checks the special partial matching axioms for a total mapping.
///
/// Malformed input (wrong size, out-of-range image, non-involutive map)
/// is reported as an error, distinct from a well-formed mapping that
/// simply fails the axioms.
pub fn is_spm(poset: &IntervalPoset, map: &[usize]) -> Result<bool> {
    check_map_shape(poset, map)?;
    let top = poset.top();
    if !poset.is_cover(map[top], top) {
        return Ok(false);
    }
    for (i, &j) in map.iter().enumerate() {
        if i != j && !poset.is_cover(i, j) && !poset.is_cover(j, i) {
            return Ok(false);
        }
    }
    for i in 0..poset.len() {
        for &j in poset.up_covers(i) {
            if map[i] != j && !(map[i] != map[j] && poset.leq_idx(map[i], map[j])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl Spm {
    /// Wraps a mapping after validating the axioms.
    pub fn new(poset: &IntervalPoset, map: Vec<usize>) -> Result<Spm> {
        if !is_spm(poset, &map)? {
            return Err(Error::NotAnSpm(
                "mapping fails the special partial matching axioms".into(),
            ));
        }
        Ok(Spm::from_valid_map(poset, map))
    }

    fn from_valid_map(poset: &IntervalPoset, map: Vec<usize>) -> Spm {
        let tags = map
            .iter()
            .enumerate()
            .map(|(i, &j)| match poset.rank(j).cmp(&poset.rank(i)) {
                std::cmp::Ordering::Less => MatchTag::Down,
                std::cmp::Ordering::Equal => MatchTag::Fixed,
                std::cmp::Ordering::Greater => MatchTag::Up,
            })
            .collect();
        Spm { map, tags }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn tag(&self, i: usize) -> MatchTag {
        self.tags[i]
    }

    /// Matched pairs `(i, j)` with `i < j`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i, j))
            .collect()
    }

    /// Fixed points, sorted.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j)
            .map(|(i, _)| i)
            .collect()
    }
}

fn require_lower_iota(poset: &IntervalPoset) -> Result<()> {
    if poset.ground() != Ground::Iota || !poset.element(poset.bottom()).is_identity() {
        return Err(Error::NotALowerIotaInterval);
    }
    Ok(())
}

/// The twisted conjugation matching `x -> x ⋊ s_i` on a lower interval,
/// for `s_i` a right descent of the top element.
pub fn conjugation_spm(poset: &IntervalPoset, i: usize) -> Result<Spm> {
    require_lower_iota(poset)?;
    let w = poset.element(poset.top());
    if !w.is_right_descent(i) {
        return Err(Error::NotADescent(i, w.clone()));
    }
    let mut map = Vec::with_capacity(poset.len());
    for x in poset.elements() {
        let y = twisted::twisted_conjugate(x, i)?;
        let yi = match poset.index_of(&y) {
            Some(yi) => yi,
            None => {
                return Err(Error::TheoremViolation(format!(
                    "conjugation by s_{i} leaves the interval at {x}"
                )))
            }
        };
        map.push(yi);
    }
    Spm::new(poset, map)
}

/// All special partial matchings of a lower interval, enumerated by
/// rank-descending backtracking with incremental pruning of the fourth
/// axiom, deduplicated on the mapping.
pub fn enumerate_spms(poset: &IntervalPoset) -> Result<Vec<Spm>> {
    require_lower_iota(poset)?;
    let m = poset.len();
    if m == 1 {
        // a singleton has no matching: the top cannot move down
        return Ok(Vec::new());
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(poset.rank(i)), i));

    struct Search<'a> {
        poset: &'a IntervalPoset,
        order: Vec<usize>,
        assigned: Vec<Option<usize>>,
        seen: BTreeSet<Vec<usize>>,
        out: Vec<Spm>,
    }

    impl Search<'_> {
        /// Fourth axiom on the edge `a ⋖ b`, both endpoints decided.
        fn edge_ok(&self, a: usize, b: usize) -> bool {
            let ma = self.assigned[a].unwrap();
            let mb = self.assigned[b].unwrap();
            ma == b || (ma != mb && self.poset.leq_idx(ma, mb))
        }

        fn edges_ok_around(&self, x: usize) -> bool {
            self.poset
                .up_covers(x)
                .iter()
                .filter(|&&y| self.assigned[y].is_some())
                .all(|&y| self.edge_ok(x, y))
                && self
                    .poset
                    .down_covers(x)
                    .iter()
                    .filter(|&&v| self.assigned[v].is_some())
                    .all(|&v| self.edge_ok(v, x))
        }

        fn rec(&mut self, mut pos: usize) {
            while pos < self.order.len() && self.assigned[self.order[pos]].is_some() {
                pos += 1;
            }
            if pos == self.order.len() {
                let map: Vec<usize> = self.assigned.iter().map(|v| v.unwrap()).collect();
                if self.seen.insert(map.clone()) {
                    debug_assert!(is_spm(self.poset, &map).unwrap());
                    self.out.push(Spm::from_valid_map(self.poset, map));
                }
                return;
            }
            let x = self.order[pos];
            if x != self.poset.top() {
                self.assigned[x] = Some(x);
                if self.edges_ok_around(x) {
                    self.rec(pos + 1);
                }
                self.assigned[x] = None;
            }
            for &z in self.poset.down_covers(x) {
                if self.assigned[z].is_some() {
                    continue;
                }
                self.assigned[x] = Some(z);
                self.assigned[z] = Some(x);
                if self.edges_ok_around(x) && self.edges_ok_around(z) {
                    self.rec(pos + 1);
                }
                self.assigned[x] = None;
                self.assigned[z] = None;
            }
        }
    }

    let mut search = Search {
        poset,
        order,
        assigned: vec![None; m],
        seen: BTreeSet::new(),
        out: Vec::new(),
    };
    search.rec(0);
    Ok(search.out)
}

fn atom_element(window: usize, letter: usize) -> Result<Perm> {
    twisted::eval_sword(&SWord::new(vec![letter]), window)
}

/// Decides whether a matching is a conjugation matching (collecting all
/// witnessing generators) or a non-conjugation one matching the
/// structural template for `M(e)` and the atoms. A matching fitting
/// neither is a theorem violation.
pub fn classify_spm(poset: &IntervalPoset, spm: &Spm) -> Result<SpmClass> {
    require_lower_iota(poset)?;
    let window = poset.window();

    let mut witnesses = Vec::new();
    'gens: for i in 1..window {
        for (xi, x) in poset.elements().iter().enumerate() {
            let y = twisted::twisted_conjugate(x, i)?;
            if poset.index_of(&y) != Some(spm.image(xi)) {
                continue 'gens;
            }
        }
        witnesses.push(i);
    }
    if !witnesses.is_empty() {
        return Ok(SpmClass::Conjugation { witnesses });
    }

    let n = window / 2;
    let w = poset.element(poset.top());
    let me_idx = spm.image(poset.bottom());
    let me = poset.element(me_idx);
    if poset.rank(me_idx) != 1 {
        return Err(Error::TheoremViolation(format!(
            "non-conjugation matching sends e to {me}, which is not an atom"
        )));
    }
    let i = (1..=window)
        .find(|&k| me.image(k) != k)
        .expect("atoms are not the identity");
    if !(2 <= i && i + 2 <= n) {
        return Err(Error::TheoremViolation(format!(
            "non-conjugation matching has M(e) at letter {i}, outside 2..=n-2"
        )));
    }

    let image_of = |letter: usize| -> Result<Option<usize>> {
        let atom = atom_element(window, letter)?;
        Ok(poset.index_of(&atom).map(|idx| spm.image(idx)))
    };
    let elem = |letters: &[usize]| -> Result<Option<usize>> {
        let x = twisted::eval_sword(&SWord::new(letters.to_vec()), window)?;
        Ok(poset.index_of(&x))
    };

    let lower_img = image_of(i - 1)?;
    let upper_img = image_of(i + 1)?;
    let cond1 = lower_img.is_some()
        && lower_img == elem(&[i - 1, i])?
        && upper_img.is_some()
        && upper_img == elem(&[i, i + 1])?
        && !bruhat::leq(
            &twisted::eval_sword(&SWord::new(vec![i + 1, i, i - 1]), window)?,
            w,
        )?;
    let cond2 = lower_img.is_some()
        && lower_img == elem(&[i, i - 1])?
        && upper_img.is_some()
        && upper_img == elem(&[i + 1, i])?
        && !bruhat::leq(
            &twisted::eval_sword(&SWord::new(vec![i - 1, i, i + 1]), window)?,
            w,
        )?;

    match (cond1, cond2) {
        (true, _) => Ok(SpmClass::NonConjugation {
            atom_letter: i,
            condition_set: 1,
        }),
        (_, true) => Ok(SpmClass::NonConjugation {
            atom_letter: i,
            condition_set: 2,
        }),
        _ => Err(Error::TheoremViolation(format!(
            "non-conjugation matching on [e, {w}] fits neither template condition set"
        ))),
    }
}

/// For a non-conjugation matching, finds a right descent `s` of the top
/// whose conjugation moves every element, differs from `M` at the top,
/// and commutes with `M` pointwise.
pub fn find_commuting_descent(poset: &IntervalPoset, spm: &Spm) -> Result<usize> {
    if matches!(classify_spm(poset, spm)?, SpmClass::Conjugation { .. }) {
        return Err(Error::ConjugationSpmGiven);
    }
    let top = poset.top();
    let w = poset.element(top);
    's_loop: for s in w.right_descents() {
        let ws = twisted::twisted_conjugate(w, s)?;
        if poset.index_of(&ws) == Some(spm.image(top)) {
            continue;
        }
        for (ui, u) in poset.elements().iter().enumerate() {
            let us = twisted::twisted_conjugate(u, s)?;
            if us == *u {
                continue 's_loop;
            }
            let Some(us_idx) = poset.index_of(&us) else {
                continue 's_loop;
            };
            let mu_conj = twisted::twisted_conjugate(poset.element(spm.image(ui)), s)?;
            if poset.element(spm.image(us_idx)) != &mu_conj {
                continue 's_loop;
            }
        }
        return Ok(s);
    }
    Err(Error::TheoremViolation(format!(
        "no commuting descent exists for a non-conjugation matching on [e, {w}]"
    )))
}

#[derive(Serialize)]
struct IntervalRef {
    u: String,
    w: String,
}

#[derive(Serialize)]
struct SpmJson {
    interval: IntervalRef,
    pairs: Vec<[usize; 2]>,
    fixed: Vec<usize>,
    class: String,
    witnesses: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma_letter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition_set: Option<u8>,
}

/// JSON rendering of a matching together with its classification.
pub fn spm_to_json(poset: &IntervalPoset, spm: &Spm) -> Result<String> {
    let class = classify_spm(poset, spm)?;
    let (class_name, witnesses, lemma_letter, condition_set) = match &class {
        SpmClass::Conjugation { witnesses } => {
            ("conjugation".to_string(), witnesses.clone(), None, None)
        }
        SpmClass::NonConjugation {
            atom_letter,
            condition_set,
        } => (
            "non_conjugation".to_string(),
            Vec::new(),
            Some(*atom_letter),
            Some(*condition_set),
        ),
    };
    let doc = SpmJson {
        interval: IntervalRef {
            u: poset.element(poset.bottom()).to_string(),
            w: poset.element(poset.top()).to_string(),
        },
        pairs: spm.pairs().iter().map(|&(i, j)| [i, j]).collect(),
        fixed: spm.fixed_points(),
        class: class_name,
        witnesses,
        lemma_letter,
        condition_set,
    };
    Ok(serde_json::to_string(&doc).expect("matching serialization cannot fail"))
}
