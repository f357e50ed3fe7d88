//! Q-, R-, and Kazhdan-Lusztig-Vogan P-polynomials indexed by pairs of
//! twisted identities, plus the classical Kazhdan-Lusztig polynomials of
//! `S_n` used as an independent oracle on the `S_n`-like subset.
//!
//! `Q_{u,w}` satisfies a three-case recurrence driven by twisted
//! conjugation at any right descent of `w`; the same three cases applied
//! to an arbitrary special partial matching of `[e, w]` must produce the
//! same polynomials, and [`KlvContext::verify_spm_theorem`] checks
//! exactly that. `R_{u,w}(q) = (-q)^{rho(w)-rho(u)} Q_{u,w}(1/q)`, and
//! the P-polynomials are determined by `P_{x,x} = 1`, a degree bound,
//! and the triangular identity
//! `q^d P_{u,w}(1/q) = sum_v Q_{u,v} P_{v,w}` over `v` in `[u, w]`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::bitmat::BitMatrix;
use crate::bruhat;
use crate::error::{Error, Result};
use crate::interval::{Ground, IntervalPoset};
use crate::perm::Perm;
use crate::poly::{IntPoly, LaurentPoly};
use crate::spm::{self, MatchTag, Spm};
use crate::twisted;

/// Which polynomial family a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    Q,
    R,
    P,
}

impl PolyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PolyKind::Q => "q",
            PolyKind::R => "r",
            PolyKind::P => "p",
        }
    }
}

/// Shared computation context for one window: the enumerated twisted
/// identities, their comparability table, and memoized polynomial
/// tables. Memo tables are filled lazily and are safe to share across
/// threads.
pub struct KlvContext {
    window: usize,
    elements: Vec<Perm>,
    ranks: Vec<usize>,
    index: HashMap<Perm, usize>,
    leq: BitMatrix,
    q_memo: Mutex<HashMap<(usize, usize), IntPoly>>,
    p_memo: Mutex<HashMap<(usize, usize), IntPoly>>,
}

impl KlvContext {
    pub fn new(window: usize) -> Result<KlvContext> {
        let members = twisted::enumerate_iota(window)?;
        let elements: Vec<Perm> = members.iter().map(|t| t.perm().clone()).collect();
        let ranks: Vec<usize> = members.iter().map(|t| t.rank()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let m = elements.len();
        let mut leq = BitMatrix::new(m);
        for i in 0..m {
            for j in 0..m {
                if ranks[i] <= ranks[j] && bruhat::leq(&elements[i], &elements[j])? {
                    leq.set(i, j);
                }
            }
        }
        Ok(KlvContext {
            window,
            elements,
            ranks,
            index,
            leq,
            q_memo: Mutex::new(HashMap::new()),
            p_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// The twisted identities in stable lexicographic order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn rank_of_index(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn index_of(&self, x: &Perm) -> Result<usize> {
        if x.window() != self.window {
            return Err(Error::WindowMismatch(x.window(), self.window));
        }
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| Error::NotTwistedIdentity(x.clone()))
    }

    fn conj_index(&self, i: usize, s: usize) -> usize {
        let y = twisted::twisted_conjugate(&self.elements[i], s)
            .expect("generator index validated by caller");
        self.index[&y]
    }

    fn q_poly_idx(&self, ui: usize, wi: usize) -> IntPoly {
        if !self.leq.get(ui, wi) {
            return IntPoly::zero();
        }
        if ui == wi {
            return IntPoly::one();
        }
        if let Some(hit) = self.q_memo.lock().unwrap().get(&(ui, wi)) {
            return hit.clone();
        }
        let s = self.elements[wi].right_descents()[0];
        let result = self.q_step(ui, wi, s);
        self.q_memo.lock().unwrap().insert((ui, wi), result.clone());
        result
    }

    /// One application of the descent recurrence at generator `s`.
    fn q_step(&self, ui: usize, wi: usize, s: usize) -> IntPoly {
        let wsi = self.conj_index(wi, s);
        let usi = self.conj_index(ui, s);
        match self.ranks[usi].cmp(&self.ranks[ui]) {
            std::cmp::Ordering::Less => self.q_poly_idx(usi, wsi),
            std::cmp::Ordering::Greater => IntPoly::q()
                .mul(&self.q_poly_idx(usi, wsi))
                .add(&IntPoly::q_minus_one().mul(&self.q_poly_idx(ui, wsi))),
            std::cmp::Ordering::Equal => IntPoly::q().mul(&self.q_poly_idx(ui, wsi)),
        }
    }

    /// `Q_{u,w}` by the descent recurrence; zero when `u` is not below
    /// `w`, one on the diagonal.
    pub fn q_poly(&self, u: &Perm, w: &Perm) -> Result<IntPoly> {
        Ok(self.q_poly_idx(self.index_of(u)?, self.index_of(w)?))
    }

    /// `Q_{u,w}` with the top-level recurrence step taken at the given
    /// right descent of `w`; inner steps use the default choice.
    pub fn q_poly_with_top_descent(&self, u: &Perm, w: &Perm, s: usize) -> Result<IntPoly> {
        let ui = self.index_of(u)?;
        let wi = self.index_of(w)?;
        if !w.is_right_descent(s) {
            return Err(Error::NotADescent(s, w.clone()));
        }
        if !self.leq.get(ui, wi) {
            return Ok(IntPoly::zero());
        }
        if ui == wi {
            return Ok(IntPoly::one());
        }
        Ok(self.q_step(ui, wi, s))
    }

    /// One application of the three-case split driven by a special
    /// partial matching of `[e, w]`, with inner values from the descent
    /// recurrence.
    pub fn q_poly_via_spm(&self, poset: &IntervalPoset, m: &Spm, u: &Perm) -> Result<IntPoly> {
        if poset.ground() != Ground::Iota || !poset.element(poset.bottom()).is_identity() {
            return Err(Error::NotALowerIotaInterval);
        }
        if !spm::is_spm(poset, m.map())? {
            return Err(Error::NotAnSpm(
                "mapping is not a special partial matching of the interval".into(),
            ));
        }
        let w = poset.element(poset.top());
        let pu = poset.index_of(u).ok_or_else(|| Error::NotInInterval {
            element: u.clone(),
            lower: poset.element(poset.bottom()).clone(),
            upper: w.clone(),
        })?;
        let gu = self.index_of(u)?;
        let gmu = self.index_of(poset.element(m.image(pu)))?;
        let gmw = self.index_of(poset.element(m.image(poset.top())))?;
        Ok(match m.tag(pu) {
            MatchTag::Down => self.q_poly_idx(gmu, gmw),
            MatchTag::Up => IntPoly::q()
                .mul(&self.q_poly_idx(gmu, gmw))
                .add(&IntPoly::q_minus_one().mul(&self.q_poly_idx(gu, gmw))),
            MatchTag::Fixed => IntPoly::q().mul(&self.q_poly_idx(gu, gmw)),
        })
    }

    fn r_poly_idx(&self, ui: usize, wi: usize) -> IntPoly {
        let q = self.q_poly_idx(ui, wi);
        if q.is_zero() {
            return IntPoly::zero();
        }
        let d = self.ranks[wi] - self.ranks[ui];
        let sign = if d.is_multiple_of(2) { 1 } else { -1 };
        q.reverse_scaled(d as i64)
            .scale(sign)
            .to_int_poly()
            .expect("R-polynomials have no negative powers")
    }

    /// `R_{u,w}(q) = (-q)^{rho(w)-rho(u)} Q_{u,w}(1/q)`.
    pub fn r_poly(&self, u: &Perm, w: &Perm) -> Result<IntPoly> {
        Ok(self.r_poly_idx(self.index_of(u)?, self.index_of(w)?))
    }

    fn p_poly_idx(&self, ui: usize, wi: usize) -> IntPoly {
        if !self.leq.get(ui, wi) {
            return IntPoly::zero();
        }
        if ui == wi {
            return IntPoly::one();
        }
        if let Some(hit) = self.p_memo.lock().unwrap().get(&(ui, wi)) {
            return hit.clone();
        }
        let d = self.ranks[wi] - self.ranks[ui];
        let mut f = IntPoly::zero();
        for v in 0..self.elements.len() {
            if v != ui && self.leq.get(ui, v) && self.leq.get(v, wi) {
                f = f.add(&self.q_poly_idx(ui, v).mul(&self.p_poly_idx(v, wi)));
            }
        }
        let p = f.truncate_to_degree((d as i64 - 1) / 2).neg();
        // the defining identity must hold exactly for the computed entry
        assert_eq!(
            p.reverse_scaled(d as i64),
            p.add(&f).to_laurent(),
            "triangular identity failed for P at ({}, {})",
            self.elements[ui],
            self.elements[wi],
        );
        self.p_memo.lock().unwrap().insert((ui, wi), p.clone());
        p
    }

    /// The Kazhdan-Lusztig-Vogan polynomial `P_{u,w}`.
    pub fn p_poly(&self, u: &Perm, w: &Perm) -> Result<IntPoly> {
        Ok(self.p_poly_idx(self.index_of(u)?, self.index_of(w)?))
    }

    pub fn poly(&self, kind: PolyKind, u: &Perm, w: &Perm) -> Result<IntPoly> {
        match kind {
            PolyKind::Q => self.q_poly(u, w),
            PolyKind::R => self.r_poly(u, w),
            PolyKind::P => self.p_poly(u, w),
        }
    }

    /// The full column of a polynomial table below a fixed `w`: one row
    /// per `v <= w`, in stable element order.
    pub fn table_for(&self, kind: PolyKind, w: &Perm) -> Result<PolyTable> {
        let wi = self.index_of(w)?;
        let mut rows = Vec::new();
        for v in 0..self.elements.len() {
            if self.leq.get(v, wi) {
                rows.push(TableRow {
                    u_index: v,
                    u: self.elements[v].clone(),
                    poly: match kind {
                        PolyKind::Q => self.q_poly_idx(v, wi),
                        PolyKind::R => self.r_poly_idx(v, wi),
                        PolyKind::P => self.p_poly_idx(v, wi),
                    },
                });
            }
        }
        Ok(PolyTable {
            window: self.window,
            kind,
            w: w.clone(),
            rows,
        })
    }

    /// Checks the defining free-module identity for every `u` below `w`:
    /// `q^{-rho(w)} P_{u,w}(q)` must equal the alternating sum of
    /// `q^{-rho(v)} P_{v,w}(1/q) R_{u,v}(q)` over `v` in `[u, w]`.
    pub fn verify_vogan_identity(&self, w: &Perm) -> Result<VoganReport> {
        let wi = self.index_of(w)?;
        let below: Vec<usize> = (0..self.elements.len())
            .filter(|&v| self.leq.get(v, wi))
            .collect();
        let mut pairs_checked = 0usize;
        let mut failures = Vec::new();
        for &ui in &below {
            let lhs = self
                .p_poly_idx(ui, wi)
                .to_laurent()
                .mul_q_power(-(self.ranks[wi] as i64));
            let mut rhs = LaurentPoly::zero();
            for &vi in &below {
                if !self.leq.get(ui, vi) {
                    continue;
                }
                pairs_checked += 1;
                let sign = if (self.ranks[ui] + self.ranks[vi]).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                let term = self
                    .p_poly_idx(vi, wi)
                    .substitute_inverse()
                    .mul(&self.r_poly_idx(ui, vi).to_laurent())
                    .mul_q_power(-(self.ranks[vi] as i64))
                    .scale(sign);
                rhs = rhs.add(&term);
            }
            if lhs != rhs {
                failures.push(format!(
                    "coefficient of u = {} below w = {}: lhs {} vs rhs {}",
                    self.elements[ui], w, lhs, rhs
                ));
            }
        }
        Ok(VoganReport {
            w: w.clone(),
            pairs_checked,
            failures,
        })
    }

    /// Runs the matching-driven recurrence against the descent
    /// recurrence for every enumerated matching of `[e, w]` and every
    /// `u` in the interval.
    pub fn verify_spm_theorem(&self, w: &Perm) -> Result<SpmTheoremReport> {
        let e = Perm::identity(self.window);
        let poset = IntervalPoset::build_interval(&e, w, Ground::Iota)?;
        let matchings = spm::enumerate_spms(&poset)?;
        let mut pairs_checked = 0usize;
        let mut mismatches = Vec::new();
        for (k, m) in matchings.iter().enumerate() {
            for u in poset.elements() {
                pairs_checked += 1;
                let via = self.q_poly_via_spm(&poset, m, u)?;
                let direct = self.q_poly(u, w)?;
                if via != direct {
                    mismatches.push(format!(
                        "matching #{k} of [e, {w}] at u = {u}: {via} vs {direct}"
                    ));
                }
            }
        }
        Ok(SpmTheoremReport {
            w: w.clone(),
            spm_count: matchings.len(),
            pairs_checked,
            mismatches,
        })
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub u_index: usize,
    pub u: Perm,
    pub poly: IntPoly,
}

/// One column of a polynomial family below a fixed top element.
#[derive(Debug, Clone)]
pub struct PolyTable {
    pub window: usize,
    pub kind: PolyKind,
    pub w: Perm,
    pub rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct TableRowJson {
    u_index: usize,
    u: String,
    poly: String,
}

#[derive(Serialize)]
struct TableJson {
    window: usize,
    kind: String,
    w: String,
    rows: Vec<TableRowJson>,
}

impl PolyTable {
    /// CSV rows `u,w,kind,polynomial`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,w,kind,polynomial\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.u,
                self.w,
                self.kind.as_str(),
                row.poly
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = TableJson {
            window: self.window,
            kind: self.kind.as_str().to_string(),
            w: self.w.to_string(),
            rows: self
                .rows
                .iter()
                .map(|r| TableRowJson {
                    u_index: r.u_index,
                    u: r.u.to_string(),
                    poly: r.poly.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serialization cannot fail")
    }
}

#[derive(Debug, Clone)]
pub struct VoganReport {
    pub w: Perm,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl VoganReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SpmTheoremReport {
    pub w: Perm,
    pub spm_count: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl SpmTheoremReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Summary of one isomorphism class of lower intervals.
#[derive(Debug, Clone)]
pub struct IntervalClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
    pub isomorphism_count: usize,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub window: usize,
    pub classes: Vec<IntervalClass>,
    pub poly_comparisons: usize,
    pub mismatches: Vec<String>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

const ISO_ENUMERATION_CAP: usize = 1_000_000;

/// Partitions the lower intervals `[e, w]` into isomorphism classes and
/// transports the Q-, R-, and P-tables along every discovered
/// isomorphism from each class representative, reporting mismatches.
pub fn verify_invariance(window: usize) -> Result<InvarianceReport> {
    let ctx = KlvContext::new(window)?;
    let e = Perm::identity(window);
    let posets: Vec<IntervalPoset> = ctx
        .elements()
        .iter()
        .map(|w| IntervalPoset::build_interval(&e, w, Ground::Iota))
        .collect::<Result<_>>()?;

    // group by poset isomorphism against class representatives
    let mut class_reps: Vec<usize> = Vec::new();
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    for (wi, poset) in posets.iter().enumerate() {
        let found = class_reps
            .iter()
            .position(|&rep| posets[rep].find_isomorphism(poset).is_some());
        match found {
            Some(c) => class_members[c].push(wi),
            None => {
                class_reps.push(wi);
                class_members.push(vec![wi]);
            }
        }
    }

    let mut classes = Vec::new();
    let mut poly_comparisons = 0usize;
    let mut mismatches = Vec::new();
    for (c, &rep) in class_reps.iter().enumerate() {
        let rep_poset = &posets[rep];
        let rep_w = &ctx.elements()[rep];
        let mut iso_count = 0usize;
        for &member in &class_members[c] {
            let member_poset = &posets[member];
            let member_w = &ctx.elements()[member];
            let isos = rep_poset.all_isomorphisms(member_poset, ISO_ENUMERATION_CAP)?;
            iso_count += isos.len();
            for f in &isos {
                for (vi, v) in rep_poset.elements().iter().enumerate() {
                    let fv = member_poset.element(f[vi]);
                    for kind in [PolyKind::Q, PolyKind::R, PolyKind::P] {
                        poly_comparisons += 1;
                        let lhs = ctx.poly(kind, v, rep_w)?;
                        let rhs = ctx.poly(kind, fv, member_w)?;
                        if lhs != rhs {
                            mismatches.push(format!(
                                "{} transport [e, {rep_w}] -> [e, {member_w}] at {v} -> {fv}: \
                                 {lhs} vs {rhs}",
                                kind.as_str()
                            ));
                        }
                    }
                }
            }
        }
        classes.push(IntervalClass {
            representative: rep_w.clone(),
            members: class_members[c]
                .iter()
                .map(|&wi| ctx.elements()[wi].clone())
                .collect(),
            isomorphism_count: iso_count,
        });
    }
    Ok(InvarianceReport {
        window,
        classes,
        poly_comparisons,
        mismatches,
    })
}

/// Classical Kazhdan-Lusztig R- and P-polynomials of `S_n`, computed
/// eagerly for a whole symmetric group. Implemented independently of
/// the twisted-identity recurrences: ordinary length, descents, and
/// right multiplication drive everything.
pub struct OrdinaryKl {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    leq: BitMatrix,
    r_table: Vec<Vec<IntPoly>>,
    p_table: Vec<Vec<IntPoly>>,
}

impl OrdinaryKl {
    pub fn new(n: usize) -> Result<OrdinaryKl> {
        let elements = Perm::enumerate_all(n);
        let m = elements.len();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut leq = BitMatrix::new(m);
        for i in 0..m {
            for j in 0..m {
                if bruhat::leq(&elements[i], &elements[j])? {
                    leq.set(i, j);
                }
            }
        }

        // R by increasing length of the upper index
        let mut by_length: Vec<usize> = (0..m).collect();
        by_length.sort_by_key(|&i| elements[i].length());
        let mut r_table = vec![vec![IntPoly::zero(); m]; m];
        for &yi in &by_length {
            let y = &elements[yi];
            if y.is_identity() {
                r_table[yi][yi] = IntPoly::one();
                continue;
            }
            let s = y.right_descents()[0];
            let ysi = index[&y.mul_gen_right(s)];
            for xi in 0..m {
                if !leq.get(xi, yi) {
                    continue;
                }
                if xi == yi {
                    r_table[xi][yi] = IntPoly::one();
                    continue;
                }
                let x = &elements[xi];
                let xsi = index[&x.mul_gen_right(s)];
                r_table[xi][yi] = if x.is_right_descent(s) {
                    r_table[xsi][ysi].clone()
                } else {
                    IntPoly::q()
                        .mul(&r_table[xsi][ysi])
                        .add(&IntPoly::q_minus_one().mul(&r_table[xi][ysi]))
                };
            }
        }

        // P by decreasing length of the lower index within each column
        let mut p_table = vec![vec![IntPoly::zero(); m]; m];
        for &yi in &by_length {
            let mut below: Vec<usize> = (0..m).filter(|&xi| leq.get(xi, yi)).collect();
            below.sort_by_key(|&xi| std::cmp::Reverse(elements[xi].length()));
            for &xi in &below {
                if xi == yi {
                    p_table[xi][yi] = IntPoly::one();
                    continue;
                }
                let d = elements[yi].length() - elements[xi].length();
                let mut f = IntPoly::zero();
                for &zi in &below {
                    if zi != xi && leq.get(xi, zi) {
                        f = f.add(&r_table[xi][zi].mul(&p_table[zi][yi]));
                    }
                }
                let p = f.truncate_to_degree((d as i64 - 1) / 2).neg();
                assert_eq!(
                    p.reverse_scaled(d as i64),
                    p.add(&f).to_laurent(),
                    "triangular identity failed for ordinary P at ({}, {})",
                    elements[xi],
                    elements[yi],
                );
                p_table[xi][yi] = p;
            }
        }

        Ok(OrdinaryKl {
            elements,
            index,
            leq,
            r_table,
            p_table,
        })
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    fn pair(&self, x: &Perm, y: &Perm) -> Result<(usize, usize)> {
        let xi = *self
            .index
            .get(x)
            .ok_or_else(|| Error::WindowMismatch(x.window(), self.elements[0].window()))?;
        let yi = *self
            .index
            .get(y)
            .ok_or_else(|| Error::WindowMismatch(y.window(), self.elements[0].window()))?;
        Ok((xi, yi))
    }

    pub fn r_poly(&self, x: &Perm, y: &Perm) -> Result<IntPoly> {
        let (xi, yi) = self.pair(x, y)?;
        Ok(self.r_table[xi][yi].clone())
    }

    pub fn kl_poly(&self, x: &Perm, y: &Perm) -> Result<IntPoly> {
        let (xi, yi) = self.pair(x, y)?;
        Ok(self.p_table[xi][yi].clone())
    }

    pub fn leq(&self, x: &Perm, y: &Perm) -> Result<bool> {
        let (xi, yi) = self.pair(x, y)?;
        Ok(self.leq.get(xi, yi))
    }
}

/// Classical `R_{x,y}` of `S_n` for a single pair.
pub fn ordinary_r_poly(x: &Perm, y: &Perm) -> Result<IntPoly> {
    OrdinaryKl::new(x.window())?.r_poly(x, y)
}

/// Classical Kazhdan-Lusztig `P_{x,y}` of `S_n` for a single pair.
pub fn ordinary_kl_poly(x: &Perm, y: &Perm) -> Result<IntPoly> {
    OrdinaryKl::new(x.window())?.kl_poly(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn q_fixtures_window_4() {
        let ctx = KlvContext::new(4).unwrap();
        let e = Perm::identity(4);
        let a = p("2 1 4 3");
        let top = p("3 4 1 2");
        assert_eq!(ctx.q_poly(&e, &a).unwrap(), poly(&[-1, 1]));
        assert_eq!(ctx.q_poly(&e, &top).unwrap(), poly(&[0, -1, 1]));
        assert_eq!(ctx.q_poly(&a, &top).unwrap(), poly(&[-1, 1]));
        // diagonal and incomparable entries
        assert_eq!(ctx.q_poly(&top, &top).unwrap(), IntPoly::one());
        assert_eq!(ctx.q_poly(&top, &a).unwrap(), IntPoly::zero());
        // non-member input
        assert!(ctx.q_poly(&p("1 3 2 4"), &top).is_err());
    }

    #[test]
    fn q_via_spm_fixtures_window_4() {
        let ctx = KlvContext::new(4).unwrap();
        let e = Perm::identity(4);
        let top = p("3 4 1 2");
        let poset = IntervalPoset::build_interval(&e, &top, Ground::Iota).unwrap();
        let m = &spm::enumerate_spms(&poset).unwrap()[0];
        assert_eq!(
            ctx.q_poly_via_spm(&poset, m, &e).unwrap(),
            poly(&[0, -1, 1])
        );
        assert_eq!(
            ctx.q_poly_via_spm(&poset, m, &p("2 1 4 3")).unwrap(),
            poly(&[-1, 1])
        );
        assert_eq!(ctx.q_poly_via_spm(&poset, m, &top).unwrap(), IntPoly::one());
    }

    #[test]
    fn r_fixtures_window_4() {
        let ctx = KlvContext::new(4).unwrap();
        let e = Perm::identity(4);
        let a = p("2 1 4 3");
        let top = p("3 4 1 2");
        assert_eq!(ctx.r_poly(&top, &top).unwrap(), IntPoly::one());
        assert_eq!(ctx.r_poly(&e, &a).unwrap(), poly(&[-1, 1]));
        assert_eq!(ctx.r_poly(&e, &top).unwrap(), poly(&[1, -1]));
    }

    #[test]
    fn p_fixtures_window_4() {
        let ctx = KlvContext::new(4).unwrap();
        let e = Perm::identity(4);
        let a = p("2 1 4 3");
        let top = p("3 4 1 2");
        for u in [&e, &a, &top] {
            for w in [&e, &a, &top] {
                let expected = if bruhat::leq(u, w).unwrap() {
                    IntPoly::one()
                } else {
                    IntPoly::zero()
                };
                assert_eq!(ctx.p_poly(u, w).unwrap(), expected);
            }
        }
    }

    #[test]
    fn p_is_one_on_covers_small() {
        for window in [4usize, 6] {
            let ctx = KlvContext::new(window).unwrap();
            for wi in 0..ctx.elements().len() {
                for ui in 0..ctx.elements().len() {
                    if ctx.leq_idx(ui, wi) && ctx.rank_of_index(wi) == ctx.rank_of_index(ui) + 1 {
                        let u = ctx.elements()[ui].clone();
                        let w = ctx.elements()[wi].clone();
                        assert_eq!(ctx.p_poly(&u, &w).unwrap(), IntPoly::one());
                    }
                }
            }
        }
    }

    #[test]
    fn q_monic_and_vanishing_at_one_window_6() {
        let ctx = KlvContext::new(6).unwrap();
        let m = ctx.elements().len();
        for ui in 0..m {
            for wi in 0..m {
                let q = ctx.q_poly_idx(ui, wi);
                if ui == wi {
                    assert_eq!(q, IntPoly::one());
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
    fn descent_independence_window_6() {
        let ctx = KlvContext::new(6).unwrap();
        for w in ctx.elements() {
            for u in ctx.elements() {
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
    fn ordinary_r_and_kl_basics() {
        let e = Perm::identity(2);
        let s1 = p("2 1");
        assert_eq!(ordinary_r_poly(&e, &s1).unwrap(), poly(&[-1, 1]));
        assert_eq!(ordinary_kl_poly(&s1, &s1).unwrap(), IntPoly::one());

        let tables = OrdinaryKl::new(4).unwrap();
        // some pair in S_4 must have Kazhdan-Lusztig polynomial 1 + q
        let one_plus_q = poly(&[1, 1]);
        let mut found = 0;
        for x in tables.elements() {
            for y in tables.elements() {
                if tables.kl_poly(x, y).unwrap() == one_plus_q {
                    found += 1;
                }
            }
        }
        assert!(found > 0, "no 1 + q entry in the S_4 table");
        // the classical witnesses
        assert_eq!(
            tables.kl_poly(&p("1 3 2 4"), &p("3 4 1 2")).unwrap(),
            one_plus_q
        );
    }

    #[test]
    fn ordinary_r_degree_and_value_at_one() {
        let tables = OrdinaryKl::new(4).unwrap();
        for x in tables.elements() {
            for y in tables.elements() {
                let r = tables.r_poly(x, y).unwrap();
                if x == y {
                    assert_eq!(r, IntPoly::one());
                } else if tables.leq(x, y).unwrap() {
                    assert_eq!(r.degree().unwrap(), y.length() - x.length());
                    assert_eq!(r.eval_at_one(), 0);
                } else {
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn sigma_restriction_window_6() {
        let ctx = KlvContext::new(6).unwrap();
        let oracle = OrdinaryKl::new(3).unwrap();
        let sigma: Vec<Perm> = ctx
            .elements()
            .iter()
            .filter(|w| twisted::in_sigma_n(w).unwrap())
            .cloned()
            .collect();
        assert_eq!(sigma.len(), 6);
        for u in &sigma {
            for w in &sigma {
                let pu = twisted::phi(u).unwrap();
                let pw = twisted::phi(w).unwrap();
                assert_eq!(
                    ctx.q_poly(u, w).unwrap(),
                    oracle.r_poly(&pu, &pw).unwrap(),
                    "Q vs ordinary R at {u}, {w}"
                );
                assert_eq!(
                    ctx.p_poly(u, w).unwrap(),
                    oracle.kl_poly(&pu, &pw).unwrap(),
                    "P vs ordinary KL at {u}, {w}"
                );
            }
        }
    }

    #[test]
    fn vogan_identity_small() {
        let ctx = KlvContext::new(4).unwrap();
        for w in ctx.elements() {
            let report = ctx.verify_vogan_identity(w).unwrap();
            assert!(report.holds(), "{:?}", report.failures);
        }
    }

    #[test]
    fn spm_theorem_window_4() {
        let ctx = KlvContext::new(4).unwrap();
        let report = ctx.verify_spm_theorem(&p("3 4 1 2")).unwrap();
        assert_eq!(report.spm_count, 1);
        assert_eq!(report.pairs_checked, 3);
        assert!(report.holds());
    }

    #[test]
    fn invariance_window_4() {
        let report = verify_invariance(4).unwrap();
        assert!(report.holds(), "{:?}", report.mismatches);
        // the three lower intervals (sizes 1, 2, 3) are pairwise
        // non-isomorphic chains
        assert_eq!(report.classes.len(), 3);
        for class in &report.classes {
            assert_eq!(class.members.len(), 1);
        }
    }

    #[test]
    fn table_exports() {
        let ctx = KlvContext::new(4).unwrap();
        let table = ctx.table_for(PolyKind::Q, &p("3 4 1 2")).unwrap();
        let csv = table.to_csv();
        assert!(csv.starts_with("u,w,kind,polynomial\n"));
        assert!(csv.contains("1 2 3 4,3 4 1 2,q,q^2 - q"));
        let json: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 3);
        assert_eq!(json["rows"][0]["poly"], "q^2 - q");
    }
}
