//! Explicit finite graded posets for Bruhat intervals of twisted
//! identities or twisted involutions, their Hasse diagrams, and
//! isomorphism testing.

use serde::Serialize;

use crate::bitmat::BitMatrix;
use crate::bruhat;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::twisted;

/// Which ambient set an interval is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ground {
    Iota,
    Twisted,
}

/// A finite graded interval with explicit cover relation and rank layers.
///
/// Elements are kept in stable lexicographic order of their one-line
/// notation; all indices refer to that order. Ranks are normalized so
/// the bottom has rank 0.
#[derive(Debug, Clone)]
pub struct IntervalPoset {
    ground: Ground,
    window: usize,
    elements: Vec<Perm>,
    rank_of: Vec<usize>,
    leq: BitMatrix,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

#[derive(Serialize)]
struct PosetJson<'a> {
    elements: Vec<String>,
    rank: &'a [usize],
    covers: Vec<[usize; 2]>,
}

impl IntervalPoset {
    /// Builds the interval `[u, w]` inside the chosen ground set.
    pub fn build_interval(u: &Perm, w: &Perm, ground: Ground) -> Result<IntervalPoset> {
        if u.window() != w.window() {
            return Err(Error::WindowMismatch(u.window(), w.window()));
        }
        let window = u.window();
        let members = match ground {
            Ground::Iota => {
                for x in [u, w] {
                    if !twisted::is_twisted_identity(x)? {
                        return Err(Error::NotTwistedIdentity(x.clone()));
                    }
                }
                twisted::enumerate_iota(window)?
            }
            Ground::Twisted => {
                for x in [u, w] {
                    if !twisted::is_twisted_involution(x)? {
                        return Err(Error::NotTwistedInvolution(x.clone()));
                    }
                }
                twisted::enumerate_twisted_involutions(window)?
            }
        };
        if !bruhat::leq(u, w)? {
            return Err(Error::NotComparable {
                lower: u.clone(),
                upper: w.clone(),
            });
        }

        let mut elements = Vec::new();
        let mut rank_of = Vec::new();
        for t in members.iter() {
            if bruhat::leq(u, t.perm())? && bruhat::leq(t.perm(), w)? {
                elements.push(t.perm().clone());
                rank_of.push(t.rank());
            }
        }
        let base = rank_of.iter().copied().min().unwrap();
        for r in &mut rank_of {
            *r -= base;
        }

        let m = elements.len();
        let mut leq = BitMatrix::new(m);
        for i in 0..m {
            for j in 0..m {
                if rank_of[i] <= rank_of[j] && bruhat::leq(&elements[i], &elements[j])? {
                    leq.set(i, j);
                }
            }
        }

        // covers: comparability with rank gap one, valid by gradedness
        let mut up_covers = vec![Vec::new(); m];
        let mut down_covers = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if rank_of[j] == rank_of[i] + 1 && leq.get(i, j) {
                    up_covers[i].push(j);
                    down_covers[j].push(i);
                }
            }
        }

        let bottom = elements.iter().position(|x| x == u).unwrap();
        let top = elements.iter().position(|x| x == w).unwrap();
        Ok(IntervalPoset {
            ground,
            window,
            elements,
            rank_of,
            leq,
            up_covers,
            down_covers,
            bottom,
            top,
        })
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank_of[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank_of
    }

    pub fn max_rank(&self) -> usize {
        self.rank_of[self.top]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.rank_of[j] == self.rank_of[i] + 1 && self.leq.get(i, j)
    }

    pub fn up_covers(&self, i: usize) -> &[usize] {
        &self.up_covers[i]
    }

    pub fn down_covers(&self, i: usize) -> &[usize] {
        &self.down_covers[i]
    }

    /// Indices of elements covering the bottom.
    pub fn atoms(&self) -> &[usize] {
        &self.up_covers[self.bottom]
    }

    /// Sizes of all rank-two subintervals, sorted ascending.
    pub fn rank2_interval_profile(&self) -> Vec<usize> {
        let transpose = self.leq.transpose();
        let mut sizes = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.rank_of[j] == self.rank_of[i] + 2 && self.leq.get(i, j) {
                    sizes.push(self.leq.count_between(&transpose, i, j));
                }
            }
        }
        sizes.sort_unstable();
        sizes
    }

    /// Deterministic DOT rendering of the Hasse diagram, edges upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph interval {\n  rankdir=BT;\n");
        for (i, x) in self.elements.iter().enumerate() {
            out.push_str(&format!(
                "  n{i} [label=\"{} | rho {}\"];\n",
                x, self.rank_of[i]
            ));
        }
        for (i, ups) in self.up_covers.iter().enumerate() {
            for &j in ups {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering: element strings, ranks, and cover pairs.
    pub fn to_json(&self) -> String {
        let mut covers = Vec::new();
        for (i, ups) in self.up_covers.iter().enumerate() {
            for &j in ups {
                covers.push([i, j]);
            }
        }
        let doc = PosetJson {
            elements: self.elements.iter().map(Perm::to_string).collect(),
            rank: &self.rank_of,
            covers,
        };
        serde_json::to_string_pretty(&doc).expect("poset serialization cannot fail")
    }

    /// Rank layer sizes, bottom first.
    fn layer_profile(&self) -> Vec<usize> {
        let mut layers = vec![0usize; self.max_rank() + 1];
        for &r in &self.rank_of {
            layers[r] += 1;
        }
        layers
    }

    /// Stable class labels refined from (rank, up-degree, down-degree)
    /// signatures until the joint partition stabilizes. Returns `None`
    /// if the class multisets of the two posets differ.
    fn refined_classes(&self, other: &IntervalPoset) -> Option<(Vec<usize>, Vec<usize>)> {
        type Sig = (usize, Vec<usize>, Vec<usize>);
        let init = |p: &IntervalPoset| -> Vec<Sig> {
            (0..p.len())
                .map(|i| {
                    (
                        p.rank_of[i],
                        vec![p.up_covers[i].len()],
                        vec![p.down_covers[i].len()],
                    )
                })
                .collect()
        };
        let relabel = |a: &[Sig], b: &[Sig]| -> (Vec<usize>, Vec<usize>, usize) {
            let mut all: Vec<&Sig> = a.iter().chain(b.iter()).collect();
            all.sort();
            all.dedup();
            let id = |s: &Sig| all.binary_search(&s).unwrap();
            (
                a.iter().map(&id).collect(),
                b.iter().map(&id).collect(),
                all.len(),
            )
        };

        let (mut ca, mut cb, mut classes) = relabel(&init(self), &init(other));
        loop {
            let next = |p: &IntervalPoset, c: &[usize]| -> Vec<Sig> {
                (0..p.len())
                    .map(|i| {
                        let mut up: Vec<usize> = p.up_covers[i].iter().map(|&j| c[j]).collect();
                        let mut down: Vec<usize> = p.down_covers[i].iter().map(|&j| c[j]).collect();
                        up.sort_unstable();
                        down.sort_unstable();
                        (c[i], up, down)
                    })
                    .collect()
            };
            let (na, nb, nclasses) = relabel(&next(self, &ca), &next(other, &cb));
            if nclasses == classes {
                break;
            }
            ca = na;
            cb = nb;
            classes = nclasses;
        }

        let histogram = |c: &[usize]| {
            let mut h = vec![0usize; classes];
            for &x in c {
                h[x] += 1;
            }
            h
        };
        (histogram(&ca) == histogram(&cb)).then_some((ca, cb))
    }

    fn search_isomorphisms(
        &self,
        other: &IntervalPoset,
        cap: Option<usize>,
    ) -> Result<Vec<Vec<usize>>> {
        let mut found = Vec::new();
        if self.len() != other.len() || self.layer_profile() != other.layer_profile() {
            return Ok(found);
        }
        let Some((ca, cb)) = self.refined_classes(other) else {
            return Ok(found);
        };

        // candidate targets per element, by refined class
        let candidates: Vec<Vec<usize>> = (0..self.len())
            .map(|i| (0..other.len()).filter(|&j| cb[j] == ca[i]).collect())
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return Ok(found);
        }

        // assign scarce elements first, ties broken by element order
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (candidates[i].len(), self.rank_of[i], i));

        struct Search<'a> {
            p: &'a IntervalPoset,
            q: &'a IntervalPoset,
            order: &'a [usize],
            candidates: &'a [Vec<usize>],
            mapping: Vec<usize>,
            used: Vec<bool>,
            found: Vec<Vec<usize>>,
            cap: Option<usize>,
            overflow: bool,
        }

        impl Search<'_> {
            fn run(&mut self, depth: usize) {
                if self.overflow || (self.cap.is_none() && !self.found.is_empty()) {
                    return;
                }
                if depth == self.order.len() {
                    if let Some(cap) = self.cap {
                        if self.found.len() >= cap {
                            self.overflow = true;
                            return;
                        }
                    }
                    self.found.push(self.mapping.clone());
                    return;
                }
                let i = self.order[depth];
                for &j in &self.candidates[i] {
                    if self.used[j] {
                        continue;
                    }
                    let consistent = self.order[..depth].iter().all(|&k| {
                        let fk = self.mapping[k];
                        self.p.leq_idx(i, k) == self.q.leq_idx(j, fk)
                            && self.p.leq_idx(k, i) == self.q.leq_idx(fk, j)
                    });
                    if !consistent {
                        continue;
                    }
                    self.mapping[i] = j;
                    self.used[j] = true;
                    self.run(depth + 1);
                    self.used[j] = false;
                }
            }
        }

        let mut search = Search {
            p: self,
            q: other,
            order: &order,
            candidates: &candidates,
            mapping: vec![usize::MAX; self.len()],
            used: vec![false; other.len()],
            found: Vec::new(),
            cap,
            overflow: false,
        };
        search.run(0);
        if search.overflow {
            return Err(Error::SearchCapExceeded(cap.unwrap()));
        }
        found = search.found;
        for f in &found {
            debug_assert!(self.verify_isomorphism(other, f));
        }
        Ok(found)
    }

    /// A rank-preserving order isomorphism onto `other` as an index
    /// mapping, or `None` when the posets are not isomorphic.
    pub fn find_isomorphism(&self, other: &IntervalPoset) -> Option<Vec<usize>> {
        self.search_isomorphisms(other, None)
            .expect("uncapped search cannot overflow")
            .into_iter()
            .next()
    }

    /// All order isomorphisms onto `other`, erroring beyond `cap`.
    pub fn all_isomorphisms(&self, other: &IntervalPoset, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.search_isomorphisms(other, Some(cap))
    }

    /// Checks that `mapping` is a bijection preserving order both ways.
    pub fn verify_isomorphism(&self, other: &IntervalPoset, mapping: &[usize]) -> bool {
        let m = self.len();
        if other.len() != m || mapping.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &j in mapping {
            if j >= m || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        for i in 0..m {
            for k in 0..m {
                if self.leq_idx(i, k) != other.leq_idx(mapping[i], mapping[k]) {
                    return false;
                }
            }
        }
        true
    }
}

/// All `y` in `iota` with `x ⋖ y <= w_cap`, by rank and comparability.
pub fn covers_in_iota(x: &Perm, w_cap: &Perm) -> Result<Vec<Perm>> {
    if !twisted::is_twisted_identity(x)? {
        return Err(Error::NotTwistedIdentity(x.clone()));
    }
    let target = twisted::rank(x)? + 1;
    let mut out = Vec::new();
    for t in twisted::enumerate_iota(x.window())?.iter() {
        if t.rank() == target && bruhat::leq(x, t.perm())? && bruhat::leq(t.perm(), w_cap)? {
            out.push(t.perm().clone());
        }
    }
    Ok(out)
}

/// Cover candidates obtained by twisted conjugation with a transposition,
/// filtered to rank gap one and comparability. Cross-check route for
/// [`covers_in_iota`].
pub fn transposition_conjugation_covers(x: &Perm, w_cap: &Perm) -> Result<Vec<Perm>> {
    if !twisted::is_twisted_identity(x)? {
        return Err(Error::NotTwistedIdentity(x.clone()));
    }
    let m = x.window();
    let w0 = Perm::longest_element(m);
    let mut out = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            let t = Perm::transposition(m, a, b)?;
            let theta_t = w0.compose(&t)?.compose(&w0)?;
            let y = theta_t.compose(x)?.compose(&t)?;
            debug_assert!(twisted::is_twisted_identity(&y)?);
            if y.length() == x.length() + 2 && bruhat::leq(x, &y)? && bruhat::leq(&y, w_cap)? {
                out.push(y);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn e(window: usize) -> Perm {
        Perm::identity(window)
    }

    fn lower_iota(w: &Perm) -> IntervalPoset {
        IntervalPoset::build_interval(&e(w.window()), w, Ground::Iota).unwrap()
    }

    #[test]
    fn build_interval_examples() {
        let chain = lower_iota(&p("3 4 1 2"));
        assert_eq!(chain.len(), 3);
        assert_eq!(chain.ranks(), &[0, 1, 2]);
        assert_eq!(chain.up_covers(0), &[1]);
        assert_eq!(chain.up_covers(1), &[2]);

        let single = lower_iota(&e(4));
        assert_eq!(single.len(), 1);

        let whole = lower_iota(&twisted::iota_max(8).unwrap());
        assert_eq!(whole.len(), 105);
        // rho of the maximum is n(n-1)
        assert_eq!(whole.max_rank(), 12);
    }

    #[test]
    fn build_interval_errors() {
        // incomparable endpoints within iota at window 6
        let a = twisted::eval_sword(&twisted::SWord::new(vec![1]), 6).unwrap();
        let b = twisted::eval_sword(&twisted::SWord::new(vec![2]), 6).unwrap();
        assert!(matches!(
            IntervalPoset::build_interval(&a, &b, Ground::Iota),
            Err(Error::NotComparable { .. })
        ));
        assert!(matches!(
            IntervalPoset::build_interval(&e(4), &p("1 3 2 4"), Ground::Iota),
            Err(Error::NotTwistedIdentity(_))
        ));
    }

    #[test]
    fn covers_examples() {
        let top4 = twisted::iota_max(4).unwrap();
        assert_eq!(covers_in_iota(&e(4), &top4).unwrap(), vec![p("2 1 4 3")]);
        let top6 = twisted::iota_max(6).unwrap();
        assert_eq!(
            covers_in_iota(&e(6), &top6).unwrap(),
            vec![p("1 3 2 5 4 6"), p("2 1 3 4 6 5")]
        );
        assert!(covers_in_iota(&top4, &top4).unwrap().is_empty());
    }

    #[test]
    fn covers_cross_check_small() {
        for window in [4usize, 6] {
            let top = twisted::iota_max(window).unwrap();
            for t in twisted::enumerate_iota(window).unwrap().iter() {
                assert_eq!(
                    covers_in_iota(t.perm(), &top).unwrap(),
                    transposition_conjugation_covers(t.perm(), &top).unwrap(),
                    "cover routes disagree at {}",
                    t.perm()
                );
            }
        }
    }

    #[test]
    fn rank2_profile_examples() {
        let whole4 = lower_iota(&twisted::iota_max(4).unwrap());
        assert_eq!(whole4.rank2_interval_profile(), vec![3]);

        let tw = IntervalPoset::build_interval(&e(4), &Perm::longest_element(4), Ground::Twisted)
            .unwrap();
        assert!(tw.rank2_interval_profile().iter().all(|&s| s == 4));

        let whole8 = lower_iota(&twisted::iota_max(8).unwrap());
        assert!(whole8
            .rank2_interval_profile()
            .iter()
            .all(|&s| s == 3 || s == 4));
    }

    #[test]
    fn gradedness_small() {
        for window in [4usize, 6] {
            for ground in [Ground::Iota, Ground::Twisted] {
                let top = match ground {
                    Ground::Iota => twisted::iota_max(window).unwrap(),
                    Ground::Twisted => Perm::longest_element(window),
                };
                let poset = IntervalPoset::build_interval(&e(window), &top, ground).unwrap();
                // cover = no strictly-between element; gap must then be 1
                let m = poset.len();
                for i in 0..m {
                    for j in 0..m {
                        if i == j || !poset.leq_idx(i, j) {
                            continue;
                        }
                        let between = (0..m).any(|k| {
                            k != i && k != j && poset.leq_idx(i, k) && poset.leq_idx(k, j)
                        });
                        if !between {
                            assert_eq!(poset.rank(j), poset.rank(i) + 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_reflexive_and_trivial_cases() {
        let chain = lower_iota(&p("3 4 1 2"));
        let id = chain.find_isomorphism(&chain).unwrap();
        assert!(chain.verify_isomorphism(&chain, &id));

        let two_a = lower_iota(&p("2 1 4 3"));
        let two_b = lower_iota(&p("2 1 4 3"));
        assert_eq!(two_a.find_isomorphism(&two_b).unwrap(), vec![0, 1]);

        // a 3-chain is not isomorphic to anything of another size
        assert!(chain.find_isomorphism(&two_a).is_none());
    }

    /// Oracle: all rank-preserving bijections, layer by layer.
    fn brute_force_isomorphic(p: &IntervalPoset, q: &IntervalPoset) -> bool {
        if p.len() != q.len() || p.layer_profile() != q.layer_profile() {
            return false;
        }
        let max_rank = p.max_rank();
        let layer = |po: &IntervalPoset, r: usize| -> Vec<usize> {
            (0..po.len()).filter(|&i| po.rank(i) == r).collect()
        };
        fn perms_of(v: &[usize]) -> Vec<Vec<usize>> {
            if v.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for (k, &x) in v.iter().enumerate() {
                let mut rest = v.to_vec();
                rest.remove(k);
                for mut tail in perms_of(&rest) {
                    tail.insert(0, x);
                    out.push(tail);
                }
            }
            out
        }
        fn rec(
            p: &IntervalPoset,
            q: &IntervalPoset,
            r: usize,
            max_rank: usize,
            mapping: &mut Vec<usize>,
            layer_p: &dyn Fn(usize) -> Vec<usize>,
            layer_q: &dyn Fn(usize) -> Vec<usize>,
        ) -> bool {
            if r > max_rank {
                return p.verify_isomorphism(q, mapping);
            }
            let lp = layer_p(r);
            for target in perms_of(&layer_q(r)) {
                for (&i, &j) in lp.iter().zip(&target) {
                    mapping[i] = j;
                }
                if rec(p, q, r + 1, max_rank, mapping, layer_p, layer_q) {
                    return true;
                }
            }
            false
        }
        let mut mapping = vec![0usize; p.len()];
        rec(p, q, 0, max_rank, &mut mapping, &|r| layer(p, r), &|r| {
            layer(q, r)
        })
    }

    #[test]
    fn isomorphism_complete_vs_brute_force_window_4_and_6() {
        for window in [4usize, 6] {
            let iota = twisted::enumerate_iota(window).unwrap();
            let mut intervals = Vec::new();
            for a in iota.iter() {
                for b in iota.iter() {
                    if bruhat::leq(a.perm(), b.perm()).unwrap() {
                        intervals.push(
                            IntervalPoset::build_interval(a.perm(), b.perm(), Ground::Iota)
                                .unwrap(),
                        );
                    }
                }
            }
            for pi in &intervals {
                for qi in &intervals {
                    let fast = pi.find_isomorphism(qi);
                    let brute = brute_force_isomorphic(pi, qi);
                    assert_eq!(fast.is_some(), brute);
                    if let Some(f) = fast {
                        assert!(pi.verify_isomorphism(qi, &f));
                    }
                }
            }
        }
    }

    #[test]
    fn all_isomorphisms_of_whole_iota_6() {
        let whole = lower_iota(&twisted::iota_max(6).unwrap());
        let autos = whole.all_isomorphisms(&whole, 10_000).unwrap();
        assert!(!autos.is_empty());
        for f in &autos {
            assert!(whole.verify_isomorphism(&whole, f));
        }
        // inversion is a nontrivial automorphism of iota, so the
        // automorphism group is not always trivial; just pin the count.
        let identity: Vec<usize> = (0..whole.len()).collect();
        assert!(autos.contains(&identity));
    }

    #[test]
    fn dot_and_json_exports() {
        let chain = lower_iota(&p("3 4 1 2"));
        let dot = chain.to_dot();
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("3 4 1 2 | rho 2"));

        let json = chain.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["elements"].as_array().unwrap().len(), 3);
        assert_eq!(parsed["covers"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["rank"][2], 2);
    }

    #[test]
    fn noniota_twisted_involution_covers_at_most_one_iota_element() {
        for window in [4usize, 6] {
            let all = twisted::enumerate_twisted_involutions(window).unwrap();
            let top = Perm::longest_element(window);
            let poset = IntervalPoset::build_interval(&e(window), &top, Ground::Twisted).unwrap();
            for t in all.iter() {
                if t.in_iota() {
                    continue;
                }
                let i = poset.index_of(t.perm()).unwrap();
                let iota_covered = poset
                    .down_covers(i)
                    .iter()
                    .filter(|&&j| twisted::is_twisted_identity(poset.element(j)).unwrap())
                    .count();
                assert!(iota_covered <= 1, "{} covers {iota_covered}", t.perm());
            }
        }
    }
}
