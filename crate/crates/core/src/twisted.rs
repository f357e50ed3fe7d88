//! Twisted conjugation in `S_2n`, twisted involutions and twisted
//! identities, the underline action, ranks, and the order-reversing
//! duality with fixed-point-free involutions.
//!
//! The ambient automorphism is always `theta(s_i) = s_{2n-i}`, i.e.
//! conjugation by the reverse permutation. Twisted conjugation acts from
//! the right: `x ⋊ w = theta(w^-1) x w`. The twisted involutions
//! `I(theta)` are the orbit of `e` under the underline action, and the
//! twisted identities `iota` form the sub-orbit under twisted
//! conjugation alone; membership in `iota` is decided through the
//! duality `iota = w_0 · F_2n` with the fixed-point-free involutions.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::bruhat;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest window the enumeration routines accept.
pub const MAX_ENUM_WINDOW: usize = 14;

/// A member of `I(theta)` with its rank and an `iota`-membership flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedElement {
    perm: Perm,
    rank: usize,
    in_iota: bool,
}

impl TwistedElement {
    /// Validates membership in `I(theta)` and computes the rank.
    pub fn new(perm: Perm) -> Result<TwistedElement> {
        let rank = rank(&perm)?;
        let in_iota = is_twisted_identity(&perm)?;
        if in_iota {
            debug_assert_eq!(2 * rank, perm.length());
        }
        Ok(TwistedElement {
            perm,
            rank,
            in_iota,
        })
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn in_iota(&self) -> bool {
        self.in_iota
    }
}

/// A word in the underline symbols, letters being generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SWord {
    letters: Vec<usize>,
}

impl SWord {
    pub fn new(letters: Vec<usize>) -> SWord {
        SWord { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

fn check_even_window(window: usize) -> Result<()> {
    if !window.is_multiple_of(2) || window == 0 {
        return Err(Error::WindowNotEven(window));
    }
    Ok(())
}

fn check_generator(window: usize, i: usize) -> Result<()> {
    if i == 0 || i >= window {
        return Err(Error::IndexOutOfRange { index: i, window });
    }
    Ok(())
}

/// Whether `theta(w) = w^-1`.
pub fn is_twisted_involution(w: &Perm) -> Result<bool> {
    check_even_window(w.window())?;
    Ok(w.theta() == w.inverse())
}

/// Whether `w` lies in `iota`, tested as `w_0 w` being a
/// fixed-point-free involution.
pub fn is_twisted_identity(w: &Perm) -> Result<bool> {
    check_even_window(w.window())?;
    let f = Perm::longest_element(w.window()).compose(w)?;
    Ok(f.is_fixed_point_free_involution())
}

/// Twisted conjugation by a generator: `theta(s_i) x s_i`.
pub fn twisted_conjugate(x: &Perm, i: usize) -> Result<Perm> {
    let m = x.window();
    check_even_window(m)?;
    check_generator(m, i)?;
    Ok(x.mul_gen_right(i).mul_gen_left(m - i))
}

fn underline_act_unchecked(x: &Perm, i: usize) -> Perm {
    let m = x.window();
    let conj = x.mul_gen_right(i).mul_gen_left(m - i);
    if conj == *x {
        x.mul_gen_right(i)
    } else {
        conj
    }
}

/// The underline action `x s̲_i`: plain right multiplication when
/// twisted conjugation fixes `x`, twisted conjugation otherwise.
/// Defined on twisted involutions only.
pub fn underline_act(x: &Perm, i: usize) -> Result<Perm> {
    check_generator(x.window(), i)?;
    if !is_twisted_involution(x)? {
        return Err(Error::NotTwistedInvolution(x.clone()));
    }
    Ok(underline_act_unchecked(x, i))
}

/// Left-to-right evaluation of an underline word starting from `e`.
pub fn eval_sword(word: &SWord, window: usize) -> Result<Perm> {
    check_even_window(window)?;
    let mut x = Perm::identity(window);
    for &i in word.letters() {
        check_generator(window, i)?;
        x = underline_act_unchecked(&x, i);
    }
    Ok(x)
}

/// The rank: minimal length of an underline word reaching `w` from `e`.
pub fn rank(w: &Perm) -> Result<usize> {
    Ok(reduced_sword(w)?.len())
}

/// A reduced underline word for `w`, built by stripping the smallest
/// right descent at each step.
pub fn reduced_sword(w: &Perm) -> Result<SWord> {
    if !is_twisted_involution(w)? {
        return Err(Error::NotTwistedInvolution(w.clone()));
    }
    let mut x = w.clone();
    let mut letters = Vec::new();
    while let Some(&i) = x.right_descents().first() {
        x = underline_act_unchecked(&x, i);
        letters.push(i);
    }
    debug_assert!(x.is_identity());
    letters.reverse();
    Ok(SWord::new(letters))
}

/// The maximum of the Bruhat order on `iota`: `w_0 s_1 s_3 ... s_{2n-1}`.
pub fn iota_max(window: usize) -> Result<Perm> {
    check_even_window(window)?;
    let mut w = Perm::longest_element(window);
    for i in (1..window).step_by(2) {
        w = w.mul_gen_right(i);
    }
    Ok(w)
}

/// The order-reversing bijection onto fixed-point-free involutions.
pub fn to_fpf(x: &Perm) -> Result<Perm> {
    if !is_twisted_identity(x)? {
        return Err(Error::NotTwistedIdentity(x.clone()));
    }
    Perm::longest_element(x.window()).compose(x)
}

/// Inverse of [`to_fpf`].
pub fn from_fpf(y: &Perm) -> Result<Perm> {
    check_even_window(y.window())?;
    if !y.is_fixed_point_free_involution() {
        return Err(Error::NotFixedPointFree(y.clone()));
    }
    Perm::longest_element(y.window()).compose(y)
}

type EnumCache = Mutex<HashMap<usize, Arc<Vec<TwistedElement>>>>;

fn iota_cache() -> &'static EnumCache {
    static CACHE: OnceLock<EnumCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn twisted_cache() -> &'static EnumCache {
    static CACHE: OnceLock<EnumCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn check_enum_window(window: usize) -> Result<()> {
    check_even_window(window)?;
    if window > MAX_ENUM_WINDOW {
        return Err(Error::WindowCapExceeded {
            window,
            cap: MAX_ENUM_WINDOW,
        });
    }
    Ok(())
}

/// All involutions of `[m]` whose fixed-point count is `fixed` mod
/// everything: here simply all involutions, optionally fixed-point-free.
fn enumerate_involutions(window: usize, fixed_point_free: bool) -> Vec<Perm> {
    fn rec(m: usize, taken: &mut Vec<Option<usize>>, fpf: bool, out: &mut Vec<Perm>) {
        match taken.iter().position(Option::is_none) {
            None => {
                let images: Vec<usize> = taken.iter().map(|v| v.unwrap()).collect();
                out.push(Perm::from_one_line(&images).unwrap());
            }
            Some(a) => {
                if !fpf {
                    taken[a] = Some(a + 1);
                    rec(m, taken, fpf, out);
                    taken[a] = None;
                }
                for b in a + 1..m {
                    if taken[b].is_none() {
                        taken[a] = Some(b + 1);
                        taken[b] = Some(a + 1);
                        rec(m, taken, fpf, out);
                        taken[a] = None;
                        taken[b] = None;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(window, &mut vec![None; window], fixed_point_free, &mut out);
    out
}

fn orbit_closure(window: usize, conjugation_only: bool) -> Vec<Perm> {
    let e = Perm::identity(window);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue: VecDeque<Perm> = VecDeque::new();
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(x) = queue.pop_front() {
        for i in 1..window {
            let y = if conjugation_only {
                twisted_conjugate(&x, i).unwrap()
            } else {
                underline_act_unchecked(&x, i)
            };
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

fn enumerate_cached(
    window: usize,
    cache: &'static EnumCache,
    compute: fn(usize) -> Vec<TwistedElement>,
) -> Result<Arc<Vec<TwistedElement>>> {
    check_enum_window(window)?;
    if let Some(hit) = cache.lock().unwrap().get(&window) {
        return Ok(Arc::clone(hit));
    }
    let fresh = Arc::new(compute(window));
    let mut guard = cache.lock().unwrap();
    Ok(Arc::clone(guard.entry(window).or_insert(fresh)))
}

fn compute_iota(window: usize) -> Vec<TwistedElement> {
    // route 1: closure of {e} under twisted conjugation by generators
    let orbit = orbit_closure(window, true);
    // route 2: w_0 times the fixed-point-free involutions
    let w0 = Perm::longest_element(window);
    let mut dual: Vec<Perm> = enumerate_involutions(window, true)
        .into_iter()
        .map(|f| w0.compose(&f).unwrap())
        .collect();
    dual.sort();
    assert_eq!(orbit, dual, "orbit closure and w_0·F_2n disagree");
    orbit
        .into_iter()
        .map(|p| TwistedElement::new(p).unwrap())
        .collect()
}

fn compute_twisted(window: usize) -> Vec<TwistedElement> {
    // route 1: closure of {e} under the underline action
    let orbit = orbit_closure(window, false);
    // route 2: w_0 times all involutions
    let w0 = Perm::longest_element(window);
    let mut dual: Vec<Perm> = enumerate_involutions(window, false)
        .into_iter()
        .map(|f| w0.compose(&f).unwrap())
        .collect();
    dual.sort();
    assert_eq!(orbit, dual, "orbit closure and w_0·Invol disagree");
    orbit
        .into_iter()
        .map(|p| TwistedElement::new(p).unwrap())
        .collect()
}

/// All twisted identities of the window, in stable lexicographic order
/// of one-line notation. Results are cached per window.
pub fn enumerate_iota(window: usize) -> Result<Arc<Vec<TwistedElement>>> {
    enumerate_cached(window, iota_cache(), compute_iota)
}

/// All twisted involutions of the window, in stable lexicographic order.
pub fn enumerate_twisted_involutions(window: usize) -> Result<Arc<Vec<TwistedElement>>> {
    enumerate_cached(window, twisted_cache(), compute_twisted)
}

/// The middle generator `s_n` as a permutation; this is also the value
/// of the one-letter underline word `s̲_n`.
pub fn middle_generator(window: usize) -> Result<Perm> {
    check_even_window(window)?;
    Perm::adjacent_transposition(window, window / 2)
}

/// Membership in the subset of `iota` avoiding `s̲_n`, which is
/// order-isomorphic to `S_n`.
pub fn in_sigma_n(w: &Perm) -> Result<bool> {
    if !is_twisted_identity(w)? {
        return Err(Error::NotTwistedIdentity(w.clone()));
    }
    let sn = middle_generator(w.window())?;
    Ok(!bruhat::leq(&sn, w)?)
}

/// The underline-stripping bijection onto `S_n`: rewrites `w` as a
/// reduced underline word in letters below `n` and evaluates the same
/// word as an ordinary product of adjacent transpositions.
pub fn phi(w: &Perm) -> Result<Perm> {
    if !in_sigma_n(w)? {
        return Err(Error::NotInSigmaSubset(w.clone()));
    }
    let n = w.window() / 2;
    let mut x = w.clone();
    let mut letters = Vec::new();
    while !x.is_identity() {
        let i = x
            .right_descents()
            .into_iter()
            .find(|&i| i < n)
            .ok_or_else(|| {
                Error::TheoremViolation(format!(
                    "no descent below {n} while rewriting {x} inside the S_n-like subset"
                ))
            })?;
        x = underline_act_unchecked(&x, i);
        letters.push(i);
    }
    letters.reverse();
    let mut p = Perm::identity(n.max(1));
    for &i in &letters {
        p = p.mul_gen_right(i);
    }
    Ok(p)
}

/// Inverse of [`phi`]: evaluates a reduced word for `p` as an underline
/// word on the doubled window.
pub fn phi_inverse(p: &Perm) -> Result<Perm> {
    let n = p.window();
    let word = SWord::new(p.reduced_word());
    eval_sword(&word, 2 * n)
}
