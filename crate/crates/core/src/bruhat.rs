//! Bruhat order predicates on the symmetric group.
//!
//! Two independent production criteria are provided: the dot-count
//! criterion (default, with an early-exit incremental scan) and the
//! tableau criterion. A third, exponential subword oracle exists for
//! cross-validation on small windows only.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Selector between the two production comparison routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMethod {
    DotCount,
    Tableau,
}

/// Largest window accepted by [`subword_oracle`].
pub const SUBWORD_ORACLE_MAX_WINDOW: usize = 8;

/// Bruhat comparison by the dot-count criterion:
/// `x <= y` iff `x[i,j] <= y[i,j]` for all `i`, `j`, where
/// `w[i,j] = |{k >= i : w(k) <= j}|`.
///
/// Scans positions `i` in decreasing order keeping a running difference
/// of suffix counts, so a violation exits without finishing the pass.
pub fn leq_dots(x: &Perm, y: &Perm) -> Result<bool> {
    let m = x.window();
    if m != y.window() {
        return Err(Error::WindowMismatch(m, y.window()));
    }
    // diff[j] = x[i,j] - y[i,j] for the current suffix start i
    let mut diff = vec![0i32; m + 1];
    let mut positive = 0usize;
    for i in (1..=m).rev() {
        let a = x.image(i);
        let b = y.image(i);
        if a < b {
            for d in diff.iter_mut().take(b).skip(a) {
                *d += 1;
                if *d == 1 {
                    positive += 1;
                }
            }
        } else {
            for d in diff.iter_mut().take(a).skip(b) {
                *d -= 1;
                if *d == 0 {
                    positive -= 1;
                }
            }
        }
        if positive > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bruhat comparison by the tableau criterion: `x <= y` iff for every
/// right descent `s_k` of `x` the increasingly sorted prefixes of length
/// `k` compare entrywise.
pub fn leq_tableau(x: &Perm, y: &Perm) -> Result<bool> {
    if x.window() != y.window() {
        return Err(Error::WindowMismatch(x.window(), y.window()));
    }
    for k in x.right_descents() {
        let mut xs: Vec<usize> = (1..=k).map(|i| x.image(i)).collect();
        let mut ys: Vec<usize> = (1..=k).map(|i| y.image(i)).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        if xs.iter().zip(&ys).any(|(a, b)| a > b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bruhat comparison by the chosen method.
pub fn leq_by(method: OrderMethod, x: &Perm, y: &Perm) -> Result<bool> {
    match method {
        OrderMethod::DotCount => leq_dots(x, y),
        OrderMethod::Tableau => leq_tableau(x, y),
    }
}

/// Default Bruhat comparison (dot-count criterion).
pub fn leq(x: &Perm, y: &Perm) -> Result<bool> {
    leq_dots(x, y)
}

/// All products of subwords of one fixed reduced word for `y`.
///
/// By the subword property this set is exactly the lower Bruhat
/// interval `[e, y]`. Exponential in spirit; the per-step set is
/// deduplicated so whole-group sweeps on windows up to 6 stay cheap.
pub fn subword_closure(y: &Perm) -> Result<HashSet<Perm>> {
    if y.window() > SUBWORD_ORACLE_MAX_WINDOW {
        return Err(Error::WindowCapExceeded {
            window: y.window(),
            cap: SUBWORD_ORACLE_MAX_WINDOW,
        });
    }
    let mut reach: HashSet<Perm> = HashSet::new();
    reach.insert(Perm::identity(y.window()));
    for i in y.reduced_word() {
        let extended: Vec<Perm> = reach.iter().map(|p| p.mul_gen_right(i)).collect();
        reach.extend(extended);
    }
    Ok(reach)
}

/// Test-oriented oracle: `x <= y` iff `x` arises as a subword of one
/// fixed reduced expression of `y`. Guarded to small windows.
pub fn subword_oracle(x: &Perm, y: &Perm) -> Result<bool> {
    if x.window() != y.window() {
        return Err(Error::WindowMismatch(x.window(), y.window()));
    }
    if x.length() > y.length() {
        return Ok(false);
    }
    Ok(subword_closure(y)?.contains(x))
}

/// Cover test in the full symmetric group: `x <= y` with length gap 1.
pub fn is_cover_w(x: &Perm, y: &Perm) -> Result<bool> {
    Ok(y.length() == x.length() + 1 && leq_dots(x, y)?)
}
