//! Permutations of `[m] = {1, ..., m}` in one-line notation.
//!
//! A [`Perm`] carries its window `m` explicitly; operations on two
//! permutations require equal windows and report a mismatch instead of
//! coercing. The external representation is 1-indexed throughout
//! (`"3 4 1 2"` denotes the permutation sending 1 to 3, 2 to 4, and so on).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., m}` stored in one-line notation.
///
/// Values are immutable after construction and cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    /// 0-indexed images: `imgs[i]` is `w(i + 1) - 1`.
    imgs: Vec<u8>,
}

impl Perm {
    /// The identity permutation on a window of size `m`.
    pub fn identity(window: usize) -> Perm {
        Perm {
            imgs: (0..window).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from 1-indexed images, rejecting non-bijections.
    pub fn from_one_line(images: &[usize]) -> Result<Perm> {
        let m = images.len();
        if m == 0 || m > u8::MAX as usize {
            return Err(Error::NotABijection(m));
        }
        let mut seen = vec![false; m];
        let mut imgs = Vec::with_capacity(m);
        for &v in images {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::NotABijection(m));
            }
            seen[v - 1] = true;
            imgs.push((v - 1) as u8);
        }
        Ok(Perm { imgs })
    }

    /// The adjacent transposition `s_i = (i, i+1)`, `1 <= i <= m-1`.
    pub fn adjacent_transposition(window: usize, i: usize) -> Result<Perm> {
        if i == 0 || i >= window {
            return Err(Error::IndexOutOfRange { index: i, window });
        }
        let mut p = Perm::identity(window);
        p.imgs.swap(i - 1, i);
        Ok(p)
    }

    /// The transposition `(a, b)` with `a != b`.
    pub fn transposition(window: usize, a: usize, b: usize) -> Result<Perm> {
        for &x in &[a, b] {
            if x == 0 || x > window {
                return Err(Error::IndexOutOfRange { index: x, window });
            }
        }
        let mut p = Perm::identity(window);
        p.imgs.swap(a - 1, b - 1);
        Ok(p)
    }

    /// The reverse permutation `w_0(i) = m + 1 - i`, the longest element.
    pub fn longest_element(window: usize) -> Perm {
        Perm {
            imgs: (0..window).rev().map(|i| i as u8).collect(),
        }
    }

    pub fn window(&self) -> usize {
        self.imgs.len()
    }

    /// `w(i)` with 1-indexed input and output.
    pub fn image(&self, i: usize) -> usize {
        self.imgs[i - 1] as usize + 1
    }

    /// The one-line notation as 1-indexed images.
    pub fn one_line(&self) -> Vec<usize> {
        self.imgs.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.imgs.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    fn check_window(&self, other: &Perm) -> Result<()> {
        if self.window() != other.window() {
            return Err(Error::WindowMismatch(self.window(), other.window()));
        }
        Ok(())
    }

    /// Composition `(u ∘ v)(i) = u(v(i))` where `self` is `u`.
    pub fn compose(&self, v: &Perm) -> Result<Perm> {
        self.check_window(v)?;
        Ok(Perm {
            imgs: v.imgs.iter().map(|&k| self.imgs[k as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut imgs = vec![0u8; self.imgs.len()];
        for (i, &v) in self.imgs.iter().enumerate() {
            imgs[v as usize] = i as u8;
        }
        Perm { imgs }
    }

    /// Number of inversions, the Coxeter length.
    pub fn length(&self) -> usize {
        let m = self.imgs.len();
        let mut count = 0;
        for i in 0..m {
            for j in i + 1..m {
                if self.imgs[i] > self.imgs[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right multiplication by `s_i`: swaps positions `i` and `i + 1`.
    pub fn mul_gen_right(&self, i: usize) -> Perm {
        debug_assert!(i >= 1 && i < self.window());
        let mut imgs = self.imgs.clone();
        imgs.swap(i - 1, i);
        Perm { imgs }
    }

    /// Left multiplication by `s_i`: swaps the values `i` and `i + 1`.
    pub fn mul_gen_left(&self, i: usize) -> Perm {
        debug_assert!(i >= 1 && i < self.window());
        let a = (i - 1) as u8;
        let b = i as u8;
        let imgs = self
            .imgs
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        Perm { imgs }
    }

    /// Whether `s_i` is a right descent, i.e. `w(i) > w(i + 1)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        i >= 1 && i < self.window() && self.imgs[i - 1] > self.imgs[i]
    }

    /// The sorted set of right descents as generator indices.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.window())
            .filter(|&i| self.imgs[i - 1] > self.imgs[i])
            .collect()
    }

    /// Conjugation by the longest element: `w_0 w w_0`.
    pub fn theta(&self) -> Perm {
        let m = self.imgs.len();
        let imgs = (0..m)
            .map(|i| (m - 1) as u8 - self.imgs[m - 1 - i])
            .collect();
        Perm { imgs }
    }

    /// `|{k >= i : w(k) <= j}|` with 1-indexed `i`, `j`.
    pub fn dot_count(&self, i: usize, j: usize) -> Result<usize> {
        let m = self.window();
        for &x in &[i, j] {
            if x == 0 || x > m {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    window: m,
                });
            }
        }
        Ok(self.imgs[i - 1..]
            .iter()
            .filter(|&&v| (v as usize) < j)
            .count())
    }

    /// A reduced word built by stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&i) = w.right_descents().first() {
            w = w.mul_gen_right(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    pub fn is_involution(&self) -> bool {
        self.imgs
            .iter()
            .enumerate()
            .all(|(i, &v)| self.imgs[v as usize] as usize == i)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.is_involution() && self.imgs.iter().enumerate().all(|(i, &v)| v as usize != i)
    }

    /// All permutations of the window in lexicographic one-line order.
    pub fn enumerate_all(window: usize) -> Vec<Perm> {
        if window == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = Perm::identity(window);
        loop {
            out.push(cur.clone());
            // next_permutation on the image vector
            let v = &mut cur.imgs;
            let m = v.len();
            let mut i = m.wrapping_sub(1);
            while i > 0 && v[i - 1] >= v[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = m - 1;
            while v[j] <= v[i - 1] {
                j -= 1;
            }
            v.swap(i - 1, j);
            v[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &v in &self.imgs {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", v as usize + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parses space-separated one-line images, e.g. `"3 4 1 2"`.
    fn from_str(s: &str) -> Result<Perm> {
        let mut images = Vec::new();
        for tok in s.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: format!("{tok:?} is not a positive integer"),
            })?;
            images.push(v);
        }
        if images.is_empty() {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "empty input".to_string(),
            });
        }
        Perm::from_one_line(&images).map_err(|_| Error::Parse {
            input: s.to_string(),
            reason: "images are not a bijection".to_string(),
        })
    }
}
