//! Exact integer polynomials and Laurent polynomials in the variable `q`.
//!
//! Coefficients are `i64` with explicitly trapped overflow; silent
//! wraparound never occurs, in any build profile.

use std::fmt;

fn add_i64(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("integer overflow in polynomial arithmetic")
}

fn mul_i64(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("integer overflow in polynomial arithmetic")
}

/// A polynomial in `q` with integer coefficients.
///
/// Dense representation: `coeffs[k]` is the coefficient of `q^k`, with no
/// trailing zeros. The zero polynomial is the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> IntPoly {
        IntPoly::from_coeffs(vec![c])
    }

    /// The monomial `c q^k`.
    pub fn monomial(c: i64, k: usize) -> IntPoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    /// The variable `q`.
    pub fn q() -> IntPoly {
        IntPoly::monomial(1, 1)
    }

    /// `q - 1`, the workhorse factor in the recurrences.
    pub fn q_minus_one() -> IntPoly {
        IntPoly::from_coeffs(vec![-1, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> IntPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `q^k`.
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| add_i64(self.coeff(k), other.coeff(k)))
            .collect();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = add_i64(coeffs[i + j], mul_i64(a, b));
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&a| mul_i64(a, c)).collect())
    }

    /// Multiplication by `q^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i64; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Drops all terms of degree above `k`; `k = -1` yields zero.
    pub fn truncate_to_degree(&self, k: i64) -> IntPoly {
        if k < 0 {
            return IntPoly::zero();
        }
        let keep = (k as usize + 1).min(self.coeffs.len());
        IntPoly::from_coeffs(self.coeffs[..keep].to_vec())
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0, |acc, &c| add_i64(acc, c))
    }

    /// `q^d * p(1/q)` as a Laurent polynomial (plain polynomial when
    /// `deg p <= d`).
    pub fn reverse_scaled(&self, d: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let deg = self.coeffs.len() as i64 - 1;
        let coeffs: Vec<i64> = self.coeffs.iter().rev().copied().collect();
        LaurentPoly::from_parts(d - deg, coeffs)
    }

    /// `p(1/q)` as a Laurent polynomial.
    pub fn substitute_inverse(&self) -> LaurentPoly {
        self.reverse_scaled(0)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_parts(0, self.coeffs.clone())
    }
}

/// A Laurent polynomial in `q`, normalized at both ends.
///
/// `coeffs[k]` is the coefficient of `q^(offset + k)`; the lowest and
/// highest entries are nonzero, and zero is the empty sequence at offset 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    /// The monomial `c q^k` with `k` possibly negative.
    pub fn monomial(c: i64, k: i64) -> LaurentPoly {
        LaurentPoly::from_parts(k, vec![c])
    }

    pub fn from_parts(offset: i64, mut coeffs: Vec<i64>) -> LaurentPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..leading_zeros);
        if coeffs.is_empty() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            offset: offset + leading_zeros as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^k`.
    pub fn coeff(&self, k: i64) -> i64 {
        if k < self.offset {
            return 0;
        }
        self.coeffs
            .get((k - self.offset) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn highest_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = self
            .highest_degree()
            .unwrap()
            .max(other.highest_degree().unwrap());
        let coeffs = (lo..=hi)
            .map(|k| add_i64(self.coeff(k), other.coeff(k)))
            .collect();
        LaurentPoly::from_parts(lo, coeffs)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = add_i64(coeffs[i + j], mul_i64(a, b));
            }
        }
        LaurentPoly::from_parts(self.offset + other.offset, coeffs)
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        LaurentPoly::from_parts(
            self.offset,
            self.coeffs.iter().map(|&a| mul_i64(a, c)).collect(),
        )
    }

    /// Multiplication by `q^k` with `k` possibly negative.
    pub fn mul_q_power(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Conversion back to a plain polynomial when no negative powers occur.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.offset < 0 {
            return None;
        }
        let mut coeffs = vec![0i64; self.offset as usize];
        coeffs.extend_from_slice(&self.coeffs);
        Some(IntPoly::from_coeffs(coeffs))
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (i64, i64)>) -> fmt::Result {
    // sparse descending, e.g. "q^2 - q", "1", "0"
    let mut first = true;
    for (k, c) in terms {
        if c == 0 {
            continue;
        }
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
            first = false;
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let a = c.unsigned_abs();
        match k {
            0 => write!(f, "{a}")?,
            1 => {
                if a == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "{a}q")?;
                }
            }
            _ => {
                if a == 1 {
                    write!(f, "q^{k}")?;
                } else {
                    write!(f, "{a}q^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, &c)| (k as i64, c)),
        )
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let off = self.offset;
        fmt_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, &c)| (off + k as i64, c)),
        )
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_examples() {
        let q_minus_1 = IntPoly::q_minus_one();
        assert_eq!(
            q_minus_1.mul(&q_minus_1),
            IntPoly::from_coeffs(vec![1, -2, 1])
        );
        let p = IntPoly::from_coeffs(vec![3, 0, 7]);
        assert_eq!(p.add(&IntPoly::zero()), p);
        assert_eq!(
            q_minus_1
                .mul(&IntPoly::one())
                .add(&IntPoly::q().mul(&IntPoly::zero())),
            q_minus_1
        );
    }

    #[test]
    fn reverse_scaled_examples() {
        let q_minus_1 = IntPoly::q_minus_one();
        assert_eq!(
            q_minus_1.reverse_scaled(1),
            IntPoly::from_coeffs(vec![1, -1]).to_laurent()
        );
        assert_eq!(
            IntPoly::one().reverse_scaled(0),
            IntPoly::one().to_laurent()
        );
        let q2_minus_q = IntPoly::from_coeffs(vec![0, -1, 1]);
        assert_eq!(
            q2_minus_q.reverse_scaled(2),
            IntPoly::from_coeffs(vec![1, -1]).to_laurent()
        );
    }

    #[test]
    fn truncate_examples() {
        let p = IntPoly::from_coeffs(vec![-1, 0, 1]);
        assert_eq!(p.truncate_to_degree(0), IntPoly::constant(-1));
        assert_eq!(p.truncate_to_degree(2), p);
        assert_eq!(
            IntPoly::q_minus_one().truncate_to_degree(-1),
            IntPoly::zero()
        );
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(IntPoly::q_minus_one().eval_at_one(), 0);
        assert_eq!(IntPoly::from_coeffs(vec![0, -1, 1]).eval_at_one(), 0);
        assert_eq!(IntPoly::from_coeffs(vec![1, 1]).eval_at_one(), 2);
    }

    #[test]
    fn display_forms() {
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::one().to_string(), "1");
        assert_eq!(IntPoly::from_coeffs(vec![0, -1, 1]).to_string(), "q^2 - q");
        assert_eq!(IntPoly::from_coeffs(vec![-1, 2]).to_string(), "2q - 1");
        assert_eq!(IntPoly::from_coeffs(vec![1, -1]).to_string(), "-q + 1");
        assert_eq!(LaurentPoly::monomial(1, -2).to_string(), "q^-2");
    }

    #[test]
    fn laurent_round_trip() {
        let p = IntPoly::from_coeffs(vec![2, 0, -3, 1]);
        assert_eq!(p.to_laurent().to_int_poly().unwrap(), p);
        assert_eq!(p.to_laurent().mul_q_power(-1).to_int_poly(), None);
        assert_eq!(
            p.to_laurent()
                .mul_q_power(-1)
                .mul_q_power(1)
                .to_int_poly()
                .unwrap(),
            p
        );
    }

    fn signed_reverse(p: &IntPoly, d: i64) -> IntPoly {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        p.reverse_scaled(d).scale(sign).to_int_poly().unwrap()
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-50i64..=50, 0..6).prop_map(IntPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), IntPoly::zero());
            prop_assert_eq!(a.mul(&IntPoly::one()), a.clone());
        }

        #[test]
        fn normalization_idempotent(a in arb_poly()) {
            let renorm = IntPoly::from_coeffs(a.coeffs().to_vec());
            prop_assert_eq!(renorm, a);
        }

        #[test]
        fn signed_reverse_involutive(a in arb_poly(), extra in 0i64..4) {
            let d = a.degree().map_or(0, |d| d as i64) + extra;
            prop_assert_eq!(signed_reverse(&signed_reverse(&a, d), d), a);
        }

        #[test]
        fn laurent_ring_axioms(
            a in arb_poly(), b in arb_poly(),
            ka in -3i64..3, kb in -3i64..3,
        ) {
            let la = a.to_laurent().mul_q_power(ka);
            let lb = b.to_laurent().mul_q_power(kb);
            prop_assert_eq!(la.add(&lb), lb.add(&la));
            prop_assert_eq!(la.mul(&lb), lb.mul(&la));
            prop_assert_eq!(la.sub(&la), LaurentPoly::zero());
        }
    }
}
