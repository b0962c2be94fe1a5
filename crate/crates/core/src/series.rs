//! Truncated univariate power series over the rationals.

use std::ops::{Add, Mul, Sub};

use crate::error::{HodgeError, Result};
use crate::rational::ExactRational;

/// `Σ_{i=0}^{cap} a_i t^i`, with everything above `cap` discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series1D {
    coeffs: Vec<ExactRational>,
}

impl Series1D {
    pub fn zero(cap: usize) -> Self {
        Series1D { coeffs: vec![ExactRational::zero(); cap + 1] }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = ExactRational::one();
        s
    }

    /// Builds from a coefficient list, padding or truncating to `cap`.
    pub fn from_coeffs(mut coeffs: Vec<ExactRational>, cap: usize) -> Self {
        coeffs.resize(cap + 1, ExactRational::zero());
        Series1D { coeffs }
    }

    /// Coefficients from a generator `i -> a_i`.
    pub fn from_fn(cap: usize, f: impl FnMut(usize) -> ExactRational) -> Self {
        Series1D { coeffs: (0..=cap).map(f).collect() }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    fn check_cap(&self, other: &Self) {
        assert_eq!(self.cap(), other.cap(), "series caps differ");
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Series1D { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(HodgeError::Domain("series with zero constant term is not a unit".into()));
        }
        let inv0 = a0.recip();
        let cap = self.cap();
        let mut out: Vec<ExactRational> = Vec::with_capacity(cap + 1);
        out.push(inv0.clone());
        for n in 1..=cap {
            let mut acc = ExactRational::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[n - i];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series1D { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_cap(other);
        Ok(self * &other.inverse()?)
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_cap(inner);
        if !inner.coeffs[0].is_zero() {
            return Err(HodgeError::Domain("inner series must have zero constant term".into()));
        }
        let cap = self.cap();
        // Horner: a_0 + inner*(a_1 + inner*(...))
        let mut acc = Series1D::zero(cap);
        for a in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }
}

impl Add for &Series1D {
    type Output = Series1D;
    fn add(self, rhs: &Series1D) -> Series1D {
        self.check_cap(rhs);
        Series1D { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Series1D {
    type Output = Series1D;
    fn sub(self, rhs: &Series1D) -> Series1D {
        self.check_cap(rhs);
        Series1D { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Series1D {
    type Output = Series1D;
    fn mul(self, rhs: &Series1D) -> Series1D {
        self.check_cap(rhs);
        let cap = self.cap();
        let mut out = vec![ExactRational::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=cap - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series1D { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn series(cs: &[i64], cap: usize) -> Series1D {
        Series1D::from_coeffs(cs.iter().map(|&c| ExactRational::from(c)).collect(), cap)
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_t = series(&[1, -1], 5);
        let inv = one_minus_t.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| c.is_one()));
    }

    #[test]
    fn non_unit_rejected() {
        assert!(series(&[0, 1], 3).inverse().is_err());
    }

    #[test]
    fn compose_square() {
        // (1 + u)^2 with u = t/2
        let f = series(&[1, 2, 1], 4);
        let u = Series1D::from_coeffs(vec![q(0, 1), q(1, 2)], 4);
        let c = f.compose(&u).unwrap();
        assert_eq!(c.coeffs()[..3], [q(1, 1), q(1, 1), q(1, 4)]);
        assert!(c.coeff(3).is_zero());
    }

    #[test]
    fn truncation_never_reads_past_cap() {
        let a = series(&[1, 1, 1, 1], 3);
        let b = &a * &a;
        assert_eq!(b.cap(), 3);
        assert_eq!(b.coeff(3), ExactRational::from(4));
    }

    fn arb_series(cap: usize) -> impl Strategy<Value = Series1D> {
        proptest::collection::vec((-20i64..20, 1i64..7), cap + 1).prop_map(move |v| {
            Series1D::from_coeffs(v.into_iter().map(|(p, d)| q(p, d)).collect(), cap)
        })
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_associates(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
