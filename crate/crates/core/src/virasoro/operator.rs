//! Normal-ordered polynomial differential operators on the large phase space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::numbers::{binomial, factorial};
use crate::phase::{Coord, Monomial, TruncatedSeries};
use crate::rational::ExactRational;

/// `coeff · ħ^hbar · (multiply-by monomial) · ∂^(differentiate-by monomial)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: ExactRational,
    pub hbar: i32,
    pub mult: Monomial,
    pub diff: Monomial,
}

/// Finite sum of normal-ordered [`Term`]s (multiplications left of derivatives).
///
/// `mult_cap` records the truncation: every term of the untruncated operator
/// whose multiplications only involve levels `≤ mult_cap` is present.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialOperator {
    terms: BTreeMap<(i32, Monomial, Monomial), ExactRational>,
    mult_cap: u16,
}

impl DifferentialOperator {
    pub fn zero(mult_cap: u16) -> Self {
        DifferentialOperator { terms: BTreeMap::new(), mult_cap }
    }

    pub fn mult_cap(&self) -> u16 {
        self.mult_cap
    }

    pub fn add_term(&mut self, coeff: ExactRational, hbar: i32, mult: Monomial, diff: Monomial) {
        if coeff.is_zero() {
            return;
        }
        let key = (hbar, mult, diff);
        let slot = self.terms.entry(key.clone()).or_insert_with(ExactRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Convenience for the common shapes `c·x·∂_y`, `c·∂_y`, `c·∂_x∂_y`, …
    pub fn add(&mut self, coeff: ExactRational, hbar: i32, mult: &[Coord], diff: &[Coord]) {
        self.add_term(
            coeff,
            hbar,
            Monomial::from_coords(mult.iter().copied()),
            Monomial::from_coords(diff.iter().copied()),
        );
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|((h, m, d), c)| Term {
            coeff: c.clone(),
            hbar: *h,
            mult: m.clone(),
            diff: d.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given normal-ordered term shape.
    pub fn coefficient(&self, hbar: i32, mult: &[Coord], diff: &[Coord]) -> ExactRational {
        let key = (
            hbar,
            Monomial::from_coords(mult.iter().copied()),
            Monomial::from_coords(diff.iter().copied()),
        );
        self.terms.get(&key).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        let mut out = Self::zero(self.mult_cap);
        for t in self.terms() {
            out.add_term(t.coeff * c, t.hbar, t.mult, t.diff);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.mult_cap = self.mult_cap.min(other.mult_cap);
        for t in other.terms() {
            out.add_term(-t.coeff, t.hbar, t.mult, t.diff);
        }
        out
    }

    /// Keeps only terms whose multiplications have levels `≤ level`.
    pub fn restrict_mult(&self, level: u16) -> Self {
        let mut out = Self::zero(level.min(self.mult_cap));
        for t in self.terms() {
            if t.mult.factors().iter().all(|(c, _)| c.level <= level) {
                out.add_term(t.coeff, t.hbar, t.mult, t.diff);
            }
        }
        out
    }

    /// Normal-ordered composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.mult_cap.min(other.mult_cap));
        for a in self.terms() {
            for b in other.terms() {
                leibniz(&a, &b, &mut out);
            }
        }
        out
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// Applies the operator to a truncated series.
    ///
    /// An output coefficient is *determined* when every input coefficient it
    /// reads lies inside the series caps and no truncated operator term can
    /// reach it; everything else is reported in `indeterminate` instead of
    /// being silently treated as zero.
    pub fn apply(&self, series: &TruncatedSeries) -> Applied {
        let caps = series.caps();
        let mut value = TruncatedSeries::new(caps);
        let mut touched: BTreeSet<(Monomial, i32)> = BTreeSet::new();
        for (m, h, c) in series.terms() {
            for t in self.terms() {
                let Some((factor, rest)) = differentiate(m, &t.diff) else { continue };
                let out = rest.mul(&t.mult);
                let hb = h + t.hbar;
                if caps.admits(&out, hb) {
                    touched.insert((out.clone(), hb));
                    value.add_term(out, hb, &t.coeff * c * factor);
                }
            }
        }
        let indeterminate = touched
            .iter()
            .filter(|(out, hb)| !self.determines(out, *hb, series))
            .cloned()
            .collect();
        Applied { value, reached: touched, indeterminate }
    }

    fn determines(&self, out: &Monomial, hbar: i32, series: &TruncatedSeries) -> bool {
        if out.max_level() > self.mult_cap {
            return false;
        }
        let caps = series.caps();
        for t in self.terms() {
            let mut src = out.clone();
            let mut divides = true;
            for &(c, e) in t.mult.factors() {
                match src.div_coord(c, e) {
                    Some(s) => src = s,
                    None => {
                        divides = false;
                        break;
                    }
                }
            }
            if divides && !caps.admits(&src.mul(&t.diff), hbar - t.hbar) {
                return false;
            }
        }
        true
    }
}

/// Result of [`DifferentialOperator::apply`].
#[derive(Clone, Debug)]
pub struct Applied {
    pub value: TruncatedSeries,
    /// Every output monomial some term contributed to, including exact cancellations.
    pub reached: BTreeSet<(Monomial, i32)>,
    pub indeterminate: BTreeSet<(Monomial, i32)>,
}

impl Applied {
    /// Coefficients whose value does not depend on truncated data.
    pub fn determined(&self) -> impl Iterator<Item = (&Monomial, i32, ExactRational)> + '_ {
        self.reached
            .difference(&self.indeterminate)
            .map(|(m, h)| (m, *h, self.value.coeff(m, *h)))
    }

    pub fn determined_count(&self) -> usize {
        self.determined().count()
    }
}

/// `∂^d (m)` as `factor · rest`, or `None` if it vanishes.
fn differentiate(m: &Monomial, d: &Monomial) -> Option<(ExactRational, Monomial)> {
    let mut rest = m.clone();
    let mut factor = ExactRational::one();
    for &(c, e) in d.factors() {
        let have = m.exponent(c);
        if have < e {
            return None;
        }
        factor *= ExactRational::from(factorial(have as u64))
            / ExactRational::from(factorial((have - e) as u64));
        rest = rest.div_coord(c, e)?;
    }
    Some((factor, rest))
}

/// Adds `a ∘ b` in normal order: `∂^{D_a} X_b = Σ_j C(D_a, j) (∂^j X_b) ∂^{D_a − j}`.
fn leibniz(a: &Term, b: &Term, out: &mut DifferentialOperator) {
    // coordinates where a's derivatives meet b's multiplications
    let shared: Vec<(Coord, u32, u32)> = a
        .diff
        .factors()
        .iter()
        .filter_map(|&(c, p)| {
            let q = b.mult.exponent(c);
            (q > 0).then_some((c, p, q))
        })
        .collect();

    fn go(
        idx: usize,
        shared: &[(Coord, u32, u32)],
        coeff: ExactRational,
        diff: Monomial,
        mult: Monomial,
        a: &Term,
        b: &Term,
        out: &mut DifferentialOperator,
    ) {
        if idx == shared.len() {
            let m = a.mult.mul(&mult);
            let d = diff.mul(&b.diff);
            out.add_term(&coeff * &a.coeff * &b.coeff, a.hbar + b.hbar, m, d);
            return;
        }
        let (c, p, q) = shared[idx];
        for j in 0..=p.min(q) {
            let w = ExactRational::from(binomial(p as u64, j as u64))
                * ExactRational::from(factorial(q as u64))
                / ExactRational::from(factorial((q - j) as u64));
            let d = diff.div_coord(c, j).expect("j <= p");
            let m = mult.div_coord(c, j).expect("j <= q");
            go(idx + 1, shared, &coeff * w, d, m, a, b, out);
        }
    }

    go(0, &shared, ExactRational::one(), a.diff.clone(), b.mult.clone(), a, b, out);
}

impl fmt::Display for DifferentialOperator {
    /// One term per line, in canonical `(ħ power, multiplications, derivatives)` order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for ((h, m, d), c) in &self.terms {
            write!(f, "{c}")?;
            if *h != 0 {
                write!(f, " hbar^{h}")?;
            }
            if m.degree() > 0 {
                write!(f, " {m}")?;
            }
            for &(coord, e) in d.factors() {
                for _ in 0..e {
                    write!(f, " d/d{coord}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::Caps;

    fn t(l: u16) -> Coord {
        Coord::point(l)
    }

    fn caps() -> Caps {
        Caps { max_degree: 4, max_weight: 4, max_hbar: 2 }
    }

    #[test]
    fn multiply_by_t0() {
        let mut op = DifferentialOperator::zero(4);
        op.add(ExactRational::one(), 0, &[t(0)], &[]);
        let one = TruncatedSeries::constant(ExactRational::one(), caps());
        let r = op.apply(&one);
        assert_eq!(r.value.coeff(&Monomial::from_coords([t(0)]), 0), ExactRational::one());
        assert_eq!(r.value.len(), 1);
    }

    #[test]
    fn derivative_of_square() {
        let mut op = DifferentialOperator::zero(4);
        op.add(ExactRational::one(), 0, &[], &[t(1)]);
        let mut s = TruncatedSeries::new(caps());
        s.add_term(Monomial::from_coords([t(1), t(1)]), 0, ExactRational::one());
        let r = op.apply(&s);
        assert_eq!(r.value.coeff(&Monomial::from_coords([t(1)]), 0), ExactRational::from(2));
        assert_eq!(r.value.len(), 1);
    }

    #[test]
    fn heisenberg_relation() {
        let mut d = DifferentialOperator::zero(4);
        d.add(ExactRational::one(), 0, &[], &[t(0)]);
        let mut x = DifferentialOperator::zero(4);
        x.add(ExactRational::one(), 0, &[t(0)], &[]);
        let c = d.commutator(&x);
        assert_eq!(c.len(), 1);
        assert_eq!(c.coefficient(0, &[], &[]), ExactRational::one());
    }

    #[test]
    fn self_commutator_vanishes() {
        let mut a = DifferentialOperator::zero(4);
        a.add(ExactRational::from(3), 0, &[t(1), t(0)], &[t(2)]);
        a.add(ExactRational::from(-2), 1, &[], &[t(0), t(0)]);
        assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn reaching_outside_caps_is_indeterminate() {
        // ∂_{t_0} applied to a series whose degree cap is hit
        let mut op = DifferentialOperator::zero(4);
        op.add(ExactRational::one(), 0, &[], &[t(0)]);
        let mut s = TruncatedSeries::new(caps());
        s.add_term(Monomial::from_coords([t(0); 4]), 0, ExactRational::one());
        let r = op.apply(&s);
        let out = Monomial::from_coords([t(0); 3]);
        assert_eq!(r.value.coeff(&out, 0), ExactRational::from(4));
        assert!(r.indeterminate.is_empty());

        let mut op2 = DifferentialOperator::zero(4);
        op2.add(ExactRational::one(), 0, &[], &[t(0), t(0)]);
        op2.add(ExactRational::one(), 0, &[], &[t(1)]);
        let mut s2 = TruncatedSeries::new(caps());
        s2.add_term(Monomial::from_coords([t(1), t(0), t(0)]), 0, ExactRational::one());
        let r2 = op2.apply(&s2);
        // t_1 reads t_1·t_0^2 (inside) and t_1·t_0·t_0... both fine; t_0^2 reads t_0^2·t_1 and t_0^4
        let m = Monomial::from_coords([t(0), t(0)]);
        assert!(!r2.indeterminate.contains(&(m, 0)));
    }
}
