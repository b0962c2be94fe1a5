//! Coordinates on the large phase space and truncated series in them.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::ExactRational;

/// The coordinate `t^a_m`: class index `a`, descendent level `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub class: u16,
    pub level: u16,
}

impl Coord {
    pub const fn new(class: u16, level: u16) -> Self {
        Coord { class, level }
    }

    /// Level-`m` coordinate of the only class of a point.
    pub const fn point(level: u16) -> Self {
        Coord { class: 0, level }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}_{}", self.class, self.level)
    }
}

/// A monomial `∏ t^{e}` stored as sorted `(coord, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Coord, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_coords<I: IntoIterator<Item = Coord>>(coords: I) -> Self {
        let mut m = Monomial::one();
        for c in coords {
            m.mul_coord(c, 1);
        }
        m
    }

    pub fn factors(&self) -> &[(Coord, u32)] {
        &self.0
    }

    pub fn exponent(&self, c: Coord) -> u32 {
        self.0.binary_search_by(|(x, _)| x.cmp(&c)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Total descendent weight `Σ level·exponent`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(c, e)| c.level as u32 * e).sum()
    }

    pub fn max_level(&self) -> u16 {
        self.0.iter().map(|(c, _)| c.level).max().unwrap_or(0)
    }

    pub fn mul_coord(&mut self, c: Coord, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.binary_search_by(|(x, _)| x.cmp(&c)) {
            Ok(i) => self.0[i].1 += e,
            Err(i) => self.0.insert(i, (c, e)),
        }
    }

    /// Divides by `c^e`; `None` if the exponent is too small.
    pub fn div_coord(&self, c: Coord, e: u32) -> Option<Monomial> {
        if e == 0 {
            return Some(self.clone());
        }
        let i = self.0.binary_search_by(|(x, _)| x.cmp(&c)).ok()?;
        let have = self.0[i].1;
        if have < e {
            return None;
        }
        let mut out = self.clone();
        if have == e {
            out.0.remove(i);
        } else {
            out.0[i].1 -= e;
        }
        Some(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for &(c, e) in &other.0 {
            out.mul_coord(c, e);
        }
        out
    }

    /// Levels of the point-class coordinates with multiplicity, descending.
    pub fn point_levels(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for &(c, e) in self.0.iter().rev() {
            for _ in 0..e {
                v.push(c.level as u32);
            }
        }
        v
    }

    /// `∏ e_c!`, the symmetry factor of the monomial.
    pub fn automorphisms(&self) -> ExactRational {
        self.0
            .iter()
            .map(|&(_, e)| ExactRational::from(crate::numbers::factorial(e as u64)))
            .product()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (c, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Truncation bounds of a [`TruncatedSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum polynomial degree in the coordinates.
    pub max_degree: u32,
    /// Maximum total descendent weight.
    pub max_weight: u32,
    /// Maximum power of ħ.
    pub max_hbar: i32,
}

impl Caps {
    pub fn admits(&self, m: &Monomial, hbar: i32) -> bool {
        hbar <= self.max_hbar && m.degree() <= self.max_degree && m.weight() <= self.max_weight
    }
}

/// Polynomial in phase-space coordinates and ħ (any integer power), with
/// every monomial outside `caps` dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: BTreeMap<(Monomial, i32), ExactRational>,
    caps: Caps,
}

impl TruncatedSeries {
    pub fn new(caps: Caps) -> Self {
        TruncatedSeries { terms: BTreeMap::new(), caps }
    }

    pub fn constant(c: ExactRational, caps: Caps) -> Self {
        let mut s = Self::new(caps);
        s.add_term(Monomial::one(), 0, c);
        s
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Adds `c · m · ħ^hbar`; silently dropped when outside the caps.
    pub fn add_term(&mut self, m: Monomial, hbar: i32, c: ExactRational) -> bool {
        if c.is_zero() || !self.caps.admits(&m, hbar) {
            return false;
        }
        let key = (m, hbar);
        let slot = self.terms.entry(key.clone()).or_insert_with(ExactRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        true
    }

    pub fn coeff(&self, m: &Monomial, hbar: i32) -> ExactRational {
        self.terms.get(&(m.clone(), hbar)).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i32, &ExactRational)> {
        self.terms.iter().map(|((m, h), c)| (m, *h, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, h, c) in other.terms() {
            out.add_term(m.clone(), h, c.clone());
        }
        out
    }

    /// Product truncated to `self.caps`. Exact on a monomial only when both
    /// factors hold every term that can contribute to it.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new(self.caps);
        for (m1, h1, c1) in self.terms() {
            for (m2, h2, c2) in other.terms() {
                if m1.degree() + m2.degree() > self.caps.max_degree
                    || m1.weight() + m2.weight() > self.caps.max_weight
                {
                    continue;
                }
                out.add_term(m1.mul(m2), h1 + h2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((m, h), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*hbar^{h}*{m}")?;
        }
        Ok(())
    }
}
