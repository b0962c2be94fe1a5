//! Degree 0 descendent Gromov–Witten invariants.

use std::fmt;
use std::str::FromStr;

use crate::error::{HodgeError, Result};
use crate::hodge::integral;
use crate::key::{ClassTag, IntegralKey};
use crate::numbers::binomial;
use crate::rational::ExactRational;

use super::euler::{euler_class, euler_class_genus1};
use super::ring::LambdaRingElem;

/// A target whose even cohomology has one class `H^j` in each degree
/// `j = 0..=r`, with `H^i H^j = H^{i+j}` and `∫ H^r = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Point,
    Projective(u32),
    /// A curve of the given genus; `H^1 = ω` is the point class.
    Curve(u32),
}

impl Target {
    pub fn dim(&self) -> u32 {
        match self {
            Target::Point => 0,
            Target::Projective(r) => *r,
            Target::Curve(_) => 1,
        }
    }

    /// `c_i(X) = chern(i) · H^i`.
    pub fn chern(&self, i: u32) -> ExactRational {
        match self {
            Target::Point => ExactRational::from(u32::from(i == 0)),
            Target::Projective(r) => ExactRational::from(binomial(*r as u64 + 1, i as u64)),
            Target::Curve(gamma) => match i {
                0 => ExactRational::one(),
                1 => ExactRational::from(2 - 2 * *gamma as i64),
                _ => ExactRational::zero(),
            },
        }
    }

    /// `∫_X c^m`, where `m` lists exponents of `c_1, …, c_r`.
    pub fn chern_number(&self, monomial: &[u32], extra_degree: u32) -> ExactRational {
        let degree: u32 = monomial.iter().enumerate().map(|(i, e)| (i as u32 + 1) * e).sum();
        if degree + extra_degree != self.dim() {
            return ExactRational::zero();
        }
        let mut v = ExactRational::one();
        for (i, &e) in monomial.iter().enumerate() {
            v *= self.chern(i as u32 + 1).pow(e as i32);
        }
        v
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Point => f.write_str("point"),
            Target::Projective(r) => write!(f, "P{r}"),
            Target::Curve(g) => write!(f, "curve:{g}"),
        }
    }
}

impl FromStr for Target {
    type Err = HodgeError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || HodgeError::InvalidInput(format!("unknown target `{s}` (point, P<r>, curve:<genus>)"));
        if s == "point" {
            return Ok(Target::Point);
        }
        if let Some(r) = s.strip_prefix('P').or_else(|| s.strip_prefix('p')) {
            return r.parse().map(Target::Projective).map_err(|_| bad());
        }
        if let Some(g) = s.strip_prefix("curve:") {
            return g.parse().map(Target::Curve).map_err(|_| bad());
        }
        Err(bad())
    }
}

fn tag_of(genus: u32, lambda: &[u32]) -> Option<ClassTag> {
    let g = genus as usize;
    let mut idx = Vec::new();
    for (i, &e) in lambda.iter().enumerate() {
        for _ in 0..e {
            idx.push(i + 1);
        }
    }
    idx.sort_unstable_by(|a, b| b.cmp(a));
    let rel: Vec<usize> = idx.iter().map(|&i| g - i).collect();
    Some(match rel.as_slice() {
        [] => ClassTag::None,
        [0] => ClassTag::LambdaG,
        [1] => ClassTag::LambdaGm1,
        [0, 1] => ClassTag::LambdaGGm1,
        [0, 2] => ClassTag::LambdaGGm2,
        [0, 1, 2] => ClassTag::LambdaGGm1Gm2,
        _ => return None,
    })
}

/// The obstruction class used in genus `g` for a target of dimension `r`.
pub fn obstruction_class(dim: u32, genus: u32) -> Result<LambdaRingElem> {
    match (genus, dim) {
        (0, _) => Err(HodgeError::Domain("degree 0 invariants are computed for g ≥ 1".into())),
        (_, 0) => Ok(LambdaRingElem::one(genus, 0)),
        (1, r) => euler_class_genus1(r),
        (_, r) if r > 3 => Ok(LambdaRingElem::zero(genus, r)),
        (g, r) => euler_class(r, g),
    }
}

/// `∫_{[M̄_{g,n}(X,0)]^{vir}} ∏ ψ_i^{k_i} ev_i^*(H^{a_i})` for insertions
/// `(a_i, k_i)`.
pub fn degree0_gw(target: &Target, genus: u32, insertions: &[(u32, u32)]) -> Result<ExactRational> {
    let r = target.dim();
    for &(a, _) in insertions {
        if a > r {
            return Err(HodgeError::InvalidInput(format!("class H^{a} does not exist on {target}")));
        }
    }
    let e = obstruction_class(r, genus)?;
    let inserted: u32 = insertions.iter().map(|(a, _)| a).sum();
    let exps: Vec<u32> = insertions.iter().map(|(_, k)| *k).collect();
    let mut total = ExactRational::zero();
    for (chern, lambda, coeff) in e.terms() {
        let x = target.chern_number(chern, inserted);
        if x.is_zero() {
            continue;
        }
        let tag = tag_of(genus, lambda).ok_or_else(|| {
            HodgeError::Domain(format!("no provider for the λ monomial {lambda:?} in genus {genus}"))
        })?;
        let key = IntegralKey::new(genus, &exps, tag);
        key.require_stable()?;
        if !key.is_potentially_nonzero() {
            continue;
        }
        total += coeff * &x * integral(&key)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::lambda_cube;
    use crate::rational::q;

    #[test]
    fn projective_line_spot_values() {
        let p1 = Target::Projective(1);
        assert_eq!(degree0_gw(&p1, 2, &[(1, 2)]).unwrap(), q(7, 5760));
        assert_eq!(degree0_gw(&p1, 2, &[(0, 3)]).unwrap(), q(-1, 240));
    }

    #[test]
    fn threefold_without_insertions() {
        let p3 = Target::Projective(3);
        for g in 2..=4 {
            let s = if g % 2 == 0 { q(1, 1) } else { q(-1, 1) };
            // ∫c_3 = 4, ∫c_2c_1 = 24
            let expected = s * q(1, 2) * q(4 - 24, 1) * lambda_cube(g).unwrap();
            assert_eq!(degree0_gw(&p3, g, &[]).unwrap(), expected, "g = {g}");
        }
    }

    #[test]
    fn genus_one_curve() {
        // c_1 − λ_1 on an elliptic curve: only λ_1 survives, and ∫_X 1 = 0
        let e = Target::Curve(1);
        assert_eq!(degree0_gw(&e, 1, &[(1, 0)]).unwrap(), -q(1, 24));
        let p1 = Target::Projective(1);
        assert_eq!(degree0_gw(&p1, 1, &[(0, 1)]).unwrap(), q(2, 24) - q(0, 1));
    }

    #[test]
    fn point_target_gives_psi_integrals() {
        assert_eq!(degree0_gw(&Target::Point, 1, &[(0, 1)]).unwrap(), q(1, 24));
        assert_eq!(degree0_gw(&Target::Point, 2, &[(0, 4)]).unwrap(), q(1, 1152));
    }

    #[test]
    fn high_dimension_vanishes() {
        assert!(degree0_gw(&Target::Projective(4), 2, &[]).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(degree0_gw(&Target::Projective(1), 2, &[(2, 0)]).is_err());
        assert!(degree0_gw(&Target::Projective(1), 0, &[(0, 0)]).is_err());
        assert!("Q3".parse::<Target>().is_err());
        assert_eq!("curve:2".parse::<Target>().unwrap(), Target::Curve(2));
    }
}
