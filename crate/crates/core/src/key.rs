//! Canonical keys identifying one Hodge integral.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HodgeError, Result};

/// The λ-class multiplied into the ψ monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    /// Pure ψ integrals.
    None,
    /// `λ_g`
    LambdaG,
    /// `λ_g λ_{g-1}`
    LambdaGGm1,
    /// `λ_{g-1}`
    LambdaGm1,
    /// `λ_g λ_{g-2}`
    LambdaGGm2,
    /// `λ_g λ_{g-1} λ_{g-2}`, the top-degree class on `M̄_g`.
    LambdaGGm1Gm2,
}

impl ClassTag {
    pub const ALL: [ClassTag; 6] = [
        ClassTag::None,
        ClassTag::LambdaG,
        ClassTag::LambdaGGm1,
        ClassTag::LambdaGm1,
        ClassTag::LambdaGGm2,
        ClassTag::LambdaGGm1Gm2,
    ];

    /// Complex codimension of the λ class on `M̄_{g,n}`.
    pub fn codimension(self, genus: u32) -> i64 {
        let g = genus as i64;
        match self {
            ClassTag::None => 0,
            ClassTag::LambdaG => g,
            ClassTag::LambdaGGm1 => 2 * g - 1,
            ClassTag::LambdaGm1 => g - 1,
            ClassTag::LambdaGGm2 => 2 * g - 2,
            ClassTag::LambdaGGm1Gm2 => 3 * g - 3,
        }
    }

    /// True when a factor `λ_i` with `i < 0` appears, making the class zero.
    pub fn vanishes_in_genus(self, genus: u32) -> bool {
        match self {
            ClassTag::None | ClassTag::LambdaG => false,
            ClassTag::LambdaGm1 | ClassTag::LambdaGGm1 => genus < 1,
            ClassTag::LambdaGGm2 | ClassTag::LambdaGGm1Gm2 => genus < 2,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            ClassTag::None => "psi",
            ClassTag::LambdaG => "g",
            ClassTag::LambdaGGm1 => "gg",
            ClassTag::LambdaGm1 => "gm1",
            ClassTag::LambdaGGm2 => "gg2",
            ClassTag::LambdaGGm1Gm2 => "ggg",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ClassTag {
    type Err = HodgeError;

    fn from_str(s: &str) -> Result<Self> {
        ClassTag::ALL
            .into_iter()
            .find(|t| t.code() == s)
            .ok_or_else(|| HodgeError::InvalidInput(format!("unknown class tag {s:?}")))
    }
}

/// `(g, k_1 ≥ k_2 ≥ … ≥ k_n, tag)`: the integral `∫_{M̄_{g,n}} ψ_1^{k_1}…ψ_n^{k_n} · tag`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntegralKey {
    genus: u32,
    exponents: Vec<u32>,
    tag: ClassTag,
}

impl IntegralKey {
    pub fn new(genus: u32, exponents: &[u32], tag: ClassTag) -> Self {
        let mut exponents = exponents.to_vec();
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        IntegralKey { genus, exponents, tag }
    }

    pub fn psi(genus: u32, exponents: &[u32]) -> Self {
        Self::new(genus, exponents, ClassTag::None)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn tag(&self) -> ClassTag {
        self.tag
    }

    pub fn points(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_stable(&self) -> bool {
        2 * self.genus as i64 - 2 + self.points() as i64 > 0
    }

    /// `Σ k_i = dim M̄_{g,n} − codim(tag)`.
    pub fn satisfies_dimension(&self) -> bool {
        let n = self.points() as i64;
        let dim = 3 * self.genus as i64 - 3 + n;
        let sum: i64 = self.exponents.iter().map(|&k| k as i64).sum();
        sum == dim - self.tag.codimension(self.genus)
    }

    /// Stable, correct degree, and the class is not identically zero.
    pub fn is_potentially_nonzero(&self) -> bool {
        self.is_stable() && self.satisfies_dimension() && !self.tag.vanishes_in_genus(self.genus)
    }

    pub fn require_stable(&self) -> Result<()> {
        if self.is_stable() {
            Ok(())
        } else {
            Err(HodgeError::Unstable { genus: self.genus, points: self.points() })
        }
    }

    /// Same genus and class, different insertions.
    pub fn with_exponents(&self, exponents: &[u32]) -> Self {
        Self::new(self.genus, exponents, self.tag)
    }
}

impl fmt::Display for IntegralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, k) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "tau_{k}")?;
        }
        let class = match self.tag {
            ClassTag::None => "",
            ClassTag::LambdaG => " | lambda_g",
            ClassTag::LambdaGGm1 => " | lambda_g lambda_{g-1}",
            ClassTag::LambdaGm1 => " | lambda_{g-1}",
            ClassTag::LambdaGGm2 => " | lambda_g lambda_{g-2}",
            ClassTag::LambdaGGm1Gm2 => " | lambda_g lambda_{g-1} lambda_{g-2}",
        };
        write!(f, "{class}>_{}", self.genus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let a = IntegralKey::psi(2, &[1, 3, 2]);
        let b = IntegralKey::psi(2, &[3, 2, 1]);
        assert_eq!(a, b);
        assert_eq!(a.exponents(), &[3, 2, 1]);
    }

    #[test]
    fn dimension_predicates() {
        assert!(IntegralKey::psi(0, &[0, 0, 0]).satisfies_dimension());
        assert!(IntegralKey::new(2, &[1, 2], ClassTag::LambdaG).satisfies_dimension());
        assert!(IntegralKey::new(2, &[1], ClassTag::LambdaGGm1).satisfies_dimension());
        assert!(IntegralKey::new(2, &[3], ClassTag::LambdaGm1).satisfies_dimension());
        assert!(IntegralKey::new(3, &[3], ClassTag::LambdaGGm2).satisfies_dimension());
        assert!(IntegralKey::new(3, &[1], ClassTag::LambdaGGm1Gm2).satisfies_dimension());
        assert!(!IntegralKey::psi(0, &[2, 0, 0]).satisfies_dimension());
    }

    #[test]
    fn stability() {
        assert!(!IntegralKey::psi(0, &[0, 0]).is_stable());
        assert!(!IntegralKey::psi(1, &[]).is_stable());
        assert!(IntegralKey::psi(1, &[1]).is_stable());
        assert!(IntegralKey::psi(2, &[]).is_stable());
    }

    #[test]
    fn tag_codes_round_trip() {
        for t in ClassTag::ALL {
            assert_eq!(t.code().parse::<ClassTag>().unwrap(), t);
        }
    }
}
