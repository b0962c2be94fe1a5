//! Cohomology data of a target variety, as needed by the general operators.

use crate::error::{HodgeError, Result};
use crate::numbers::binomial;
use crate::rational::{q, ExactRational};

pub type Matrix = Vec<Vec<ExactRational>>;

/// Even-degree cohomology basis `γ_a` with its pairing and `c_1` action.
///
/// Index 0 must be the unit class `1 ∈ H^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyData {
    pub dim: u32,
    /// Hodge bidegrees `(p_a, q_a)`.
    pub bidegrees: Vec<(u32, u32)>,
    /// `η_{ab} = ∫ γ_a γ_b`.
    pub pairing: Matrix,
    /// `c1[a][b] = C^b_a`, i.e. `c_1 ∪ γ_a = Σ_b c1[a][b] γ_b`.
    pub c1: Matrix,
    /// `∫ c_r(X)`.
    pub euler: ExactRational,
    /// `∫ c_1 c_{r-1}(X)`.
    pub c1_cr1: ExactRational,
}

impl CohomologyData {
    pub fn point() -> Self {
        CohomologyData {
            dim: 0,
            bidegrees: vec![(0, 0)],
            pairing: vec![vec![ExactRational::one()]],
            c1: vec![vec![ExactRational::zero()]],
            euler: ExactRational::one(),
            c1_cr1: ExactRational::zero(),
        }
    }

    /// `P^r` with basis `1, H, …, H^r`.
    pub fn projective_space(r: u32) -> Self {
        let n = r as usize + 1;
        let mut pairing = zeros(n);
        let mut c1 = zeros(n);
        for i in 0..n {
            pairing[i][n - 1 - i] = ExactRational::one();
            if i + 1 < n {
                c1[i][i + 1] = ExactRational::from(r + 1);
            }
        }
        // c(P^r) = (1 + H)^{r+1}
        let chern = |i: u32| ExactRational::from(binomial(r as u64 + 1, i as u64));
        let c1_cr1 = if r == 0 { ExactRational::zero() } else { chern(1) * chern(r - 1) };
        CohomologyData {
            dim: r,
            bidegrees: (0..=r).map(|j| (j, j)).collect(),
            pairing,
            c1,
            euler: chern(r),
            c1_cr1,
        }
    }

    pub fn size(&self) -> usize {
        self.bidegrees.len()
    }

    /// `b_a = p_a + (1 − r)/2`.
    pub fn weight(&self, a: usize) -> ExactRational {
        ExactRational::from(self.bidegrees[a].0) + q(1 - self.dim as i64, 2)
    }

    /// Checks symmetry, nondegeneracy, self-adjointness and `p_a = q_a`.
    pub fn validate(&self) -> Result<()> {
        let n = self.size();
        let square = |m: &Matrix| m.len() == n && m.iter().all(|row| row.len() == n);
        if !square(&self.pairing) || !square(&self.c1) {
            return Err(HodgeError::InvalidInput("matrix size does not match basis".into()));
        }
        if self.bidegrees.iter().any(|(p, q)| p != q) {
            return Err(HodgeError::Domain(
                "general operators are only built for classes with p = q".into(),
            ));
        }
        if transpose(&self.pairing) != self.pairing {
            return Err(HodgeError::InvalidInput("pairing is not symmetric".into()));
        }
        inverse(&self.pairing)?;
        // C^t η = η C with C_{ab} = c1[a][b] acting on row vectors
        let lowered = mat_mul(&self.c1, &self.pairing);
        if transpose(&lowered) != lowered {
            return Err(HodgeError::InvalidInput("c_1 is not self-adjoint for the pairing".into()));
        }
        Ok(())
    }

    /// `(C^i)^b_a` as `m[a][b]`.
    pub fn c_power(&self, i: u32) -> Matrix {
        let mut m = identity(self.size());
        for _ in 0..i {
            m = mat_mul(&m, &self.c1);
        }
        m
    }

    /// `(C^i)_{ab} = ∫ γ_a c_1^i γ_b`.
    pub fn c_power_lower(&self, i: u32) -> Matrix {
        transpose(&mat_mul(&self.c_power(i), &self.pairing))
    }

    /// `(C^i)^{ab} = η^{ac} (C^i)_{cd} η^{db}`.
    pub fn c_power_upper(&self, i: u32) -> Matrix {
        let inv = inverse(&self.pairing).expect("validated pairing");
        mat_mul(&mat_mul(&inv, &self.c_power_lower(i)), &inv)
    }

    /// `(1/48) ∫ ((3 − r) c_r − 2 c_1 c_{r−1})`.
    pub fn l0_constant(&self) -> ExactRational {
        (ExactRational::from(3 - self.dim as i64) * &self.euler
            - ExactRational::from(2) * &self.c1_cr1)
            / ExactRational::from(48)
    }
}

fn zeros(n: usize) -> Matrix {
    vec![vec![ExactRational::zero(); n]; n]
}

fn identity(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ExactRational::one();
    }
    m
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// Gauss–Jordan inverse over the rationals.
fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| HodgeError::InvalidInput("pairing is degenerate".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= p.clone();
            inv[col][j] *= p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let x = &f * &a[col][j];
                a[r][j] -= x;
                let y = &f * &inv[col][j];
                inv[r][j] -= y;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line() {
        let p1 = CohomologyData::projective_space(1);
        p1.validate().unwrap();
        assert_eq!(p1.weight(0), q(0, 1));
        assert_eq!(p1.weight(1), q(1, 1));
        assert_eq!(p1.euler, q(2, 1));
        assert_eq!(p1.l0_constant(), q(0, 1));
        assert_eq!(p1.c_power_lower(1)[0][0], q(2, 1));
    }

    #[test]
    fn projective_plane_constant() {
        let p2 = CohomologyData::projective_space(2);
        p2.validate().unwrap();
        assert_eq!(p2.l0_constant(), q(-5, 16));
        assert_eq!(p2.c_power_lower(2)[0][0], q(9, 1));
    }

    #[test]
    fn point_constant_is_one_sixteenth() {
        assert_eq!(CohomologyData::point().l0_constant(), q(1, 16));
    }

    #[test]
    fn rejects_odd_classes() {
        let mut d = CohomologyData::projective_space(1);
        d.bidegrees[1] = (1, 0);
        assert!(d.validate().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
    }
}
