//! Euler class of `T_X ⊠ E^∨` by the splitting principle.

use std::collections::BTreeMap;

use crate::error::{HodgeError, Result};
use crate::rational::ExactRational;

use super::ring::{mumford_reduce, LambdaMonomial, LambdaRingElem};

/// Polynomial in the Chern roots `x_1, …, x_r` with λ-monomial coefficients.
pub(crate) type RootPolynomial = BTreeMap<(Vec<u32>, LambdaMonomial), ExactRational>;

fn add_into(p: &mut RootPolynomial, key: (Vec<u32>, LambdaMonomial), v: ExactRational) {
    let slot = p.entry(key.clone()).or_insert_with(ExactRational::zero);
    *slot += v;
    if slot.is_zero() {
        p.remove(&key);
    }
}

/// `∏_j Σ_i (−1)^i λ_i x_j^{g−i}`, keeping total root degree `≤ r`.
pub(crate) fn root_product(dim: u32, genus: u32) -> RootPolynomial {
    let r = dim as usize;
    let g = genus as usize;
    let mut acc = RootPolynomial::new();
    acc.insert((vec![0; r], vec![0; g]), ExactRational::one());
    for j in 0..r {
        let mut next = RootPolynomial::new();
        for ((x, l), v) in &acc {
            let used: u32 = x.iter().sum();
            for i in 0..=genus {
                let power = genus - i;
                if used + power > dim {
                    continue;
                }
                let mut x2 = x.clone();
                x2[j] += power;
                let mut l2 = l.clone();
                if i > 0 {
                    l2[i as usize - 1] += 1;
                }
                let s = if i % 2 == 0 { v.clone() } else { -v };
                add_into(&mut next, (x2, l2), s);
            }
        }
        acc = next;
    }
    acc
}

/// `e_k(x_1, …, x_r)` as a polynomial in the roots.
fn elementary(r: usize, k: usize) -> BTreeMap<Vec<u32>, ExactRational> {
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize == k {
            let x = (0..r).map(|i| (mask >> i) & 1).collect();
            out.insert(x, ExactRational::one());
        }
    }
    out
}

fn poly_mul(
    a: &BTreeMap<Vec<u32>, ExactRational>,
    b: &BTreeMap<Vec<u32>, ExactRational>,
) -> BTreeMap<Vec<u32>, ExactRational> {
    let mut out: BTreeMap<Vec<u32>, ExactRational> = BTreeMap::new();
    for (x, u) in a {
        for (y, v) in b {
            let z: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(z).or_insert_with(ExactRational::zero) += u * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Rewrites a symmetric root polynomial in the Chern classes `c_1, …, c_r`.
pub(crate) fn symmetrize(dim: u32, genus: u32, poly: &RootPolynomial) -> Result<LambdaRingElem> {
    let r = dim as usize;
    let mut by_lambda: BTreeMap<LambdaMonomial, BTreeMap<Vec<u32>, ExactRational>> = BTreeMap::new();
    for ((x, l), v) in poly {
        by_lambda.entry(l.clone()).or_default().insert(x.clone(), v.clone());
    }
    let mut terms = Vec::new();
    for (l, mut p) in by_lambda {
        while let Some((lead, coeff)) = p.iter().next_back().map(|(x, v)| (x.clone(), v.clone())) {
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(HodgeError::Domain(format!("root polynomial is not symmetric at {lead:?}")));
            }
            // lead = (a_1 ≥ … ≥ a_r) ↦ e_1^{a_1−a_2} ⋯ e_r^{a_r}
            let mut chern = vec![0u32; r];
            let mut expansion = BTreeMap::from([(vec![0u32; r], ExactRational::one())]);
            for k in 0..r {
                let e = lead[k] - lead.get(k + 1).copied().unwrap_or(0);
                chern[k] = e;
                for _ in 0..e {
                    expansion = poly_mul(&expansion, &elementary(r, k + 1));
                }
            }
            for (x, v) in expansion {
                let slot = p.entry(x.clone()).or_insert_with(ExactRational::zero);
                *slot -= &coeff * &v;
                if slot.is_zero() {
                    p.remove(&x);
                }
            }
            terms.push((chern, l.clone(), coeff));
        }
    }
    Ok(LambdaRingElem::from_terms(genus, dim, terms))
}

/// Euler class of `T_X ⊠ E^∨` on `X × M̄_g` for `dim X = r ∈ {1, 2, 3}`,
/// `g ≥ 2`, in Mumford normal form.
pub fn euler_class(dim: u32, genus: u32) -> Result<LambdaRingElem> {
    if !(1..=3).contains(&dim) {
        return Err(HodgeError::Domain(format!(
            "Euler classes are computed for dim X in 1..=3, got {dim} (the virtual class vanishes for dim X > 3)"
        )));
    }
    if genus < 2 {
        return Err(HodgeError::Domain(format!(
            "euler_class needs genus ≥ 2, got {genus}; use euler_class_genus1"
        )));
    }
    Ok(mumford_reduce(&symmetrize(dim, genus, &root_product(dim, genus))?))
}

/// `c_r(X) − c_{r−1}(X) λ_1` in genus one.
pub fn euler_class_genus1(dim: u32) -> Result<LambdaRingElem> {
    if dim == 0 {
        return Err(HodgeError::Domain("euler_class_genus1 needs dim X ≥ 1".into()));
    }
    let top = LambdaRingElem::chern(1, dim, dim);
    let next = LambdaRingElem::chern(1, dim, dim - 1);
    Ok(&top - &(&next * &LambdaRingElem::lambda(1, dim, 1)))
}
