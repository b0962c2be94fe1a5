//! Pure ψ intersection numbers `⟨τ_{k_1}…τ_{k_n}⟩_g`, determined by the
//! point Virasoro constraints, and the truncated point partition function.
//!
//! Every value is extracted from a coefficient identity of `L_k Z = 0`:
//! `L_{-1}` gives the string equation and `⟨τ_0^3⟩_0`, `L_0` the dilaton
//! equation and `⟨τ_1⟩_1`, and `L_k` with `k ≥ 1` removes a top insertion
//! `τ_{k+1}`.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::key::IntegralKey;
use crate::memo::INTEGRALS;
use crate::phase::{Caps, Coord, Monomial, TruncatedSeries};
use crate::rational::{q, ExactRational};
use crate::virasoro::{
    point_constant, point_linear_coefficient, point_quadratic_coefficient, point_t0_squared,
};

/// `⟨τ_{k_1}…τ_{k_n}⟩_g = ∫_{M̄_{g,n}} ψ_1^{k_1}…ψ_n^{k_n}`.
///
/// Zero off the dimension `Σ k = 3g − 3 + n`; unstable `(g, n)` is an error.
pub fn psi_integral(genus: u32, exponents: &[u32]) -> Result<ExactRational> {
    let key = IntegralKey::psi(genus, exponents);
    key.require_stable()?;
    Ok(psi_value(genus, exponents))
}

/// Like [`psi_integral`] but unstable or off-dimension inputs give zero.
pub(crate) fn psi_value(genus: u32, exponents: &[u32]) -> ExactRational {
    let key = IntegralKey::psi(genus, exponents);
    if !key.is_potentially_nonzero() {
        return ExactRational::zero();
    }
    INTEGRALS
        .get_or_compute(&key, || Ok::<_, std::convert::Infallible>(reduce(&key)))
        .unwrap_or_else(|e| match e {})
}

/// Value of a connected correlator that may sit at any `(g, n)`; used by the
/// quadratic terms where unstable factors are zero.
fn corr(genus: i64, exponents: &[u32]) -> ExactRational {
    if genus < 0 {
        return ExactRational::zero();
    }
    psi_value(genus as u32, exponents)
}

fn reduce(key: &IntegralKey) -> ExactRational {
    let g = key.genus();
    let ks = key.exponents();
    let n = ks.len();

    if g == 0 && n == 3 {
        // ∂_{t_0}^2 of the t_0^2/(2ħ) term of L_{-1}
        return point_t0_squared() * ExactRational::from(2);
    }
    if g == 1 && ks == [1] {
        // ħ^0 constant of L_0: −A_{0,1}⟨τ_1⟩_1 + 1/16 = 0
        return point_constant() / point_linear_coefficient(0, 1);
    }

    if ks[n - 1] == 0 {
        return string_reduce(g, &ks[..n - 1]);
    }
    if ks[n - 1] == 1 {
        return dilaton_reduce(g, &ks[..n - 1]);
    }

    let top = ks[0];
    let k = top as i64 - 1;
    top_reduce(g, k, &ks[1..])
}

/// `⟨τ_0 τ_S⟩_g = Σ_j ⟨τ_{k_j − 1} τ_{S∖j}⟩_g` (the `L_{-1}` identity).
fn string_reduce(g: u32, rest: &[u32]) -> ExactRational {
    let mut acc = ExactRational::zero();
    for j in 0..rest.len() {
        if rest[j] == 0 {
            continue;
        }
        let mut s = rest.to_vec();
        s[j] -= 1;
        acc += psi_value(g, &s);
    }
    acc
}

/// `L_0`: `A_{0,1}⟨τ_1 τ_S⟩_g = Σ_j A_{0,k_j}⟨τ_S⟩_g`.
fn dilaton_reduce(g: u32, rest: &[u32]) -> ExactRational {
    let factor: ExactRational = rest.iter().map(|&kj| point_linear_coefficient(0, kj as i64)).sum();
    factor * psi_value(g, rest) / point_linear_coefficient(0, 1)
}

/// Coefficient of `ħ^{g-1} t_S` in `L_k Z / Z`, solved for `⟨τ_{k+1} τ_S⟩_g`.
fn top_reduce(g: u32, k: i64, rest: &[u32]) -> ExactRational {
    let mut acc = ExactRational::zero();

    for j in 0..rest.len() {
        let coeff = point_linear_coefficient(k, rest[j] as i64);
        let mut s = rest.to_vec();
        s[j] += k as u32;
        acc += coeff * psi_value(g, &s);
    }

    let half = q(1, 2);
    for m in 0..k {
        let other = k - m - 1;
        let coeff = point_quadratic_coefficient(k, m);
        let mut inner = ExactRational::zero();

        let mut s = rest.to_vec();
        s.push(m as u32);
        s.push(other as u32);
        inner += corr(g as i64 - 1, &s);

        for_each_split(rest, |left, right| {
            let mut a = left.to_vec();
            a.push(m as u32);
            let mut b = right.to_vec();
            b.push(other as u32);
            for g1 in 0..=g as i64 {
                let x = corr(g1, &a);
                if x.is_zero() {
                    continue;
                }
                inner += x * corr(g as i64 - g1, &b);
            }
        });

        acc += &half * coeff * inner;
    }

    acc / point_linear_coefficient(k, 1)
}

/// Calls `f(I, J)` for every ordered split of the labelled insertions.
pub(crate) fn for_each_split(items: &[u32], mut f: impl FnMut(&[u32], &[u32])) {
    let n = items.len();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << n) {
        left.clear();
        right.clear();
        for (i, &x) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(x);
            } else {
                right.push(x);
            }
        }
        f(&left, &right);
    }
}

/// Point partition function `Z = exp(Σ_g ħ^{g-1} F_g)`, truncated to `caps`.
///
/// Each stored coefficient is exact: the coefficient of `t_{k_1}…t_{k_n}` is
/// a sum over set partitions of the insertions into connected correlators,
/// divided by the symmetry factor of the monomial.
pub fn point_partition(caps: Caps) -> TruncatedSeries {
    let mut out = TruncatedSeries::new(caps);
    let mut cache: HashMap<Vec<u32>, BTreeMap<i32, ExactRational>> = HashMap::new();
    for levels in level_multisets(caps.max_degree, caps.max_weight) {
        let z = disconnected(&levels, &mut cache);
        let mono = Monomial::from_coords(levels.iter().map(|&l| Coord::point(l as u16)));
        let aut = mono.automorphisms();
        for (h, c) in z {
            out.add_term(mono.clone(), h, c / &aut);
        }
    }
    out
}

/// Non-increasing level sequences with length `≤ max_len` and sum `≤ max_sum`.
fn level_multisets(max_len: u32, max_sum: u32) -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, bound: u32, left_len: u32, left_sum: u32, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if left_len == 0 {
            return;
        }
        for l in (0..=bound.min(left_sum)).rev() {
            cur.push(l);
            go(cur, l, left_len - 1, left_sum - l, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_sum, max_len, max_sum, &mut out);
    out
}

/// Connected correlator of one block as an ħ-monomial, if nonzero.
fn connected(levels: &[u32]) -> Option<(i32, ExactRational)> {
    let n = levels.len() as i64;
    let sum: i64 = levels.iter().map(|&l| l as i64).sum();
    let three_g = sum - n + 3;
    if three_g < 0 || three_g % 3 != 0 {
        return None;
    }
    let g = three_g / 3;
    let v = corr(g, levels);
    (!v.is_zero()).then(|| (g as i32 - 1, v))
}

fn disconnected(
    levels: &[u32],
    cache: &mut HashMap<Vec<u32>, BTreeMap<i32, ExactRational>>,
) -> BTreeMap<i32, ExactRational> {
    if levels.is_empty() {
        return BTreeMap::from([(0, ExactRational::one())]);
    }
    if let Some(v) = cache.get(levels) {
        return v.clone();
    }
    let first = levels[0];
    let rest = &levels[1..];
    let mut out: BTreeMap<i32, ExactRational> = BTreeMap::new();
    for_each_split(rest, |with_first, remaining| {
        let mut block = vec![first];
        block.extend_from_slice(with_first);
        let Some((h, c)) = connected(&block) else { return };
        let mut rem = remaining.to_vec();
        rem.sort_unstable_by(|a, b| b.cmp(a));
        for (h2, c2) in disconnected(&rem, cache) {
            *out.entry(h + h2).or_insert_with(ExactRational::zero) += &c * c2;
        }
    });
    out.retain(|_, c| !c.is_zero());
    cache.insert(levels.to_vec(), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::HodgeError;

    #[test]
    fn base_values() {
        assert_eq!(psi_integral(0, &[0, 0, 0]).unwrap(), q(1, 1));
        assert_eq!(psi_integral(0, &[1, 0, 0, 0]).unwrap(), q(1, 1));
        assert_eq!(psi_integral(1, &[1]).unwrap(), q(1, 24));
    }

    #[test]
    fn dimension_mismatch_is_zero() {
        assert_eq!(psi_integral(0, &[2, 0, 0]).unwrap(), q(0, 1));
    }

    #[test]
    fn unstable_is_rejected() {
        assert!(matches!(psi_integral(0, &[5]), Err(HodgeError::Unstable { .. })));
        assert!(matches!(psi_integral(0, &[0, 0]), Err(HodgeError::Unstable { .. })));
        assert!(matches!(psi_integral(1, &[]), Err(HodgeError::Unstable { .. })));
    }

    // Frozen from an independent double-factorial DVV implementation.
    #[test]
    fn oracle_values() {
        assert_eq!(psi_integral(2, &[4]).unwrap(), q(1, 1152));
        assert_eq!(psi_integral(3, &[7]).unwrap(), q(1, 82944));
        assert_eq!(psi_integral(2, &[3, 2]).unwrap(), q(29, 5760));
        assert_eq!(psi_integral(2, &[2, 2, 2]).unwrap(), q(7, 240));
        assert_eq!(psi_integral(1, &[1, 1, 1]).unwrap(), q(1, 12));
        assert_eq!(psi_integral(3, &[4, 3, 2]).unwrap(), q(1121, 241920));
        assert_eq!(psi_integral(0, &[2, 0, 0, 0, 0]).unwrap(), q(1, 1));
        assert_eq!(psi_integral(4, &[10]).unwrap(), q(1, 7962624));
    }

    #[test]
    fn symmetric_under_permutation() {
        let a = psi_integral(3, &[2, 4, 3]).unwrap();
        let b = psi_integral(3, &[3, 2, 4]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partition_function_coefficients() {
        let caps = Caps { max_degree: 4, max_weight: 4, max_hbar: 1 };
        let z = point_partition(caps);
        let t0 = Coord::point(0);
        let t1 = Coord::point(1);
        assert_eq!(z.coeff(&Monomial::from_coords([t0, t0, t0]), -1), q(1, 6));
        assert_eq!(z.coeff(&Monomial::from_coords([t1]), 0), q(1, 24));
        assert_eq!(z.coeff(&Monomial::one(), 0), q(1, 1));
        // off-grading: Σ(k − 1) = 3h fails
        assert!(z.coeff(&Monomial::from_coords([t0, t1]), 0).is_zero());
        for (m, h, _) in z.terms() {
            let grade: i64 = m.point_levels().iter().map(|&l| l as i64 - 1).sum();
            assert_eq!(grade, 3 * h as i64, "{m} at hbar^{h}");
        }
    }
}
