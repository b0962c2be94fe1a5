//! Classical number sequences and the bracket symbol used by the
//! Virasoro coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{HodgeError, Result};
use crate::rational::ExactRational;
use crate::series::Series1D;

static BERNOULLI: Lazy<RwLock<Vec<ExactRational>>> =
    Lazy::new(|| RwLock::new(vec![ExactRational::one()]));

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial with the convention `C(a, b) = 0` for `b < 0` or `b > a`.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// `n!!`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial undefined for {n}");
    let mut acc = BigInt::one();
    let mut m = n;
    while m > 1 {
        acc *= m;
        m -= 2;
    }
    acc
}

/// `n! / ∏ parts_i!`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigInt> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(HodgeError::InvalidInput(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let mut acc = BigInt::one();
    let mut used = 0u64;
    for &p in parts {
        used += p;
        acc *= binomial(used, p);
    }
    Ok(acc)
}

/// `H_n = Σ_{k=1}^n 1/k`.
pub fn harmonic(n: u64) -> ExactRational {
    (1..=n).map(|k| ExactRational::new(1, k as i64)).sum()
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> ExactRational {
    if let Some(b) = BERNOULLI.read().get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write();
    // Σ_{k=0}^{m} C(m+1, k) B_k = 0
    while table.len() <= n {
        let m = table.len() as u64;
        let acc: ExactRational = table
            .iter()
            .enumerate()
            .map(|(k, b)| b * ExactRational::from(binomial(m + 1, k as u64)))
            .sum();
        table.push(-acc / ExactRational::from_integer(m + 1));
    }
    table[n].clone()
}

/// Coefficients of `∏_{j=0}^{k} (t + x + j)`, lowest power first.
/// For `k = -1` the product is empty.
pub fn bracket_polynomial(x: &ExactRational, k: i64) -> Vec<ExactRational> {
    assert!(k >= -1, "bracket needs k >= -1, got {k}");
    let mut poly = vec![ExactRational::one()];
    for j in 0..=k {
        let root = x + ExactRational::from(j);
        let mut next = vec![ExactRational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * &root;
            next[i + 1] += c;
        }
        poly = next;
    }
    poly
}

/// `[x]^k_i = e_{k+1-i}(x, x+1, …, x+k)`: the coefficient of `t^i` in
/// `∏_{j=0}^{k}(t + x + j)`. Out-of-range `i` gives zero.
pub fn bracket(x: &ExactRational, k: i64, i: i64) -> ExactRational {
    if k < -1 || i < 0 || i > k + 1 {
        return ExactRational::zero();
    }
    bracket_polynomial(x, k).swap_remove(i as usize)
}

/// Rising product `∏_{j=0}^{k} (x + j)`, i.e. `Γ(x+k+1)/Γ(x)` without the gamma function.
pub fn rising(x: &ExactRational, k: i64) -> ExactRational {
    bracket(x, k, 0)
}

/// Unsigned Stirling number of the first kind `s(n, 2) = (n-1)! H_{n-1}`.
pub fn stirling_s2(n: u64) -> BigInt {
    assert!(n >= 2, "s(n,2) needs n >= 2");
    let v = ExactRational::from(factorial(n - 1)) * harmonic(n - 1);
    v.to_integer().expect("s(n,2) is an integer")
}

/// `b_g` by inverting `sin(t/2)/(t/2)` as a truncated series, `g = 0..=gmax`.
pub fn b_sequence(gmax: usize) -> Vec<ExactRational> {
    let cap = 2 * gmax + 2;
    // sin(u)/u = Σ (-1)^j u^{2j} / (2j+1)!, u = t/2
    let sinc = Series1D::from_fn(cap, |i| {
        if i % 2 == 1 {
            return ExactRational::zero();
        }
        let j = i / 2;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        ExactRational::new(sign, factorial(i as u64 + 1) * BigInt::from(2).pow(i as u32))
    });
    let inv = sinc.inverse().expect("sinc has unit constant term");
    (0..=gmax).map(|g| inv.coeff(2 * g)).collect()
}

/// `b_g` from the Bernoulli closed form `(2^{2g-1}-1)/2^{2g-1} · |B_{2g}|/(2g)!`.
pub fn b_closed_form(g: usize) -> ExactRational {
    if g == 0 {
        return ExactRational::one();
    }
    let p = BigInt::from(2).pow(2 * g as u32 - 1);
    let ratio = ExactRational::new(&p - 1, p);
    ratio * bernoulli(2 * g).abs() / ExactRational::from(factorial(2 * g as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(10), q(5, 66));
    }

    #[test]
    fn bracket_examples() {
        let one = ExactRational::one();
        assert_eq!(bracket(&one, 2, 0), q(6, 1));
        assert_eq!(bracket(&one, 2, 1), q(11, 1));
        assert_eq!(bracket(&q(7, 3), 4, 5), q(1, 1));
        assert_eq!(bracket(&q(7, 3), 4, 6), q(0, 1));
        assert_eq!(bracket(&q(7, 3), 4, -1), q(0, 1));
        assert_eq!(bracket(&q(7, 3), -1, 0), q(1, 1));
        assert_eq!(bracket(&q(7, 3), -1, 1), q(0, 1));
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_s2(2), BigInt::from(1));
        assert_eq!(stirling_s2(4), BigInt::from(11));
        assert_eq!(stirling_s2(6), BigInt::from(274));
    }

    #[test]
    fn stirling_is_bracket_at_one() {
        for g in 1..=6u64 {
            let b = bracket(&ExactRational::one(), 2 * g as i64 - 2, 1);
            assert_eq!(b, ExactRational::from(stirling_s2(2 * g)));
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(0, &[]).unwrap(), BigInt::from(1));
        assert_eq!(multinomial(3, &[1, 2]).unwrap(), BigInt::from(3));
        assert_eq!(multinomial(5, &[1, 1, 3]).unwrap(), BigInt::from(20));
        assert!(multinomial(4, &[1, 2]).is_err());
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(8), BigInt::from(384));
    }

    #[test]
    fn b_sequence_examples() {
        let b = b_sequence(5);
        assert_eq!(b[0], q(1, 1));
        assert_eq!(b[2], q(7, 5760));
        assert_eq!(b[5], ExactRational::new(73, 3503554560i64));
    }

    #[test]
    fn b_sequence_matches_closed_form() {
        let b = b_sequence(10);
        for (g, v) in b.iter().enumerate() {
            assert_eq!(v, &b_closed_form(g), "g = {g}");
        }
    }

    proptest! {
        #[test]
        fn bracket_expands_the_product(p in -12i64..12, d in 1i64..5, k in 0i64..6, s in -9i64..9) {
            let x = q(p, d);
            let t = q(s, 3);
            let lhs: ExactRational = (0..=k + 1).map(|i| bracket(&x, k, i) * t.pow(i as i32)).sum();
            let rhs: ExactRational = (0..=k).map(|j| &t + &x + ExactRational::from(j)).product();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
