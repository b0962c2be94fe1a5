//! λ-class integrals: closed forms, recursion solvers and the constants
//! `b_g`, `c_g`.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;

use crate::error::{HodgeError, Result};
use crate::key::{ClassTag, IntegralKey};
use crate::memo::{Memo, INTEGRALS};
use crate::numbers::{
    b_closed_form, bernoulli, binomial, double_factorial, factorial, harmonic, multinomial,
    stirling_s2,
};
use crate::psi::psi_value;
use crate::rational::ExactRational;
use crate::virasoro::{x_curve, x_surface, HodgeSource};

/// Values computed only by recursions, kept apart from [`INTEGRALS`] so the
/// solvers never read a closed-form value.
static SOLVED: Lazy<Memo> = Lazy::new(Memo::new);

fn fact(n: u64) -> ExactRational {
    ExactRational::from(factorial(n))
}

fn dfact(n: i64) -> ExactRational {
    ExactRational::from(double_factorial(n))
}

/// `b_g = ∫_{M̄_{g,1}} ψ^{2g−2} λ_g`, with `b_0 = 1`.
pub fn b_constant(g: u32) -> ExactRational {
    b_closed_form(g as usize)
}

/// `c_g = ∫_{M̄_{g,1}} ψ^{2g−1} λ_{g−1}` from
/// `(2g−1)! c_g = s(2g,2) b_g − ½ Σ_{g_1+g_2=g} (2g_1−1)!(2g_2−1)! b_{g_1} b_{g_2}`.
pub fn c_constant(g: u32) -> Result<ExactRational> {
    if g == 0 {
        return Err(HodgeError::Domain("c_g needs g >= 1".into()));
    }
    let mut quad = ExactRational::zero();
    for g1 in 1..g {
        let g2 = g - g1;
        quad += fact(2 * g1 as u64 - 1) * fact(2 * g2 as u64 - 1) * b_constant(g1) * b_constant(g2);
    }
    let top = ExactRational::from(stirling_s2(2 * g as u64)) * b_constant(g)
        - quad * ExactRational::new(1, 2);
    Ok(top / fact(2 * g as u64 - 1))
}

/// `∫_{M̄_{g,1}} ψ^{g−1} λ_g λ_{g−1} = |B_{2g}| / (2^{2g−1} (2g−1)!! · 2g)`.
pub fn gg_constant(g: u32) -> Result<ExactRational> {
    if g == 0 {
        return Err(HodgeError::Domain("the λ_gλ_{g-1} constant needs g >= 1".into()));
    }
    let two = ExactRational::from(2).pow(2 * g as i32 - 1);
    Ok(bernoulli(2 * g as usize).abs() / (two * dfact(2 * g as i64 - 1) * ExactRational::from(2 * g)))
}

/// `∫_{M̄_g} λ_{g−1}^3 = (1/(2g−2)!) · |B_{2g−2}|/(2g−2) · |B_{2g}|/(2g)`.
pub fn lambda_cube(g: u32) -> Result<ExactRational> {
    if g < 2 {
        return Err(HodgeError::Domain("the λ_{g-1}^3 integral needs g >= 2".into()));
    }
    let a = bernoulli(2 * g as usize - 2).abs() / ExactRational::from(2 * g - 2);
    let b = bernoulli(2 * g as usize).abs() / ExactRational::from(2 * g);
    Ok(a * b / fact(2 * g as u64 - 2))
}

fn checked(g: u32, ks: &[u32], tag: ClassTag) -> Result<Option<IntegralKey>> {
    let key = IntegralKey::new(g, ks, tag);
    key.require_stable()?;
    Ok(key.is_potentially_nonzero().then_some(key))
}

/// `⟨τ_{k_1}…τ_{k_n} | λ_g⟩_g = multinomial(2g−3+n; k) · b_g`.
pub fn lambda_g(g: u32, ks: &[u32]) -> Result<ExactRational> {
    let Some(key) = checked(g, ks, ClassTag::LambdaG)? else { return Ok(ExactRational::zero()) };
    INTEGRALS.get_or_compute(&key, || {
        let n = key.exponents().iter().map(|&k| k as u64).sum();
        let parts: Vec<u64> = key.exponents().iter().map(|&k| k as u64).collect();
        let m = ExactRational::from(multinomial(n, &parts)?);
        Ok(if g == 0 { m } else { m * b_constant(g) })
    })
}

/// `λ_g` integrals from the `y^k_{g,k_0}` recursion alone, inducting on `n`
/// from `⟨τ_{2g−2}|λ_g⟩ = b_g` or `⟨τ_0^3⟩_0`.
pub fn lambda_g_solver(g: u32, ks: &[u32]) -> Result<ExactRational> {
    checked(g, ks, ClassTag::LambdaG)?;
    Ok(lambda_g_recursive(g, ks))
}

fn lambda_g_recursive(g: u32, ks: &[u32]) -> ExactRational {
    let key = IntegralKey::new(g, ks, ClassTag::LambdaG);
    if !key.is_potentially_nonzero() {
        return ExactRational::zero();
    }
    let compute = || -> Result<ExactRational, std::convert::Infallible> {
        let e = key.exponents();
        if g == 0 && e.len() == 3 {
            return Ok(psi_value(0, &[0, 0, 0]));
        }
        if g > 0 && e.len() == 1 {
            return Ok(b_constant(g));
        }
        // remove τ_{k+1} = the top insertion with k_0 = the next one
        let k = e[0] as u64 - 1;
        let k0 = e[1] as u64;
        let rest = &e[2..];
        let mut v = ExactRational::from(binomial(k0 + k + 1, k0))
            * lambda_g_recursive(g, &[&[(k0 + k) as u32][..], rest].concat());
        for i in 0..rest.len() {
            if rest[i] == 0 {
                continue;
            }
            let ki = rest[i] as u64;
            let mut s = rest.to_vec();
            s[i] += k as u32;
            s.push(k0 as u32);
            v += ExactRational::from(binomial(ki + k, ki - 1)) * lambda_g_recursive(g, &s);
        }
        Ok(v)
    };
    let solved = SOLVED.get_or_compute(&key, compute);
    solved.unwrap_or_else(|e| match e {})
}

/// `⟨τ_{k_1}…τ_{k_n} | λ_gλ_{g−1}⟩_g`: string reduction of zero exponents,
/// then `(2g+n−3)!(2g−1)!! / ((2g−1)! ∏(2k_i−1)!!) · gg_constant(g)`.
pub fn lambda_g_gm1(g: u32, ks: &[u32]) -> Result<ExactRational> {
    let Some(key) = checked(g, ks, ClassTag::LambdaGGm1)? else { return Ok(ExactRational::zero()) };
    INTEGRALS.get_or_compute(&key, || {
        let e = key.exponents();
        if g == 1 && e == [0] {
            return gg_constant(1);
        }
        if e.last() == Some(&0) {
            return string_sum(&key, |k| lambda_g_gm1(k.genus(), k.exponents()));
        }
        let n = e.len() as u64;
        let mut v = fact(2 * g as u64 + n - 3) * dfact(2 * g as i64 - 1) / fact(2 * g as u64 - 1);
        for &k in e {
            v = v / dfact(2 * k as i64 - 1);
        }
        Ok(v * gg_constant(g)?)
    })
}

/// `λ_gλ_{g−1}` integrals from the `y^k_{g,k_0}` surface recursion alone.
pub fn lambda_g_gm1_solver(g: u32, ks: &[u32]) -> Result<ExactRational> {
    checked(g, ks, ClassTag::LambdaGGm1)?;
    gg1_recursive(g, ks)
}

fn gg1_recursive(g: u32, ks: &[u32]) -> Result<ExactRational> {
    let key = IntegralKey::new(g, ks, ClassTag::LambdaGGm1);
    if !key.is_potentially_nonzero() {
        return Ok(ExactRational::zero());
    }
    SOLVED.get_or_compute(&key, || {
        let e = key.exponents();
        if g == 1 && e == [0] {
            return gg_constant(1);
        }
        if e.is_empty() {
            let d = ExactRational::from(2 * g - 2);
            return Ok(gg1_recursive(g, &[1])? / d);
        }
        if e.last() == Some(&0) {
            return string_sum(&key, |k| gg1_recursive(k.genus(), k.exponents()));
        }
        if e.len() == 1 {
            return gg_constant(g);
        }
        let k = e[0] as i64 - 1;
        let k0 = e[1] as i64;
        let rest = &e[2..];
        let d = dfact(2 * k + 1);
        let mut v = dfact(2 * k + 2 * k0 + 1) / (&d * dfact(2 * k0 - 1))
            * gg1_recursive(g, &[&[(k0 + k) as u32][..], rest].concat())?;
        for i in 0..rest.len() {
            let ki = rest[i] as i64;
            let mut s = rest.to_vec();
            s[i] += k as u32;
            s.push(k0 as u32);
            v += dfact(2 * k + 2 * ki - 1) / (&d * dfact(2 * ki - 3)) * gg1_recursive(g, &s)?;
        }
        Ok(v)
    })
}

/// `⟨τ_0 τ_S | α⟩_g = Σ_j ⟨τ_S with k_j − 1⟩_g`, `α` pulled back from `M̄_g`.
fn string_sum(
    key: &IntegralKey,
    mut value: impl FnMut(&IntegralKey) -> Result<ExactRational>,
) -> Result<ExactRational> {
    let e = key.exponents();
    let rest = &e[..e.len() - 1];
    let mut acc = ExactRational::zero();
    for j in 0..rest.len() {
        if rest[j] == 0 {
            continue;
        }
        let mut s = rest.to_vec();
        s[j] -= 1;
        let k = key.with_exponents(&s);
        if k.is_potentially_nonzero() {
            acc += value(&k)?;
        }
    }
    Ok(acc)
}

/// `⟨τ_1 τ_S | α⟩_g = (2g − 2 + |S|) ⟨τ_S | α⟩_g`.
fn dilaton(
    key: &IntegralKey,
    mut value: impl FnMut(&IntegralKey) -> Result<ExactRational>,
) -> Result<ExactRational> {
    let e = key.exponents();
    let pos = e.iter().position(|&k| k == 1).expect("caller checked for a τ_1");
    let mut rest = e.to_vec();
    rest.remove(pos);
    let inner = key.with_exponents(&rest);
    if !inner.is_potentially_nonzero() {
        return Ok(ExactRational::zero());
    }
    let factor = ExactRational::from(2 * key.genus() as i64 - 2 + rest.len() as i64);
    Ok(factor * value(&inner)?)
}

/// Delegates to [`integral`] except for one key, reported as the unknown.
struct Masked<'a> {
    target: &'a IntegralKey,
}

impl HodgeSource for Masked<'_> {
    fn integral(&self, key: &IntegralKey) -> Result<ExactRational> {
        if key == self.target {
            Err(HodgeError::Underdetermined(key.clone()))
        } else {
            integral(key)
        }
    }
}

/// Solves the `x^k_g` relation whose leading term is the insertion at
/// `pivot` (which must have exponent ≥ 2).
pub(crate) fn solve_by_relation(key: &IntegralKey, pivot: usize) -> Result<ExactRational> {
    let e = key.exponents();
    let top = e[pivot];
    if top < 2 {
        return Err(HodgeError::Underdetermined(key.clone()));
    }
    let mut rest = e.to_vec();
    rest.remove(pivot);
    let src = Masked { target: key };
    let k = top as i64 - 1;
    let form = match key.tag() {
        ClassTag::LambdaGm1 => x_curve(k, key.genus(), &rest, &src)?,
        ClassTag::LambdaGGm2 => x_surface(k, key.genus(), &rest, &src)?,
        _ => return Err(HodgeError::Underdetermined(key.clone())),
    };
    form.solve_for(key)
}

fn reduce_then_solve(key: &IntegralKey, f: fn(u32, &[u32]) -> Result<ExactRational>) -> Result<ExactRational> {
    let e = key.exponents();
    if e.last() == Some(&0) {
        return string_sum(key, |k| f(k.genus(), k.exponents()));
    }
    if e.contains(&1) {
        return dilaton(key, |k| f(k.genus(), k.exponents()));
    }
    if e.is_empty() {
        return Err(HodgeError::Underdetermined(key.clone()));
    }
    solve_by_relation(key, 0)
}

/// `⟨τ_{k_1}…τ_{k_n} | λ_{g−1}⟩_g`, best effort: `c_g` for `n = 1`, string and
/// dilaton reduction, then the curve `x^k_g` relation solved for the top
/// insertion. Fails with [`HodgeError::Underdetermined`] if that stalls.
pub fn lambda_gm1(g: u32, ks: &[u32]) -> Result<ExactRational> {
    let Some(key) = checked(g, ks, ClassTag::LambdaGm1)? else { return Ok(ExactRational::zero()) };
    if g == 1 {
        // λ_0 = 1
        return Ok(psi_value(1, ks));
    }
    INTEGRALS.get_or_compute(&key, || {
        if key.exponents() == [2 * g - 1] {
            return c_constant(g);
        }
        reduce_then_solve(&key, lambda_gm1)
    })
}

/// `⟨τ_{k_1}…τ_{k_n} | λ_gλ_{g−2}⟩_g`, best effort: string and dilaton
/// reduction, then the surface `x^k_g` relation solved for the top insertion.
pub fn lambda_g_gm2(g: u32, ks: &[u32]) -> Result<ExactRational> {
    let Some(key) = checked(g, ks, ClassTag::LambdaGGm2)? else { return Ok(ExactRational::zero()) };
    INTEGRALS.get_or_compute(&key, || reduce_then_solve(&key, lambda_g_gm2))
}

/// `⟨τ_{k_1}…τ_{k_n} | λ_gλ_{g−1}λ_{g−2}⟩_g`, reduced by string and dilaton to
/// `∫_{M̄_g} λ_gλ_{g−1}λ_{g−2} = ½ ∫ λ_{g−1}^3`.
pub fn lambda_top(g: u32, ks: &[u32]) -> Result<ExactRational> {
    let Some(key) = checked(g, ks, ClassTag::LambdaGGm1Gm2)? else { return Ok(ExactRational::zero()) };
    INTEGRALS.get_or_compute(&key, || {
        let e = key.exponents();
        if e.is_empty() {
            return Ok(lambda_cube(g)? * ExactRational::new(1, 2));
        }
        if e.last() == Some(&0) {
            return string_sum(&key, |k| lambda_top(k.genus(), k.exponents()));
        }
        dilaton(&key, |k| lambda_top(k.genus(), k.exponents()))
    })
}

/// Value of any stable integral, dispatched on its class tag.
pub fn integral(key: &IntegralKey) -> Result<ExactRational> {
    let (g, e) = (key.genus(), key.exponents());
    match key.tag() {
        ClassTag::None => {
            key.require_stable()?;
            Ok(psi_value(g, e))
        }
        ClassTag::LambdaG => lambda_g(g, e),
        ClassTag::LambdaGGm1 => lambda_g_gm1(g, e),
        ClassTag::LambdaGm1 => lambda_gm1(g, e),
        ClassTag::LambdaGGm2 => lambda_g_gm2(g, e),
        ClassTag::LambdaGGm1Gm2 => lambda_top(g, e),
    }
}

/// The default source for the relation evaluators.
pub struct Providers;

impl HodgeSource for Providers {
    fn integral(&self, key: &IntegralKey) -> Result<ExactRational> {
        integral(key)
    }
}

/// `∫_{M̄_g} κ_{a_1}…κ_{a_m} λ_gλ_{g−1}` from
/// `Σ_{σ ∈ S_m} ∫ κ_σ λ_gλ_{g−1} = ⟨τ_{a_1+1}…τ_{a_m+1} | λ_gλ_{g−1}⟩_g`.
pub fn kappa_lambda_integral(g: u32, indices: &[u32]) -> Result<ExactRational> {
    if g < 2 && indices.is_empty() {
        return Err(HodgeError::Unstable { genus: g, points: 0 });
    }
    if g == 0 {
        return Ok(ExactRational::zero());
    }
    let sum: i64 = indices.iter().map(|&a| a as i64).sum();
    if sum != g as i64 - 2 {
        return Ok(ExactRational::zero());
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut memo = BTreeMap::new();
    kappa_solve(g, &sorted, &mut memo)
}

/// Peels off the identity permutation: every other σ merges cycles into
/// fewer κ factors, already known by induction on their number.
fn kappa_solve(g: u32, a: &[u32], memo: &mut BTreeMap<Vec<u32>, ExactRational>) -> Result<ExactRational> {
    if let Some(v) = memo.get(a) {
        return Ok(v.clone());
    }
    let taus: Vec<u32> = a.iter().map(|&x| x + 1).collect();
    let mut v = lambda_g_gm1(g, &taus)?;
    let mut err = None;
    for_each_set_partition(a.len(), &mut |blocks| {
        if err.is_some() || blocks.len() == a.len() {
            return;
        }
        let mut weight = ExactRational::one();
        let mut merged = Vec::with_capacity(blocks.len());
        for b in blocks {
            weight *= fact(b.len() as u64 - 1);
            merged.push(b.iter().map(|&i| a[i]).sum::<u32>());
        }
        merged.sort_unstable_by(|x, y| y.cmp(x));
        match kappa_solve(g, &merged, memo) {
            Ok(k) => v -= weight * k,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    memo.insert(a.to_vec(), v.clone());
    Ok(v)
}

/// Calls `f` with every set partition of `{0, …, n−1}`.
pub(crate) fn for_each_set_partition(n: usize, f: &mut dyn FnMut(&[Vec<usize>])) {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, f: &mut dyn FnMut(&[Vec<usize>])) {
        if i == n {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, f);
        blocks.pop();
    }
    go(0, n, &mut Vec::new(), f);
}

/// `b_g`, `c_g`, the λ_gλ_{g−1} constants and `∫λ_{g−1}^3` for a genus range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeConstantTable {
    pub b: BTreeMap<u32, ExactRational>,
    pub c: BTreeMap<u32, ExactRational>,
    pub gg_const: BTreeMap<u32, ExactRational>,
    pub cubes: BTreeMap<u32, ExactRational>,
}

impl HodgeConstantTable {
    pub fn new(min_genus: u32, max_genus: u32) -> Self {
        let mut t = HodgeConstantTable {
            b: BTreeMap::new(),
            c: BTreeMap::new(),
            gg_const: BTreeMap::new(),
            cubes: BTreeMap::new(),
        };
        for g in min_genus..=max_genus {
            t.b.insert(g, b_constant(g));
            if g >= 1 {
                t.c.insert(g, c_constant(g).expect("g >= 1"));
                t.gg_const.insert(g, gg_constant(g).expect("g >= 1"));
            }
            if g >= 2 {
                t.cubes.insert(g, lambda_cube(g).expect("g >= 2"));
            }
        }
        t
    }
}

/// `H_{2g−1} b_g − ½ Σ (2g_1−1)!(2g_2−1)!/(2g−1)! b_{g_1} b_{g_2}`, the
/// harmonic-number form of the `c_g` formula.
pub fn c_constant_harmonic(g: u32) -> Result<ExactRational> {
    if g == 0 {
        return Err(HodgeError::Domain("c_g needs g >= 1".into()));
    }
    let mut v = harmonic(2 * g as u64 - 1) * b_constant(g);
    for g1 in 1..g {
        let g2 = g - g1;
        v -= fact(2 * g1 as u64 - 1) * fact(2 * g2 as u64 - 1) / fact(2 * g as u64 - 1)
            * b_constant(g1)
            * b_constant(g2)
            * ExactRational::new(1, 2);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn table_constants() {
        assert_eq!(b_constant(0), q(1, 1));
        assert_eq!(b_constant(1), q(1, 24));
        assert_eq!(b_constant(4), q(127, 154828800));
        assert_eq!(c_constant(1).unwrap(), q(1, 24));
        assert_eq!(c_constant(2).unwrap(), q(1, 480));
        assert_eq!(c_constant(3).unwrap(), q(41, 580608));
        assert_eq!(c_constant(5).unwrap(), ExactRational::new(21481, 367873228800u64));
        for g in 1..=6 {
            assert_eq!(c_constant(g).unwrap(), c_constant_harmonic(g).unwrap());
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(lambda_g(1, &[0]).unwrap(), q(1, 24));
        assert_eq!(lambda_g(2, &[1, 2]).unwrap(), q(7, 1920));
        assert_eq!(lambda_g(0, &[0, 0, 0]).unwrap(), q(1, 1));
        assert_eq!(lambda_g_gm1(1, &[0]).unwrap(), q(1, 24));
        assert_eq!(lambda_g_gm1(2, &[1]).unwrap(), q(1, 2880));
        assert_eq!(lambda_g_gm1(2, &[1, 1]).unwrap(), q(1, 960));
        assert_eq!(lambda_cube(2).unwrap(), q(1, 2880));
        assert_eq!(lambda_cube(3).unwrap(), q(1, 725760));
    }

    #[test]
    fn cube_matches_mumford_and_dilaton() {
        // λ_1^3 = 2 λ_2 λ_1 on M̄_2 and ⟨τ_1|λ_2λ_1⟩ = 2 ∫ λ_2 λ_1
        let top = lambda_g_gm1(2, &[1]).unwrap() / ExactRational::from(2);
        assert_eq!(lambda_cube(2).unwrap(), top * ExactRational::from(2));
    }

    #[test]
    fn solvers() {
        assert_eq!(lambda_g_solver(2, &[1, 2]).unwrap(), q(7, 1920));
        assert_eq!(lambda_g_solver(1, &[0]).unwrap(), q(1, 24));
        assert_eq!(lambda_g_solver(0, &[1, 1, 0, 0, 0]).unwrap(), q(2, 1));
        assert_eq!(lambda_g_solver(0, &[1, 1, 0, 0]).unwrap(), q(0, 1));
        assert_eq!(lambda_g_gm1_solver(2, &[1, 1]).unwrap(), q(1, 960));
        assert_eq!(lambda_g_gm1_solver(1, &[0]).unwrap(), q(1, 24));
        assert_eq!(lambda_g_gm1_solver(3, &[2, 1]).unwrap(), lambda_g_gm1(3, &[2, 1]).unwrap());
    }

    #[test]
    fn lambda_gm1_values() {
        assert_eq!(lambda_gm1(1, &[1]).unwrap(), q(1, 24));
        assert_eq!(lambda_gm1(2, &[3]).unwrap(), q(1, 480));
        assert_eq!(lambda_gm1(2, &[2]).unwrap(), q(0, 1));
    }

    #[test]
    fn lambda_gm1_relation_is_consistent_for_every_pivot() {
        for (g, ks) in [(2u32, vec![2u32, 2]), (2, vec![2, 2, 1]), (2, vec![3, 2, 1, 0]), (3, vec![4, 2]), (3, vec![3, 3]), (3, vec![3, 2, 2]), (4, vec![4, 3, 2])] {
            let key = IntegralKey::new(g, &ks, ClassTag::LambdaGm1);
            assert!(key.is_potentially_nonzero());
            let v = lambda_gm1(g, &ks).unwrap();
            for pivot in 0..key.points() {
                if key.exponents()[pivot] >= 2 {
                    assert_eq!(solve_by_relation(&key, pivot).unwrap(), v, "{key} pivot {pivot}");
                }
            }
        }
    }

    #[test]
    fn gg2_in_genus_two_is_lambda_g() {
        // λ_2 λ_0 = λ_2
        for ks in [vec![2u32], vec![3, 0], vec![2, 1], vec![2, 2, 0], vec![3, 1, 0], vec![2, 1, 1, 0], vec![4, 0, 0, 0]] {
            assert_eq!(lambda_g_gm2(2, &ks).unwrap(), lambda_g(2, &ks).unwrap(), "{ks:?}");
        }
    }

    #[test]
    fn gg2_relation_is_consistent_for_every_pivot() {
        for (g, ks) in [(3u32, vec![3u32]), (3, vec![2, 2]), (3, vec![2, 2, 1]), (4, vec![4]), (4, vec![3, 2]), (4, vec![2, 2, 2]), (5, vec![3, 2, 2])] {
            let key = IntegralKey::new(g, &ks, ClassTag::LambdaGGm2);
            assert!(key.is_potentially_nonzero(), "{key}");
            let v = lambda_g_gm2(g, &ks).unwrap();
            for pivot in 0..key.points() {
                if key.exponents()[pivot] >= 2 {
                    assert_eq!(solve_by_relation(&key, pivot).unwrap(), v, "{key} pivot {pivot}");
                }
            }
        }
    }

    #[test]
    fn top_class_reduces_to_cube() {
        assert_eq!(lambda_top(2, &[]).unwrap(), q(1, 5760));
        assert_eq!(lambda_top(3, &[1]).unwrap(), lambda_cube(3).unwrap() * ExactRational::from(2));
        assert_eq!(lambda_top(3, &[2, 0]).unwrap(), lambda_top(3, &[1]).unwrap());
    }

    #[test]
    fn kappa_inversion() {
        assert_eq!(kappa_lambda_integral(2, &[0]).unwrap(), q(1, 2880));
        assert_eq!(kappa_lambda_integral(3, &[1]).unwrap(), lambda_g_gm1(3, &[2]).unwrap());
        let two = lambda_g_gm1(4, &[2, 2]).unwrap() - lambda_g_gm1(4, &[3]).unwrap();
        assert_eq!(kappa_lambda_integral(4, &[1, 1]).unwrap(), two);
        assert_eq!(kappa_lambda_integral(4, &[1]).unwrap(), q(0, 1));
    }

    #[test]
    fn kappa_matches_mobius_weights() {
        // κ_{a_1}…κ_{a_m} = Σ_P (−1)^{m−|P|} ⟨∏_B τ_{a_B + 1}⟩
        for (g, a) in [(5u32, vec![1u32, 1, 1]), (6, vec![2, 1, 1]), (6, vec![1, 1, 1, 1]), (7, vec![2, 2, 1])] {
            let mut v = ExactRational::zero();
            for_each_set_partition(a.len(), &mut |blocks| {
                let sign = if (a.len() - blocks.len()) % 2 == 0 { 1 } else { -1 };
                let w = ExactRational::from(sign);
                let mut taus = Vec::new();
                for b in blocks {
                    taus.push(b.iter().map(|&i| a[i]).sum::<u32>() + 1);
                }
                v += w * lambda_g_gm1(g, &taus).unwrap();
            });
            assert_eq!(kappa_lambda_integral(g, &a).unwrap(), v, "g={g} {a:?}");
        }
    }

    #[test]
    fn set_partitions_are_bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut c = 0;
            for_each_set_partition(n, &mut |_| c += 1);
            assert_eq!(c, bell);
        }
    }
}
