//! Coefficients of `L_k Z / Z` for curves and surfaces, evaluated at `t = 0`
//! after differentiating by `∂_{t_{k_1}} … ∂_{t_{k_n}}`.
//!
//! The curve relations are `x^k_g`, `y^k_{g,ℓ}` of the degree-0 curve theorem;
//! the surface ones are the `|c|^2` and `c·s_ℓ` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HodgeError, Result};
use crate::key::{ClassTag, IntegralKey};
use crate::numbers::bracket;
use crate::psi::for_each_split;
use crate::rational::{q, ExactRational};

/// Anything that can evaluate a stable, dimensionally correct integral.
pub trait HodgeSource {
    fn integral(&self, key: &IntegralKey) -> Result<ExactRational>;
}

impl<F: Fn(&IntegralKey) -> Result<ExactRational>> HodgeSource for F {
    fn integral(&self, key: &IntegralKey) -> Result<ExactRational> {
        self(key)
    }
}

/// `constant + Σ coefficient · ⟨unknown⟩`.
///
/// Integrals the source reports as underdetermined are kept as symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: ExactRational,
    pub unknowns: BTreeMap<IntegralKey, ExactRational>,
}

impl LinearForm {
    /// The value, if no unknowns remain.
    pub fn value(&self) -> Option<&ExactRational> {
        self.unknowns.is_empty().then_some(&self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.unknowns.is_empty()
    }

    /// Solves `self = 0` for its single unknown `target`.
    pub fn solve_for(&self, target: &IntegralKey) -> Result<ExactRational> {
        match self.unknowns.get(target) {
            Some(c) if self.unknowns.len() == 1 && !c.is_zero() => Ok(-&self.constant / c),
            _ => Err(HodgeError::Underdetermined(target.clone())),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (k, c) in &self.unknowns {
            write!(f, " + ({c}) * {k}")?;
        }
        Ok(())
    }
}

struct Acc<'a, S: ?Sized> {
    src: &'a S,
    form: LinearForm,
}

/// A factor of a product term: `⟨τ_{exps}|tag⟩_genus` at a possibly negative genus.
struct Factor {
    genus: i64,
    exps: Vec<u32>,
    tag: ClassTag,
}

impl<'a, S: HodgeSource + ?Sized> Acc<'a, S> {
    fn new(src: &'a S) -> Self {
        Acc { src, form: LinearForm::default() }
    }

    fn key(f: &Factor) -> Option<IntegralKey> {
        if f.genus < 0 {
            return None;
        }
        let key = IntegralKey::new(f.genus as u32, &f.exps, f.tag);
        key.is_potentially_nonzero().then_some(key)
    }

    fn term(&mut self, coef: ExactRational, genus: i64, exps: Vec<u32>, tag: ClassTag) -> Result<()> {
        if coef.is_zero() {
            return Ok(());
        }
        let Some(key) = Self::key(&Factor { genus, exps, tag }) else { return Ok(()) };
        match self.src.integral(&key) {
            Ok(v) => self.form.constant += coef * v,
            Err(HodgeError::Underdetermined(k)) if k == key => {
                let slot = self.form.unknowns.entry(key).or_insert_with(ExactRational::zero);
                *slot += coef;
                if slot.is_zero() {
                    self.form.unknowns.remove(&k);
                }
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn product(&mut self, coef: ExactRational, a: Factor, b: Factor) -> Result<()> {
        if coef.is_zero() {
            return Ok(());
        }
        let (Some(ka), Some(kb)) = (Self::key(&a), Self::key(&b)) else { return Ok(()) };
        let va = self.src.integral(&ka)?;
        if va.is_zero() {
            return Ok(());
        }
        let vb = self.src.integral(&kb)?;
        self.form.constant += coef * va * vb;
        Ok(())
    }
}

fn sign(m: i64) -> ExactRational {
    if m % 2 == 0 {
        ExactRational::one()
    } else {
        -ExactRational::one()
    }
}

fn int(v: i64) -> ExactRational {
    ExactRational::from(v)
}

fn half(v: i64) -> ExactRational {
    ExactRational::from(v) + q(1, 2)
}

fn with(first: &[u32], rest: &[u32]) -> Vec<u32> {
    let mut v = first.to_vec();
    v.extend_from_slice(rest);
    v
}

fn without(s: &[u32], j: usize) -> Vec<u32> {
    let mut v = s.to_vec();
    v.remove(j);
    v
}

fn check_k(k: i64, min: i64) -> Result<()> {
    if k < min {
        return Err(HodgeError::Domain(format!("relation index k = {k} must be at least {min}")));
    }
    Ok(())
}

/// `∂^S x^k_g(0)` for curves (`k ≥ 1`): λ_{g−1} and λ_g integrals, with the
/// genus-split quadratic term over `g_1 + g_2 = g`, `g_i ≥ 0`.
pub fn x_curve(k: i64, g: u32, derivs: &[u32], src: &(impl HodgeSource + ?Sized)) -> Result<LinearForm> {
    check_k(k, 1)?;
    let gi = g as i64;
    let ku = k as u32;
    let mut acc = Acc::new(src);
    acc.term(-bracket(&int(1), k, 0), gi, with(&[ku + 1], derivs), ClassTag::LambdaGm1)?;
    for (j, &kj) in derivs.iter().enumerate() {
        let rest = without(derivs, j);
        acc.term(bracket(&int(kj as i64), k, 0), gi, with(&[ku + kj], &rest), ClassTag::LambdaGm1)?;
    }
    acc.term(bracket(&int(1), k, 1), gi, with(&[ku], derivs), ClassTag::LambdaG)?;
    for (j, &kj) in derivs.iter().enumerate() {
        if ku + kj == 0 {
            continue;
        }
        let rest = without(derivs, j);
        acc.term(-bracket(&int(kj as i64), k, 1), gi, with(&[ku + kj - 1], &rest), ClassTag::LambdaG)?;
    }
    for m in 0..=(k - 2) {
        let c = q(-1, 2) * sign(m + 1) * bracket(&int(-m - 1), k, 1);
        let other = (k - m - 2) as u32;
        let mut err = None;
        for_each_split(derivs, |i, j| {
            if err.is_some() {
                return;
            }
            for g1 in 0..=gi {
                let a = Factor { genus: g1, exps: with(&[m as u32], i), tag: ClassTag::LambdaG };
                let b = Factor { genus: gi - g1, exps: with(&[other], j), tag: ClassTag::LambdaG };
                if let Err(e) = acc.product(c.clone(), a, b) {
                    err = Some(e);
                    return;
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(acc.form)
}

/// `∂^S y^k_{g,ℓ}(0)` for curves (`k ≥ 1`), an identity among λ_g integrals.
pub fn y_curve(
    k: i64,
    g: u32,
    ell: u32,
    derivs: &[u32],
    src: &(impl HodgeSource + ?Sized),
) -> Result<LinearForm> {
    check_k(k, 1)?;
    let gi = g as i64;
    let ku = k as u32;
    let mut acc = Acc::new(src);
    acc.term(-bracket(&int(1), k, 0), gi, with(&[ku + 1, ell], derivs), ClassTag::LambdaG)?;
    for (j, &kj) in derivs.iter().enumerate() {
        let rest = without(derivs, j);
        acc.term(bracket(&int(kj as i64), k, 0), gi, with(&[ku + kj, ell], &rest), ClassTag::LambdaG)?;
    }
    acc.term(bracket(&int(ell as i64 + 1), k, 0), gi, with(&[ku + ell], derivs), ClassTag::LambdaG)?;
    Ok(acc.form)
}

/// `∂^S` of the `|c|^2 ħ^{g−1}` coefficient for surfaces (`k ≥ 1`):
/// λ_gλ_{g−2} and λ_gλ_{g−1} integrals and genus-0 ψ integrals.
pub fn x_surface(k: i64, g: u32, derivs: &[u32], src: &(impl HodgeSource + ?Sized)) -> Result<LinearForm> {
    check_k(k, 1)?;
    let gi = g as i64;
    let ku = k as u32;
    let gg2 = ClassTag::LambdaGGm2;
    let gg1 = ClassTag::LambdaGGm1;
    let mut acc = Acc::new(src);

    acc.term(-bracket(&half(0), k, 0), gi, with(&[ku + 1], derivs), gg2)?;
    for (j, &kj) in derivs.iter().enumerate() {
        let rest = without(derivs, j);
        acc.term(bracket(&half(kj as i64 - 1), k, 0), gi, with(&[ku + kj], &rest), gg2)?;
    }
    acc.term(bracket(&half(0), k, 1), gi, with(&[ku], derivs), gg1)?;
    for (j, &kj) in derivs.iter().enumerate() {
        if ku + kj == 0 {
            continue;
        }
        let rest = without(derivs, j);
        acc.term(-bracket(&half(kj as i64 - 1), k, 1), gi, with(&[ku + kj - 1], &rest), gg1)?;
    }

    let mut err = None;
    for m in 0..k {
        let mu = m as u32;
        let other = (k - m - 1) as u32;
        let c0 = sign(m + 1) * bracket(&half(-m - 2), k, 0);
        let cq = sign(m + 1) * bracket(&half(-m - 1), k, 0) * q(1, 2);
        for_each_split(derivs, |i, j| {
            if err.is_some() {
                return;
            }
            let genus0 = Factor { genus: 0, exps: with(&[mu], i), tag: ClassTag::None };
            let top = Factor { genus: gi, exps: with(&[other], j), tag: gg2 };
            let mut r = acc.product(c0.clone(), genus0, top);
            for g1 in 1..gi {
                if r.is_err() {
                    break;
                }
                let a = Factor { genus: g1, exps: with(&[mu], i), tag: gg1 };
                let b = Factor { genus: gi - g1, exps: with(&[other], j), tag: gg1 };
                r = acc.product(cq.clone(), a, b);
            }
            if let Err(e) = r {
                err = Some(e);
            }
        });
    }
    for m in 0..=(k - 2) {
        let mu = m as u32;
        let other = (k - m - 2) as u32;
        let c = -sign(m + 1) * bracket(&half(-m - 2), k, 1);
        for_each_split(derivs, |i, j| {
            if err.is_some() {
                return;
            }
            let genus0 = Factor { genus: 0, exps: with(&[mu], i), tag: ClassTag::None };
            let top = Factor { genus: gi, exps: with(&[other], j), tag: gg1 };
            if let Err(e) = acc.product(c.clone(), genus0, top) {
                err = Some(e);
            }
        });
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(acc.form)
}

/// `∂^S` of the `c·s_ℓ ħ^{g−1}` coefficient for surfaces (`k ≥ 0`), an
/// identity among λ_gλ_{g−1} integrals and genus-0 ψ integrals.
pub fn y_surface(
    k: i64,
    g: u32,
    ell: u32,
    derivs: &[u32],
    src: &(impl HodgeSource + ?Sized),
) -> Result<LinearForm> {
    check_k(k, 0)?;
    let gi = g as i64;
    let ku = k as u32;
    let gg1 = ClassTag::LambdaGGm1;
    let mut acc = Acc::new(src);

    acc.term(-bracket(&half(0), k, 0), gi, with(&[ku + 1, ell], derivs), gg1)?;
    for (j, &kj) in derivs.iter().enumerate() {
        let rest = without(derivs, j);
        acc.term(bracket(&half(kj as i64 - 1), k, 0), gi, with(&[ku + kj, ell], &rest), gg1)?;
    }
    acc.term(bracket(&half(ell as i64), k, 0), gi, with(&[ku + ell], derivs), gg1)?;

    let mut err = None;
    for m in 0..k {
        let mu = m as u32;
        let other = (k - m - 1) as u32;
        let e = sign(m + 1);
        let c1 = &e * bracket(&half(-m - 2), k, 0);
        let c2 = &e * bracket(&half(-m - 1), k, 0);
        for_each_split(derivs, |i, j| {
            if err.is_some() {
                return;
            }
            let a = Factor { genus: 0, exps: with(&[mu], i), tag: ClassTag::None };
            let b = Factor { genus: gi, exps: with(&[other, ell], j), tag: gg1 };
            let mut r = acc.product(c1.clone(), a, b);
            if r.is_ok() {
                let a = Factor { genus: 0, exps: with(&[mu, ell], i), tag: ClassTag::None };
                let b = Factor { genus: gi, exps: with(&[other], j), tag: gg1 };
                r = acc.product(c2.clone(), a, b);
            }
            if let Err(e) = r {
                err = Some(e);
            }
        });
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(acc.form)
}
