//! The operators `L_k` for a point, for general even-cohomology targets,
//! and the explicit curve and surface forms.

use crate::error::{HodgeError, Result};
use crate::numbers::bracket;
use crate::phase::Coord;
use crate::rational::{q, ExactRational};

use super::cohomology::CohomologyData;
use super::operator::DifferentialOperator;

fn sign(m: i64) -> ExactRational {
    if m % 2 == 0 {
        ExactRational::one()
    } else {
        -ExactRational::one()
    }
}

fn br(x: ExactRational, k: i64, i: i64) -> ExactRational {
    bracket(&x, k, i)
}

/// `A_{k,m} = Γ(k+m+3/2)/Γ(m+1/2) = (m+1/2)(m+3/2)…(m+k+1/2)`.
pub fn point_linear_coefficient(k: i64, m: i64) -> ExactRational {
    crate::numbers::rising(&(ExactRational::from(m) + q(1, 2)), k)
}

/// `(−1)^{m+1} Γ(k−m+1/2)/Γ(−m−1/2)`, the coefficient of `(ħ/2) ∂_m ∂_{k−m−1}`.
pub fn point_quadratic_coefficient(k: i64, m: i64) -> ExactRational {
    sign(m + 1) * crate::numbers::rising(&(-ExactRational::from(m) - q(1, 2)), k)
}

/// Constant term of `L_0` for a point.
pub fn point_constant() -> ExactRational {
    q(1, 16)
}

/// Coefficient of `t_0^2/ħ` in `L_{−1}` for a point.
pub fn point_t0_squared() -> ExactRational {
    q(1, 2)
}

/// `L_k` for a point, with multiplications up to level `mult_cap`.
pub fn point_operator(k: i64, mult_cap: u16) -> Result<DifferentialOperator> {
    if k < -1 {
        return Err(HodgeError::Domain(format!("L_{k} is not defined")));
    }
    let t = Coord::point;
    let mut op = DifferentialOperator::zero(mult_cap);
    for m in 0..=mult_cap as i64 {
        let lvl = m + k;
        if lvl < 0 {
            continue;
        }
        let a = point_linear_coefficient(k, m);
        op.add(a.clone(), 0, &[t(m as u16)], &[t(lvl as u16)]);
        if m == 1 {
            op.add(-a, 0, &[], &[t(lvl as u16)]);
        }
    }
    for m in 0..k {
        let c = point_quadratic_coefficient(k, m) * q(1, 2);
        op.add(c, 1, &[], &[t(m as u16), t((k - m - 1) as u16)]);
    }
    if k == -1 {
        op.add(point_t0_squared(), -1, &[t(0), t(0)], &[]);
    }
    if k == 0 {
        op.add(point_constant(), 0, &[], &[]);
    }
    Ok(op)
}

/// `L_k` built from cohomology data; class `a` lives at `Coord { class: a, .. }`.
pub fn general_operator(
    k: i64,
    x: &CohomologyData,
    mult_cap: u16,
) -> Result<DifferentialOperator> {
    if k < -1 {
        return Err(HodgeError::Domain(format!("L_{k} is not defined")));
    }
    x.validate()?;
    let n = x.size();
    let mut op = DifferentialOperator::zero(mult_cap);
    let c = |a: usize, l: i64| Coord::new(a as u16, l as u16);

    for i in 0..=k + 1 {
        let ci = x.c_power(i as u32);
        for a in 0..n {
            for m in 0..=mult_cap as i64 {
                let lvl = m + k - i;
                if lvl < 0 {
                    continue;
                }
                let w = br(x.weight(a) + ExactRational::from(m), k, i);
                if w.is_zero() {
                    continue;
                }
                for b in 0..n {
                    let coef = &w * &ci[a][b];
                    if coef.is_zero() {
                        continue;
                    }
                    op.add(coef.clone(), 0, &[c(a, m)], &[c(b, lvl)]);
                    if a == 0 && m == 1 {
                        op.add(-coef, 0, &[], &[c(b, lvl)]);
                    }
                }
            }
        }

        let up = x.c_power_upper(i as u32);
        for m in 0..=(k - i - 1) {
            let other = k - m - i - 1;
            for a in 0..n {
                // weight of the class dual to ∂_{a,m}
                let w = br(-x.weight(a) - ExactRational::from(m), k, i);
                for b in 0..n {
                    let coef = &w * &up[a][b] * sign(m + 1) * q(1, 2);
                    op.add(coef, 1, &[], &[c(a, m), c(b, other)]);
                }
            }
        }
    }

    let low = x.c_power_lower((k + 1) as u32);
    for a in 0..n {
        for b in 0..n {
            op.add(&low[a][b] * q(1, 2), -1, &[c(a, 0), c(b, 0)], &[]);
        }
    }
    if k == 0 {
        op.add(x.l0_constant(), 0, &[], &[]);
    }
    Ok(op)
}

/// Coordinates of a curve of genus `γ`: `t`, `s`, then `α^1..α^γ`, `β^1..β^γ`.
#[derive(Clone, Copy, Debug)]
pub struct CurveCoords {
    pub genus: u32,
}

impl CurveCoords {
    pub fn t(&self, m: u16) -> Coord {
        Coord::new(0, m)
    }
    pub fn s(&self, m: u16) -> Coord {
        Coord::new(1, m)
    }
    pub fn alpha(&self, i: u32, m: u16) -> Coord {
        Coord::new(2 + i as u16, m)
    }
    pub fn beta(&self, i: u32, m: u16) -> Coord {
        Coord::new(2 + (self.genus + i) as u16, m)
    }
}

/// `L_k` (`k ≥ 1`) for a curve of genus `γ` in the explicit `t, s, α, β` form.
pub fn curve_operator(k: i64, gamma: u32, mult_cap: u16) -> Result<DifferentialOperator> {
    if k < 1 {
        return Err(HodgeError::Domain("the explicit curve operator needs k >= 1".into()));
    }
    let cc = CurveCoords { genus: gamma };
    let mut op = DifferentialOperator::zero(mult_cap);
    let l = |x: i64| x as u16;
    let int = ExactRational::from;

    op.add(-br(int(1), k, 0), 0, &[], &[cc.t(l(k + 1))]);
    for m in 0..=mult_cap as i64 {
        let a = br(int(m), k, 0);
        op.add(a.clone(), 0, &[cc.t(l(m))], &[cc.t(l(k + m))]);
        let b = br(int(m + 1), k, 0);
        op.add(b.clone(), 0, &[cc.s(l(m))], &[cc.s(l(k + m))]);
        for i in 0..gamma {
            op.add(a.clone(), 0, &[cc.alpha(i, l(m))], &[cc.alpha(i, l(k + m))]);
            op.add(b.clone(), 0, &[cc.beta(i, l(m))], &[cc.beta(i, l(k + m))]);
        }
    }

    let chi = ExactRational::from(2 - 2 * gamma as i64);
    if !chi.is_zero() {
        op.add(-br(int(1), k, 1) * &chi, 0, &[], &[cc.s(l(k))]);
        for m in 0..=mult_cap as i64 {
            op.add(br(int(m), k, 1) * &chi, 0, &[cc.t(l(m))], &[cc.s(l(k + m - 1))]);
        }
        for m in 0..=(k - 2) {
            let c = &chi * q(1, 2) * sign(m + 1) * br(int(-m - 1), k, 1);
            op.add(c, 1, &[], &[cc.s(l(m)), cc.s(l(k - m - 2))]);
        }
    }
    Ok(op)
}

/// A simply-connected surface: `h^{1,1} = d` classes `ω_i`, orthonormal for
/// the intersection form, `p = h^{2,0}`, and `c_1(X) = Σ c_i ω_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    pub h11: usize,
    pub h20: usize,
    pub c: Vec<ExactRational>,
}

impl SurfaceData {
    pub fn projective_plane() -> Self {
        SurfaceData { h11: 1, h20: 0, c: vec![ExactRational::from(3)] }
    }

    pub fn c_squared(&self) -> ExactRational {
        self.c.iter().map(|x| x * x).sum()
    }

    pub fn t(&self, m: u16) -> Coord {
        Coord::new(0, m)
    }
    pub fn s(&self, i: usize, m: u16) -> Coord {
        Coord::new(1 + i as u16, m)
    }
    pub fn r(&self, m: u16) -> Coord {
        Coord::new(1 + self.h11 as u16, m)
    }
    pub fn a(&self, i: usize, m: u16) -> Coord {
        Coord::new((2 + self.h11 + i) as u16, m)
    }
    pub fn b(&self, i: usize, m: u16) -> Coord {
        Coord::new((2 + self.h11 + self.h20 + i) as u16, m)
    }
}

/// `L_k` (`k ≥ 1`) for a simply-connected surface in the explicit form.
pub fn surface_operator(k: i64, x: &SurfaceData, mult_cap: u16) -> Result<DifferentialOperator> {
    if k < 1 {
        return Err(HodgeError::Domain("the explicit surface operator needs k >= 1".into()));
    }
    if x.c.len() != x.h11 {
        return Err(HodgeError::InvalidInput("Chern vector length must equal h11".into()));
    }
    let mut op = DifferentialOperator::zero(mult_cap);
    let l = |v: i64| v as u16;
    let h = |v: i64| ExactRational::from(v) + q(1, 2);
    let d = x.h11;

    op.add(-br(h(0), k, 0), 0, &[], &[x.t(l(k + 1))]);
    for m in 0..=mult_cap as i64 {
        let mm = l(m);
        let lo = br(h(m - 1), k, 0);
        op.add(lo.clone(), 0, &[x.t(mm)], &[x.t(l(k + m))]);
        for i in 0..x.h20 {
            op.add(lo.clone(), 0, &[x.b(i, mm)], &[x.b(i, l(k + m))]);
        }
        let mid = br(h(m), k, 0);
        for i in 0..d {
            op.add(mid.clone(), 0, &[x.s(i, mm)], &[x.s(i, l(k + m))]);
        }
        let hi = br(h(m + 1), k, 0);
        op.add(hi.clone(), 0, &[x.r(mm)], &[x.r(l(k + m))]);
        for i in 0..x.h20 {
            op.add(hi.clone(), 0, &[x.a(i, mm)], &[x.a(i, l(k + m))]);
        }
    }
    for m in 0..k {
        let other = l(k - m - 1);
        let e = sign(m + 1);
        op.add(&e * br(h(-m - 2), k, 0), 1, &[], &[x.r(l(m)), x.t(other)]);
        let half = &e * br(h(-m - 1), k, 0) * q(1, 2);
        for i in 0..d {
            op.add(half.clone(), 1, &[], &[x.s(i, l(m)), x.s(i, other)]);
        }
    }

    for (i, ci) in x.c.iter().enumerate() {
        op.add(-br(h(0), k, 1) * ci, 0, &[], &[x.s(i, l(k))]);
        for m in 0..=mult_cap as i64 {
            if k + m - 1 < 0 {
                continue;
            }
            op.add(br(h(m - 1), k, 1) * ci, 0, &[x.t(l(m))], &[x.s(i, l(k + m - 1))]);
            op.add(br(h(m), k, 1) * ci, 0, &[x.s(i, l(m))], &[x.r(l(k + m - 1))]);
        }
        for m in 0..=(k - 2) {
            let c = sign(m + 1) * br(h(-m - 2), k, 1) * ci;
            op.add(c, 1, &[], &[x.r(l(m)), x.s(i, l(k - m - 2))]);
        }
    }

    let c2 = x.c_squared();
    if !c2.is_zero() {
        if k >= 1 {
            op.add(-br(h(0), k, 2) * &c2, 0, &[], &[x.r(l(k - 1))]);
        }
        for m in 0..=mult_cap as i64 {
            if k + m - 2 < 0 {
                continue;
            }
            op.add(br(h(m - 1), k, 2) * &c2, 0, &[x.t(l(m))], &[x.r(l(k + m - 2))]);
        }
        for m in 0..=(k - 3) {
            let c = sign(m + 1) * br(h(-m - 2), k, 2) * &c2 * q(1, 2);
            op.add(c, 1, &[], &[x.r(l(m)), x.r(l(k - m - 3))]);
        }
        if k == 1 {
            op.add(&c2 * q(1, 2), -1, &[x.t(0), x.t(0)], &[]);
        }
    }
    Ok(op)
}
