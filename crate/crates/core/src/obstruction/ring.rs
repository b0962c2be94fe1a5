//! λ classes on `M̄_g` with coefficients polynomial in the Chern classes of a
//! target, modulo Mumford's relations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::rational::ExactRational;

/// Exponents of `c_1, …, c_r`.
pub type ChernMonomial = Vec<u32>;
/// Exponents of `λ_1, …, λ_g`.
pub type LambdaMonomial = Vec<u32>;

fn weighted_degree(exps: &[u32]) -> u32 {
    exps.iter().enumerate().map(|(i, e)| (i as u32 + 1) * e).sum()
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Largest λ-degree that survives on `M̄_g` (`M̄_{1,1}` for `g = 1`).
pub fn lambda_degree_cap(genus: u32) -> u32 {
    match genus {
        0 => 0,
        1 => 1,
        g => 3 * g - 3,
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LambdaRingElem {
    genus: u32,
    dim: u32,
    terms: BTreeMap<(ChernMonomial, LambdaMonomial), ExactRational>,
}

impl LambdaRingElem {
    pub fn zero(genus: u32, dim: u32) -> Self {
        LambdaRingElem { genus, dim, terms: BTreeMap::new() }
    }

    pub fn constant(genus: u32, dim: u32, c: ExactRational) -> Self {
        let mut e = Self::zero(genus, dim);
        e.push(vec![0; dim as usize], vec![0; genus as usize], c);
        e
    }

    pub fn one(genus: u32, dim: u32) -> Self {
        Self::constant(genus, dim, ExactRational::one())
    }

    /// `λ_i`, with `λ_0 = 1` and `λ_i = 0` for `i > g`.
    pub fn lambda(genus: u32, dim: u32, i: u32) -> Self {
        if i == 0 {
            return Self::one(genus, dim);
        }
        let mut e = Self::zero(genus, dim);
        if i <= genus {
            let mut l = vec![0; genus as usize];
            l[i as usize - 1] = 1;
            e.push(vec![0; dim as usize], l, ExactRational::one());
        }
        mumford_reduce(&e)
    }

    /// `c_i(X)`, with `c_0 = 1` and `c_i = 0` for `i > r`.
    pub fn chern(genus: u32, dim: u32, i: u32) -> Self {
        if i == 0 {
            return Self::one(genus, dim);
        }
        let mut e = Self::zero(genus, dim);
        if i <= dim {
            let mut c = vec![0; dim as usize];
            c[i as usize - 1] = 1;
            e.push(c, vec![0; genus as usize], ExactRational::one());
        }
        e
    }

    /// A sum of monomials, taken as given: no Mumford reduction is applied.
    pub fn from_terms(
        genus: u32,
        dim: u32,
        terms: impl IntoIterator<Item = (ChernMonomial, LambdaMonomial, ExactRational)>,
    ) -> Self {
        let mut e = Self::zero(genus, dim);
        for (c, l, v) in terms {
            assert_eq!(c.len(), dim as usize, "Chern monomial length");
            assert_eq!(l.len(), genus as usize, "λ monomial length");
            e.push(c, l, v);
        }
        e
    }

    fn push(&mut self, c: ChernMonomial, l: LambdaMonomial, v: ExactRational) {
        if v.is_zero() || weighted_degree(&c) > self.dim {
            return;
        }
        let key = (c, l);
        let slot = self.terms.entry(key.clone()).or_insert_with(ExactRational::zero);
        *slot += v;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChernMonomial, &LambdaMonomial, &ExactRational)> {
        self.terms.iter().map(|((c, l), v)| (c, l, v))
    }

    pub fn coefficient(&self, chern: &[u32], lambda: &[u32]) -> ExactRational {
        self.terms
            .get(&(chern.to_vec(), lambda.to_vec()))
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// True when some term involves `c_i`.
    pub fn mentions_chern(&self, i: u32) -> bool {
        self.terms.keys().any(|(c, _)| c.get(i as usize - 1).is_some_and(|&e| e > 0))
    }

    pub fn scale(&self, s: &ExactRational) -> Self {
        let mut e = Self::zero(self.genus, self.dim);
        for ((c, l), v) in &self.terms {
            e.push(c.clone(), l.clone(), v * s);
        }
        e
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!((self.genus, self.dim), (other.genus, other.dim), "mixing rings");
    }

    /// Display with λ indices written relative to the genus
    /// (`λ_g`, `λ_{g-1}`, …).
    pub fn relative(&self) -> Relative<'_> {
        Relative(self)
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, relative: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|((c, l), _)| {
            let factors: u32 = c.iter().sum();
            let desc: Vec<u32> = c.iter().rev().copied().collect();
            (weighted_degree(c), factors, std::cmp::Reverse(desc), std::cmp::Reverse(l.clone()))
        });
        for (n, ((c, l), v)) in terms.into_iter().enumerate() {
            let neg = v.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = v.abs();
            let mut body = String::new();
            for i in (0..c.len()).rev() {
                push_power(&mut body, "c", &(i + 1).to_string(), c[i]);
            }
            for i in (0..l.len()).rev() {
                let idx = i as u32 + 1;
                let name = if relative {
                    match self.genus - idx {
                        0 => "g".to_string(),
                        j => format!("{{g-{j}}}"),
                    }
                } else if idx >= 10 {
                    format!("{{{idx}}}")
                } else {
                    idx.to_string()
                };
                push_power(&mut body, "λ", &name, l[i]);
            }
            if body.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&body)?;
            } else if mag.is_integer() {
                write!(f, "{mag}{body}")?;
            } else {
                write!(f, "({mag}){body}")?;
            }
        }
        Ok(())
    }
}

fn push_power(out: &mut String, sym: &str, idx: &str, e: u32) {
    match e {
        0 => {}
        1 => out.push_str(&format!("{sym}_{idx}")),
        _ => out.push_str(&format!("{sym}_{idx}^{e}")),
    }
}

impl fmt::Display for LambdaRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

impl fmt::Debug for LambdaRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[g={}, r={}] {}", self.genus, self.dim, self)
    }
}

pub struct Relative<'a>(&'a LambdaRingElem);

impl fmt::Display for Relative<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write(f, true)
    }
}

impl Add for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn add(self, rhs: &LambdaRingElem) -> LambdaRingElem {
        self.check_compatible(rhs);
        let mut e = self.clone();
        for ((c, l), v) in &rhs.terms {
            e.push(c.clone(), l.clone(), v.clone());
        }
        mumford_reduce(&e)
    }
}

impl Sub for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn sub(self, rhs: &LambdaRingElem) -> LambdaRingElem {
        self + &(-rhs)
    }
}

impl Neg for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn neg(self) -> LambdaRingElem {
        self.scale(&-ExactRational::one())
    }
}

impl Mul for &LambdaRingElem {
    type Output = LambdaRingElem;
    fn mul(self, rhs: &LambdaRingElem) -> LambdaRingElem {
        self.check_compatible(rhs);
        let mut e = LambdaRingElem::zero(self.genus, self.dim);
        for ((c1, l1), v1) in &self.terms {
            for ((c2, l2), v2) in &rhs.terms {
                e.push(mono_mul(c1, c2), mono_mul(l1, l2), v1 * v2);
            }
        }
        mumford_reduce(&e)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LambdaRingElem {
            type Output = LambdaRingElem;
            fn $m(self, rhs: LambdaRingElem) -> LambdaRingElem {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LambdaRingElem {
    type Output = LambdaRingElem;
    fn neg(self) -> LambdaRingElem {
        -&self
    }
}

/// Normal form modulo every relation read off from `c_t(E) c_{−t}(E) = 1`,
/// with λ-degrees above `dim M̄_g` dropped.
pub fn mumford_reduce(expr: &LambdaRingElem) -> LambdaRingElem {
    let reducer = reducer(expr.genus);
    let mut out = LambdaRingElem::zero(expr.genus, expr.dim);
    for ((c, l), v) in &expr.terms {
        for (m, w) in reducer.normal_form(l) {
            out.push(c.clone(), m.clone(), v * w);
        }
    }
    out
}

/// Coefficient of `t^j` in `c_t(E) c_{−t}(E)`, before reduction.
pub fn chern_product_coefficient(genus: u32, dim: u32, j: u32) -> LambdaRingElem {
    let mut e = LambdaRingElem::zero(genus, dim);
    for (l, v) in relation(genus, j) {
        e.push(vec![0; dim as usize], l, v);
    }
    e
}

/// `Σ_{a+b=j} (−1)^b λ_a λ_b` as λ monomials.
fn relation(genus: u32, j: u32) -> Vec<(LambdaMonomial, ExactRational)> {
    let mut acc: BTreeMap<LambdaMonomial, ExactRational> = BTreeMap::new();
    for a in 0..=j.min(genus) {
        let b = j - a;
        if b > genus {
            continue;
        }
        let mut m = vec![0; genus as usize];
        if a > 0 {
            m[a as usize - 1] += 1;
        }
        if b > 0 {
            m[b as usize - 1] += 1;
        }
        let s = if b % 2 == 0 { 1 } else { -1 };
        *acc.entry(m).or_insert_with(ExactRational::zero) += ExactRational::from(s);
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// All λ monomials of weighted degree `d`.
fn monomials(genus: u32, d: u32) -> Vec<LambdaMonomial> {
    fn go(genus: u32, part: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<LambdaMonomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if part == 0 {
            return;
        }
        for e in (0..=left / part).rev() {
            cur[part as usize - 1] = e;
            go(genus, part - 1, left - e * part, cur, out);
        }
        cur[part as usize - 1] = 0;
    }
    let mut out = Vec::new();
    if genus == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(genus, genus, d, &mut vec![0; genus as usize], &mut out);
    out
}

/// Order in which monomials are eliminated: more factors first, then the
/// lexicographically smaller descending index list.
fn elimination_key(m: &[u32]) -> (std::cmp::Reverse<u32>, Vec<u32>) {
    let factors: u32 = m.iter().sum();
    let mut desc = Vec::new();
    for i in (0..m.len()).rev() {
        for _ in 0..m[i] {
            desc.push(i as u32 + 1);
        }
    }
    (std::cmp::Reverse(factors), desc)
}

struct Reducer {
    genus: u32,
    forms: HashMap<LambdaMonomial, Vec<(LambdaMonomial, ExactRational)>>,
}

impl Reducer {
    fn new(genus: u32) -> Self {
        let mut forms = HashMap::new();
        for d in 0..=lambda_degree_cap(genus) {
            let mut cols = monomials(genus, d);
            cols.sort_by_key(|m| elimination_key(m));
            let index: HashMap<_, _> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Vec<Vec<ExactRational>> = Vec::new();
            for j in 1..=d / 2 {
                let rel = relation(genus, 2 * j);
                if rel.is_empty() {
                    continue;
                }
                for m in monomials(genus, d - 2 * j) {
                    let mut row = vec![ExactRational::zero(); cols.len()];
                    for (r, v) in &rel {
                        row[index[&mono_mul(&m, r)]] += v.clone();
                    }
                    rows.push(row);
                }
            }
            let pivots = rref(&mut rows, cols.len());
            let mut is_pivot = vec![None; cols.len()];
            for (r, &p) in pivots.iter().enumerate() {
                is_pivot[p] = Some(r);
            }
            for (c, m) in cols.iter().enumerate() {
                let form = match is_pivot[c] {
                    None => vec![(m.clone(), ExactRational::one())],
                    Some(r) => rows[r]
                        .iter()
                        .enumerate()
                        .filter(|(k, v)| *k != c && !v.is_zero())
                        .map(|(k, v)| (cols[k].clone(), -v))
                        .collect(),
                };
                forms.insert(m.clone(), form);
            }
        }
        Reducer { genus, forms }
    }

    fn normal_form(&self, m: &LambdaMonomial) -> &[(LambdaMonomial, ExactRational)] {
        debug_assert_eq!(m.len(), self.genus as usize);
        self.forms.get(m).map_or(&[], |v| v.as_slice())
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// remaining row.
fn rref(rows: &mut Vec<Vec<ExactRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

static REDUCERS: Lazy<Mutex<HashMap<u32, Arc<Reducer>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn reducer(genus: u32) -> Arc<Reducer> {
    if let Some(r) = REDUCERS.lock().get(&genus) {
        return r.clone();
    }
    let built = Arc::new(Reducer::new(genus));
    REDUCERS.lock().entry(genus).or_insert(built).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn lam(g: u32, i: u32) -> LambdaRingElem {
        LambdaRingElem::lambda(g, 0, i)
    }

    fn raw_lambda(g: u32, idx: &[u32]) -> LambdaRingElem {
        let mut l = vec![0; g as usize];
        for &i in idx {
            l[i as usize - 1] += 1;
        }
        LambdaRingElem::from_terms(g, 0, [(vec![], l, ExactRational::one())])
    }

    #[test]
    fn top_lambda_squares_to_zero() {
        for g in 1..=6 {
            assert!(mumford_reduce(&raw_lambda(g, &[g, g])).is_zero());
        }
    }

    #[test]
    fn second_lambda_squared() {
        for g in 2..=6 {
            let lhs = mumford_reduce(&raw_lambda(g, &[g - 1, g - 1]));
            let expected = raw_lambda(g, &if g == 2 { vec![2] } else { vec![g, g - 2] }).scale(&q(2, 1));
            assert_eq!(lhs, expected, "g = {g}");
        }
    }

    #[test]
    fn second_lambda_cubed() {
        for g in 3..=6 {
            let lhs = mumford_reduce(&raw_lambda(g, &[g - 1, g - 1, g - 1]));
            let expected = raw_lambda(g, &[g, g - 1, g - 2]).scale(&q(2, 1));
            assert_eq!(lhs, expected, "g = {g}");
            assert_eq!(lhs.relative().to_string(), "2λ_gλ_{g-1}λ_{g-2}");
        }
    }

    #[test]
    fn relations_reduce_to_zero() {
        for g in 1..=6 {
            for j in 1..=2 * g {
                assert!(mumford_reduce(&chern_product_coefficient(g, 0, j)).is_zero(), "g={g} t^{j}");
            }
            assert_eq!(mumford_reduce(&chern_product_coefficient(g, 0, 0)), LambdaRingElem::one(g, 0));
        }
    }

    #[test]
    fn reduction_is_idempotent_and_multiplicative() {
        let g = 4;
        let a = &lam(g, 1) + &lam(g, 3);
        let b = &(&lam(g, 2) * &lam(g, 1)) - &lam(g, 3);
        let ab = &a * &b;
        assert_eq!(mumford_reduce(&ab), ab);
        let c = &a * &a;
        assert_eq!(&(&c * &b), &(&a * &(&a * &b)));
    }

    #[test]
    fn degrees_above_the_moduli_dimension_vanish() {
        assert!((&lam(2, 2) * &(&lam(2, 1) * &lam(2, 1))).is_zero());
        assert!((&lam(1, 1) * &lam(1, 1)).is_zero());
    }

    #[test]
    fn chern_truncation() {
        let c1 = LambdaRingElem::chern(2, 2, 1);
        let c2 = LambdaRingElem::chern(2, 2, 2);
        assert!((&c1 * &c2).is_zero());
        assert_eq!((&c1 * &c1).to_string(), "c_1^2");
    }

    #[test]
    fn printing() {
        let g = 3;
        let e = &LambdaRingElem::lambda(g, 1, 3) - &(&LambdaRingElem::chern(g, 1, 1) * &LambdaRingElem::lambda(g, 1, 2));
        assert_eq!(e.to_string(), "λ_3 - c_1λ_2");
        assert_eq!(e.relative().to_string(), "λ_g - c_1λ_{g-1}");
        assert_eq!(LambdaRingElem::constant(2, 0, q(-1, 2)).to_string(), "-1/2");
    }
}
