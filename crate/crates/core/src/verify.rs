//! Named self-check suites with a per-check report.

use std::fmt;
use std::str::FromStr;

use crate::error::HodgeError;
use crate::hodge::{
    c_constant_harmonic, integral, lambda_g, lambda_g_gm1, lambda_g_gm1_solver,
    lambda_g_solver, HodgeConstantTable,
};
use crate::key::{ClassTag, IntegralKey};
use crate::memo::INTEGRALS;
use crate::numbers::{b_closed_form, b_sequence};
use crate::obstruction::{
    chern_product_coefficient, euler_class, euler_class_genus1, mumford_reduce, LambdaRingElem,
};
use crate::phase::Caps;
use crate::psi::point_partition;
use crate::rational::{q, ExactRational};
use crate::virasoro::{general_operator, point_operator, CohomologyData, DifferentialOperator};

/// Reference values `(g, b_g, c_g)`.
pub const TABLE: [(u32, (i64, i64), (i64, i64)); 5] = [
    (1, (1, 24), (1, 24)),
    (2, (7, 5760), (1, 480)),
    (3, (31, 967680), (41, 580608)),
    (4, (127, 154828800), (13, 6220800)),
    (5, (73, 3503554560), (21481, 367873228800)),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report { suite: suite.name().to_string(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn expect_eq(&mut self, name: impl Into<String>, got: &ExactRational, want: &ExactRational) {
        let passed = got == want;
        let detail = if passed { got.to_string() } else { format!("got {got}, expected {want}") };
        self.check(name, passed, detail);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {} {}: {}", self.suite, c.name, c.detail)?;
        }
        let status = if self.passed() { "pass" } else { "fail" };
        write!(f, "{}: {} checks, {} failed, {status}", self.suite, self.checks.len(), self.failures())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Table,
    ClosedVsRecursion,
    Commutators,
    Annihilation,
    Mumford,
    Euler,
    StringDilaton,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Table,
        Suite::ClosedVsRecursion,
        Suite::Commutators,
        Suite::Annihilation,
        Suite::Mumford,
        Suite::Euler,
        Suite::StringDilaton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::ClosedVsRecursion => "closed-vs-recursion",
            Suite::Commutators => "commutators",
            Suite::Annihilation => "annihilation",
            Suite::Mumford => "mumford",
            Suite::Euler => "euler",
            Suite::StringDilaton => "string-dilaton",
        }
    }

    /// Genus bound used when none is given.
    pub fn default_max_genus(self) -> u32 {
        match self {
            Suite::Table => 5,
            Suite::ClosedVsRecursion | Suite::StringDilaton | Suite::Annihilation => 3,
            Suite::Mumford | Suite::Euler => 6,
            Suite::Commutators => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = HodgeError;

    fn from_str(s: &str) -> Result<Self, HodgeError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| HodgeError::InvalidInput(format!("unknown suite `{s}`")))
    }
}

pub fn run(suite: Suite, max_genus: Option<u32>) -> Report {
    let g = max_genus.unwrap_or(suite.default_max_genus());
    match suite {
        Suite::Table => table(g),
        Suite::ClosedVsRecursion => closed_vs_recursion(g, 4),
        Suite::Commutators => commutators(12, 7),
        Suite::Annihilation => annihilation(g.max(1)),
        Suite::Mumford => mumford(g),
        Suite::Euler => euler(g),
        Suite::StringDilaton => string_dilaton(g),
    }
}

/// `b_g`, `c_g` against the printed table (`g ≤ 5`) and, for every `g`,
/// against the second route (series vs Bernoulli, Stirling vs harmonic).
pub fn table(max_genus: u32) -> Report {
    let mut r = Report::new(Suite::Table);
    let t = HodgeConstantTable::new(1, max_genus);
    for &(g, (bp, bq), (cp, cq)) in TABLE.iter().filter(|row| row.0 <= max_genus) {
        r.expect_eq(format!("b_{g}"), &t.b[&g], &q(bp, bq));
        r.expect_eq(format!("c_{g}"), &t.c[&g], &q(cp, cq));
    }
    let series = b_sequence(max_genus as usize);
    for g in 1..=max_genus {
        r.expect_eq(format!("b_{g} series"), &series[g as usize], &b_closed_form(g as usize));
        let h = c_constant_harmonic(g).expect("g >= 1");
        r.expect_eq(format!("c_{g} harmonic"), &t.c[&g], &h);
    }
    r
}

pub(crate) fn multisets(len: usize, max: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(len - 1, max) {
        let lo = rest.last().copied().unwrap_or(0);
        for v in lo..=max {
            let mut next = rest.clone();
            next.push(v);
            out.push(next);
        }
    }
    out
}

/// Closed forms against the Virasoro recursions on every stable `(g, n)`
/// with `g ≤ max_genus`, `1 ≤ n ≤ max_points`.
pub fn closed_vs_recursion(max_genus: u32, max_points: usize) -> Report {
    let mut r = Report::new(Suite::ClosedVsRecursion);
    for g in 0..=max_genus {
        for n in 1..=max_points {
            if 2 * g + n as u32 <= 2 {
                continue;
            }
            let (mut total, mut bad) = (0, Vec::new());
            for ks in multisets(n, 3 * g + n as u32) {
                total += 1;
                match (lambda_g(g, &ks), lambda_g_solver(g, &ks)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => bad.push(format!("λ_g {ks:?}: {a:?} vs {b:?}")),
                }
                if g >= 1 {
                    total += 1;
                    match (lambda_g_gm1(g, &ks), lambda_g_gm1_solver(g, &ks)) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (a, b) => bad.push(format!("λ_gλ_(g-1) {ks:?}: {a:?} vs {b:?}")),
                    }
                }
            }
            let detail = if bad.is_empty() { format!("{total} integrals agree") } else { bad.join("; ") };
            r.check(format!("g={g} n={n}"), bad.is_empty(), detail);
        }
    }
    r
}

/// `[L_k, L_ℓ] = (k − ℓ) L_{k+ℓ}` for `k, ℓ ∈ [−1, 3]`, compared on terms whose
/// multiplication level is at most `safe`.
pub fn commutators(cap: u16, safe: u16) -> Report {
    let mut r = Report::new(Suite::Commutators);
    let targets = [
        ("point", CohomologyData::point()),
        ("P1", CohomologyData::projective_space(1)),
        ("P2", CohomologyData::projective_space(2)),
    ];
    for (name, data) in targets {
        let ops: Vec<DifferentialOperator> = (-1..=6)
            .map(|k| {
                if name == "point" {
                    point_operator(k, cap)
                } else {
                    general_operator(k, &data, cap)
                }
                .expect("k >= -1")
            })
            .collect();
        let op = |k: i64| &ops[(k + 1) as usize];
        let mut bad = Vec::new();
        for k in -1..=3 {
            for l in -1..=3 {
                let lhs = op(k).commutator(op(l)).restrict_mult(safe);
                let diff = if k + l < -1 {
                    lhs
                } else {
                    lhs.sub(&op(k + l).scale(&ExactRational::from(k - l)).restrict_mult(safe))
                };
                if !diff.is_zero() {
                    bad.push(format!("[L_{k}, L_{l}] off by {} terms", diff.len()));
                }
            }
        }
        let detail = if bad.is_empty() { "25 relations hold".to_string() } else { bad.join("; ") };
        r.check(name, bad.is_empty(), detail);
    }
    r
}

/// Every determined coefficient of `L_k Z` vanishes, `k ∈ [−1, 2]`, for the
/// point with genus cap `max_genus` and descendent-weight cap 8.
pub fn annihilation(max_genus: u32) -> Report {
    let mut r = Report::new(Suite::Annihilation);
    let caps = Caps { max_degree: 8, max_weight: 8, max_hbar: max_genus as i32 - 1 };
    let z = point_partition(caps);
    for k in -1..=2 {
        let applied = point_operator(k, 8).expect("k >= -1").apply(&z);
        let mut count = 0;
        let mut bad = Vec::new();
        for (m, h, c) in applied.determined() {
            count += 1;
            if !c.is_zero() {
                bad.push(format!("{c} at ħ^{h} {m}"));
            }
        }
        let passed = bad.is_empty() && count > 0;
        let detail = if bad.is_empty() { format!("{count} determined coefficients vanish") } else { bad.join("; ") };
        r.check(format!("L_{k} Z"), passed, detail);
    }
    r
}

/// `c_t(E) c_{−t}(E) = 1` in the reduced ring for `g ≤ max_genus`.
pub fn mumford(max_genus: u32) -> Report {
    let mut r = Report::new(Suite::Mumford);
    for g in 1..=max_genus {
        let mut bad = Vec::new();
        for j in 0..=2 * g {
            let reduced = mumford_reduce(&chern_product_coefficient(g, 0, j));
            let want = if j == 0 { LambdaRingElem::one(g, 0) } else { LambdaRingElem::zero(g, 0) };
            if reduced != want {
                bad.push(format!("t^{j}: {reduced}"));
            }
        }
        let detail = if bad.is_empty() { format!("{} coefficients reduce", 2 * g + 1) } else { bad.join("; ") };
        r.check(format!("g={g}"), bad.is_empty(), detail);
    }
    r
}

fn sign(g: u32) -> ExactRational {
    ExactRational::from(if g % 2 == 0 { 1 } else { -1 })
}

/// The Euler classes against the closed expressions for curves, surfaces and
/// threefolds, `2 ≤ g ≤ max_genus`, and the genus-one formula.
pub fn euler(max_genus: u32) -> Report {
    let mut r = Report::new(Suite::Euler);
    for g in 2..=max_genus {
        for dim in 1..=3 {
            let c = |i| LambdaRingElem::chern(g, dim, i);
            let l = |i| LambdaRingElem::lambda(g, dim, i);
            let expected = match dim {
                1 => (&l(g) - &(&c(1) * &l(g - 1))).scale(&sign(g)),
                2 => &(&(&c(1) * &c(1)) * &(&l(g) * &l(g - 2))) - &(&c(1) * &(&l(g) * &l(g - 1))),
                _ => {
                    let cube = &l(g - 1) * &(&l(g - 1) * &l(g - 1));
                    (&(&c(3) - &(&c(2) * &c(1))) * &cube).scale(&(sign(g) * q(1, 2)))
                }
            };
            match euler_class(dim, g) {
                Ok(e) => {
                    let mut passed = e == expected;
                    if dim == 2 {
                        passed &= !e.mentions_chern(2);
                    }
                    r.check(format!("r={dim} g={g}"), passed, e.relative().to_string());
                }
                Err(err) => r.check(format!("r={dim} g={g}"), false, err.to_string()),
            }
        }
    }
    for dim in 1..=3 {
        let e = euler_class_genus1(dim).expect("dim >= 1");
        let c = |i| LambdaRingElem::chern(1, dim, i);
        let expected = &c(dim) - &(&c(dim - 1) * &LambdaRingElem::lambda(1, dim, 1));
        r.check(format!("r={dim} g=1"), e == expected, e.to_string());
    }
    r
}

/// String and dilaton equations on every memoized integral, after filling the
/// memo with all stable integrals of every class tag for `g ≤ max_genus`,
/// `n ≤ 3`.
pub fn string_dilaton(max_genus: u32) -> Report {
    let mut r = Report::new(Suite::StringDilaton);
    for g in 0..=max_genus {
        for n in 0..=3usize {
            if 2 * g + n as u32 <= 2 {
                continue;
            }
            for ks in multisets(n, 3 * g + n as u32) {
                for tag in ClassTag::ALL {
                    if tag.vanishes_in_genus(g) {
                        continue;
                    }
                    let key = IntegralKey::new(g, &ks, tag);
                    if key.is_potentially_nonzero() {
                        if let Err(e) = integral(&key) {
                            r.check(key.to_string(), false, e.to_string());
                        }
                    }
                }
            }
        }
    }
    let entries = INTEGRALS.snapshot();
    for tag in ClassTag::ALL {
        let mut count = 0usize;
        let mut bad = Vec::new();
        for (key, value) in entries.iter().filter(|(k, _)| k.tag() == tag) {
            let (g, e) = (key.genus(), key.exponents());
            let n = e.len() as i64;
            if 2 * g as i64 - 2 + n <= 0 {
                continue;
            }
            count += 1;
            let at = |exps: &[u32]| integral(&key.with_exponents(exps));
            let mut with0 = e.to_vec();
            with0.push(0);
            let mut rhs: crate::Result<ExactRational> = Ok(ExactRational::zero());
            for i in 0..e.len() {
                if e[i] > 0 {
                    let mut lowered = e.to_vec();
                    lowered[i] -= 1;
                    rhs = rhs.and_then(|acc| Ok(acc + at(&lowered)?));
                }
            }
            match (at(&with0), rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => bad.push(format!("string at {key}: {a:?} vs {b:?}")),
            }
            let mut with1 = e.to_vec();
            with1.push(1);
            let want = ExactRational::from(2 * g as i64 - 2 + n) * value;
            match at(&with1) {
                Ok(a) if a == want => {}
                other => bad.push(format!("dilaton at {key}: {other:?} vs {want}")),
            }
        }
        let passed = bad.is_empty() && (count > 0 || tag == ClassTag::None);
        let detail = if bad.is_empty() { format!("{count} memoized integrals") } else { bad.join("; ") };
        r.check(tag.to_string(), passed, detail);
    }
    r
}

/// `c_g` read back from `x^{2g−2}_g(0) = 0`, with every other integral taken
/// from the providers.
pub fn c_from_relation(g: u32) -> crate::Result<ExactRational> {
    let key = IntegralKey::new(g, &[2 * g - 1], ClassTag::LambdaGm1);
    let masked = |k: &IntegralKey| {
        if *k == key {
            Err(HodgeError::Underdetermined(k.clone()))
        } else {
            integral(k)
        }
    };
    let form = crate::virasoro::x_curve(2 * g as i64 - 2, g, &[], &masked)?;
    form.solve_for(&key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::c_constant;

    #[test]
    fn suites_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn table_passes() {
        let r = table(6);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn c_read_back_from_relation() {
        for g in 2..=5 {
            assert_eq!(c_from_relation(g).unwrap(), c_constant(g).unwrap());
        }
    }

    #[test]
    fn report_lists_failures() {
        let mut r = Report::new(Suite::Table);
        r.expect_eq("x", &q(1, 2), &q(1, 3));
        assert!(!r.passed());
        assert!(r.to_string().contains("FAIL table x: got 1/2, expected 1/3"));
    }
}
