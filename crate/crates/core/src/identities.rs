//! Catalan/Borel/Pascal identities and the expansions of `δ_s · γ_{j+1-s}`
//! behind the generation and lowest-relation results.
//!
//! Every check returns a serializable report with the first counterexample.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{binomial, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::partitions::{enumerate_monomials, CycleType, Monomial};
use crate::presentation::ExpansionTable;
use crate::theta::StructureConstants;

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// `B_{n,k} = C(2n+2, n-k) · C(n+k, n) / (n+1)`.
pub fn borel(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange(format!("borel({n}, {k}) needs k ≤ n")));
    }
    let num = binomial(2 * n + 2, n - k) * binomial(n + k, n);
    let den = BigUint::from(n + 1);
    assert!((&num % &den).is_zero(), "Borel number is not integral");
    Ok(num / den)
}

/// Borel triangle rows `0..=n_max` built only from `B_{0,0} = 1` and
/// `B_{n+1,k-1} = B_{n,0}·C(n+2,k) - B_{n,k}` (with `B_{n,n+1} = B_{n,n+2} = 0`).
pub fn borel_triangle_by_recurrence(n_max: u64) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for n in 0..n_max {
        let prev = &rows[n as usize];
        let lead = prev[0].clone();
        let next: Vec<BigUint> = (1..=n + 2)
            .map(|k| {
                let minuend = &lead * binomial(n + 2, k);
                let sub = prev.get(k as usize).cloned().unwrap_or_default();
                minuend - sub
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// `X_{ij} = C(i+1, j-i+1)`, 1-based.
pub fn pascal_entry(i: u64, j: u64) -> BigUint {
    if j + 1 < i {
        return BigUint::zero();
    }
    binomial(i + 1, j + 1 - i)
}

pub fn pascal_matrix(rows: u64, cols: u64) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows as usize, cols as usize);
    for i in 1..=rows {
        for j in 1..=cols {
            m.set(
                (i - 1) as usize,
                (j - 1) as usize,
                BigRational::from_integer(BigInt::from(pascal_entry(i, j))),
            );
        }
    }
    m
}

/// Determinant of the top-left `n × n` block of `X`.
pub fn pascal_minor_det(n: u64) -> BigInt {
    let det = pascal_matrix(n, n).determinant().expect("square matrix");
    assert!(det.is_integer(), "integer matrix with fractional determinant");
    det.to_integer()
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub first_failure: Option<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            passed: true,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.first_failure = Some(describe());
        }
    }
}

/// `det X_{[n]} = C_{n+1}` for `1 ≤ n ≤ n_max`.
pub fn check_pascal_determinants(n_max: u64) -> CheckReport {
    let mut report = CheckReport::new("pascal minor determinants");
    for n in 1..=n_max {
        let det = pascal_minor_det(n);
        let expected = BigInt::from(catalan(n + 1));
        report.record(det == expected, || format!("n={n}: det {det}, C_{} = {expected}", n + 1));
    }
    report
}

/// Closed form against the recurrence, and `B_{n,0} = C_{n+1}`, `B_{n,n} = C_n`.
pub fn check_borel_recurrence(n_max: u64) -> CheckReport {
    let mut report = CheckReport::new("Borel recurrence");
    let rows = borel_triangle_by_recurrence(n_max);
    for (n, row) in rows.iter().enumerate() {
        let n = n as u64;
        for (k, v) in row.iter().enumerate() {
            let k = k as u64;
            let closed = borel(n, k).expect("k ≤ n");
            report.record(*v == closed, || format!("B({n},{k}): recurrence {v}, closed form {closed}"));
        }
        report.record(row[0] == catalan(n + 1), || format!("B({n},0) ≠ C_{}", n + 1));
        report.record(row[n as usize] == catalan(n), || format!("B({n},{n}) ≠ C_{n}"));
    }
    report
}

/// Runs the elimination `Y_1 = X_1`, `Y_{n+1} = B_{n,0}·X_{n+1} - Y_n` and
/// checks that row `n` is `B_{n,0}, …, B_{n,n}` starting at column `n`.
pub fn verify_echelon_borel(n_max: u64) -> (CheckReport, Vec<Vec<BigInt>>) {
    let mut report = CheckReport::new("echelon form of X");
    let width = (2 * n_max + 2) as usize;
    let x_row = |i: u64| -> Vec<BigInt> {
        (1..=width as u64).map(|j| BigInt::from(pascal_entry(i, j))).collect()
    };
    let mut rows: Vec<Vec<BigInt>> = vec![x_row(1)];
    for n in 1..n_max {
        let lead = BigInt::from(borel(n, 0).expect("k ≤ n"));
        let next: Vec<BigInt> = x_row(n + 1)
            .into_iter()
            .zip(&rows[(n - 1) as usize])
            .map(|(x, y)| &lead * x - y)
            .collect();
        rows.push(next);
    }
    for (idx, row) in rows.iter().enumerate() {
        let n = idx as u64 + 1;
        for (c, v) in row.iter().enumerate() {
            let col = c as u64 + 1;
            let expected = if col >= n && col - n <= n {
                BigInt::from(borel(n, col - n).expect("k ≤ n"))
            } else {
                BigInt::zero()
            };
            report.record(*v == expected, || format!("row {n}, column {col}: {v}, expected {expected}"));
        }
    }
    (report, rows)
}

/// `g_{2^r, j+1-r}`: `r` transpositions plus one `(j+1-r)`-cycle.
fn two_power_class(r: usize, j: usize) -> CycleType {
    CycleType::transpositions(r as u32).add(&CycleType::single_cycle(j + 1 - r))
}

/// Predicted coefficient `a_{r,s}` of `g_{2^r, j+1-r}` in `y_s = δ_s · γ_{j+1-s}`.
pub fn ys_coefficient(j: usize, r: usize, s: usize) -> BigRational {
    if s < r || s - r > j + 1 - s {
        return BigRational::zero();
    }
    BigRational::new(
        BigInt::from((j + 1 - r) as u64) * BigInt::from(binomial((j + 1 - s) as u64, (s - r) as u64)),
        BigInt::from((j + 1 - s) as u64),
    )
}

/// Predicted expansion of `δ_s · γ_{j+1-s}` in `A(h)`, with
/// `g_{2^{j-1},2} = j·δ_j`.
pub fn ys_prediction(j: usize, s: usize, h: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(h);
    for r in 0..j {
        let mut a = ys_coefficient(j, r, s);
        if r == j - 1 {
            a *= BigRational::from_integer((j as u64).into());
        }
        out.add_term(two_power_class(r, j), a);
    }
    out
}

/// Compares `δ_s · γ_{j+1-s}` with its predicted expansion for `1 ≤ s ≤ j-1`.
pub fn ys_expansion_check(j: usize, h: usize) -> Result<CheckReport> {
    if j < 2 || 2 * j + 2 > h {
        return Err(Error::OutOfRange(format!("y_s expansion needs 2 ≤ j and 2j+2 ≤ h (j={j}, h={h})")));
    }
    let mut report = CheckReport::new(format!("y_s expansion j={j} h={h}"));
    for s in 1..j {
        let actual = AlgebraElement::delta(s, h)?.multiply(&AlgebraElement::gamma(j + 1 - s, h)?)?;
        let predicted = ys_prediction(j, s, h);
        report.record(actual == predicted, || format!("s={s}: got {actual}, predicted {predicted}"));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct MixedRelationReport {
    pub m: usize,
    pub vanishes: bool,
    pub residue: String,
    /// Coefficient of `X_1^{m+1}` after rewriting each `δ_s` in the generators.
    pub leading_coefficient: String,
    pub nontrivial: bool,
}

impl MixedRelationReport {
    pub fn passed(&self) -> bool {
        self.vanishes && self.nontrivial
    }
}

/// `Σ_{s=1}^m (-1)^s s·C_{m-s}·δ_s·γ_{m+2-s} = 0` in `A(2m)`, and its
/// rewriting in `γ₂, …, γ_{m+1}` has a nonzero `γ₂^{m+1}` coefficient.
pub fn mixed_relation_check(m: usize) -> Result<MixedRelationReport> {
    if m == 0 {
        return Err(Error::OutOfRange("mixed relation needs m ≥ 1".into()));
    }
    let d = 2 * m;
    let table = StructureConstants::global();
    let expansions = ExpansionTable::new(table, d)?;
    let mut sum = AlgebraElement::zero(d);
    let mut leading = BigRational::zero();
    let target = Monomial::var(1).mul(&Monomial::new(vec![m as u32]));
    for s in 1..=m {
        let sign: i64 = if s % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(BigInt::from(catalan((m - s) as u64)) * BigInt::from(sign * s as i64));
        let delta = AlgebraElement::delta(s, d)?;
        let term = delta.multiply_with(table, &AlgebraElement::gamma(m + 2 - s, d)?)?;
        sum = sum.checked_add(&term.scale(&c))?;

        // δ_s as a polynomial in the generators: the kernel of A^s is trivial
        // for s ≤ m, so the solution is unique.
        let a = expansions.matrix(s);
        let classes = crate::partitions::enumerate_classes(s, d);
        let rhs: Vec<BigRational> = classes.iter().map(|cl| delta.coefficient(cl)).collect();
        let coords = a.solve(&rhs)?.ok_or_else(|| {
            Error::OutOfRange(format!("δ_{s} is not in the span of the generators in A({d})"))
        })?;
        let multiplier = Monomial::var(m + 1 - s);
        for (mono, x) in enumerate_monomials(s, m).iter().zip(coords) {
            if mono.mul(&multiplier) == target {
                leading += &c * x;
            }
        }
    }
    Ok(MixedRelationReport {
        m,
        vanishes: sum.is_zero(),
        residue: sum.to_string(),
        leading_coefficient: leading.to_string(),
        nontrivial: !leading.is_zero(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuite {
    pub suite: String,
    pub checks: Vec<CheckReport>,
    pub mixed: Vec<MixedRelationReport>,
    pub passed: bool,
}

/// Pascal/Borel/Catalan checks up to `n ≤ 12`.
pub fn pascal_suite() -> IdentitySuite {
    let (echelon, _) = verify_echelon_borel(12);
    let checks = vec![check_pascal_determinants(12), check_borel_recurrence(12), echelon];
    finish("pascal", checks, Vec::new())
}

/// `y_s` expansions for `2 ≤ j ≤ 5` at every `h` from `2j+2` to 12.
pub fn ys_suite() -> Result<IdentitySuite> {
    let mut checks = Vec::new();
    for j in 2..=5 {
        for h in 2 * j + 2..=12 {
            checks.push(ys_expansion_check(j, h)?);
        }
    }
    Ok(finish("ys", checks, Vec::new()))
}

/// Mixed relation for `1 ≤ m ≤ 5`.
pub fn mixed_suite() -> Result<IdentitySuite> {
    let mixed = (1..=5).map(mixed_relation_check).collect::<Result<Vec<_>>>()?;
    Ok(finish("mixed", Vec::new(), mixed))
}

fn finish(suite: &str, checks: Vec<CheckReport>, mixed: Vec<MixedRelationReport>) -> IdentitySuite {
    let passed = checks.iter().all(|c| c.passed) && mixed.iter().all(MixedRelationReport::passed);
    IdentitySuite {
        suite: suite.into(),
        checks,
        mixed,
        passed,
    }
}
