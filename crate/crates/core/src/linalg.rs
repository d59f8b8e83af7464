//! Dense exact rational matrices.
//!
//! Elimination never permutes columns, so pivot columns always refer to the
//! caller's column order. Two elimination routes exist: fraction-free
//! (Bareiss) on integer-scaled rows, which is the default, and plain rational
//! Gauss-Jordan, kept as an independent cross-check.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which elimination algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Elimination {
    #[default]
    FractionFree,
    Naive,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Row-echelon form: `rows[k]` has its leading entry in column `pivots[k]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a `rows × cols` matrix from columns; needed when `cols` may be zero.
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Result<Self> {
        let mut m = RationalMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mat_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn echelon(&self, method: Elimination) -> Echelon {
        match method {
            Elimination::FractionFree => self.bareiss().0,
            Elimination::Naive => self.gauss_jordan(),
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon(Elimination::FractionFree).pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivot_columns_with(Elimination::FractionFree)
    }

    pub fn pivot_columns_with(&self, method: Elimination) -> Vec<usize> {
        self.echelon(method).pivots
    }

    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        self.nullspace_with(Elimination::FractionFree)
    }

    /// Basis of the right kernel.
    ///
    /// One vector per free column `f` (ascending): the solution with `x_f = 1`
    /// and every other free variable 0, scaled to a primitive integer vector
    /// whose entry at `f` is positive. This is a function of the reduced
    /// echelon form only, so both elimination routes return identical bases.
    pub fn nullspace_with(&self, method: Elimination) -> Vec<Vec<BigRational>> {
        let ech = self.echelon(method);
        let basis = ech.kernel_basis();
        assert_eq!(
            basis.len() + ech.pivots.len(),
            self.cols,
            "rank-nullity violated"
        );
        for v in &basis {
            let image = self.mul_vec(v).expect("kernel vector length");
            assert!(image.iter().all(Zero::is_zero), "kernel vector not annihilated");
        }
        basis
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(BigRational::one());
        }
        let (ech, info) = self.bareiss();
        if ech.pivots.len() < self.rows {
            return Ok(BigRational::zero());
        }
        // The last Bareiss pivot is the determinant of the row-scaled matrix.
        let last = ech.rows[self.rows - 1][self.cols - 1].clone();
        let signed = if info.swaps % 2 == 1 { -last } else { last };
        Ok(signed / BigRational::from_integer(info.row_scale_product))
    }

    /// Unique solution of `self · x = b`, or `None` when the system is
    /// inconsistent or underdetermined.
    pub fn solve(&self, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let mut augmented = RationalMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                augmented.set(i, j, self.get(i, j).clone());
            }
            augmented.set(i, self.cols, b[i].clone());
        }
        let ech = augmented.gauss_jordan();
        if ech.pivots.contains(&self.cols) || ech.pivots.len() < self.cols {
            return Ok(None);
        }
        Ok(Some(
            ech.rows.iter().map(|r| r[self.cols].clone()).collect(),
        ))
    }

    fn bareiss(&self) -> (Echelon, BareissInfo) {
        let mut scale_product = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                scale_product *= &lcm;
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect();

        let mut pivots = Vec::new();
        let mut swaps = 0usize;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = pick_pivot((r..self.rows).map(|i| (i, &m[i][c]))) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = pivot_row[c].clone();
            for row in bottom.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let num = &pivot * &row[j] - &factor * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    assert!(rem.is_zero(), "fraction-free step left a remainder");
                    row[j] = q;
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        let rows = m
            .into_iter()
            .take(pivots.len())
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        (
            Echelon {
                rows,
                pivots,
                cols: self.cols,
            },
            BareissInfo {
                swaps,
                row_scale_product: scale_product,
            },
        )
    }

    fn gauss_jordan(&self) -> Echelon {
        let mut m: Vec<Vec<BigRational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = pick_pivot((r..self.rows).map(|i| (i, m[i][c].numer()))) else {
                continue;
            };
            m.swap(p, r);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(pivots.len());
        Echelon {
            rows: m,
            pivots,
            cols: self.cols,
        }
    }
}

struct BareissInfo {
    swaps: usize,
    row_scale_product: BigInt,
}

/// First row among the candidates with the largest absolute value; `None` if
/// all are zero.
fn pick_pivot<'a>(candidates: impl Iterator<Item = (usize, &'a BigInt)>) -> Option<usize> {
    let mut best: Option<(usize, &BigInt)> = None;
    for (i, v) in candidates {
        if v.sign() == Sign::NoSign {
            continue;
        }
        match best {
            Some((_, b)) if b.abs() >= v.abs() => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis by back-substitution, canonicalized as documented on
    /// [`RationalMatrix::nullspace_with`].
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[free] = BigRational::one();
                for (k, &p) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[k];
                    let s = (p + 1..self.cols)
                        .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                        .fold(BigRational::zero(), |acc, j| acc + &row[j] * &x[j]);
                    x[p] = -s / &row[p];
                }
                let mut v = primitive_integer_vector(&x);
                if v[free].is_negative() {
                    v.iter_mut().for_each(|e| *e = -e.clone());
                }
                v
            })
            .collect()
    }
}

/// Scales a rational vector to integers with content 1 (sign unchanged).
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigRational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &gcd))
        .collect()
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

/// Formats a rational as `num/den`, or `num` when the denominator is 1.
pub fn rational_to_string(v: &BigRational) -> String {
    v.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parse_int = |x: &str| {
        x.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::parse("rational", s, e.to_string()))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::parse("rational", s, "zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}
