//! The algebra `A(d)` in the class-sum basis `g_λ`, `supp(λ) ≤ d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_classes, CycleType, Monomial};
use crate::theta::StructureConstants;

/// Sparse rational combination of basis elements of `A(d)`.
///
/// No zero coefficients are stored and every key fits in `d`. Elements need
/// not be homogeneous.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    d: usize,
    terms: BTreeMap<CycleType, BigRational>,
}

impl AlgebraElement {
    pub fn zero(d: usize) -> Self {
        AlgebraElement {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(d: usize) -> Self {
        AlgebraElement::basis(&CycleType::zero(), d)
    }

    /// `g_λ(d)`, or zero when `supp(λ) > d`.
    pub fn basis(class: &CycleType, d: usize) -> Self {
        let mut x = AlgebraElement::zero(d);
        x.add_term(class.clone(), BigRational::one());
        x
    }

    /// `γ_i = g_{1_i}`, `2 ≤ i ≤ d`.
    pub fn gamma(i: usize, d: usize) -> Result<Self> {
        if !(2..=d).contains(&i) {
            return Err(Error::OutOfRange(format!("γ_{i} needs 2 <= i <= d = {d}")));
        }
        Ok(AlgebraElement::basis(&CycleType::single_cycle(i), d))
    }

    /// `δ_i = g_{(i,0,0,…)}`, `1 ≤ i ≤ ⌊d/2⌋`.
    pub fn delta(i: usize, d: usize) -> Result<Self> {
        if i < 1 || 2 * i > d {
            return Err(Error::OutOfRange(format!(
                "δ_{i} needs 1 <= i <= floor(d/2) = {}",
                d / 2
            )));
        }
        Ok(AlgebraElement::basis(&CycleType::transpositions(i as u32), d))
    }

    pub fn ambient(&self) -> usize {
        self.d
    }

    /// Adds `coeff · g_λ`; classes that do not fit in `d` are dropped.
    pub fn add_term(&mut self, class: CycleType, coeff: BigRational) {
        if coeff.is_zero() || class.support() > self.d {
            return;
        }
        let entry = self.terms.entry(class);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, class: &CycleType) -> BigRational {
        self.terms.get(class).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CycleType, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term has norm `j` (the zero element is homogeneous of
    /// every norm).
    pub fn is_homogeneous(&self, norm: usize) -> bool {
        self.terms.keys().all(|c| c.norm() == norm)
    }

    pub fn homogeneous_part(&self, norm: usize) -> AlgebraElement {
        AlgebraElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.norm() == norm)
                .map(|(c, v)| (c.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> AlgebraElement {
        if factor.is_zero() {
            return AlgebraElement::zero(self.d);
        }
        AlgebraElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(c, v)| (c.clone(), v * factor))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.multiply_with(StructureConstants::global(), other)
    }

    /// Bilinear extension of `g_α g_β = Σ_ε θ(ε; α, β) g_ε`.
    pub fn multiply_with(
        &self,
        table: &StructureConstants,
        other: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        self.same_ambient(other)?;
        let mut out = AlgebraElement::zero(self.d);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (eps, c) in basis_product_terms(table, a, b, self.d) {
                    out.add_term(eps, &xy * BigRational::from_integer(c.into()));
                }
            }
        }
        Ok(out)
    }

    /// `p^h_d`: keeps the terms that fit in `d ≤ h`.
    pub fn project(&self, d: usize) -> Result<AlgebraElement> {
        if d > self.d {
            return Err(Error::OutOfRange(format!(
                "cannot project A({}) to A({d}): target is larger",
                self.d
            )));
        }
        Ok(AlgebraElement {
            d,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.support() <= d)
                .map(|(c, v)| (c.clone(), v.clone()))
                .collect(),
        })
    }

    fn same_ambient(&self, other: &AlgebraElement) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AmbientMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    /// `(class, coefficient)` pairs as strings, in basis order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(c, v)| (c.to_string(), v.to_string()))
            .collect()
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("ambient mismatch in addition")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(&-rhs).expect("ambient mismatch in subtraction")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}*g{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({}): {}", self.d, self)
    }
}

#[derive(Serialize)]
struct Term<'a> {
    class: &'a CycleType,
    coefficient: String,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (class, v) in &self.terms {
            seq.serialize_element(&Term {
                class,
                coefficient: v.to_string(),
            })?;
        }
        seq.end()
    }
}

/// Nonzero `(ε, θ(ε; α, β))` for `ε ∈ Λ(N(α)+N(β), d)`, in enumeration order.
pub fn basis_product_terms(
    table: &StructureConstants,
    alpha: &CycleType,
    beta: &CycleType,
    d: usize,
) -> Vec<(CycleType, BigUint)> {
    if alpha.support() > d || beta.support() > d {
        return Vec::new();
    }
    enumerate_classes(alpha.norm() + beta.norm(), d)
        .into_iter()
        .filter_map(|eps| {
            let c = table.theta(&eps, alpha, beta);
            (!c.is_zero()).then_some((eps, c))
        })
        .collect()
}

/// `g_α(d) · g_β(d)`.
pub fn basis_product(alpha: &CycleType, beta: &CycleType, d: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(d);
    for (eps, c) in basis_product_terms(StructureConstants::global(), alpha, beta, d) {
        out.add_term(eps, BigRational::from_integer(c.into()));
    }
    out
}

pub fn multiply(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.multiply(y)
}

pub fn project(x: &AlgebraElement, d: usize) -> Result<AlgebraElement> {
    x.project(d)
}

/// Product in the support-graded algebra: `t_λ · t_λ' = Π_i C(λ_i+λ'_i, λ_i) · t_{λ+λ'}`
/// when `supp λ + supp λ' ≤ d`, else 0. Returns the coefficient and, when it
/// is nonzero, the class `λ + λ'`.
pub fn tilde_multiply(
    lambda: &CycleType,
    other: &CycleType,
    d: usize,
) -> (BigUint, Option<CycleType>) {
    if lambda.support() + other.support() > d {
        return (BigUint::zero(), None);
    }
    let sum = lambda.add(other);
    let coeff = (2..=sum.max_cycle_len()).fold(BigUint::one(), |acc, i| {
        acc * binomial(sum.count(i) as u64, lambda.count(i) as u64)
    });
    (coeff, Some(sum))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Evaluates a monomial in `X_i ↦ γ_{i+1}` inside `A(d)`, multiplying the
/// factors in ascending variable order from the left.
pub fn monomial_expand(mono: &Monomial, d: usize) -> Result<AlgebraElement> {
    monomial_expand_with(StructureConstants::global(), mono, d)
}

pub fn monomial_expand_with(
    table: &StructureConstants,
    mono: &Monomial,
    d: usize,
) -> Result<AlgebraElement> {
    if mono.max_var() >= d.max(1) && mono.max_var() > 0 {
        return Err(Error::OutOfRange(format!(
            "X{} = γ_{} does not exist in A({d})",
            mono.max_var(),
            mono.max_var() + 1
        )));
    }
    let mut acc = AlgebraElement::unit(d);
    for var in mono.factors() {
        if acc.is_zero() {
            break;
        }
        acc = acc.multiply_with(table, &AlgebraElement::gamma(var + 1, d)?)?;
    }
    Ok(acc)
}
