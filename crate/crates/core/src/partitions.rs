//! Cycle types, monomials and the enumerations built on them.
//!
//! A conjugacy class of `S_d` is a [`CycleType`] `(λ₂, λ₃, …)` where `λ_i` is
//! the number of `i`-cycles. Its norm `Σ (i-1)λ_i` is the grading of the
//! algebra, its support `Σ iλ_i` is the number of moved points.
//!
//! Every enumeration in this module uses the same order: descending
//! lexicographic order on the stored count vector. For cycle types this means
//! comparing `λ₂` first, then `λ₃`, and so on, larger counts first; for
//! monomials the exponent of `X1` is compared first. Under the bijection
//! `λ_i ↔ e_{i-1}` both orders agree.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Cycle type `(λ₂, λ₃, …)` in canonical form (no trailing zeros).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    // parts[k] = λ_{k+2}
    parts: Vec<u32>,
}

impl CycleType {
    /// Builds a cycle type from the counts `(λ₂, λ₃, …)`; trailing zeros are trimmed.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let ct = CycleType { parts };
        ct.checked_support().ok_or(Error::Overflow("cycle type"))?;
        Ok(ct)
    }

    /// The zero sequence, i.e. the class of the identity.
    pub fn zero() -> Self {
        CycleType::default()
    }

    /// `1_ℓ`: a single `ℓ`-cycle. `ℓ = 1` (a fixed point) gives the zero sequence.
    pub fn single_cycle(len: usize) -> Self {
        assert!(len >= 1, "cycle length must be positive");
        let mut parts = vec![0; len.saturating_sub(1)];
        if len >= 2 {
            parts[len - 2] = 1;
        }
        CycleType { parts }
    }

    /// `(i, 0, 0, …)`: `i` disjoint transpositions.
    pub fn transpositions(count: u32) -> Self {
        if count == 0 {
            CycleType::zero()
        } else {
            CycleType { parts: vec![count] }
        }
    }

    /// Builds a cycle type from a list of cycle lengths (lengths 1 are ignored).
    pub fn from_cycle_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut parts: Vec<u32> = Vec::new();
        for len in lengths {
            if len >= 2 {
                if parts.len() < len - 1 {
                    parts.resize(len - 1, 0);
                }
                parts[len - 2] += 1;
            }
        }
        CycleType { parts }
    }

    /// Number of `i`-cycles, `λ_i`. Zero for `i < 2` or beyond the stored range.
    pub fn count(&self, len: usize) -> u32 {
        if len < 2 {
            return 0;
        }
        self.parts.get(len - 2).copied().unwrap_or(0)
    }

    /// The stored counts `(λ₂, λ₃, …)`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Longest cycle length present, or 1 for the zero sequence.
    pub fn max_cycle_len(&self) -> usize {
        self.parts.len() + 1
    }

    /// `N(λ) = Σ (i-1) λ_i`.
    pub fn norm(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .map(|(k, &c)| (k + 1) * c as usize)
            .sum()
    }

    /// `supp(λ) = Σ i λ_i`.
    pub fn support(&self) -> usize {
        self.checked_support().expect("support checked at construction")
    }

    fn checked_support(&self) -> Option<usize> {
        self.parts.iter().enumerate().try_fold(0usize, |acc, (k, &c)| {
            (k + 2).checked_mul(c as usize)?.checked_add(acc)
        })
    }

    /// Number of nontrivial cycles `Σ λ_i`, which equals `supp(λ) - N(λ)`.
    pub fn cycle_count(&self) -> usize {
        self.parts.iter().map(|&c| c as usize).sum()
    }

    /// If this is `1_ℓ` for some `ℓ ≥ 2`, returns `ℓ`.
    pub fn as_single_cycle(&self) -> Option<usize> {
        let (&last, rest) = self.parts.split_last()?;
        (last == 1 && rest.iter().all(|&c| c == 0)).then_some(self.parts.len() + 1)
    }

    /// Smallest `ν ≥ 2` with `λ_ν ≥ 1`.
    pub fn smallest_cycle(&self) -> Option<usize> {
        self.parts.iter().position(|&c| c > 0).map(|k| k + 2)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &CycleType) -> CycleType {
        let len = self.parts.len().max(other.parts.len());
        let parts = (0..len)
            .map(|k| {
                let a = self.parts.get(k).copied().unwrap_or(0);
                let b = other.parts.get(k).copied().unwrap_or(0);
                a.checked_add(b).expect("cycle count overflow")
            })
            .collect();
        CycleType::new(parts).expect("sum of canonical cycle types")
    }

    /// Componentwise difference, or `None` if some count would go negative.
    pub fn checked_sub(&self, other: &CycleType) -> Option<CycleType> {
        if other.parts.len() > self.parts.len() {
            return None;
        }
        let mut parts = self.parts.clone();
        for (k, &b) in other.parts.iter().enumerate() {
            parts[k] = parts[k].checked_sub(b)?;
        }
        Some(CycleType::new(parts).expect("difference of canonical cycle types"))
    }

    /// `∂_i β`: turns one `i`-cycle into an `(i-1)`-cycle (for `i = 2`, into a
    /// fixed point). Returns `None` when `β_i = 0`.
    pub fn delta_op(&self, len: usize) -> Option<CycleType> {
        assert!(len >= 2, "delta_op needs a cycle length >= 2");
        if self.count(len) == 0 {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[len - 2] -= 1;
        if len >= 3 {
            parts[len - 3] += 1;
        }
        Some(CycleType::new(parts).expect("shifted cycle type"))
    }

    /// All `(A, A')` with `A + A' = self` and `supp(A) ≤ nu`.
    ///
    /// Iterates the Cartesian product of `A_i ∈ 0..=λ_i` for `2 ≤ i ≤ nu` in
    /// lexicographic order (last coordinate fastest) and keeps the pairs that
    /// satisfy the support bound.
    pub fn decompositions(&self, nu: usize) -> Vec<(CycleType, CycleType)> {
        assert!(nu >= 2, "decompositions need nu >= 2");
        let bounds: Vec<u32> = (2..=nu)
            .map(|i| self.count(i).min((nu / i) as u32))
            .collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; bounds.len()];
        loop {
            let supp: usize = current
                .iter()
                .enumerate()
                .map(|(k, &c)| (k + 2) * c as usize)
                .sum();
            if supp <= nu {
                let a = CycleType::new(current.clone()).expect("bounded counts");
                let rest = self.checked_sub(&a).expect("A is bounded by self");
                out.push((a, rest));
            }
            // odometer step, last coordinate fastest
            let mut k = bounds.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if current[k] < bounds[k] {
                    current[k] += 1;
                    break;
                }
                current[k] = 0;
            }
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[λ2,λ3,...]`; whitespace is ignored, `[]` is the zero sequence.
impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse("cycle type", s, "expected `[l2,l3,...]`"))?;
        if inner.is_empty() {
            return Ok(CycleType::zero());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|e| Error::parse("cycle type", s, format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CycleType::new(parts)
    }
}

impl serde::Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for CycleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Monomial `X1^e1 * X2^e2 * …` in the generator variables; `X_i` has norm `i`
/// and stands for `γ_{i+1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    // exponents[k] = e_{k+1}
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial { exponents }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    /// The variable `X_i`, `i ≥ 1`.
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are indexed from 1");
        let mut exponents = vec![0; i];
        exponents[i - 1] = 1;
        Monomial { exponents }
    }

    pub fn exponent(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.exponents.get(i - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Highest variable index with a nonzero exponent (0 for the unit).
    pub fn max_var(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    /// `Σ i·e_i`.
    pub fn norm(&self) -> usize {
        self.exponents
            .iter()
            .enumerate()
            .map(|(k, &e)| (k + 1) * e as usize)
            .sum()
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        assert!(i >= 1, "variables are indexed from 1");
        let mut exponents = self.exponents.clone();
        if exponents.len() < i {
            exponents.resize(i, 0);
        }
        exponents[i - 1] += 1;
        Monomial { exponents }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.exponents.len().max(other.exponents.len());
        Monomial::new(
            (0..len)
                .map(|k| {
                    self.exponents.get(k).copied().unwrap_or(0)
                        + other.exponents.get(k).copied().unwrap_or(0)
                })
                .collect(),
        )
    }

    /// `self / X_i`, or `None` if `X_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exponent(i) == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[i - 1] -= 1;
        Some(Monomial::new(exponents))
    }

    /// The factors in evaluation order: ascending variable index, each
    /// repeated by its exponent.
    pub fn factors(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .flat_map(|(k, &e)| std::iter::repeat(k + 1).take(e as usize))
    }

    /// Formats with custom variable names (`names[i-1]` for `X_i`), e.g. `x^3y`.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.exponents.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            out.push_str(names.get(k).copied().unwrap_or("?"));
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `X1^e1*X2*...`; `1` is the unit. Repeated variables multiply.
impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "1" || compact.is_empty() {
            return Ok(Monomial::one());
        }
        let mut mono = Monomial::one();
        for factor in compact.split('*') {
            let body = factor
                .strip_prefix('X')
                .ok_or_else(|| Error::parse("monomial", s, format!("bad factor {factor:?}")))?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e),
                None => (body, "1"),
            };
            let var: usize = var
                .parse()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| Error::parse("monomial", s, format!("bad variable in {factor:?}")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| Error::parse("monomial", s, format!("bad exponent in {factor:?}")))?;
            for _ in 0..exp {
                mono = mono.mul_var(var);
            }
        }
        Ok(mono)
    }
}

impl serde::Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Integer partitions of `n` as ascending compositions (Kelleher's `accel_asc`).
///
/// Output order is the generation order of the algorithm; callers sort.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut a = vec![0usize; n + 1];
    let mut k = 1;
    let mut y = n - 1;
    while k != 0 {
        let mut x = a[k - 1] + 1;
        k -= 1;
        while 2 * x <= y {
            a[k] = x;
            y -= x;
            k += 1;
        }
        let l = k + 1;
        while x <= y {
            a[k] = x;
            a[l] = y;
            out.push(a[..k + 2].to_vec());
            x += 1;
            y -= 1;
        }
        a[k] = x + y;
        y = x + y - 1;
        out.push(a[..k + 1].to_vec());
    }
    out
}

/// `Λ(k, d)`: cycle types of norm `k` and support at most `d`, in descending
/// lexicographic order of `(λ₂, λ₃, …)`.
///
/// A cycle type of norm `k` is a partition of `k` (an `i`-cycle contributes the
/// part `i-1`), and its support is `k` plus the number of parts.
pub fn enumerate_classes(norm: usize, d: usize) -> Vec<CycleType> {
    if norm > d {
        return Vec::new();
    }
    let max_parts = d - norm;
    let mut out: Vec<CycleType> = integer_partitions(norm)
        .into_iter()
        .filter(|p| p.len() <= max_parts)
        .map(|p| CycleType::from_cycle_lengths(p.into_iter().map(|part| part + 1)))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `M_n`: monomials in `X_1..X_m` of norm `n`, in descending lexicographic
/// order of the exponent vector.
pub fn enumerate_monomials(norm: usize, num_vars: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = integer_partitions(norm)
        .into_iter()
        .filter(|p| p.iter().all(|&part| part <= num_vars))
        .map(|p| {
            let mut exps = vec![0u32; num_vars];
            for part in p {
                exps[part - 1] += 1;
            }
            Monomial::new(exps)
        })
        .collect();
    out.sort_by_key(|m| Reverse(m.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn norm_and_support() {
        assert_eq!(CycleType::zero().norm(), 0);
        assert_eq!(CycleType::zero().support(), 0);
        assert_eq!(CycleType::single_cycle(4).norm(), 3);
        assert_eq!(ct("[1,1]").norm(), 3);
        assert_eq!(ct("[1,1]").support(), 5);
        for d in 2..10 {
            assert_eq!(CycleType::single_cycle(d).support(), d);
        }
    }

    #[test]
    fn canonical_form_trims_zeros() {
        assert_eq!(ct("[2,0,0]"), ct("[2]"));
        assert_eq!(ct("[0,0]"), CycleType::zero());
        assert_eq!(ct("[ 0 , 1 ]").to_string(), "[0,1]");
        assert_eq!(CycleType::zero().to_string(), "[]");
        assert!("0,1".parse::<CycleType>().is_err());
        assert!("[1,-1]".parse::<CycleType>().is_err());
    }

    #[test]
    fn overflow_is_rejected() {
        assert!(CycleType::new(vec![0; 40].into_iter().chain([u32::MAX]).collect()).is_ok());
        let huge = vec![u32::MAX; 1 << 20];
        assert_eq!(CycleType::new(huge), Err(Error::Overflow("cycle type")));
    }

    #[test]
    fn single_cycle_detection() {
        assert_eq!(ct("[0,0,1]").as_single_cycle(), Some(4));
        assert_eq!(ct("[1]").as_single_cycle(), Some(2));
        assert_eq!(ct("[2]").as_single_cycle(), None);
        assert_eq!(ct("[1,1]").as_single_cycle(), None);
        assert_eq!(CycleType::zero().as_single_cycle(), None);
        assert_eq!(CycleType::single_cycle(1), CycleType::zero());
    }

    #[test]
    fn enumerate_classes_examples() {
        assert_eq!(enumerate_classes(1, 2), vec![ct("[1]")]);
        assert_eq!(enumerate_classes(2, 4), vec![ct("[2]"), ct("[0,1]")]);
        assert_eq!(enumerate_classes(3, 4), vec![ct("[0,0,1]")]);
        assert_eq!(enumerate_classes(0, 3), vec![CycleType::zero()]);
        assert!(enumerate_classes(2, 2).is_empty());
        assert!(enumerate_classes(5, 4).is_empty());
    }

    #[test]
    fn enumerate_monomials_examples() {
        let show = |n, m| {
            enumerate_monomials(n, m)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(2, 2), vec!["X1^2", "X2"]);
        assert_eq!(show(2, 5), vec!["X1^2", "X2"]);
        assert_eq!(show(3, 2), vec!["X1^3", "X1*X2"]);
        assert_eq!(show(1, 1), vec!["X1"]);
        assert_eq!(show(0, 3), vec!["1"]);
    }

    #[test]
    fn delta_op_examples() {
        assert_eq!(ct("[1]").delta_op(2), Some(CycleType::zero()));
        assert_eq!(
            CycleType::single_cycle(5).delta_op(5),
            Some(CycleType::single_cycle(4))
        );
        assert_eq!(ct("[0,1]").delta_op(2), None);
        assert_eq!(ct("[1,2]").delta_op(3), Some(ct("[2,1]")));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            CycleType::zero().decompositions(5),
            vec![(CycleType::zero(), CycleType::zero())]
        );
        assert_eq!(
            ct("[1]").decompositions(2),
            vec![(CycleType::zero(), ct("[1]")), (ct("[1]"), CycleType::zero())]
        );
        // supp((2)) = 4 > 3, so only A = 0 and A = 1_2 survive
        assert_eq!(
            ct("[2]").decompositions(3),
            vec![(CycleType::zero(), ct("[2]")), (ct("[1]"), ct("[1]"))]
        );
    }

    #[test]
    fn partitions_counts() {
        let counts: Vec<usize> = (0..15).map(|n| integer_partitions(n).len()).collect();
        assert_eq!(
            counts,
            vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]
        );
        for n in 1..12 {
            for p in integer_partitions(n) {
                assert_eq!(p.iter().sum::<usize>(), n);
                assert!(p.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn monomial_text_round_trip() {
        let m: Monomial = "X1^3*X2".parse().unwrap();
        assert_eq!(m.exponents(), &[3, 1]);
        assert_eq!(m.norm(), 5);
        assert_eq!(m.to_string().parse::<Monomial>().unwrap(), m);
        assert_eq!("X2*X1*X1".parse::<Monomial>().unwrap(), "X1^2*X2".parse().unwrap());
        assert_eq!("1".parse::<Monomial>().unwrap(), Monomial::one());
        assert!("Y1".parse::<Monomial>().is_err());
        assert!("X0".parse::<Monomial>().is_err());
        assert_eq!(m.display_with(&["x", "y"]), "x^3y");
        assert_eq!(m.factors().collect::<Vec<_>>(), vec![1, 1, 1, 2]);
    }
}
