//! Brute-force ground truth in `S_d`.
//!
//! Nothing here is used to compute products in production; it exists to check
//! the recursions in [`crate::theta`] and [`crate::algebra`] by direct
//! enumeration of permutations.
//!
//! Permutations act on `{0, …, d-1}` and compose right to left:
//! `(σ·τ)(x) = σ(τ(x))`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::partitions::CycleType;

/// Default bound on `d` for exhaustive enumeration (`|S_8| = 40320`).
pub const DEFAULT_ORACLE_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::OutOfRange(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Permutation of `{0..d-1}` with the given disjoint cycles.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..d).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if x >= d || next >= d {
                    return Err(Error::OutOfRange(format!("point {x} outside 0..{d}")));
                }
                images[x] = next;
            }
        }
        Permutation::from_images(images)
    }

    /// The transposition swapping `i` and `j` in `S_d`.
    pub fn transposition(d: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..d).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self · other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Cycle decomposition including fixed points, each cycle starting at its
    /// smallest element, cycles ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_cycle_lengths(self.cycles().iter().map(Vec::len))
    }

    /// `N(σ) = d - (number of cycles, fixed points included)`.
    pub fn norm(&self) -> usize {
        self.degree() - self.cycles().len()
    }

    pub fn support(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x != y)
            .count()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// All of `S_d` in lexicographic order of the image arrays.
pub fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..d).collect();
    let mut out = vec![Permutation {
        images: current.clone(),
    }];
    // next_permutation
    loop {
        let Some(i) = (1..d).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..d).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Permutation {
            images: current.clone(),
        });
    }
}

/// Canonical representative of a class: cycles on consecutive points,
/// longest first.
pub fn canonical_representative(class: &CycleType, d: usize) -> Result<Permutation> {
    if class.support() > d {
        return Err(Error::OutOfRange(format!(
            "class {class} has support {} > {d}",
            class.support()
        )));
    }
    let mut cycles = Vec::new();
    let mut next = 0;
    for len in (2..=class.max_cycle_len()).rev() {
        for _ in 0..class.count(len) {
            cycles.push((next..next + len).collect());
            next += len;
        }
    }
    Permutation::from_cycles(d, &cycles)
}

/// `S_d` with its elements grouped by conjugacy class.
pub struct SymmetricGroup {
    d: usize,
    classes: BTreeMap<CycleType, Vec<Permutation>>,
}

impl SymmetricGroup {
    pub fn new(d: usize) -> Result<Self> {
        SymmetricGroup::with_cap(d, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(d: usize, cap: usize) -> Result<Self> {
        if d > cap {
            return Err(Error::OracleCap { d, cap });
        }
        let mut classes: BTreeMap<CycleType, Vec<Permutation>> = BTreeMap::new();
        for p in all_permutations(d) {
            classes.entry(p.cycle_type()).or_default().push(p);
        }
        Ok(SymmetricGroup { d, classes })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn class(&self, class: &CycleType) -> &[Permutation] {
        self.classes.get(class).map_or(&[], Vec::as_slice)
    }

    /// Number of `(σ, τ)` with `σ ∈ (α)`, `τ ∈ (β)`, `στ = ρ` and
    /// `N(σ) + N(τ) = N(ρ)`.
    pub fn factorisations(&self, rho: &Permutation, alpha: &CycleType, beta: &CycleType) -> u64 {
        if alpha.norm() + beta.norm() != rho.norm() {
            return 0;
        }
        // τ = σ⁻¹ρ
        self.class(alpha)
            .iter()
            .filter(|sigma| sigma.inverse().compose(rho).cycle_type() == *beta)
            .count() as u64
    }

    /// `θ_d(ε; α, β)` counted at the canonical representative of `ε`.
    pub fn theta(&self, eps: &CycleType, alpha: &CycleType, beta: &CycleType) -> Result<u64> {
        for c in [eps, alpha, beta] {
            if c.support() > self.d {
                return Err(Error::OutOfRange(format!(
                    "class {c} does not fit in S_{}",
                    self.d
                )));
            }
        }
        let rho = canonical_representative(eps, self.d)?;
        Ok(self.factorisations(&rho, alpha, beta))
    }

    /// `g_α · g_β` by expanding both class sums and keeping norm-additive
    /// products.
    pub fn product(&self, alpha: &CycleType, beta: &CycleType) -> Result<AlgebraElement> {
        for c in [alpha, beta] {
            if c.support() > self.d {
                return Err(Error::OutOfRange(format!(
                    "class {c} does not fit in S_{}",
                    self.d
                )));
            }
        }
        let target_norm = alpha.norm() + beta.norm();
        let betas = self.class(beta);
        let counts: BTreeMap<CycleType, u64> = self
            .class(alpha)
            .par_iter()
            .map(|sigma| {
                let mut local: BTreeMap<CycleType, u64> = BTreeMap::new();
                for tau in betas {
                    let rho = sigma.compose(tau);
                    if rho.norm() == target_norm {
                        *local.entry(rho.cycle_type()).or_default() += 1;
                    }
                }
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let mut out = AlgebraElement::zero(self.d);
        for (class, count) in counts {
            let size = self.class(&class).len() as u64;
            assert_eq!(count % size, 0, "product count not constant on a class");
            out.add_term(class, BigRational::from_integer((count / size).into()));
        }
        Ok(out)
    }
}

pub fn perm_norm(p: &Permutation) -> usize {
    p.norm()
}

/// Every permutation of `S_d` of the given class, each once.
pub fn class_members(class: &CycleType, d: usize) -> Result<impl Iterator<Item = Permutation>> {
    if class.support() > d {
        return Err(Error::OutOfRange(format!(
            "class {class} has support {} > {d}",
            class.support()
        )));
    }
    let class = class.clone();
    Ok(all_permutations(d)
        .into_iter()
        .filter(move |p| p.cycle_type() == class))
}

pub fn oracle_theta(eps: &CycleType, alpha: &CycleType, beta: &CycleType, d: usize) -> Result<u64> {
    SymmetricGroup::new(d)?.theta(eps, alpha, beta)
}

pub fn oracle_product(alpha: &CycleType, beta: &CycleType, d: usize) -> Result<AlgebraElement> {
    oracle_product_with_cap(alpha, beta, d, DEFAULT_ORACLE_CAP)
}

pub fn oracle_product_with_cap(
    alpha: &CycleType,
    beta: &CycleType,
    d: usize,
    cap: usize,
) -> Result<AlgebraElement> {
    SymmetricGroup::with_cap(d, cap)?.product(alpha, beta)
}
