//! Structure constants `θ(ε; α, β)`: the coefficient of `g_ε` in `g_α · g_β`.
//!
//! The constant does not depend on the ambient `d` as long as all three
//! supports fit, so it is computed once per triple and memoized. Two
//! recursions do the work:
//!
//! * single target cycle `ε = 1_ℓ`: with `Θ(1_ℓ; α, β) = (ℓ-1)! θ(1_ℓ; α, β)`
//!   and `supp(α) < ℓ`,
//!
//!   `(ℓ - supp α) Θ(1_ℓ; α, β) = ℓ Σ_{i≥2} (i-1) (∂_i β)_{i-1} Θ(1_{ℓ-1}; α, ∂_i β)`
//!
//!   where `(∂_2 β)_1 := ℓ - supp β + 1` counts the remaining fixed points;
//! * any other `ε`: split off one `ν`-cycle, `ν` the smallest cycle length in
//!   `ε`, and sum `θ(1_ν; A, B) θ(ε - 1_ν; A', B')` over decompositions
//!   `α = A + A'`, `β = B + B'` with `supp A, supp B ≤ ν` and
//!   `N(A) + N(B) = ν - 1`.
//!
//! The recursion bottoms out at `Θ(1_1; 0, 0) = 1` (a fixed point factors only
//! as identity times identity) and `θ(ε; ε, 0) = θ(ε; 0, ε) = 1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::partitions::CycleType;

/// A triple `(ε, α, β)` with the factors in a fixed order (`α ≤ β`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ThetaKey {
    pub eps: CycleType,
    pub alpha: CycleType,
    pub beta: CycleType,
}

impl ThetaKey {
    pub fn new(eps: &CycleType, alpha: &CycleType, beta: &CycleType) -> Self {
        let (alpha, beta) = if alpha <= beta {
            (alpha.clone(), beta.clone())
        } else {
            (beta.clone(), alpha.clone())
        };
        ThetaKey {
            eps: eps.clone(),
            alpha,
            beta,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct CycleKey {
    len: usize,
    alpha: CycleType,
    beta: CycleType,
}

impl CycleKey {
    fn new(len: usize, alpha: &CycleType, beta: &CycleType) -> Self {
        let (alpha, beta) = if alpha <= beta {
            (alpha.clone(), beta.clone())
        } else {
            (beta.clone(), alpha.clone())
        };
        CycleKey { len, alpha, beta }
    }
}

/// Memoized structure constants. Safe to share between threads: concurrent
/// callers may compute the same entry twice, but always store the same value.
#[derive(Default)]
pub struct StructureConstants {
    // Θ(1_ℓ; α, β)
    cycle: RwLock<HashMap<CycleKey, BigUint>>,
    // θ(ε; α, β) for ε with at least two nontrivial cycles
    general: RwLock<HashMap<ThetaKey, BigUint>>,
}

static GLOBAL: OnceLock<StructureConstants> = OnceLock::new();

impl StructureConstants {
    pub fn new() -> Self {
        StructureConstants::default()
    }

    /// Process-wide table used by [`crate::algebra`].
    pub fn global() -> &'static StructureConstants {
        GLOBAL.get_or_init(StructureConstants::new)
    }

    /// `θ(ε; α, β)`; zero unless `N(α) + N(β) = N(ε)`.
    pub fn theta(&self, eps: &CycleType, alpha: &CycleType, beta: &CycleType) -> BigUint {
        if alpha.norm() + beta.norm() != eps.norm() {
            return BigUint::zero();
        }
        if alpha.is_zero() {
            return indicator(beta == eps);
        }
        if beta.is_zero() {
            return indicator(alpha == eps);
        }
        // Every cycle of σ and τ lies inside a cycle of ρ = στ.
        if alpha.support() > eps.support() || beta.support() > eps.support() {
            return BigUint::zero();
        }
        match eps.as_single_cycle() {
            Some(len) => self.theta_single_cycle(len, alpha, beta),
            None => {
                let key = ThetaKey::new(eps, alpha, beta);
                if let Some(v) = self.general.read().unwrap().get(&key) {
                    return v.clone();
                }
                let v = self.decompose_recursion(eps, alpha, beta);
                self.general.write().unwrap().insert(key, v.clone());
                v
            }
        }
    }

    /// `θ(1_ℓ; α, β) = Θ(1_ℓ; α, β) / (ℓ-1)!`.
    pub fn theta_single_cycle(&self, len: usize, alpha: &CycleType, beta: &CycleType) -> BigUint {
        let big = self.big_theta_single_cycle(len, alpha, beta);
        let (q, r) = big.div_rem(&factorial(len.saturating_sub(1)));
        assert!(
            r.is_zero(),
            "Θ(1_{len}; {alpha}, {beta}) = {big} is not divisible by ({len}-1)!"
        );
        q
    }

    /// `Θ(1_ℓ; α, β)`, the number of factorisations of all `ℓ`-cycles on a
    /// fixed `ℓ`-element set.
    pub fn big_theta_single_cycle(&self, len: usize, alpha: &CycleType, beta: &CycleType) -> BigUint {
        if len == 0 {
            return BigUint::zero();
        }
        if len == 1 {
            return indicator(alpha.is_zero() && beta.is_zero());
        }
        if alpha.norm() + beta.norm() != len - 1
            || alpha.support() > len
            || beta.support() > len
        {
            return BigUint::zero();
        }
        let key = CycleKey::new(len, alpha, beta);
        if let Some(v) = self.cycle.read().unwrap().get(&key) {
            return v.clone();
        }

        // At most one side can have full support ℓ; recurse on the other.
        let (fixed, moving) = if alpha.support() == len {
            (beta, alpha)
        } else {
            (alpha, beta)
        };
        assert!(fixed.support() < len, "both factors have full support {len}");

        let mut sum = BigUint::zero();
        for i in 2..=moving.max_cycle_len() {
            let Some(shifted) = moving.delta_op(i) else {
                continue;
            };
            let landing = if i == 2 {
                len - moving.support() + 1
            } else {
                shifted.count(i - 1) as usize
            };
            let sub = self.big_theta_single_cycle(len - 1, fixed, &shifted);
            if !sub.is_zero() {
                sum += sub * BigUint::from((i - 1) * landing);
            }
        }
        let (v, r) = (sum * BigUint::from(len)).div_rem(&BigUint::from(len - fixed.support()));
        assert!(r.is_zero(), "single-cycle recursion left a remainder");
        self.cycle.write().unwrap().insert(key, v.clone());
        v
    }

    /// Reduction of `θ(ε; α, β)` to a single target cycle, splitting off the
    /// smallest cycle of `ε`.
    pub fn decompose_recursion(&self, eps: &CycleType, alpha: &CycleType, beta: &CycleType) -> BigUint {
        assert!(
            !eps.is_zero() && eps.as_single_cycle().is_none(),
            "decompose_recursion needs a target with at least two cycles, got {eps}"
        );
        if alpha.norm() + beta.norm() != eps.norm() {
            return BigUint::zero();
        }
        let nu = eps.smallest_cycle().expect("nonzero target");
        let rest = eps
            .checked_sub(&CycleType::single_cycle(nu))
            .expect("ε contains a ν-cycle");
        let beta_parts = beta.decompositions(nu);
        let mut sum = BigUint::zero();
        for (a, a_rest) in alpha.decompositions(nu) {
            for (b, b_rest) in &beta_parts {
                if a.norm() + b.norm() != nu - 1 {
                    continue;
                }
                let head = self.theta_single_cycle(nu, &a, b);
                if head.is_zero() {
                    continue;
                }
                let tail = self.theta(&rest, &a_rest, b_rest);
                sum += head * tail;
            }
        }
        sum
    }

    /// Number of memoized entries (single-cycle and general).
    pub fn len(&self) -> usize {
        self.cycle.read().unwrap().len() + self.general.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.cycle.write().unwrap().clear();
        self.general.write().unwrap().clear();
    }

    /// Snapshot of the memo tables, sorted.
    pub fn snapshot(&self) -> CacheSnapshot {
        let mut cycle: Vec<(usize, CycleType, CycleType, BigUint)> = self
            .cycle
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.len, k.alpha.clone(), k.beta.clone(), v.clone()))
            .collect();
        cycle.sort();
        let mut general: Vec<(CycleType, CycleType, CycleType, BigUint)> = self
            .general
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.eps.clone(), k.alpha.clone(), k.beta.clone(), v.clone()))
            .collect();
        general.sort();
        CacheSnapshot { cycle, general }
    }

    /// Loads entries produced by [`StructureConstants::snapshot`].
    pub fn extend(&self, snapshot: CacheSnapshot) {
        let mut cycle = self.cycle.write().unwrap();
        for (len, a, b, v) in snapshot.cycle {
            cycle.insert(CycleKey::new(len, &a, &b), v);
        }
        drop(cycle);
        let mut general = self.general.write().unwrap();
        for (e, a, b, v) in snapshot.general {
            general.insert(ThetaKey::new(&e, &a, &b), v);
        }
    }

    /// Recursion tree for `θ(ε; α, β)`, expanded to `depth` levels.
    pub fn derivation(
        &self,
        eps: &CycleType,
        alpha: &CycleType,
        beta: &CycleType,
        depth: usize,
    ) -> Derivation {
        let value = self.theta(eps, alpha, beta);
        let head = format!("θ({eps}; {alpha}, {beta})");
        let rule = if alpha.norm() + beta.norm() != eps.norm() {
            "norms not additive"
        } else if alpha.is_zero() || beta.is_zero() {
            "unit factor"
        } else if alpha.support() > eps.support() || beta.support() > eps.support() {
            "factor support exceeds target"
        } else if let Some(len) = eps.as_single_cycle() {
            let mut node = self.cycle_derivation(len, alpha, beta, depth);
            node.term = head;
            node.rule = format!("θ = Θ / {}! ; {}", len - 1, node.rule);
            node.value = value;
            return node;
        } else {
            "split off smallest cycle"
        };
        let mut children = Vec::new();
        if depth > 0 && rule == "split off smallest cycle" {
            let nu = eps.smallest_cycle().unwrap();
            let rest = eps.checked_sub(&CycleType::single_cycle(nu)).unwrap();
            for (a, a_rest) in alpha.decompositions(nu) {
                for (b, b_rest) in beta.decompositions(nu) {
                    if a.norm() + b.norm() != nu - 1 {
                        continue;
                    }
                    let head = self.theta_single_cycle(nu, &a, &b);
                    if head.is_zero() {
                        continue;
                    }
                    let mut pair = Derivation {
                        term: format!("θ(1_{nu}; {a}, {b}) · θ({rest}; {a_rest}, {b_rest})"),
                        rule: "product".into(),
                        value: &head * self.theta(&rest, &a_rest, &b_rest),
                        children: Vec::new(),
                    };
                    if depth > 1 {
                        pair.children.push(self.derivation(
                            &CycleType::single_cycle(nu),
                            &a,
                            &b,
                            depth - 2,
                        ));
                        pair.children
                            .push(self.derivation(&rest, &a_rest, &b_rest, depth - 2));
                    }
                    children.push(pair);
                }
            }
        }
        Derivation {
            term: head,
            rule: rule.into(),
            value,
            children,
        }
    }

    fn cycle_derivation(
        &self,
        len: usize,
        alpha: &CycleType,
        beta: &CycleType,
        depth: usize,
    ) -> Derivation {
        let value = self.big_theta_single_cycle(len, alpha, beta);
        let term = format!("Θ(1_{len}; {alpha}, {beta})");
        if len <= 1 || value.is_zero() {
            let rule = if len <= 1 { "fixed point" } else { "vanishes" };
            return Derivation {
                term,
                rule: rule.into(),
                value,
                children: Vec::new(),
            };
        }
        let (fixed, moving) = if alpha.support() == len {
            (beta, alpha)
        } else {
            (alpha, beta)
        };
        let mut children = Vec::new();
        if depth > 0 {
            for i in 2..=moving.max_cycle_len() {
                let Some(shifted) = moving.delta_op(i) else {
                    continue;
                };
                let mut child = self.cycle_derivation(len - 1, fixed, &shifted, depth - 1);
                child.rule = format!("i = {i}; {}", child.rule);
                children.push(child);
            }
        }
        Derivation {
            term,
            rule: format!(
                "({len} - {}) Θ = {len} Σ_i (i-1)(∂_i β)_(i-1) Θ(1_{}; α, ∂_i β)",
                fixed.support(),
                len - 1
            ),
            value,
            children,
        }
    }
}

/// Memo-table contents, for persisting between runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CacheSnapshot {
    pub cycle: Vec<(usize, CycleType, CycleType, BigUint)>,
    pub general: Vec<(CycleType, CycleType, CycleType, BigUint)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Derivation {
    pub term: String,
    pub rule: String,
    #[serde(serialize_with = "serialize_biguint")]
    pub value: BigUint,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Derivation>,
}

fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Derivation {
    fn write_indented(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        writeln!(
            f,
            "{:indent$}{} = {}   [{}]",
            "",
            self.term,
            self.value,
            self.rule,
            indent = indent
        )?;
        for c in &self.children {
            c.write_indented(f, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

fn indicator(b: bool) -> BigUint {
    if b {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `θ(ε; α, β)` from the process-wide table.
pub fn theta(eps: &CycleType, alpha: &CycleType, beta: &CycleType) -> BigUint {
    StructureConstants::global().theta(eps, alpha, beta)
}

pub fn theta_single_cycle(len: usize, alpha: &CycleType, beta: &CycleType) -> BigUint {
    StructureConstants::global().theta_single_cycle(len, alpha, beta)
}

pub fn decompose_recursion(eps: &CycleType, alpha: &CycleType, beta: &CycleType) -> BigUint {
    StructureConstants::global().decompose_recursion(eps, alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn theta_examples() {
        let t = StructureConstants::new();
        for eps in ["[1]", "[0,1]", "[2,1]", "[0,0,0,1]"] {
            assert_eq!(t.theta(&ct(eps), &ct(eps), &CycleType::zero()), n(1));
            assert_eq!(t.theta(&ct(eps), &CycleType::zero(), &ct(eps)), n(1));
        }
        assert_eq!(t.theta(&ct("[0,1]"), &ct("[1]"), &ct("[1]")), n(3));
        assert_eq!(t.theta(&ct("[0,0,1]"), &ct("[1]"), &ct("[0,1]")), n(4));
        // non-additive norms
        assert_eq!(t.theta(&ct("[0,0,1]"), &ct("[1]"), &ct("[1]")), n(0));
    }

    #[test]
    fn single_cycle_examples() {
        let t = StructureConstants::new();
        assert_eq!(t.theta_single_cycle(2, &CycleType::zero(), &ct("[1]")), n(1));
        assert_eq!(t.theta_single_cycle(3, &ct("[1]"), &ct("[1]")), n(3));
        assert_eq!(t.theta_single_cycle(4, &ct("[1]"), &ct("[2]")), n(2));
        assert_eq!(t.big_theta_single_cycle(1, &CycleType::zero(), &CycleType::zero()), n(1));
        assert_eq!(t.big_theta_single_cycle(1, &ct("[1]"), &CycleType::zero()), n(0));
        // supp(α) = ℓ forces the swap
        assert_eq!(t.theta_single_cycle(4, &ct("[2]"), &ct("[1]")), n(2));
        assert_eq!(t.theta_single_cycle(3, &ct("[0,1]"), &CycleType::zero()), n(1));
    }

    #[test]
    fn decompose_examples() {
        let t = StructureConstants::new();
        assert_eq!(t.decompose_recursion(&ct("[2]"), &ct("[1]"), &ct("[1]")), n(2));
        assert_eq!(t.decompose_recursion(&ct("[1,1]"), &ct("[1]"), &ct("[0,1]")), n(1));
        for eps in ["[2]", "[1,1]", "[0,2]", "[3]"] {
            assert_eq!(t.decompose_recursion(&ct(eps), &ct(eps), &CycleType::zero()), n(1));
        }
    }

    #[test]
    fn snapshot_round_trip() {
        let t = StructureConstants::new();
        assert_eq!(t.theta(&ct("[1,1]"), &ct("[1]"), &ct("[0,1]")), n(1));
        assert!(!t.is_empty());
        let snap = t.snapshot();
        let fresh = StructureConstants::new();
        fresh.extend(snap.clone());
        assert_eq!(fresh.snapshot(), snap);
        t.clear();
        assert!(t.is_empty());
    }

    #[test]
    fn derivation_tree() {
        let t = StructureConstants::new();
        let d = t.derivation(&ct("[2]"), &ct("[1]"), &ct("[1]"), 3);
        assert_eq!(d.value, n(2));
        assert!(!d.children.is_empty());
        let text = d.to_string();
        assert!(text.starts_with("θ([2]; [1], [1]) = 2"));
        let d = t.derivation(&ct("[0,1]"), &ct("[1]"), &ct("[1]"), 2);
        assert_eq!(d.value, n(3));
    }
}
