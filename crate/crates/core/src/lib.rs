//! Exact arithmetic in the rational cohomology ring of the Hilbert scheme of
//! `d` points in the plane, presented as the graded ring `A(d)` with basis
//! `g_λ` indexed by cycle types with support at most `d`.

pub mod algebra;
pub mod cache;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod oracle;
pub mod partitions;
pub mod polynomial;
pub mod presentation;
pub mod reference;
pub mod theta;

pub use algebra::{monomial_expand, multiply, project, tilde_multiply, AlgebraElement};
pub use error::{Error, Result};
pub use linalg::{Elimination, RationalMatrix};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use oracle::{oracle_product, oracle_theta, Permutation, SymmetricGroup};
pub use partitions::{enumerate_classes, enumerate_monomials, CycleType, Monomial};
pub use polynomial::Polynomial;
pub use presentation::{minimal_presentation, verify_presentation, PresentationResult, RelationVector};
pub use theta::{theta, StructureConstants};
