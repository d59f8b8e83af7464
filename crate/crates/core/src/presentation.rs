//! Minimal presentations of `A(d)` in the generators `γ₂, …, γ_{m+1}`,
//! `m = ⌊d/2⌋`.
//!
//! For each norm `n` the expansion matrix `A^n` sends monomials of norm `n`
//! to their images in the basis `Λ(n, d)`; its kernel `R_n` is the space of all
//! relations of norm `n`. Relations forced by lower norms span `L_n`, the
//! images of `R_{n-i}` under multiplication by `X_i`. A minimal set of new
//! relations is the part of `R_n` that is independent of `L_n`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_vector, RationalMatrix};
use crate::partitions::{enumerate_classes, enumerate_monomials, CycleType, Monomial};
use crate::polynomial::{parse_relation_chain, Polynomial};
use crate::theta::StructureConstants;

/// Largest `d` whose relation counts have been checked against independent
/// published tables.
pub const VERIFIED_MAX_D: usize = 10;

pub const SCHEMA_VERSION: u32 = 1;

pub fn num_generators(d: usize) -> usize {
    d / 2
}

/// Largest norm scanned for relations.
pub fn max_relation_norm(d: usize) -> usize {
    d + num_generators(d)
}

/// Display names for `X_1, …, X_m`.
pub fn generator_names(d: usize) -> Vec<String> {
    let m = num_generators(d);
    let alphabet = if d <= 8 {
        "xyzw"
    } else {
        "abcdefghijklmnopqrstuvwxyz"
    };
    if m <= alphabet.len() {
        alphabet.chars().take(m).map(String::from).collect()
    } else {
        (1..=m).map(|i| format!("X{i}")).collect()
    }
}

/// Letters accepted by [`verify_presentation`] for `A(d)`.
pub fn generator_alphabet(d: usize) -> String {
    generator_names(d).concat()
}

/// Images of every monomial of norm `< d` in the generators of `A(d)`,
/// built norm by norm as `μ = μ' · X_v` with `v` the largest variable of `μ`.
pub struct ExpansionTable {
    d: usize,
    m: usize,
    images: HashMap<Monomial, AlgebraElement>,
}

impl ExpansionTable {
    pub fn new(table: &StructureConstants, d: usize) -> Result<Self> {
        let m = num_generators(d);
        let gammas = (1..=m)
            .map(|i| AlgebraElement::gamma(i + 1, d))
            .collect::<Result<Vec<_>>>()?;
        let mut images = HashMap::new();
        images.insert(Monomial::one(), AlgebraElement::unit(d));
        for n in 1..d {
            let level: Vec<(Monomial, AlgebraElement)> = enumerate_monomials(n, m)
                .into_par_iter()
                .map(|mono| {
                    let v = mono.max_var();
                    let prev = mono.div_var(v).expect("max variable divides");
                    let image = images[&prev]
                        .multiply_with(table, &gammas[v - 1])
                        .expect("same ambient algebra");
                    (mono, image)
                })
                .collect();
            images.extend(level);
        }
        Ok(ExpansionTable { d, m, images })
    }

    pub fn image(&self, mono: &Monomial) -> AlgebraElement {
        self.images
            .get(mono)
            .cloned()
            .unwrap_or_else(|| AlgebraElement::zero(self.d))
    }

    /// `A^n`: rows `Λ(n, d)`, columns monomials of norm `n`.
    pub fn matrix(&self, n: usize) -> RationalMatrix {
        let classes = enumerate_classes(n, self.d);
        let columns: Vec<Vec<BigRational>> = enumerate_monomials(n, self.m)
            .iter()
            .map(|mono| {
                let image = self.image(mono);
                classes.iter().map(|c| image.coefficient(c)).collect()
            })
            .collect();
        matrix_from_columns(classes.len(), enumerate_monomials(n, self.m).len(), &columns)
    }
}

fn matrix_from_columns(rows: usize, cols: usize, columns: &[Vec<BigRational>]) -> RationalMatrix {
    if cols == 0 {
        return RationalMatrix::zeros(rows, 0);
    }
    RationalMatrix::from_columns(rows, columns).expect("columns have equal length")
}

/// `A^n` for `A(d)`.
pub fn expansion_matrix(d: usize, n: usize) -> Result<RationalMatrix> {
    Ok(ExpansionTable::new(StructureConstants::global(), d)?.matrix(n))
}

/// Multiplication by `X_i` from monomials of norm `k` to norm `k + i`,
/// over `m` variables.
pub fn conversion_matrix(m: usize, i: usize, k: usize) -> RationalMatrix {
    let source = enumerate_monomials(k, m);
    let target = enumerate_monomials(k + i, m);
    let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(r, mo)| (mo, r)).collect();
    let mut out = RationalMatrix::zeros(target.len(), source.len());
    if i == 0 || i > m {
        return out;
    }
    for (c, mono) in source.iter().enumerate() {
        out.set(index[&mono.mul_var(i)], c, BigRational::one());
    }
    out
}

/// Spanning set for `L_n`: images of the kernels `R_{n-i}` under `X_i`,
/// deduplicated. `kernels[k]` holds a basis of `R_k`.
pub fn sufficient_relations(m: usize, n: usize, kernels: &[Vec<Vec<BigRational>>]) -> Vec<Vec<BigRational>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 1..=m.min(n.saturating_sub(1)) {
        let k = n - i;
        let Some(basis) = kernels.get(k) else { continue };
        if basis.is_empty() {
            continue;
        }
        let conv = conversion_matrix(m, i, k);
        for r in basis {
            let v = primitive_integer_vector(&conv.mul_vec(r).expect("conversion dimensions"));
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
    }
    out
}

/// One relation of norm `n`, stored sparsely over the monomials of norm `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationVector {
    pub norm: usize,
    pub monomials: Vec<Monomial>,
    pub coefficients: Vec<BigRational>,
}

impl RelationVector {
    /// Builds from a dense vector over `enumerate_monomials(norm, m)`; scales
    /// to a primitive integer vector whose first nonzero entry is positive.
    pub fn from_dense(norm: usize, basis: &[Monomial], dense: &[BigRational]) -> Self {
        let mut v = primitive_integer_vector(dense);
        if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        let (monomials, coefficients) = basis
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c))
            .unzip();
        RelationVector {
            norm,
            monomials,
            coefficients,
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.monomials.iter().cloned().zip(self.coefficients.iter().cloned()))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut out = String::new();
        for (k, (m, c)) in self.monomials.iter().zip(&self.coefficients).enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&m.display_with(&names));
        }
        out
    }
}

impl Serialize for RelationVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RelationVector", 3)?;
        st.serialize_field("norm", &self.norm)?;
        let monos: Vec<String> = self.monomials.iter().map(ToString::to_string).collect();
        st.serialize_field("monomials", &monos)?;
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

/// Linear-algebra summary for one norm.
#[derive(Debug, Clone, Serialize)]
pub struct NormSummary {
    pub norm: usize,
    /// `|Λ(n, d)|`.
    pub classes: usize,
    /// Number of monomials of norm `n`.
    pub monomials: usize,
    pub rank: usize,
    /// `dim R_n`.
    pub kernel_dim: usize,
    /// `dim L_n`.
    pub induced_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationResult {
    pub schema_version: u32,
    pub d: usize,
    pub m: usize,
    pub generators: Vec<String>,
    pub relations: Vec<RelationVector>,
    /// `counts[n-1] = r_{d,n}` for `n = 1..=d+m`.
    pub counts: Vec<usize>,
    pub total: usize,
    #[serde(skip)]
    pub norms: Vec<NormSummary>,
    #[serde(skip)]
    pub kernels: Vec<Vec<Vec<BigRational>>>,
}

impl PresentationResult {
    /// True when `γ₂, …, γ_{m+1}` span every graded piece.
    pub fn generators_span(&self) -> bool {
        self.norms.iter().all(|s| s.rank == s.classes)
    }

    pub fn relations_of_norm(&self, n: usize) -> impl Iterator<Item = &RelationVector> {
        self.relations.iter().filter(move |r| r.norm == n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let gens: Vec<String> = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| format!("{g}=γ{}", k + 2))
            .collect();
        let _ = writeln!(out, "A({}): generators {}", self.d, gens.join(", "));
        let _ = writeln!(out, "relations ({}):", self.total);
        for r in &self.relations {
            let _ = writeln!(out, "  [norm {}] {}", r.norm, r.display_with(&self.generators));
        }
        let counts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "r(d={},n=1..{}): {}", self.d, self.counts.len(), counts.join(" "));
        out
    }

    /// One array per norm: rows are monomials, columns are relations.
    pub fn to_latex(&self) -> String {
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let mut out = String::new();
        let _ = writeln!(out, "% A({}) with {} relations", self.d, self.total);
        for n in 1..=self.counts.len() {
            let rels: Vec<&RelationVector> = self.relations_of_norm(n).collect();
            if rels.is_empty() {
                continue;
            }
            let mut rows: Vec<&Monomial> = rels.iter().flat_map(|r| &r.monomials).collect();
            rows.sort_by(|a, b| b.cmp(a));
            rows.dedup();
            let _ = writeln!(out, "% norm {n}");
            let _ = writeln!(out, "\\[\\begin{{array}}{{c|{}}}", "r".repeat(rels.len()));
            for mono in rows {
                let cells: Vec<String> = rels
                    .iter()
                    .map(|r| {
                        r.monomials
                            .iter()
                            .position(|x| x == mono)
                            .map(|k| r.coefficients[k].to_string())
                            .unwrap_or_else(|| "0".into())
                    })
                    .collect();
                let _ = writeln!(out, "{} & {} \\\\", latex_monomial(mono, &names), cells.join(" & "));
            }
            let _ = writeln!(out, "\\end{{array}}\\]");
        }
        out
    }
}

fn latex_monomial(mono: &Monomial, names: &[&str]) -> String {
    let mut out = String::new();
    for (k, &e) in mono.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => out.push_str(names[k]),
            _ => {
                let _ = write!(out, "{}^{{{e}}}", names[k]);
            }
        }
    }
    out
}

pub fn minimal_presentation(d: usize) -> Result<PresentationResult> {
    minimal_presentation_with(StructureConstants::global(), d)
}

pub fn minimal_presentation_with(table: &StructureConstants, d: usize) -> Result<PresentationResult> {
    if d == 0 {
        return Err(Error::OutOfRange("A(d) needs d ≥ 1".into()));
    }
    let m = num_generators(d);
    let top = max_relation_norm(d);
    let expansions = ExpansionTable::new(table, d)?;

    let per_norm: Vec<(NormSummary, Vec<Vec<BigRational>>)> = (0..=top)
        .into_par_iter()
        .map(|n| {
            let a = expansions.matrix(n);
            let kernel = if n == 0 { Vec::new() } else { a.nullspace() };
            let summary = NormSummary {
                norm: n,
                classes: a.rows(),
                monomials: a.cols(),
                rank: a.cols() - kernel.len(),
                kernel_dim: kernel.len(),
                induced_dim: 0,
            };
            (summary, kernel)
        })
        .collect();
    let (mut norms, kernels): (Vec<NormSummary>, Vec<Vec<Vec<BigRational>>>) = per_norm.into_iter().unzip();

    let minimal: Vec<(usize, Vec<RelationVector>)> = (1..=top)
        .into_par_iter()
        .map(|n| {
            let induced = sufficient_relations(m, n, &kernels);
            let basis = enumerate_monomials(n, m);
            let mut columns = induced.clone();
            columns.extend(kernels[n].iter().cloned());
            let w = matrix_from_columns(basis.len(), columns.len(), &columns);
            let pivots = w.pivot_columns();
            let induced_dim = pivots.iter().filter(|&&p| p < induced.len()).count();
            let fresh = pivots
                .into_iter()
                .filter(|&p| p >= induced.len())
                .map(|p| RelationVector::from_dense(n, &basis, &columns[p]))
                .collect();
            (induced_dim, fresh)
        })
        .collect();

    let mut relations = Vec::new();
    let mut counts = Vec::with_capacity(top);
    for (k, (induced_dim, fresh)) in minimal.into_iter().enumerate() {
        norms[k + 1].induced_dim = induced_dim;
        counts.push(fresh.len());
        relations.extend(fresh);
    }
    norms.remove(0);
    let total = counts.iter().sum();
    Ok(PresentationResult {
        schema_version: SCHEMA_VERSION,
        d,
        m,
        generators: generator_names(d),
        relations,
        counts,
        total,
        norms,
        kernels,
    })
}

/// `r_{d,n}` for `d = 1..=max_d`.
pub fn relation_table(max_d: usize) -> Result<Vec<PresentationResult>> {
    (1..=max_d).map(minimal_presentation).collect()
}

/// Check of one user-supplied relation (or chain of equalities).
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub text: String,
    /// Parsed relations in canonical form; a chain contributes several.
    pub parsed: Vec<String>,
    pub error: Option<String>,
    /// Nonzero images in `A(d)`, one per parsed relation that fails.
    pub residues: Vec<String>,
    pub vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationCheck {
    pub d: usize,
    pub relations: Vec<RelationCheck>,
    pub relation_count: usize,
    /// `(n, rank of the ideal in norm n, dim R_n)` for every norm scanned.
    pub ideal_ranks: Vec<(usize, usize, usize)>,
    pub generates: bool,
    pub minimal: bool,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.vanishes && r.error.is_none()) && self.generates
    }
}

/// Checks that the given relations vanish in `A(d)` and generate the whole
/// relation ideal; `minimal` also requires their number to match the
/// minimal count.
pub fn verify_presentation<S: AsRef<str>>(d: usize, texts: &[S]) -> Result<PresentationCheck> {
    let alphabet = generator_alphabet(d);
    verify_presentation_in(d, texts, &alphabet)
}

pub fn verify_presentation_in<S: AsRef<str>>(d: usize, texts: &[S], alphabet: &str) -> Result<PresentationCheck> {
    let table = StructureConstants::global();
    let pres = minimal_presentation_with(table, d)?;
    let m = pres.m;
    let mut checks = Vec::new();
    let mut polys: Vec<Polynomial> = Vec::new();
    for text in texts {
        let text = text.as_ref();
        let mut check = RelationCheck {
            text: text.to_string(),
            parsed: Vec::new(),
            error: None,
            residues: Vec::new(),
            vanishes: false,
        };
        match parse_relation_chain(text, alphabet) {
            Err(e) => check.error = Some(e.to_string()),
            Ok(parsed) => {
                check.vanishes = true;
                for p in parsed {
                    check.parsed.push(p.display_with(alphabet));
                    if p.terms().any(|(mo, _)| mo.max_var() > m) {
                        check.error = Some(format!("uses a generator beyond X{m}"));
                        check.vanishes = false;
                        continue;
                    }
                    let image = p.evaluate_with(table, d)?;
                    if !image.is_zero() {
                        check.vanishes = false;
                        check.residues.push(image.to_string());
                    }
                    polys.push(p);
                }
            }
        }
        checks.push(check);
    }

    let mut ideal_ranks = Vec::new();
    for n in 1..=max_relation_norm(d) {
        let basis = enumerate_monomials(n, m);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, mo)| (mo, k)).collect();
        let mut columns = Vec::new();
        for p in &polys {
            for (pn, part) in homogeneous_parts(p) {
                if pn > n {
                    continue;
                }
                for mult in enumerate_monomials(n - pn, m) {
                    let mut col = vec![BigRational::zero(); basis.len()];
                    for (mo, c) in part.terms() {
                        col[index[&mo.mul(&mult)]] += c;
                    }
                    columns.push(col);
                }
            }
        }
        let rank = matrix_from_columns(basis.len(), columns.len(), &columns).rank();
        ideal_ranks.push((n, rank, pres.kernels[n].len()));
    }
    let generates = ideal_ranks.iter().all(|&(_, r, k)| r == k);
    let relation_count = polys.len();
    Ok(PresentationCheck {
        d,
        relations: checks,
        relation_count,
        ideal_ranks,
        generates,
        minimal: generates && relation_count == pres.total,
    })
}

/// Splits a polynomial into its norm-homogeneous components.
fn homogeneous_parts(p: &Polynomial) -> Vec<(usize, Polynomial)> {
    let mut by_norm: std::collections::BTreeMap<usize, Polynomial> = Default::default();
    for (mo, c) in p.terms() {
        by_norm.entry(mo.norm()).or_default().add_term(mo.clone(), c.clone());
    }
    by_norm.into_iter().collect()
}

/// `(j, dim A_j, rank of decomposables, dim of indecomposables)` for
/// `j = 1..d`, where decomposables are spanned by `g_α g_β` with both norms
/// positive.
pub fn indecomposables_dims(d: usize) -> Vec<(usize, usize, usize, usize)> {
    let table = StructureConstants::global();
    (1..d)
        .map(|j| {
            let classes = enumerate_classes(j, d);
            let index: HashMap<&CycleType, usize> = classes.iter().enumerate().map(|(k, c)| (c, k)).collect();
            let mut columns = Vec::new();
            for a in 1..=j / 2 {
                for alpha in enumerate_classes(a, d) {
                    for beta in enumerate_classes(j - a, d) {
                        let prod = AlgebraElement::basis(&alpha, d)
                            .multiply_with(table, &AlgebraElement::basis(&beta, d))
                            .expect("same ambient algebra");
                        let mut col = vec![BigRational::zero(); classes.len()];
                        for (c, v) in prod.terms() {
                            col[index[c]] = v.clone();
                        }
                        columns.push(col);
                    }
                }
            }
            let rank = matrix_from_columns(classes.len(), columns.len(), &columns).rank();
            (j, classes.len(), rank, classes.len() - rank)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn expansion_matrix_small() {
        // A(4), norm 3: monomials x^3, xy; the only class of norm 3 fitting
        // in 4 points is the 4-cycle.
        let a = expansion_matrix(4, 3).unwrap();
        assert_eq!((a.rows(), a.cols()), (1, 2));
        assert_eq!(a.row(0), &[q(16), q(4)]);
        assert_eq!(a.nullspace(), vec![vec![q(-1), q(4)]]);
    }

    #[test]
    fn conversion_is_multiplication() {
        let c = conversion_matrix(2, 1, 2);
        // x^2, y  ->  x^3, xy
        assert_eq!((c.rows(), c.cols()), (2, 2));
        assert_eq!(c.get(0, 0), &q(1));
        assert_eq!(c.get(1, 1), &q(1));
        assert!(c.get(0, 1).is_zero());
    }

    #[test]
    fn small_presentations() {
        let p = minimal_presentation(1).unwrap();
        assert_eq!(p.total, 0);
        let p = minimal_presentation(2).unwrap();
        assert_eq!(p.counts, vec![0, 1, 0]);
        assert_eq!(p.relations[0].display_with(&p.generators), "x^2");
        let p = minimal_presentation(4).unwrap();
        assert_eq!(p.counts, vec![0, 0, 1, 2, 0, 0]);
        let text: Vec<String> = p.relations.iter().map(|r| r.display_with(&p.generators)).collect();
        assert_eq!(text[0], "x^3 - 4xy");
        assert!(p.generators_span());
    }

    #[test]
    fn relation_canonical_sign() {
        let basis = enumerate_monomials(3, 2);
        let r = RelationVector::from_dense(3, &basis, &[q(-2), q(8)]);
        assert_eq!(r.coefficients, vec![q(1), q(-4)]);
    }

    #[test]
    fn verify_accepts_and_rejects() {
        let ok = verify_presentation(4, &["x^3 - 4xy", "x^4", "y^2"]).unwrap();
        assert!(ok.passed() && ok.minimal, "{ok:?}");
        let partial = verify_presentation(4, &["x^3 - 4xy", "y^2"]).unwrap();
        assert!(!partial.generates);
        let bad = verify_presentation(4, &["x^3 - 3xy", "x^4", "y^2", "q"]).unwrap();
        assert!(!bad.relations[0].vanishes);
        assert!(!bad.relations[0].residues.is_empty());
        assert!(bad.relations[3].error.is_some());
        assert!(!bad.passed());
    }

    #[test]
    fn indecomposables_are_the_generators() {
        for d in 2..=6 {
            for (j, _, _, indec) in indecomposables_dims(d) {
                assert_eq!(indec, usize::from(j <= d / 2), "d={d} j={j}");
            }
        }
    }

    #[test]
    fn output_formats() {
        let p = minimal_presentation(4).unwrap();
        let json: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["total"], 3);
        assert_eq!(json["relations"][0]["coefficients"][1], "-4");
        assert!(p.to_latex().contains("\\begin{array}"));
        assert!(p.to_text().contains("x^3 - 4xy"));
    }
}
