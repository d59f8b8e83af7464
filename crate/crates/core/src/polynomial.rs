//! Polynomials in the generators and a small parser for relation text such as
//! `x^4 - 11x^2y + 24xz + 6y^2` or `a^9 = 10a^7b = 10^7de`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::algebra::{monomial_expand_with, AlgebraElement};
use crate::error::{Error, Result};
use crate::partitions::Monomial;
use crate::theta::StructureConstants;

/// Letters for `(γ₂, γ₃, γ₄, γ₅)` in the small-case presentations.
pub const SMALL_ALPHABET: &str = "xyzw";
/// Letters for `(γ₂, …, γ₆)` used for `d = 9, 10`.
pub const LARGE_ALPHABET: &str = "abcde";

/// Default generator letters for `A(d)`.
pub fn default_alphabet(d: usize) -> &'static str {
    if d <= 8 {
        SMALL_ALPHABET
    } else {
        LARGE_ALPHABET
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Norm of the terms if they all agree.
    pub fn homogeneous_norm(&self) -> Option<usize> {
        let mut norms = self.terms.keys().map(Monomial::norm);
        let first = norms.next()?;
        norms.all(|n| n == first).then_some(first)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Image under `X_i ↦ γ_{i+1}` in `A(d)`.
    pub fn evaluate(&self, d: usize) -> Result<AlgebraElement> {
        self.evaluate_with(StructureConstants::global(), d)
    }

    pub fn evaluate_with(&self, table: &StructureConstants, d: usize) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(d);
        for (m, c) in &self.terms {
            let v = monomial_expand_with(table, m, d)?;
            acc = acc.checked_add(&v.scale(c))?;
        }
        Ok(acc)
    }

    /// Formats with generator letters, highest-ranked monomial first.
    pub fn display_with(&self, alphabet: &str) -> String {
        let names: Vec<String> = alphabet.chars().map(String::from).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let body = m.display_with(&names);
            if abs.is_one() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&abs.to_string());
            } else if abs.is_integer() {
                out.push_str(&format!("{abs}{body}"));
            } else {
                out.push_str(&format!("({abs}){body}"));
            }
        }
        out
    }

    /// Parses one polynomial over the given generator letters.
    pub fn parse(text: &str, alphabet: &str) -> Result<Polynomial> {
        Parser::new(text, alphabet).polynomial()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p₀ = p₁ = … = p_k` into the relations `p₀ - p₁, …, p_{k-1} - p_k`;
/// text without `=` is a single relation.
pub fn parse_relation_chain(text: &str, alphabet: &str) -> Result<Vec<Polynomial>> {
    let sides = text
        .split('=')
        .map(|side| Polynomial::parse(side, alphabet))
        .collect::<Result<Vec<_>>>()?;
    if sides.len() == 1 {
        return Ok(sides);
    }
    Ok(sides.windows(2).map(|w| w[0].sub(&w[1])).collect())
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
    alphabet: Vec<char>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, alphabet: &str) -> Self {
        Parser {
            text,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            alphabet: alphabet.chars().collect(),
        }
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::parse("polynomial", self.text, reason)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn polynomial(mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return Err(self.err("empty expression"));
        }
        let mut poly = Polynomial::zero();
        let mut first = true;
        while self.peek().is_some() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                Some(c) => return Err(self.err(format!("expected + or - before {c:?}"))),
                None => unreachable!(),
            };
            first = false;
            let (mono, coeff) = self.term()?;
            poly.add_term(mono, coeff * BigRational::from_integer(sign.into()));
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one();
        let mut seen_anything = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let base = self.integer()?;
            let value = if self.peek() == Some('^') {
                self.pos += 1;
                let exp = self.exponent()?;
                Pow::pow(&base, exp)
            } else {
                base
            };
            coeff = BigRational::from_integer(value);
            seen_anything = true;
            if self.peek() == Some('/') {
                self.pos += 1;
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                coeff /= BigRational::from_integer(den);
            }
        }
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_alphabetic() => {
                    let var = self
                        .alphabet
                        .iter()
                        .position(|&a| a == c)
                        .ok_or_else(|| self.err(format!("unknown generator {c:?}")))?
                        + 1;
                    self.pos += 1;
                    let exp = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    for _ in 0..exp {
                        mono = mono.mul_var(var);
                    }
                    seen_anything = true;
                }
                _ => break,
            }
        }
        if !seen_anything {
            return Err(self.err(format!("empty term at position {}", self.pos)));
        }
        Ok((mono, coeff))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("bad number"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let v = self.integer()?;
        if braced {
            if self.peek() != Some('}') {
                return Err(self.err("unclosed brace in exponent"));
            }
            self.pos += 1;
        }
        u32::try_from(v).map_err(|_| self.err("exponent out of range"))
    }
}
