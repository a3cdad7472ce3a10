//! Sparse weight-enumerator polynomials.
//!
//! A weight enumerator collects one term `x^w` per enumerated object of
//! weight `w`. Coefficients are arbitrary-precision: kernels of dimension `d`
//! have `2^d` elements and counts outgrow machine words quickly. The text
//! form is one `exponent coefficient` pair per line, ascending exponents.

use num_bigint::BigUint;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumeratorError {
    /// `halve_exponents` was applied to a polynomial that is not in `x^2`.
    #[error("exponent {0} is odd; the enumerator is not a polynomial in x^2")]
    OddExponent(usize),
}

/// A univariate polynomial with nonnegative integer coefficients, exponent =
/// weight. Zero coefficients are never stored; the sum of all coefficients
/// equals the number of enumerated objects.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightEnumerator {
    terms: BTreeMap<usize, BigUint>,
}

impl WeightEnumerator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an enumerator from a weight multiset.
    pub fn from_weights(weights: impl IntoIterator<Item = usize>) -> Self {
        let mut w = Self::new();
        for weight in weights {
            w.add_term(weight);
        }
        w
    }

    /// Records one object of the given weight.
    pub fn add_term(&mut self, weight: usize) {
        *self.terms.entry(weight).or_default() += 1u32;
    }

    /// Adds `count` objects of the given weight.
    pub fn add_terms(&mut self, weight: usize, count: &BigUint) {
        if count != &BigUint::default() {
            *self.terms.entry(weight).or_default() += count;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponent, coefficient)` pairs, ascending exponents.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exponent: usize) -> BigUint {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn max_exponent(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Total coefficient mass: the number of enumerated objects.
    pub fn total_count(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Replaces each term `(i, a)` by `(i mod e, a)`, summing collisions.
    /// Preserves total coefficient mass.
    pub fn fold_mod(&self, e: usize) -> Self {
        assert!(e >= 1, "fold modulus must be positive");
        let mut out = Self::new();
        for (&exp, coeff) in &self.terms {
            out.add_terms(exp % e, coeff);
        }
        out
    }

    /// Substitutes each `(2k, a)` by `(k, a)`, inverting an `x -> x^2`
    /// substitution. Fails if any exponent is odd.
    pub fn halve_exponents(&self) -> Result<Self, EnumeratorError> {
        let mut out = Self::new();
        for (&exp, coeff) in &self.terms {
            if exp % 2 != 0 {
                return Err(EnumeratorError::OddExponent(exp));
            }
            out.add_terms(exp / 2, coeff);
        }
        Ok(out)
    }

    /// Doubles every exponent (`x -> x^2`).
    pub fn double_exponents(&self) -> Self {
        let mut out = Self::new();
        for (&exp, coeff) in &self.terms {
            out.add_terms(exp * 2, coeff);
        }
        out
    }

    /// Termwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&exp, coeff) in &other.terms {
            out.add_terms(exp, coeff);
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift_exponents(&self, shift: usize) -> Self {
        let mut out = Self::new();
        for (&exp, coeff) in &self.terms {
            out.add_terms(exp + shift, coeff);
        }
        out
    }

    /// Restricts to terms whose exponent lies in `[lo, hi]` inclusive.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        let mut out = Self::new();
        for (&exp, coeff) in self.terms.range(lo..=hi) {
            out.add_terms(exp, coeff);
        }
        out
    }
}

/// Splits a weight multiset by degree: entry `k` of the result collects
/// `x^w` for each `(w, k)` item. The plain sum over all entries equals the
/// total enumerator.
pub fn split_by_degree(
    weights_with_degrees: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<WeightEnumerator> {
    let mut blocks: Vec<WeightEnumerator> = Vec::new();
    for (weight, degree) in weights_with_degrees {
        if blocks.len() <= degree {
            blocks.resize_with(degree + 1, WeightEnumerator::new);
        }
        blocks[degree].add_term(weight);
    }
    blocks
}
