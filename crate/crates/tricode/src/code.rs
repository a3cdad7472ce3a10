//! Binary linear codes given by an explicit basis.
//!
//! The basis is stored exactly as given, not auto-reduced: the triangular
//! representation and the degree of a codeword are basis-dependent by design.
//! Exhaustive operations are guarded at dimension 20 so brute-force oracles
//! stay tractable and failures are explicit.

use crate::enumerator::WeightEnumerator;
use crate::gf2::{coordinates_in_span, BitMatrix, BitVec};
use std::collections::BTreeSet;
use thiserror::Error;

/// Exhaustive enumeration guard on the code dimension.
pub const MAX_ENUMERATION_DIMENSION: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("basis row {0} has length {1}, expected {2}")]
    RowLength(usize, usize, usize),
    #[error("basis rows are linearly dependent (rank {rank} < {rows} rows)")]
    DependentBasis { rank: usize, rows: usize },
    #[error("dimension {0} exceeds the enumeration guard {MAX_ENUMERATION_DIMENSION}")]
    DimensionGuard(usize),
    #[error("vector has length {0}, expected {1}")]
    LengthMismatch(usize, usize),
    #[error("vector is not a codeword of this code")]
    NotACodeword,
    #[error("coordinate index {0} out of range for length {1}")]
    CoordinateOutOfRange(usize, usize),
}

/// A subspace of GF(2)^n spanned by an ordered, linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    basis: Vec<BitVec>,
}

impl BinaryCode {
    /// Builds a code of the given length from independent basis rows.
    pub fn new(length: usize, basis: Vec<BitVec>) -> Result<Self, CodeError> {
        for (i, row) in basis.iter().enumerate() {
            if row.len() != length {
                return Err(CodeError::RowLength(i, row.len(), length));
            }
        }
        let matrix = BitMatrix::from_rows(basis.clone(), length);
        let rank = matrix.rank();
        if rank != basis.len() {
            return Err(CodeError::DependentBasis {
                rank,
                rows: basis.len(),
            });
        }
        Ok(Self { length, basis })
    }

    /// The zero code of the given length.
    pub fn zero(length: usize) -> Self {
        Self {
            length,
            basis: Vec::new(),
        }
    }

    /// Parses basis rows written as `0`/`1` strings.
    pub fn from_rows(rows: &[&str]) -> Result<Self, CodeError> {
        let length = rows.first().map_or(0, |r| r.len());
        let basis = rows
            .iter()
            .map(|r| BitVec::from_str01(r).ok_or(CodeError::RowLength(0, 0, length)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(length, basis)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    fn guard(&self) -> Result<(), CodeError> {
        if self.dimension() > MAX_ENUMERATION_DIMENSION {
            return Err(CodeError::DimensionGuard(self.dimension()));
        }
        Ok(())
    }

    /// All `2^d` codewords, ordered by coefficient pattern as a binary
    /// counter: word `k` is the XOR of the basis rows selected by the bits
    /// of `k` (bit `i` selects basis row `i`).
    pub fn enumerate_codewords(&self) -> Result<Vec<BitVec>, CodeError> {
        self.guard()?;
        let d = self.dimension();
        let mut words = Vec::with_capacity(1 << d);
        words.push(BitVec::zeros(self.length));
        for k in 1usize..(1 << d) {
            let low = k.trailing_zeros() as usize;
            let mut w = words[k & (k - 1)].clone();
            w.xor_assign(&self.basis[low]);
            words.push(w);
        }
        Ok(words)
    }

    /// The weight enumerator `sum over codewords of x^weight`. Walks the
    /// code in Gray-code order, one basis XOR per codeword, so nothing is
    /// materialized.
    pub fn weight_enumerator(&self) -> Result<WeightEnumerator, CodeError> {
        self.guard()?;
        let mut w = WeightEnumerator::new();
        w.add_term(0);
        let mut current = BitVec::zeros(self.length);
        for k in 1usize..(1 << self.dimension()) {
            current.xor_assign(&self.basis[k.trailing_zeros() as usize]);
            w.add_term(current.weight());
        }
        Ok(w)
    }

    /// Coefficients of `c` in the stored basis, or an error if `c` is not a
    /// codeword.
    pub fn coordinates(&self, c: &BitVec) -> Result<BitVec, CodeError> {
        if c.len() != self.length {
            return Err(CodeError::LengthMismatch(c.len(), self.length));
        }
        if self.basis.is_empty() {
            return if c.is_zero() {
                Ok(BitVec::zeros(0))
            } else {
                Err(CodeError::NotACodeword)
            };
        }
        coordinates_in_span(&self.basis, c).ok_or(CodeError::NotACodeword)
    }

    /// Number of basis vectors in the unique expansion of `c`.
    pub fn degree(&self, c: &BitVec) -> Result<usize, CodeError> {
        Ok(self.coordinates(c)?.weight())
    }

    /// Whether no other nonzero codeword's support is strictly contained in
    /// the support of `c`.
    ///
    /// The zero codeword is reported minimal vacuously; minimality is only
    /// meaningful among nonzero words.
    pub fn is_minimal(&self, c: &BitVec) -> Result<bool, CodeError> {
        self.coordinates(c)?;
        if c.is_zero() {
            return Ok(true);
        }
        for other in self.enumerate_codewords()? {
            if other.is_zero() || &other == c {
                continue;
            }
            if support_contains(c, &other) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deletes the coordinates in `coords` (0-based) from every codeword.
    /// Rank lost by the deletion is restored by row reduction, so the result
    /// again carries an independent basis.
    pub fn puncture(&self, coords: &BTreeSet<usize>) -> Result<BinaryCode, CodeError> {
        for &i in coords {
            if i >= self.length {
                return Err(CodeError::CoordinateOutOfRange(i, self.length));
            }
        }
        let new_length = self.length - coords.len();
        let punctured: Vec<BitVec> = self
            .basis
            .iter()
            .map(|row| {
                let bits: Vec<bool> = (0..self.length)
                    .filter(|i| !coords.contains(i))
                    .map(|i| row.get(i))
                    .collect();
                BitVec::from_bits(&bits)
            })
            .collect();
        let reduction = BitMatrix::from_rows(punctured, new_length).row_reduce();
        let basis = (0..reduction.rank)
            .map(|r| reduction.rref.row(r).clone())
            .collect();
        BinaryCode::new(new_length, basis)
    }

    /// The code `{(c|c) : c in C}` of length `2n`; every codeword weight
    /// doubles, so the result is always even.
    pub fn doubled(&self) -> BinaryCode {
        let basis = self
            .basis
            .iter()
            .map(|row| {
                let mut bits = Vec::with_capacity(self.length * 2);
                for i in 0..self.length {
                    bits.push(row.get(i));
                }
                for i in 0..self.length {
                    bits.push(row.get(i));
                }
                BitVec::from_bits(&bits)
            })
            .collect();
        BinaryCode {
            length: self.length * 2,
            basis,
        }
    }

    /// Whether all codewords have even weight; over GF(2) it suffices that
    /// every basis vector does.
    pub fn is_even(&self) -> bool {
        self.basis.iter().all(|b| b.weight() % 2 == 0)
    }
}

/// True when the support of `inner` is strictly contained in the support of
/// `outer`.
fn support_contains(outer: &BitVec, inner: &BitVec) -> bool {
    let mut strict = false;
    for i in 0..outer.len() {
        match (inner.get(i), outer.get(i)) {
            (true, false) => return false,
            (false, true) => strict = true,
            _ => {}
        }
    }
    strict
}
