//! Exact linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words and matrices are stored row-major;
//! elimination works by whole-row XOR. Pivot selection is deterministic (the
//! lowest remaining row with a 1 in the leftmost unresolved column), so row
//! echelon forms, ranks and kernel bases are reproducible across runs.

use std::fmt;

/// A fixed-length vector over GF(2), bit-packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// The zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Builds a vector from explicit bits.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_str01(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    /// XOR-assigns `other` into `self`; lengths must agree.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Number of set bits (the Hamming weight).
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let i = wi * 64 + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    /// Dot product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Renders as a `0`/`1` string.
    pub fn to_str01(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_str01())
    }
}

/// A dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Result of Gauss-Jordan elimination: the reduced row-echelon form, the rank
/// and the strictly increasing pivot column list.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rref: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length differs from column count");
        }
        Self { rows, cols }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    /// Matrix-vector product `M * v` over GF(2); `v` has one bit per column.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length differs from column count"
        );
        let mut out = BitVec::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Gauss-Jordan elimination into reduced row-echelon form.
    ///
    /// For each column, left to right, the pivot is the lowest unresolved row
    /// with a 1 in that column; the pivot row is swapped up and XORed into
    /// every other row with a 1 there.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            let Some(pivot_row) = (next_row..m.rows.len()).find(|&r| m.rows[r].get(col)) else {
                continue;
            };
            m.rows.swap(next_row, pivot_row);
            let pivot = m.rows[next_row].clone();
            for (r, row) in m.rows.iter_mut().enumerate() {
                if r != next_row && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        RowReduction {
            rank: pivots.len(),
            rref: m,
            pivots,
        }
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// A basis of the null space `{v : M v = 0}`.
    ///
    /// One basis vector per free column, in ascending free-column order: the
    /// vector has a 1 at its free column and, for every pivot `(row, col)`,
    /// the rref entry at `(row, free)` in position `col`. Deterministic.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let reduction = self.row_reduce();
        let pivot_set: Vec<usize> = reduction.pivots.clone();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_set {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivot_set.len());
        for (free, _) in is_pivot.iter().enumerate().filter(|(_, &p)| !p) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &col) in pivot_set.iter().enumerate() {
                if reduction.rref.get(row, free) {
                    v.set(col, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {}", row.to_str01())?;
        }
        Ok(())
    }
}

/// Expresses `v` in a linearly independent `basis`, if possible.
///
/// Returns the unique coefficient vector (one bit per basis element) whose
/// XOR-combination equals `v`, or `None` when `v` lies outside the span.
/// All vectors must share one length; the basis must be independent.
pub fn coordinates_in_span(basis: &[BitVec], v: &BitVec) -> Option<BitVec> {
    for b in basis {
        assert_eq!(b.len(), v.len(), "basis/vector length mismatch");
    }
    // Reduce the basis once, tagging each reduced row with the set of
    // original rows that were combined into it.
    let mut reduced: Vec<(BitVec, BitVec)> = Vec::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        let mut row = b.clone();
        let mut tag = BitVec::zeros(basis.len());
        tag.set(i, true);
        loop {
            let Some(lead) = row.first_one() else {
                panic!("coordinates_in_span requires a linearly independent basis");
            };
            match reduced.iter().find(|(r, _)| r.first_one() == Some(lead)) {
                Some((r, t)) => {
                    let (r, t) = (r.clone(), t.clone());
                    row.xor_assign(&r);
                    tag.xor_assign(&t);
                }
                None => {
                    reduced.push((row, tag));
                    break;
                }
            }
        }
    }
    // Reduce v against the triangular system.
    let mut rest = v.clone();
    let mut coeffs = BitVec::zeros(basis.len());
    while let Some(lead) = rest.first_one() {
        let (r, t) = reduced.iter().find(|(r, _)| r.first_one() == Some(lead))?;
        let (r, t) = (r.clone(), t.clone());
        rest.xor_assign(&r);
        coeffs.xor_assign(&t);
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vec_from(bits: &str) -> BitVec {
        BitVec::from_str01(bits).unwrap()
    }

    fn matrix_from(rows: &[&str]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(rows.iter().map(|r| vec_from(r)).collect(), cols)
    }

    /// Independent rank oracle: counts the distinct vectors in the row span
    /// by enumerating all XOR combinations of the rows.
    fn row_span_rank(m: &BitMatrix) -> usize {
        let n = m.row_count();
        assert!(n <= 16);
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << n) {
            let mut v = BitVec::zeros(m.col_count());
            for r in 0..n {
                if mask >> r & 1 == 1 {
                    v.xor_assign(m.row(r));
                }
            }
            seen.insert(v.to_str01());
        }
        // |span| = 2^rank
        let mut rank = 0;
        while 1usize << rank < seen.len() {
            rank += 1;
        }
        assert_eq!(1usize << rank, seen.len());
        rank
    }

    #[test]
    fn rref_identity() {
        let m = BitMatrix::identity(2);
        let red = m.row_reduce();
        assert_eq!(red.rank, 2);
        assert_eq!(red.pivots, vec![0, 1]);
        assert_eq!(red.rref, m);
    }

    #[test]
    fn rref_single_row() {
        let m = matrix_from(&["11"]);
        let red = m.row_reduce();
        assert_eq!(red.rank, 1);
        assert_eq!(red.pivots, vec![0]);
    }

    #[test]
    fn rank_matches_row_span_oracle() {
        // Frozen 4x6 instance plus a seeded sweep.
        let m = matrix_from(&["101100", "011010", "110110", "000111"]);
        assert_eq!(m.rank(), row_span_rank(&m));

        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..40 {
            let mut rows = Vec::new();
            for _ in 0..4 {
                let mut bits = String::new();
                for _ in 0..6 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    bits.push(if state >> 33 & 1 == 1 { '1' } else { '0' });
                }
                rows.push(bits);
            }
            let m = matrix_from(&rows.iter().map(|s| s.as_str()).collect::<Vec<_>>());
            assert_eq!(m.rank(), row_span_rank(&m));
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let m = matrix_from(&["101100", "011010", "110110", "000111"]);
        let once = m.row_reduce();
        let twice = once.rref.row_reduce();
        assert_eq!(once.rref, twice.rref);
        assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_ones_row() {
        let m = matrix_from(&["11"]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_str01(), "11");
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = matrix_from(&["101100", "011010", "110110", "000111"]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), m.col_count() - m.rank());
        for v in &k {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn coordinates_simple() {
        let basis = vec![vec_from("110"), vec_from("011")];
        let c = coordinates_in_span(&basis, &vec_from("101")).unwrap();
        assert_eq!(c.to_str01(), "11");
        let z = coordinates_in_span(&basis, &vec_from("000")).unwrap();
        assert!(z.is_zero());
        assert!(coordinates_in_span(&basis, &vec_from("100")).is_none());
    }

    proptest! {
        /// Any XOR-combination of an independent basis is recovered exactly.
        #[test]
        fn coordinates_recover_subset(mask in 0u8..16) {
            let basis = vec![
                vec_from("110000"),
                vec_from("011000"),
                vec_from("000110"),
                vec_from("000011"),
            ];
            let mut v = BitVec::zeros(6);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(b);
                }
            }
            let coeffs = coordinates_in_span(&basis, &v).unwrap();
            for i in 0..4 {
                prop_assert_eq!(coeffs.get(i), mask >> i & 1 == 1);
            }
        }

        /// cols = rank + kernel dimension, and M v = 0 for kernel vectors.
        #[test]
        fn rank_nullity(bits in proptest::collection::vec(any::<bool>(), 30)) {
            let rows: Vec<BitVec> = bits.chunks(6).map(BitVec::from_bits).collect();
            let m = BitMatrix::from_rows(rows, 6);
            let k = m.kernel_basis();
            prop_assert_eq!(m.col_count(), m.rank() + k.len());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }
    }
}
