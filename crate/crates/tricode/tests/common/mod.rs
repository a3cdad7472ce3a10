//! Shared test oracles, independent of the library's computation paths.

use rand::Rng;
use std::collections::BTreeSet;
use tricode::complex::TriangularConfiguration;
use tricode::gf2::{BitMatrix, BitVec};
use tricode::BinaryCode;

/// Brute-force cycle oracle: every triangle subset in which each edge meets
/// an even number of selected triangles. Usable up to 12 triangles.
pub fn cycle_subsets_oracle(cfg: &TriangularConfiguration) -> BTreeSet<String> {
    let n = cfg.triangle_count();
    assert!(n <= 12, "oracle is exponential in the triangle count");
    let edge_members: Vec<Vec<usize>> = cfg
        .edges()
        .iter()
        .map(|e| cfg.triangles_on_edge(e))
        .collect();
    let mut cycles = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let even = edge_members
            .iter()
            .all(|members| members.iter().filter(|&&i| mask >> i & 1 == 1).count() % 2 == 0);
        if even {
            let bits: String = (0..n)
                .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
                .collect();
            cycles.insert(bits);
        }
    }
    cycles
}

/// Naive all-subsets perfect-matching oracle: iterates every triangle
/// subset and keeps those that cover each edge exactly once. Usable up to
/// 20 triangles.
pub fn naive_perfect_matchings(cfg: &TriangularConfiguration) -> BTreeSet<BTreeSet<usize>> {
    let n = cfg.triangle_count();
    assert!(n <= 20, "oracle is exponential in the triangle count");
    let edge_count = cfg.edges().len();
    assert!(edge_count <= 64);
    let masks: Vec<u64> = cfg
        .triangles()
        .iter()
        .map(|t| {
            t.edges()
                .iter()
                .map(|e| 1u64 << cfg.edge_position(e).unwrap())
                .fold(0, |acc, bit| acc | bit)
        })
        .collect();
    let full = if edge_count == 64 {
        u64::MAX
    } else {
        (1u64 << edge_count) - 1
    };
    let mut out = BTreeSet::new();
    'subset: for subset in 0u32..(1 << n) {
        let mut covered = 0u64;
        for (i, mask) in masks.iter().enumerate() {
            if subset >> i & 1 == 1 {
                if covered & mask != 0 {
                    continue 'subset; // two chosen triangles share an edge
                }
                covered |= mask;
            }
        }
        if covered == full {
            out.insert((0..n).filter(|i| subset >> i & 1 == 1).collect());
        }
    }
    out
}

/// A random code with `d` independent rows of length `n`; when `force_even`
/// is set every row has even weight, so the code is even.
pub fn random_code(rng: &mut impl Rng, n: usize, d: usize, force_even: bool) -> BinaryCode {
    assert!(d <= n);
    let mut rows: Vec<BitVec> = Vec::with_capacity(d);
    while rows.len() < d {
        let mut bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        if force_even && bits.iter().filter(|&&b| b).count() % 2 == 1 {
            let flip = rng.gen_range(0..n);
            bits[flip] = !bits[flip];
        }
        let row = BitVec::from_bits(&bits);
        if row.is_zero() {
            continue;
        }
        let mut candidate = rows.clone();
        candidate.push(row);
        let rank = BitMatrix::from_rows(candidate.clone(), n).rank();
        if rank == candidate.len() {
            rows = candidate;
        }
    }
    BinaryCode::new(n, rows).expect("rows were kept independent")
}

/// The largest `d` for which an even code of length `n` can have `d`
/// independent even rows (the even-weight subcode has dimension n-1).
pub fn max_even_dimension(n: usize) -> usize {
    n.saturating_sub(1)
}
