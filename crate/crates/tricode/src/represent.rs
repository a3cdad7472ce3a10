//! From a binary code to a triangular configuration and back to the weight
//! enumerator.
//!
//! Each basis vector `b` becomes a block: a sphere with `m` triangles gets,
//! for every nonzero coordinate `j` of `b`, its `j`-th face joined by a
//! tunnel to the shared slot triangle `B_j`, after which that sphere face is
//! removed; unjoined slots are dropped. The whole block is a cycle with
//! `m + 6 w(b)` triangles. The representation of the code is the union of
//! the blocks, which share only the slot triangles.
//!
//! Balancing subdivides block triangles until every block satisfies
//! `|block| - w(b) = e` for a single even `e` greater than the code length.
//! The structure map sends a codeword to the incidence vector of the
//! symmetric difference of its expansion blocks; it is a weight-controlled
//! bijection onto the cycle space, and folding the cycle-space enumerator
//! modulo `e` returns the code enumerator. Codes with odd-weight words are
//! first doubled coordinate-wise, which squares the enumerator variable, and
//! the final exponent halving undoes it.

use crate::code::{BinaryCode, CodeError, MAX_ENUMERATION_DIMENSION};
use crate::complex::{ComplexError, Triangle, TriangularConfiguration, Vertex, VertexAlloc};
use crate::enumerator::{EnumeratorError, WeightEnumerator};
use crate::gadgets::{sphere, tunnel_band, GadgetError, LabeledGadget};
use crate::gf2::{coordinates_in_span, BitVec};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepresentError {
    #[error("the zero vector has no block")]
    ZeroBasisVector,
    #[error("sphere size {m} must be even and at least max({n}, 4)")]
    SphereConstraint { m: usize, n: usize },
    #[error("code has odd-weight codewords; double it first")]
    OddCode,
    #[error("block defects differ in parity; the code is not even")]
    ParityMismatch,
    #[error("exponent {e} must exceed the code length {n}")]
    ExponentTooSmall { e: usize, n: usize },
    #[error("kernel exponent {exp} exceeds the maximum d*e+n = {max}")]
    ExponentOutOfRange { exp: usize, max: usize },
    #[error("kernel exponent {0} falls outside every degree window")]
    ExponentOutsideWindows(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Enumerator(#[from] EnumeratorError),
}

/// The smallest even `m` with `m >= n` and `m >= 4`.
pub fn minimal_sphere_size(n: usize) -> usize {
    let m = n.max(4);
    if m % 2 == 0 {
        m
    } else {
        m + 1
    }
}

/// Per-block bookkeeping: the block's triangles and its subdivision
/// candidates. `primary` holds the sphere-remainder triangles (and their
/// subdivision descendants), `secondary` the sphere-side band triangles;
/// slot faces and the band triangles adjacent to a slot are never
/// subdivided, so slot labeling stays stable.
#[derive(Clone, Debug)]
struct Block {
    triangles: BTreeSet<Triangle>,
    primary: BTreeSet<Triangle>,
    secondary: BTreeSet<Triangle>,
}

/// Builds one block for basis vector `b`, joining sphere face `j` to slot
/// `B_j` for every nonzero coordinate `j`. Returns the block and its new
/// triangles in insertion order (sphere remainder, then bands by
/// coordinate).
fn build_block(
    alloc: &mut VertexAlloc,
    slots: &BTreeMap<usize, Triangle>,
    b: &BitVec,
    m: usize,
) -> Result<(Block, Vec<Triangle>), RepresentError> {
    if b.is_zero() {
        return Err(RepresentError::ZeroBasisVector);
    }
    let n = b.len();
    if m % 2 != 0 || m < n.max(4) {
        return Err(RepresentError::SphereConstraint { m, n });
    }

    let template = sphere(m)?;
    let vertex_count = template.config.vertices().len() as Vertex;
    let offset = alloc.fresh_block(vertex_count);
    let faces: Vec<Triangle> = (1..=m)
        .map(|k| {
            let [a, b_, c] = template.ports[&format!("S{k}")].vertices();
            Triangle::of(a + offset, b_ + offset, c + offset)
        })
        .collect();

    let support: Vec<usize> = b.ones().collect();
    let joined: BTreeSet<usize> = support.iter().copied().collect();

    let mut ordered = Vec::new();
    let mut block = Block {
        triangles: BTreeSet::new(),
        primary: BTreeSet::new(),
        secondary: BTreeSet::new(),
    };
    for (idx, face) in faces.iter().enumerate() {
        if !joined.contains(&idx) {
            ordered.push(*face);
            block.triangles.insert(*face);
            block.primary.insert(*face);
        }
    }
    for &j in &support {
        let band = tunnel_band(&faces[j], &slots[&j]);
        for t in band.all() {
            ordered.push(*t);
            block.triangles.insert(*t);
        }
        block.secondary.extend(band.base_side);
        block.triangles.insert(slots[&j]);
    }
    Ok((block, ordered))
}

/// The block representing a single nonzero vector, as a standalone gadget
/// with ports `B{j+1}` for every nonzero coordinate `j`. The whole
/// configuration is a cycle with `m + 6 w(b)` triangles.
pub fn represent_basis_vector(b: &BitVec, m: usize) -> Result<LabeledGadget, RepresentError> {
    let mut alloc = VertexAlloc::new();
    let slots: BTreeMap<usize, Triangle> = b.ones().map(|j| (j, alloc.fresh_triple())).collect();
    let (block, ordered) = build_block(&mut alloc, &slots, b, m)?;

    let mut triangles: Vec<Triangle> = slots.values().copied().collect();
    triangles.extend(ordered);
    debug_assert_eq!(triangles.len(), block.triangles.len());
    let config = TriangularConfiguration::from_unique_triangles(triangles);
    let ports = slots
        .iter()
        .map(|(&j, &t)| (format!("B{}", j + 1), t))
        .collect();
    Ok(LabeledGadget {
        config,
        ports,
        canonical_matchings: BTreeMap::new(),
    })
}

/// A code together with its triangular representation.
#[derive(Clone, Debug)]
pub struct Representation {
    code: BinaryCode,
    sphere_size: usize,
    exponent: Option<usize>,
    config: TriangularConfiguration,
    slots: BTreeMap<usize, Triangle>,
    blocks: Vec<Block>,
    next_vertex: Vertex,
}

/// Builds the representation of an even code with the minimal sphere size:
/// blocks share the slot triangles and nothing else. Codes with odd-weight
/// words are rejected; run them through `BinaryCode::doubled` first.
pub fn represent_code(code: &BinaryCode) -> Result<Representation, RepresentError> {
    if !code.is_even() {
        return Err(RepresentError::OddCode);
    }
    let n = code.length();
    let m = minimal_sphere_size(n);
    let mut alloc = VertexAlloc::new();

    let mut used = BTreeSet::new();
    for b in code.basis() {
        used.extend(b.ones());
    }
    let slots: BTreeMap<usize, Triangle> =
        used.iter().map(|&j| (j, alloc.fresh_triple())).collect();

    let mut assembly: Vec<Triangle> = slots.values().copied().collect();
    let mut blocks = Vec::with_capacity(code.dimension());
    for b in code.basis() {
        let (block, ordered) = build_block(&mut alloc, &slots, b, m)?;
        assembly.extend(ordered);
        blocks.push(block);
    }

    let config = TriangularConfiguration::from_unique_triangles(assembly);
    let next_vertex = config.max_vertex().map_or(0, |v| v + 1);
    Ok(Representation {
        code: code.clone(),
        sphere_size: m,
        exponent: None,
        config,
        slots,
        blocks,
        next_vertex,
    })
}

impl Representation {
    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn config(&self) -> &TriangularConfiguration {
        &self.config
    }

    pub fn sphere_size(&self) -> usize {
        self.sphere_size
    }

    /// The balanced defect `e`, once `balance` has run.
    pub fn exponent(&self) -> Option<usize> {
        self.exponent
    }

    /// Slot triangle for coordinate `j`, present iff some basis vector is
    /// nonzero at `j`.
    pub fn slots(&self) -> &BTreeMap<usize, Triangle> {
        &self.slots
    }

    /// The triangle set of block `i`.
    pub fn block_triangles(&self, i: usize) -> &BTreeSet<Triangle> {
        &self.blocks[i].triangles
    }

    /// The block defect `k_i = |block_i| - w(b_i)`.
    pub fn block_defect(&self, i: usize) -> usize {
        self.blocks[i].triangles.len() - self.code.basis()[i].weight()
    }

    /// Incidence vector of block `i` over this configuration.
    pub fn block_vector(&self, i: usize) -> BitVec {
        self.config
            .incidence_vector(self.blocks[i].triangles.iter())
            .expect("block triangles are in the configuration")
    }

    /// Subdivides block triangles until every block defect equals
    /// `e = max(n', k_1, ..., k_d)` with `n'` the smallest even number
    /// greater than the code length. Requires all defects to share one
    /// parity, which holds exactly for even codes.
    pub fn balance(&self) -> Result<Representation, RepresentError> {
        let defects: Vec<usize> = (0..self.blocks.len())
            .map(|i| self.block_defect(i))
            .collect();
        if defects.windows(2).any(|w| w[0] % 2 != w[1] % 2) {
            return Err(RepresentError::ParityMismatch);
        }
        let n = self.code.length();
        let n_prime = if n % 2 == 0 { n + 2 } else { n + 1 };
        let e = defects.iter().copied().max().unwrap_or(0).max(n_prime);
        if defects.iter().any(|k| k % 2 != e % 2) {
            return Err(RepresentError::ParityMismatch);
        }

        let mut assembly: Vec<Triangle> = self.config.triangles().to_vec();
        let mut blocks = self.blocks.clone();
        let mut next_vertex = self.next_vertex;
        for (i, block) in blocks.iter_mut().enumerate() {
            let mut defect = defects[i];
            while defect < e {
                let target = *block
                    .primary
                    .iter()
                    .next()
                    .or_else(|| block.secondary.iter().next())
                    .expect("a block always has subdividable triangles");
                let v = next_vertex;
                next_vertex += 1;
                let [a, b, c] = target.vertices();
                let pieces = [
                    Triangle::of(a, b, v),
                    Triangle::of(b, c, v),
                    Triangle::of(a, c, v),
                ];
                let pos = assembly
                    .iter()
                    .position(|t| *t == target)
                    .expect("subdivision target is in the assembly");
                assembly.remove(pos);
                assembly.extend(pieces);

                block.triangles.remove(&target);
                block.triangles.extend(pieces);
                let pool = if block.primary.remove(&target) {
                    &mut block.primary
                } else {
                    assert!(block.secondary.remove(&target));
                    &mut block.secondary
                };
                pool.extend(pieces);
                defect += 2;
            }
        }

        Ok(Representation {
            code: self.code.clone(),
            sphere_size: self.sphere_size,
            exponent: Some(e),
            config: TriangularConfiguration::from_unique_triangles(assembly),
            slots: self.slots.clone(),
            blocks,
            next_vertex,
        })
    }

    /// The structure map: the incidence vector of the symmetric difference
    /// of the expansion blocks of codeword `c`. On a fixed host this is the
    /// XOR of the block incidence vectors.
    pub fn map_codeword(&self, c: &BitVec) -> Result<BitVec, RepresentError> {
        let coords = self.code.coordinates(c)?;
        let mut image = BitVec::zeros(self.config.triangle_count());
        for i in coords.ones() {
            image.xor_assign(&self.block_vector(i));
        }
        Ok(image)
    }

    /// Degree of a cycle vector: the size of its expansion in the
    /// transported basis (the block images).
    pub fn kernel_degree(&self, v: &BitVec) -> Option<usize> {
        if self.code.dimension() == 0 {
            return v.is_zero().then_some(0);
        }
        let images: Vec<BitVec> = (0..self.code.dimension())
            .map(|i| self.block_vector(i))
            .collect();
        coordinates_in_span(&images, v).map(|c| c.weight())
    }

    /// The weight enumerator of the cycle space of the configuration.
    pub fn kernel_enumerator(&self) -> Result<WeightEnumerator, RepresentError> {
        Ok(self.config.cycle_weight_enumerator()?)
    }

    /// Exhaustive checks that the structure map is a bijection onto the
    /// cycle space that preserves minimality.
    pub fn verify_bijection(&self) -> Result<BijectionReport, RepresentError> {
        let words = self.code.enumerate_codewords()?;
        let mut images = BTreeSet::new();
        for c in &words {
            images.insert(self.map_codeword(c)?.to_str01());
        }
        let kernel = self.config.enumerate_cycles()?;
        let kernel_set: BTreeSet<String> = kernel.iter().map(BitVec::to_str01).collect();

        let injective = images.len() == words.len();
        let image_is_kernel = images == kernel_set;
        let dimension_matches = kernel.len() == words.len();

        let mut minimal_preserved = true;
        let mut failure = None;
        for c in &words {
            if c.is_zero() || !self.code.is_minimal(c)? {
                continue;
            }
            let image = self.map_codeword(c)?;
            let dominated = kernel.iter().any(|other| {
                !other.is_zero() && other != &image && support_strictly_inside(other, &image)
            });
            if dominated {
                minimal_preserved = false;
                failure = Some(format!(
                    "minimal codeword {} maps to a non-minimal cycle",
                    c.to_str01()
                ));
                break;
            }
        }
        if !image_is_kernel && failure.is_none() {
            failure = Some("image of the code differs from the cycle space".into());
        }
        if !injective && failure.is_none() {
            failure = Some("structure map is not injective".into());
        }
        Ok(BijectionReport {
            code_dimension: self.code.dimension(),
            kernel_dimension: self.config.cycle_space().len(),
            dimension_matches,
            injective,
            image_is_kernel,
            minimal_preserved,
            failure,
        })
    }
}

/// True when the support of `inner` is strictly inside the support of
/// `outer`.
fn support_strictly_inside(inner: &BitVec, outer: &BitVec) -> bool {
    let mut strict = false;
    for i in 0..inner.len() {
        match (inner.get(i), outer.get(i)) {
            (true, false) => return false,
            (false, true) => strict = true,
            _ => {}
        }
    }
    strict
}

/// Outcome of the exhaustive bijection checks.
#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub code_dimension: usize,
    pub kernel_dimension: usize,
    pub dimension_matches: bool,
    pub injective: bool,
    pub image_is_kernel: bool,
    pub minimal_preserved: bool,
    pub failure: Option<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.dimension_matches && self.injective && self.image_is_kernel && self.minimal_preserved
    }
}

/// The folded enumerator together with its per-degree blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredEnumerator {
    pub folded: WeightEnumerator,
    /// Block `k` restricts the kernel enumerator to exponents in
    /// `[k e, k e + n]`.
    pub degree_blocks: Vec<WeightEnumerator>,
}

/// Folds a balanced kernel enumerator modulo `e` and splits it into its
/// disjoint degree windows `[k e, k e + n]`, `k = 0..=d`. Requires `e > n`;
/// exponents above `d e + n` or between windows signal an unbalanced input.
pub fn recover_weight_enumerator(
    kernel: &WeightEnumerator,
    e: usize,
    n: usize,
    d: usize,
) -> Result<RecoveredEnumerator, RepresentError> {
    if e <= n {
        return Err(RepresentError::ExponentTooSmall { e, n });
    }
    let max = d * e + n;
    if let Some(exp) = kernel.max_exponent() {
        if exp > max {
            return Err(RepresentError::ExponentOutOfRange { exp, max });
        }
    }
    for (exp, _) in kernel.terms() {
        if exp % e > n {
            return Err(RepresentError::ExponentOutsideWindows(exp));
        }
    }
    let degree_blocks: Vec<WeightEnumerator> =
        (0..=d).map(|k| kernel.restrict(k * e, k * e + n)).collect();
    debug_assert_eq!(
        degree_blocks
            .iter()
            .map(WeightEnumerator::total_count)
            .sum::<num_bigint::BigUint>(),
        kernel.total_count(),
        "degree windows tile the kernel enumerator"
    );
    Ok(RecoveredEnumerator {
        folded: kernel.fold_mod(e),
        degree_blocks,
    })
}

/// Everything the end-to-end run produces.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    /// The balanced representation that was enumerated (of the doubled code
    /// when the input was not even).
    pub representation: Representation,
    /// Whether the input was doubled before representing.
    pub doubled: bool,
    /// The cycle-space enumerator of the representation.
    pub kernel_enumerator: WeightEnumerator,
    /// The recovered code enumerator; equals direct codeword enumeration.
    pub weight_enumerator: WeightEnumerator,
}

/// Runs represent, balance, cycle enumeration and folding. Even codes fold
/// straight back to their enumerator; other codes are doubled first (which
/// squares the enumerator variable) and the exponents are halved at the end.
pub fn pipeline(code: &BinaryCode) -> Result<PipelineOutput, RepresentError> {
    if code.dimension() > MAX_ENUMERATION_DIMENSION {
        return Err(RepresentError::Code(CodeError::DimensionGuard(
            code.dimension(),
        )));
    }
    let (run_code, doubled) = if code.is_even() {
        (code.clone(), false)
    } else {
        (code.doubled(), true)
    };
    let representation = represent_code(&run_code)?.balance()?;
    let e = representation.exponent().expect("balanced");
    let kernel_enumerator = representation.kernel_enumerator()?;
    let recovered = recover_weight_enumerator(
        &kernel_enumerator,
        e,
        run_code.length(),
        run_code.dimension(),
    )?;
    let weight_enumerator = if doubled {
        recovered.folded.halve_exponents()?
    } else {
        recovered.folded.clone()
    };
    Ok(PipelineOutput {
        representation,
        doubled,
        kernel_enumerator,
        weight_enumerator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn code(rows: &[&str]) -> BinaryCode {
        BinaryCode::from_rows(rows).unwrap()
    }

    fn bits(s: &str) -> BitVec {
        BitVec::from_str01(s).unwrap()
    }

    fn expect_enum(pairs: &[(usize, u32)]) -> WeightEnumerator {
        let mut w = WeightEnumerator::new();
        for &(e, c) in pairs {
            w.add_terms(e, &BigUint::from(c));
        }
        w
    }

    #[test]
    fn single_block_is_a_cycle() {
        // w = 1, n = 1, m = 4: 4 + 6 triangles, every edge of even degree.
        let g = represent_basis_vector(&bits("1"), 4).unwrap();
        assert_eq!(g.config.triangle_count(), 10);
        let all = g
            .config
            .incidence_vector(g.config.triangles().iter())
            .unwrap();
        assert!(g.config.is_cycle(&all));

        // w = 2, n = 3, m = 4: 4 + 12 triangles, slots 1 and 2 present.
        let g = represent_basis_vector(&bits("110"), 4).unwrap();
        assert_eq!(g.config.triangle_count(), 16);
        assert!(g.ports.contains_key("B1") && g.ports.contains_key("B2"));
        assert!(!g.ports.contains_key("B3"));
        let all = g
            .config
            .incidence_vector(g.config.triangles().iter())
            .unwrap();
        assert!(g.config.is_cycle(&all));
    }

    #[test]
    fn block_defect_parity_follows_weight() {
        // |block| - w = m + 5w: even exactly when w is even (m is even).
        for (pattern, m) in [("11", 4), ("1110", 4), ("110110", 6), ("1", 4)] {
            let b = bits(pattern);
            let g = represent_basis_vector(&b, m).unwrap();
            let defect = g.config.triangle_count() - b.weight();
            assert_eq!(defect, m + 5 * b.weight());
            assert_eq!(defect % 2, b.weight() % 2);
        }
    }

    #[test]
    fn sphere_constraint_enforced() {
        assert_eq!(
            represent_basis_vector(&bits("110000"), 4).unwrap_err(),
            RepresentError::SphereConstraint { m: 4, n: 6 }
        );
        assert_eq!(
            represent_basis_vector(&bits("11"), 5).unwrap_err(),
            RepresentError::SphereConstraint { m: 5, n: 2 }
        );
        assert_eq!(
            represent_basis_vector(&bits("00"), 4).unwrap_err(),
            RepresentError::ZeroBasisVector
        );
    }

    #[test]
    fn representation_of_worked_example() {
        let rep = represent_code(&code(&["110", "011"])).unwrap();
        assert_eq!(rep.sphere_size(), 4);
        assert_eq!(rep.block_triangles(0).len(), 16);
        assert_eq!(rep.block_triangles(1).len(), 16);
        // Blocks share exactly the slot of the common coordinate.
        let shared: BTreeSet<_> = rep
            .block_triangles(0)
            .intersection(rep.block_triangles(1))
            .collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(rep.config().triangle_count(), 31);
        assert_eq!(rep.config().cycle_space().len(), 2);

        // Every block is a cycle.
        for i in 0..2 {
            assert!(rep.config().is_cycle(&rep.block_vector(i)));
        }
    }

    #[test]
    fn zero_code_representation_is_empty() {
        let rep = represent_code(&BinaryCode::zero(4)).unwrap();
        assert_eq!(rep.config().triangle_count(), 0);
        assert_eq!(rep.config().cycle_space().len(), 0);
        let balanced = rep.balance().unwrap();
        assert_eq!(balanced.exponent(), Some(6));
    }

    #[test]
    fn single_vector_code_kernel() {
        let rep = represent_code(&code(&["11"])).unwrap();
        let cycles = rep.config().enumerate_cycles().unwrap();
        assert_eq!(cycles.len(), 2);
        let block = rep.block_vector(0);
        assert!(cycles.iter().any(|c| c == &block));
        assert!(cycles.iter().any(|c| c.is_zero()));
    }

    #[test]
    fn odd_code_rejected() {
        assert_eq!(
            represent_code(&code(&["111"])).unwrap_err(),
            RepresentError::OddCode
        );
    }

    #[test]
    fn balance_worked_examples() {
        // Already balanced: k1 = k2 = 4 + 5*2 = 14 >= n' = 4, so e = 14.
        let rep = represent_code(&code(&["110", "011"]))
            .unwrap()
            .balance()
            .unwrap();
        assert_eq!(rep.exponent(), Some(14));
        assert_eq!(rep.block_defect(0), 14);
        assert_eq!(rep.block_defect(1), 14);

        // k = (14, 14, 24): blocks 1 and 2 each get five subdivisions.
        let rep = represent_code(&code(&["1100", "0110", "1111"])).unwrap();
        assert_eq!(
            [
                rep.block_defect(0),
                rep.block_defect(1),
                rep.block_defect(2)
            ],
            [14, 14, 24]
        );
        let balanced = rep.balance().unwrap();
        assert_eq!(balanced.exponent(), Some(24));
        for i in 0..3 {
            assert_eq!(balanced.block_defect(i), 24);
        }
        assert_eq!(
            balanced.config().triangle_count(),
            rep.config().triangle_count() + 2 * (5 + 5)
        );
        // Subdivision preserves the cycle property of each block.
        for i in 0..3 {
            assert!(balanced.config().is_cycle(&balanced.block_vector(i)));
        }
    }

    #[test]
    fn structure_map_examples() {
        let rep = represent_code(&code(&["110", "011"]))
            .unwrap()
            .balance()
            .unwrap();
        let e = rep.exponent().unwrap();
        assert_eq!(e, 14);

        assert!(rep.map_codeword(&bits("000")).unwrap().is_zero());
        assert_eq!(rep.map_codeword(&bits("110")).unwrap(), rep.block_vector(0));
        let f = rep.map_codeword(&bits("101")).unwrap();
        assert_eq!(f.weight(), 2 + 2 * e);
        assert!(rep.config().is_cycle(&f));
        assert!(matches!(
            rep.map_codeword(&bits("100")),
            Err(RepresentError::Code(CodeError::NotACodeword))
        ));
    }

    #[test]
    fn slot_coordinates_read_back_the_codeword() {
        let c = code(&["110", "011"]);
        let rep = represent_code(&c).unwrap().balance().unwrap();
        for w in c.enumerate_codewords().unwrap() {
            let image = rep.map_codeword(&w).unwrap();
            for (&j, slot) in rep.slots() {
                let pos = rep.config().triangle_position(slot).unwrap();
                assert_eq!(
                    image.get(pos),
                    w.get(j),
                    "slot {j} of codeword {}",
                    w.to_str01()
                );
            }
        }
    }

    #[test]
    fn kernel_degrees_group_like_the_windows() {
        // Degree blocks computed by expanding each cycle in the transported
        // basis agree with the exponent-window blocks.
        let c = code(&["110", "011"]);
        let rep = represent_code(&c).unwrap().balance().unwrap();
        let e = rep.exponent().unwrap();
        let recovered =
            recover_weight_enumerator(&rep.kernel_enumerator().unwrap(), e, 3, 2).unwrap();
        let by_degree = crate::enumerator::split_by_degree(
            rep.config()
                .enumerate_cycles()
                .unwrap()
                .iter()
                .map(|v| (v.weight(), rep.kernel_degree(v).unwrap())),
        );
        assert_eq!(by_degree, recovered.degree_blocks);
    }

    #[test]
    fn weight_law_holds_exhaustively() {
        for rows in [
            vec!["110", "011"],
            vec!["1100", "0110", "1111"],
            vec!["110110"],
        ] {
            let c = code(&rows);
            let rep = represent_code(&c).unwrap().balance().unwrap();
            let e = rep.exponent().unwrap();
            for w in c.enumerate_codewords().unwrap() {
                let image = rep.map_codeword(&w).unwrap();
                assert_eq!(
                    image.weight(),
                    w.weight() + c.degree(&w).unwrap() * e,
                    "codeword {}",
                    w.to_str01()
                );
            }
        }
    }

    #[test]
    fn every_nonempty_cycle_contains_a_block_remainder() {
        let c = code(&["110", "011"]);
        let rep = represent_code(&c).unwrap().balance().unwrap();
        let slot_set: BTreeSet<Triangle> = rep.slots().values().copied().collect();
        let remainders: Vec<BTreeSet<Triangle>> = (0..c.dimension())
            .map(|i| {
                rep.block_triangles(i)
                    .difference(&slot_set)
                    .copied()
                    .collect()
            })
            .collect();
        for cycle in rep.config().enumerate_cycles().unwrap() {
            if cycle.is_zero() {
                continue;
            }
            let selected: BTreeSet<Triangle> = rep
                .config()
                .selected_triangles(&cycle)
                .into_iter()
                .collect();
            assert!(
                remainders.iter().any(|r| r.is_subset(&selected)),
                "cycle {} contains no block remainder",
                cycle.to_str01()
            );
        }
    }

    #[test]
    fn bijection_report_passes() {
        let rep = represent_code(&code(&["110", "011"]))
            .unwrap()
            .balance()
            .unwrap();
        let report = rep.verify_bijection().unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.kernel_dimension, 2);

        let zero = represent_code(&BinaryCode::zero(3))
            .unwrap()
            .balance()
            .unwrap();
        assert!(zero.verify_bijection().unwrap().passed());
    }

    #[test]
    fn kernel_enumerator_matches_image_enumerator() {
        let c = code(&["110", "011"]);
        let rep = represent_code(&c).unwrap().balance().unwrap();
        let via_kernel = rep.kernel_enumerator().unwrap();
        let via_images = WeightEnumerator::from_weights(
            c.enumerate_codewords()
                .unwrap()
                .iter()
                .map(|w| rep.map_codeword(w).unwrap().weight()),
        );
        assert_eq!(via_kernel, via_images);
        assert_eq!(via_kernel, expect_enum(&[(0, 1), (16, 2), (30, 1)]));
    }

    #[test]
    fn degree_blocks_of_worked_example() {
        let kernel = expect_enum(&[(0, 1), (16, 2), (30, 1)]);
        let recovered = recover_weight_enumerator(&kernel, 14, 3, 2).unwrap();
        assert_eq!(recovered.folded, expect_enum(&[(0, 1), (2, 3)]));
        assert_eq!(recovered.degree_blocks.len(), 3);
        assert_eq!(recovered.degree_blocks[0], expect_enum(&[(0, 1)]));
        assert_eq!(recovered.degree_blocks[1], expect_enum(&[(16, 2)]));
        assert_eq!(recovered.degree_blocks[2], expect_enum(&[(30, 1)]));

        assert_eq!(
            recover_weight_enumerator(&expect_enum(&[(0, 1)]), 9, 3, 0)
                .unwrap()
                .folded,
            expect_enum(&[(0, 1)])
        );
        assert_eq!(
            recover_weight_enumerator(&kernel, 3, 3, 2),
            Err(RepresentError::ExponentTooSmall { e: 3, n: 3 })
        );
        assert_eq!(
            recover_weight_enumerator(&kernel, 14, 3, 1),
            Err(RepresentError::ExponentOutOfRange { exp: 30, max: 17 })
        );
        // An exponent strictly between windows signals an unbalanced input.
        assert_eq!(
            recover_weight_enumerator(&expect_enum(&[(8, 1)]), 14, 3, 2),
            Err(RepresentError::ExponentOutsideWindows(8))
        );
    }

    #[test]
    fn extended_enumerator_identity() {
        // Per-degree kernel blocks equal the code's degree blocks shifted by
        // k*e, termwise.
        let c = code(&["110", "011"]);
        let rep = represent_code(&c).unwrap().balance().unwrap();
        let e = rep.exponent().unwrap();
        let kernel = rep.kernel_enumerator().unwrap();
        let recovered = recover_weight_enumerator(&kernel, e, c.length(), c.dimension()).unwrap();

        let words = c.enumerate_codewords().unwrap();
        let code_blocks = crate::enumerator::split_by_degree(
            words.iter().map(|w| (w.weight(), c.degree(w).unwrap())),
        );
        for (k, block) in code_blocks.iter().enumerate() {
            assert_eq!(
                recovered.degree_blocks[k],
                block.shift_exponents(k * e),
                "degree {k}"
            );
        }
    }

    #[test]
    fn pipeline_even_odd_zero() {
        let even = code(&["110", "011"]);
        let out = pipeline(&even).unwrap();
        assert!(!out.doubled);
        assert_eq!(out.weight_enumerator, even.weight_enumerator().unwrap());
        assert_eq!(out.weight_enumerator, expect_enum(&[(0, 1), (2, 3)]));

        let odd = code(&["1"]);
        let out = pipeline(&odd).unwrap();
        assert!(out.doubled);
        assert_eq!(out.weight_enumerator, expect_enum(&[(0, 1), (1, 1)]));

        let zero = BinaryCode::zero(2);
        let out = pipeline(&zero).unwrap();
        assert_eq!(out.weight_enumerator, expect_enum(&[(0, 1)]));
    }
}
