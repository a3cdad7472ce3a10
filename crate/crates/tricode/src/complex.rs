//! Triangular configurations: pure 2-dimensional simplicial complexes whose
//! maximal simplices are triangles.
//!
//! A configuration is given by its triangle list; edges and vertices are the
//! downward closure, so every edge lies in at least one triangle. The
//! triangle list order is the incidence-matrix column order and every
//! construction inserts deterministically, which keeps kernel bases and
//! enumerators reproducible. Set operations (union, difference, symmetric
//! difference) act on triangle sets and re-derive the closure, which prunes
//! edges and vertices left dangling by a removal.
//!
//! Subconfigurations are handled through their incidence vectors: a `BitVec`
//! with one bit per triangle of the host, in list order. On a fixed host,
//! the incidence vector of a symmetric difference is the XOR of the
//! incidence vectors.

use crate::enumerator::WeightEnumerator;
use crate::gf2::{BitMatrix, BitVec};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// Guard on the cycle-space dimension for exhaustive enumeration.
pub const MAX_CYCLE_DIMENSION: usize = 20;

pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("triangle has repeated vertices: {0} {1} {2}")]
    DegenerateTriangle(Vertex, Vertex, Vertex),
    #[error("duplicate triangle {{{0} {1} {2}}}")]
    DuplicateTriangle(Vertex, Vertex, Vertex),
    #[error("triangle {{{0} {1} {2}}} is not in the configuration")]
    TriangleNotPresent(Vertex, Vertex, Vertex),
    #[error("cycle-space dimension {0} exceeds the enumeration guard {MAX_CYCLE_DIMENSION}")]
    CycleDimensionGuard(usize),
}

/// An unordered pair of distinct vertices, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge([Vertex; 2]);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "degenerate edge");
        Self(if a < b { [a, b] } else { [b, a] })
    }

    pub fn vertices(&self) -> [Vertex; 2] {
        self.0
    }
}

/// An unordered triple of distinct vertices, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Triangle([Vertex; 3]);

impl Triangle {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self, ComplexError> {
        if a == b || a == c || b == c {
            return Err(ComplexError::DegenerateTriangle(a, b, c));
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(Self(v))
    }

    /// Like `new` but panics on repeated vertices; for internal
    /// constructions where distinctness is structural.
    pub(crate) fn of(a: Vertex, b: Vertex, c: Vertex) -> Self {
        Self::new(a, b, c).expect("degenerate triangle in internal construction")
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)]
    }

    pub fn shares_edge_with(&self, other: &Triangle) -> bool {
        let mine = self.edges();
        other.edges().iter().any(|e| mine.contains(e))
    }

    pub fn is_vertex_disjoint_from(&self, other: &Triangle) -> bool {
        self.0.iter().all(|v| !other.0.contains(v))
    }
}

/// A pure 2-dimensional complex: triangles plus their downward closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularConfiguration {
    triangles: Vec<Triangle>,
    triangle_index: HashMap<Triangle, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    vertices: BTreeSet<Vertex>,
}

impl TriangularConfiguration {
    pub fn empty() -> Self {
        Self {
            triangles: Vec::new(),
            triangle_index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            vertices: BTreeSet::new(),
        }
    }

    /// Builds a configuration from vertex triples, computing the closure.
    /// Rejects degenerate triples and duplicate triangles.
    pub fn from_triangles(triples: &[[Vertex; 3]]) -> Result<Self, ComplexError> {
        let mut triangles = Vec::with_capacity(triples.len());
        let mut seen = HashMap::new();
        for &[a, b, c] in triples {
            let t = Triangle::new(a, b, c)?;
            if seen.insert(t, ()).is_some() {
                let [a, b, c] = t.vertices();
                return Err(ComplexError::DuplicateTriangle(a, b, c));
            }
            triangles.push(t);
        }
        Ok(Self::from_unique_triangles(triangles))
    }

    /// Internal constructor for an already-deduplicated triangle list; the
    /// list order becomes the incidence column order.
    pub(crate) fn from_unique_triangles(triangles: Vec<Triangle>) -> Self {
        let mut triangle_index = HashMap::with_capacity(triangles.len());
        let mut edge_set = BTreeSet::new();
        let mut vertices = BTreeSet::new();
        for (i, t) in triangles.iter().enumerate() {
            let previous = triangle_index.insert(*t, i);
            debug_assert!(previous.is_none(), "duplicate triangle in internal list");
            for e in t.edges() {
                edge_set.insert(e);
            }
            for v in t.vertices() {
                vertices.insert(v);
            }
        }
        let edges: Vec<Edge> = edge_set.into_iter().collect();
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Self {
            triangles,
            triangle_index,
            edges,
            edge_index,
            vertices,
        }
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Edges in lexicographic order; this is the incidence row order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn contains_triangle(&self, t: &Triangle) -> bool {
        self.triangle_index.contains_key(t)
    }

    pub fn triangle_position(&self, t: &Triangle) -> Option<usize> {
        self.triangle_index.get(t).copied()
    }

    pub fn edge_position(&self, e: &Edge) -> Option<usize> {
        self.edge_index.get(e).copied()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.vertices.iter().next_back().copied()
    }

    /// Triangles incident to the given edge, as positions in the list.
    pub fn triangles_on_edge(&self, e: &Edge) -> Vec<usize> {
        self.triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.edges().contains(e))
            .map(|(i, _)| i)
            .collect()
    }

    /// Set union on triangles; identification is by equal vertex ids.
    /// Keeps this configuration's triangle order, then the other's new ones.
    pub fn union(&self, other: &Self) -> Self {
        let mut triangles = self.triangles.clone();
        for t in &other.triangles {
            if !self.triangle_index.contains_key(t) {
                triangles.push(*t);
            }
        }
        Self::from_unique_triangles(triangles)
    }

    /// Triangles of `self` not in `other`; edges and vertices no longer
    /// contained in any remaining triangle are pruned by the closure.
    pub fn difference(&self, other: &Self) -> Self {
        let triangles = self
            .triangles
            .iter()
            .filter(|t| !other.triangle_index.contains_key(t))
            .copied()
            .collect();
        Self::from_unique_triangles(triangles)
    }

    /// Triangles in exactly one operand, with the same pruning as
    /// `difference`.
    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.union(other).difference(&self.intersection(other))
    }

    fn intersection(&self, other: &Self) -> Self {
        let triangles = self
            .triangles
            .iter()
            .filter(|t| other.triangle_index.contains_key(t))
            .copied()
            .collect();
        Self::from_unique_triangles(triangles)
    }

    /// The edge-triangle incidence matrix: rows are edges in lexicographic
    /// order, columns are triangles in list order; every column has exactly
    /// three ones.
    pub fn incidence_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.edges.len(), self.triangles.len());
        for (col, t) in self.triangles.iter().enumerate() {
            for e in t.edges() {
                m.set(self.edge_index[&e], col, true);
            }
        }
        m
    }

    /// A deterministic basis of the cycle space: the kernel of the incidence
    /// matrix over GF(2), one bit per triangle.
    pub fn cycle_space(&self) -> Vec<BitVec> {
        self.incidence_matrix().kernel_basis()
    }

    /// Whether every edge meets an even number of selected triangles.
    pub fn is_cycle(&self, selection: &BitVec) -> bool {
        assert_eq!(
            selection.len(),
            self.triangles.len(),
            "selection length differs from triangle count"
        );
        self.incidence_matrix().mul_vec(selection).is_zero()
    }

    /// All `2^dim` cycle vectors, ordered by kernel-basis coefficient
    /// pattern as a binary counter.
    pub fn enumerate_cycles(&self) -> Result<Vec<BitVec>, ComplexError> {
        let basis = self.cycle_space();
        if basis.len() > MAX_CYCLE_DIMENSION {
            return Err(ComplexError::CycleDimensionGuard(basis.len()));
        }
        let mut cycles = Vec::with_capacity(1 << basis.len());
        cycles.push(BitVec::zeros(self.triangles.len()));
        for k in 1usize..(1 << basis.len()) {
            let low = k.trailing_zeros() as usize;
            let mut v = cycles[k & (k - 1)].clone();
            v.xor_assign(&basis[low]);
            cycles.push(v);
        }
        Ok(cycles)
    }

    /// The weight enumerator of the cycle space. Walks the kernel in
    /// Gray-code order, one basis XOR per cycle, so nothing is
    /// materialized.
    pub fn cycle_weight_enumerator(&self) -> Result<WeightEnumerator, ComplexError> {
        let basis = self.cycle_space();
        if basis.len() > MAX_CYCLE_DIMENSION {
            return Err(ComplexError::CycleDimensionGuard(basis.len()));
        }
        let mut w = WeightEnumerator::new();
        w.add_term(0);
        let mut current = BitVec::zeros(self.triangles.len());
        for k in 1usize..(1 << basis.len()) {
            current.xor_assign(&basis[k.trailing_zeros() as usize]);
            w.add_term(current.weight());
        }
        Ok(w)
    }

    /// Replaces triangle `t = {a,b,c}` by `{a,b,v}, {b,c,v}, {a,c,v}` for a
    /// fresh vertex `v`, increasing the triangle count by exactly two. The
    /// replacement triangles are appended after the surviving list.
    pub fn subdivide(&self, t: &Triangle) -> Result<Self, ComplexError> {
        if !self.contains_triangle(t) {
            let [a, b, c] = t.vertices();
            return Err(ComplexError::TriangleNotPresent(a, b, c));
        }
        let v = self.max_vertex().map_or(0, |m| m + 1);
        let [a, b, c] = t.vertices();
        let mut triangles: Vec<Triangle> =
            self.triangles.iter().filter(|x| *x != t).copied().collect();
        triangles.push(Triangle::of(a, b, v));
        triangles.push(Triangle::of(b, c, v));
        triangles.push(Triangle::of(a, c, v));
        Ok(Self::from_unique_triangles(triangles))
    }

    /// The incidence vector of a triangle set, one bit per host triangle.
    /// Every given triangle must be present.
    pub fn incidence_vector<'a>(
        &self,
        triangles: impl IntoIterator<Item = &'a Triangle>,
    ) -> Result<BitVec, ComplexError> {
        let mut bits = BitVec::zeros(self.triangles.len());
        for t in triangles {
            let Some(&i) = self.triangle_index.get(t) else {
                let [a, b, c] = t.vertices();
                return Err(ComplexError::TriangleNotPresent(a, b, c));
            };
            bits.set(i, true);
        }
        Ok(bits)
    }

    /// The triangles selected by an incidence vector, in list order.
    pub fn selected_triangles(&self, selection: &BitVec) -> Vec<Triangle> {
        assert_eq!(selection.len(), self.triangles.len());
        selection.ones().map(|i| self.triangles[i]).collect()
    }

    /// Applies a vertex relabeling; the map must be injective on the vertex
    /// set. Triangle list order is preserved.
    pub fn relabeled(&self, map: &HashMap<Vertex, Vertex>) -> Self {
        let lookup = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        let triangles = self
            .triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices();
                Triangle::of(lookup(a), lookup(b), lookup(c))
            })
            .collect();
        Self::from_unique_triangles(triangles)
    }

    /// Shifts every vertex id by a constant offset.
    pub fn shifted(&self, offset: Vertex) -> Self {
        let triangles = self
            .triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices();
                Triangle::of(a + offset, b + offset, c + offset)
            })
            .collect();
        Self::from_unique_triangles(triangles)
    }
}

/// Allocates globally fresh vertex ids during a construction, so that
/// "disjoint" pieces are disjoint by construction and identification happens
/// only through explicit triples.
#[derive(Debug, Default)]
pub struct VertexAlloc {
    next: Vertex,
}

impl VertexAlloc {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts allocation above the given id.
    pub fn starting_after(v: Option<Vertex>) -> Self {
        Self {
            next: v.map_or(0, |v| v + 1),
        }
    }

    pub fn fresh(&mut self) -> Vertex {
        let v = self.next;
        self.next += 1;
        v
    }

    /// Reserves a contiguous id block and returns its first id.
    pub fn fresh_block(&mut self, count: Vertex) -> Vertex {
        let v = self.next;
        self.next += count;
        v
    }

    pub fn fresh_triple(&mut self) -> Triangle {
        Triangle::of(self.fresh(), self.fresh(), self.fresh())
    }
}
