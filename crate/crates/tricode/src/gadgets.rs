//! Building-block configurations: disjoint triangle rows, triangulated
//! spheres, tunnel joins, and the matching gadgets (pyramid, closed tunnel,
//! matching edge, matching triangle, parity chain).
//!
//! The tunnel between two vertex-disjoint triangles is the six-triangle side
//! band of the octahedron spanned by their vertices: it adds no vertices,
//! gives each end-triangle edge exactly one band triangle and each
//! band-internal edge exactly two, so the two ends plus the band form a
//! cycle. Closing the band with both end faces yields the octahedron, whose
//! faces split into two classes with faces of one class pairwise
//! edge-disjoint; the classes are the octahedron's exactly two perfect
//! matchings. All matching gadgets are assembled from these pieces.
//!
//! Composite gadgets glue a closed tunnel onto a pyramid face by
//! identification and then delete the identified face; with the face kept,
//! the tunnel states decouple from the pyramid and the stated matching
//! counts fail. Chains additionally keep their linking triples faceless
//! (edges only), which is what pins one unique perfect matching per even
//! port subset. Both choices are fixed here once and verified by exhaustive
//! enumeration in the tests.

use crate::complex::{Triangle, TriangularConfiguration, Vertex, VertexAlloc};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("sphere size {0} must be an even number >= 4")]
    SphereSize(usize),
    #[error("triangles must be vertex-disjoint")]
    NotDisjoint,
    #[error("triangle {{{0} {1} {2}}} is not in the configuration")]
    TriangleNotPresent(Vertex, Vertex, Vertex),
    #[error("a chain needs at least one port")]
    EmptyChain,
}

/// A configuration with named port triangles and, when the gadget declares
/// them, its canonical perfect matchings.
#[derive(Clone, Debug)]
pub struct LabeledGadget {
    pub config: TriangularConfiguration,
    pub ports: BTreeMap<String, Triangle>,
    pub canonical_matchings: BTreeMap<String, BTreeSet<Triangle>>,
}

/// The six band triangles of a tunnel between vertex-disjoint triangles
/// `base` and `port`, split by which end's edges they cover.
#[derive(Clone, Debug)]
pub(crate) struct TunnelBands {
    /// Triangles with two `base` vertices; together they cover the three
    /// edges of `base` (and six mixed edges).
    pub base_side: [Triangle; 3],
    /// Triangles with two `port` vertices; together they cover the three
    /// edges of `port` (and six mixed edges).
    pub port_side: [Triangle; 3],
}

impl TunnelBands {
    pub fn all(&self) -> impl Iterator<Item = &Triangle> {
        self.base_side.iter().chain(self.port_side.iter())
    }
}

/// Builds the tunnel band between two vertex-disjoint triangles. Edge
/// `{a_i, a_j}` of `base` is paired with the complementary vertex `b_k` of
/// `port`, and symmetrically, which is deterministic in the sorted triples.
pub(crate) fn tunnel_band(base: &Triangle, port: &Triangle) -> TunnelBands {
    assert!(
        base.is_vertex_disjoint_from(port),
        "tunnel ends must be vertex-disjoint"
    );
    let [a1, a2, a3] = base.vertices();
    let [b1, b2, b3] = port.vertices();
    TunnelBands {
        base_side: [
            Triangle::of(a1, a2, b3),
            Triangle::of(a1, a3, b2),
            Triangle::of(a2, a3, b1),
        ],
        port_side: [
            Triangle::of(a1, b2, b3),
            Triangle::of(a2, b1, b3),
            Triangle::of(a3, b1, b2),
        ],
    }
}

/// The eight faces of the octahedron on two disjoint triples, labeled
/// `t1..t8` so that `{t1,t3,t5,t7}` and `{t2,t4,t6,t8}` are its two face
/// classes (each one a perfect matching) and `t1`, `t3`, `t5` are pairwise
/// edge-disjoint.
pub(crate) fn octahedron_faces(a: &Triangle, b: &Triangle) -> [Triangle; 8] {
    let [a1, a2, a3] = a.vertices();
    let [b1, b2, b3] = b.vertices();
    [
        Triangle::of(a1, a2, a3), // t1
        Triangle::of(a1, a2, b3), // t2
        Triangle::of(a1, b2, b3), // t3
        Triangle::of(a1, a3, b2), // t4
        Triangle::of(a2, b1, b3), // t5
        Triangle::of(a2, a3, b1), // t6
        Triangle::of(a3, b1, b2), // t7
        Triangle::of(b1, b2, b3), // t8
    ]
}

/// `n` pairwise disjoint triangles, ports `B1..Bn`.
pub fn disjoint_triangles(n: usize) -> LabeledGadget {
    let mut alloc = VertexAlloc::new();
    let mut triangles = Vec::with_capacity(n);
    let mut ports = BTreeMap::new();
    for i in 0..n {
        let t = alloc.fresh_triple();
        ports.insert(format!("B{}", i + 1), t);
        triangles.push(t);
    }
    LabeledGadget {
        config: TriangularConfiguration::from_unique_triangles(triangles),
        ports,
        canonical_matchings: BTreeMap::new(),
    }
}

/// A triangulated 2-sphere with `m` triangles (`m` even, `m >= 4`), ports
/// `S1..Sm`: the tetrahedron for `m = 4` and the bipyramid over an
/// `(m/2)`-gon otherwise.
pub fn sphere(m: usize) -> Result<LabeledGadget, GadgetError> {
    if m < 4 || m % 2 != 0 {
        return Err(GadgetError::SphereSize(m));
    }
    let triangles = if m == 4 {
        vec![
            Triangle::of(0, 1, 2),
            Triangle::of(0, 1, 3),
            Triangle::of(0, 2, 3),
            Triangle::of(1, 2, 3),
        ]
    } else {
        let k = (m / 2) as Vertex;
        let (top, bottom) = (k, k + 1);
        let mut faces = Vec::with_capacity(m);
        for i in 0..k {
            faces.push(Triangle::of(i, (i + 1) % k, top));
        }
        for i in 0..k {
            faces.push(Triangle::of(i, (i + 1) % k, bottom));
        }
        faces
    };
    let ports = triangles
        .iter()
        .enumerate()
        .map(|(i, &t)| (format!("S{}", i + 1), t))
        .collect();
    Ok(LabeledGadget {
        config: TriangularConfiguration::from_unique_triangles(triangles),
        ports,
        canonical_matchings: BTreeMap::new(),
    })
}

/// Joins two vertex-disjoint triangles of a configuration by a tunnel: adds
/// the six band triangles and no vertices. The subconfiguration
/// `t1 + band + t2` is a cycle of the result.
pub fn join(
    cfg: &TriangularConfiguration,
    t1: &Triangle,
    t2: &Triangle,
) -> Result<TriangularConfiguration, GadgetError> {
    for t in [t1, t2] {
        if !cfg.contains_triangle(t) {
            let [a, b, c] = t.vertices();
            return Err(GadgetError::TriangleNotPresent(a, b, c));
        }
    }
    if !t1.is_vertex_disjoint_from(t2) {
        return Err(GadgetError::NotDisjoint);
    }
    let band = tunnel_band(t1, t2);
    let band_cfg = TriangularConfiguration::from_unique_triangles(band.all().copied().collect());
    Ok(cfg.union(&band_cfg))
}

/// The closed tunnel: an octahedron with antipodal ending triangles `t1`,
/// `t2` and band triangles `s1..s6`. Its two perfect matchings are
/// `N_t1 = {t1, s4, s5, s6}` and `N_t2 = {t2, s1, s2, s3}`.
pub fn closed_tunnel() -> LabeledGadget {
    let mut alloc = VertexAlloc::new();
    let t1 = alloc.fresh_triple();
    let t2 = alloc.fresh_triple();
    let band = tunnel_band(&t1, &t2);

    let mut triangles = vec![t1, t2];
    triangles.extend(band.all().copied());
    let config = TriangularConfiguration::from_unique_triangles(triangles);

    let mut ports = BTreeMap::from([("t1".into(), t1), ("t2".into(), t2)]);
    for (i, s) in band.all().enumerate() {
        ports.insert(format!("s{}", i + 1), *s);
    }
    let n_t1: BTreeSet<Triangle> = std::iter::once(t1)
        .chain(band.port_side.iter().copied())
        .collect();
    let n_t2: BTreeSet<Triangle> = std::iter::once(t2)
        .chain(band.base_side.iter().copied())
        .collect();
    LabeledGadget {
        config,
        ports,
        canonical_matchings: BTreeMap::from([("N_t1".into(), n_t1), ("N_t2".into(), n_t2)]),
    }
}

/// The pyramid gadget: an octahedron with faces labeled `t1..t8` so that the
/// two face classes `{t1,t3,t5,t7}` and `{t2,t4,t6,t8}` are its exactly two
/// perfect matchings. Every face shares edges only with the other class.
pub fn pyramid() -> LabeledGadget {
    let mut alloc = VertexAlloc::new();
    let a = alloc.fresh_triple();
    let b = alloc.fresh_triple();
    let faces = octahedron_faces(&a, &b);
    let config = TriangularConfiguration::from_unique_triangles(faces.to_vec());
    let ports = faces
        .iter()
        .enumerate()
        .map(|(i, &t)| (format!("t{}", i + 1), t))
        .collect();
    let odd_class: BTreeSet<Triangle> = [faces[0], faces[2], faces[4], faces[6]].into();
    let even_class: BTreeSet<Triangle> = [faces[1], faces[3], faces[5], faces[7]].into();
    LabeledGadget {
        config,
        ports,
        canonical_matchings: BTreeMap::from([("N1".into(), odd_class), ("N0".into(), even_class)]),
    }
}

/// One matching-edge building block between two external triples `u` and
/// `v`: a pyramid with closed tunnels glued (and the identified faces
/// deleted) at `t1` and `t3`, whose free ends are `u` and `v`.
///
/// The block has exactly two internal states. `on_state` leaves the edges of
/// both `u` and `v` untouched (they must be covered from outside);
/// `off_state` covers the edges of both. Either state covers every other
/// block edge exactly once.
#[derive(Clone, Debug)]
pub(crate) struct EdgeBlock {
    pub triangles: Vec<Triangle>,
    pub on_state: Vec<Triangle>,
    pub off_state: Vec<Triangle>,
}

pub(crate) fn edge_block(alloc: &mut VertexAlloc, u: Triangle, v: Triangle) -> EdgeBlock {
    let a = alloc.fresh_triple();
    let b = alloc.fresh_triple();
    let faces = octahedron_faces(&a, &b);
    let (t1, t3) = (faces[0], faces[2]);
    let band_u = tunnel_band(&t1, &u);
    let band_v = tunnel_band(&t3, &v);

    // Pyramid faces without the two identified ones, then both bands.
    let mut triangles: Vec<Triangle> = faces
        .iter()
        .filter(|t| **t != t1 && **t != t3)
        .copied()
        .collect();
    triangles.extend(band_u.all().copied());
    triangles.extend(band_v.all().copied());

    let mut on_state = vec![faces[4], faces[6]]; // t5, t7
    on_state.extend(band_u.base_side);
    on_state.extend(band_v.base_side);
    let mut off_state = vec![faces[1], faces[3], faces[5], faces[7]]; // t2, t4, t6, t8
    off_state.extend(band_u.port_side);
    off_state.extend(band_v.port_side);

    EdgeBlock {
        triangles,
        on_state,
        off_state,
    }
}

/// One matching-triangle building block on three external triples: a pyramid
/// with closed tunnels glued (identified faces deleted) at `t1`, `t3`, `t5`.
///
/// `active_state` covers the edges of all three ports and contains the
/// weight-carrying face `t2`; `inactive_state` leaves all port edges
/// untouched. These are the block's only two internal states.
#[derive(Clone, Debug)]
pub(crate) struct TriangleBlock {
    pub triangles: Vec<Triangle>,
    pub active_state: Vec<Triangle>,
    pub inactive_state: Vec<Triangle>,
    pub weight_triangle: Triangle,
}

pub(crate) fn triangle_block(alloc: &mut VertexAlloc, ports: [Triangle; 3]) -> TriangleBlock {
    let a = alloc.fresh_triple();
    let b = alloc.fresh_triple();
    let faces = octahedron_faces(&a, &b);
    let sites = [faces[0], faces[2], faces[4]]; // t1, t3, t5: pairwise edge-disjoint
    let bands: Vec<TunnelBands> = sites
        .iter()
        .zip(ports.iter())
        .map(|(site, port)| tunnel_band(site, port))
        .collect();

    let mut triangles: Vec<Triangle> = faces
        .iter()
        .filter(|t| !sites.contains(t))
        .copied()
        .collect();
    for band in &bands {
        triangles.extend(band.all().copied());
    }

    let mut active_state = vec![faces[1], faces[3], faces[5], faces[7]]; // t2, t4, t6, t8
    let mut inactive_state = vec![faces[6]]; // t7
    for band in &bands {
        active_state.extend(band.port_side);
        inactive_state.extend(band.base_side);
    }

    TriangleBlock {
        triangles,
        active_state,
        inactive_state,
        weight_triangle: faces[1],
    }
}

/// The matching edge: pyramid plus two closed tunnels with free ports `p`,
/// `q`. Exactly two perfect matchings: `N1` contains both ports, `N0`
/// contains neither.
pub fn matching_edge() -> LabeledGadget {
    let mut alloc = VertexAlloc::new();
    let p = alloc.fresh_triple();
    let q = alloc.fresh_triple();
    let block = edge_block(&mut alloc, p, q);

    let mut triangles = block.triangles.clone();
    triangles.push(p);
    triangles.push(q);
    let config = TriangularConfiguration::from_unique_triangles(triangles);

    let n1: BTreeSet<Triangle> = block.on_state.iter().copied().chain([p, q]).collect();
    let n0: BTreeSet<Triangle> = block.off_state.iter().copied().collect();
    LabeledGadget {
        config,
        ports: BTreeMap::from([("p".into(), p), ("q".into(), q)]),
        canonical_matchings: BTreeMap::from([("N1".into(), n1), ("N0".into(), n0)]),
    }
}

/// The matching triangle: pyramid plus three closed tunnels with free ports
/// `p`, `q`, `r`. Exactly two perfect matchings: `N1` contains all three
/// ports, `N0` contains none.
pub fn matching_triangle() -> LabeledGadget {
    let mut alloc = VertexAlloc::new();
    let p = alloc.fresh_triple();
    let q = alloc.fresh_triple();
    let r = alloc.fresh_triple();
    let block = triangle_block(&mut alloc, [p, q, r]);

    let mut triangles = block.triangles.clone();
    triangles.extend([p, q, r]);
    let config = TriangularConfiguration::from_unique_triangles(triangles);

    let n1: BTreeSet<Triangle> = block
        .inactive_state
        .iter()
        .copied()
        .chain([p, q, r])
        .collect();
    let n0: BTreeSet<Triangle> = block.active_state.iter().copied().collect();
    LabeledGadget {
        config,
        ports: BTreeMap::from([("p".into(), p), ("q".into(), q), ("r".into(), r)]),
        canonical_matchings: BTreeMap::from([("N1".into(), n1), ("N0".into(), n0)]),
    }
}

/// The chain machinery over `n` external port triples: faceless linking
/// triples `q_0..q_{n-1}` and matching-edge blocks
/// `a_i = E(p_i, q_i)`, `b_i = E(p_{i+1}, q_i)`, `c_i = E(q_i, q_{i+1})`.
///
/// For every set `I` of ports whose edges are handled externally there is an
/// internal state (per-block on/off choice) covering every other chain edge
/// exactly once if and only if `|I|` is even, and it is unique.
#[derive(Clone, Debug)]
pub(crate) struct ChainBlock {
    pub ports: Vec<Triangle>,
    /// `a[i]` couples port `i` with link `i`.
    pub a: Vec<EdgeBlock>,
    /// `b[i]` couples port `i+1` with link `i`.
    pub b: Vec<EdgeBlock>,
    /// `c[i]` couples link `i` with link `i+1`.
    pub c: Vec<EdgeBlock>,
}

impl ChainBlock {
    pub fn triangles(&self) -> impl Iterator<Item = &Triangle> {
        self.a
            .iter()
            .chain(self.b.iter())
            .chain(self.c.iter())
            .flat_map(|blk| blk.triangles.iter())
    }

    /// The unique internal state for externally-handled port set `I`, as the
    /// set of matched triangles, or `None` when `|I|` is odd.
    ///
    /// Every step of the walk is forced: port `i` needs exactly one covering
    /// block unless `i` is in `I`, and each faceless link needs exactly one,
    /// which pins the on/off choice of `a_i`, `b_{i-1}`, `c_{i-1}` in turn.
    pub fn state_for(&self, external: &BTreeSet<usize>) -> Option<Vec<Triangle>> {
        let n = self.ports.len();
        let mut a_off = vec![false; n];
        let mut b_off = vec![false; n.saturating_sub(1)];
        let mut c_off = vec![false; n.saturating_sub(1)];

        a_off[0] = !external.contains(&0);
        let mut link_covered = a_off[0];
        for i in 1..n {
            let need = !link_covered;
            if external.contains(&i) {
                // a_i and b_{i-1} must stay on; c_{i-1} settles link i-1.
                c_off[i - 1] = need;
                link_covered = need;
            } else if need {
                b_off[i - 1] = true;
                link_covered = false;
            } else {
                a_off[i] = true;
                link_covered = true;
            }
        }
        if !link_covered {
            return None;
        }

        let mut matched = Vec::new();
        for (i, blk) in self.a.iter().enumerate() {
            matched.extend(if a_off[i] {
                &blk.off_state
            } else {
                &blk.on_state
            });
        }
        for (i, blk) in self.b.iter().enumerate() {
            matched.extend(if b_off[i] {
                &blk.off_state
            } else {
                &blk.on_state
            });
        }
        for (i, blk) in self.c.iter().enumerate() {
            matched.extend(if c_off[i] {
                &blk.off_state
            } else {
                &blk.on_state
            });
        }
        Some(matched)
    }
}

pub(crate) fn chain_block(
    alloc: &mut VertexAlloc,
    ports: &[Triangle],
) -> Result<ChainBlock, GadgetError> {
    if ports.is_empty() {
        return Err(GadgetError::EmptyChain);
    }
    for (i, p) in ports.iter().enumerate() {
        for q in &ports[i + 1..] {
            if !p.is_vertex_disjoint_from(q) {
                return Err(GadgetError::NotDisjoint);
            }
        }
    }
    let n = ports.len();
    let links: Vec<Triangle> = (0..n).map(|_| alloc.fresh_triple()).collect();
    let a = (0..n)
        .map(|i| edge_block(alloc, ports[i], links[i]))
        .collect();
    let b = (0..n - 1)
        .map(|i| edge_block(alloc, ports[i + 1], links[i]))
        .collect();
    let c = (0..n - 1)
        .map(|i| edge_block(alloc, links[i], links[i + 1]))
        .collect();
    Ok(ChainBlock {
        ports: ports.to_vec(),
        a,
        b,
        c,
    })
}

/// The parity chain over the given pairwise vertex-disjoint port triangles.
/// The ports are faces of the gadget; the linking triples are not. For every
/// `I` of even cardinality there is exactly one perfect matching whose
/// restriction to the ports is `{t_i : i in I}`, and no others exist, for
/// `2^{n-1}` perfect matchings in total.
pub fn chain(ports: &[Triangle]) -> Result<LabeledGadget, GadgetError> {
    let start = ports.iter().flat_map(|t| t.vertices()).max();
    let mut alloc = VertexAlloc::starting_after(start);
    let block = chain_block(&mut alloc, ports)?;

    let mut triangles: Vec<Triangle> = ports.to_vec();
    triangles.extend(block.triangles().copied());
    let config = TriangularConfiguration::from_unique_triangles(triangles);
    let port_names = ports
        .iter()
        .enumerate()
        .map(|(i, &t)| (format!("t{}", i + 1), t))
        .collect();
    Ok(LabeledGadget {
        config,
        ports: port_names,
        canonical_matchings: BTreeMap::new(),
    })
}
