//! Matchings of triangular configurations and the reduction that turns a
//! configuration Δ into a weighted perfect-matching instance Δ′ whose
//! perfect matchings correspond bijectively to the cycles of Δ.
//!
//! A matching is a set of triangles no two of which share an edge; it is
//! perfect when every edge of the host is covered. Enumeration is exact
//! cover by backtracking: repeatedly select an uncovered edge with the
//! fewest available covering triangles, branch on its cover in
//! triangle-index order, and prune when an uncovered edge has no available
//! cover. The gadget structure of reduced instances forces long
//! deterministic chains, so the search stays near-linear per matching.
//!
//! The reduction places one faceless port triple per incidence `(t, e)`
//! with `e` an edge of `t`, one matching-triangle block per triangle of Δ
//! wired to its three ports, and one chain block per edge of Δ wired to the
//! ports of its incident triangles. A triangle block covers its ports' edges
//! exactly when its source triangle lies in the cycle, and the chain then
//! completes uniquely exactly when every source edge meets an even number of
//! selected triangles. Weight 1 sits on one triangle of each block's active
//! state, so a matching's weight equals its cycle's size.

use crate::complex::{Edge, Triangle, TriangularConfiguration, Vertex, VertexAlloc};
use crate::enumerator::WeightEnumerator;
use crate::gadgets::{chain_block, triangle_block, ChainBlock, TriangleBlock};
use crate::gf2::BitVec;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Default guard on the triangle count of a perfect-matching search.
pub const MAX_SEARCH_TRIANGLES: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("triangle count {0} exceeds the search guard {1}")]
    SearchGuard(usize, usize),
    #[error("triangle index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("chosen triangles {0} and {1} share an edge")]
    NotAMatching(usize, usize),
    #[error("selection length {0} does not match the source triangle count {1}")]
    SelectionLength(usize, usize),
    #[error("not a cycle: edge {{{0} {1}}} meets an odd number of selected triangles")]
    NotACycle(Vertex, Vertex),
    #[error("matching leaves the gadget of source triangle {0} in no canonical state")]
    AmbiguousGadgetState(usize),
}

/// A set of pairwise edge-disjoint triangles of a host configuration,
/// stored as triangle positions.
#[derive(Clone, Debug)]
pub struct Matching<'a> {
    host: &'a TriangularConfiguration,
    chosen: BTreeSet<usize>,
}

impl<'a> Matching<'a> {
    /// Validates pairwise edge-disjointness.
    pub fn new(
        host: &'a TriangularConfiguration,
        chosen: BTreeSet<usize>,
    ) -> Result<Self, MatchError> {
        let mut covered: BTreeMap<Edge, usize> = BTreeMap::new();
        for &i in &chosen {
            let t = host
                .triangles()
                .get(i)
                .ok_or(MatchError::IndexOutOfRange(i))?;
            for e in t.edges() {
                if let Some(&other) = covered.get(&e) {
                    return Err(MatchError::NotAMatching(other, i));
                }
                covered.insert(e, i);
            }
        }
        Ok(Self { host, chosen })
    }

    pub fn host(&self) -> &TriangularConfiguration {
        self.host
    }

    pub fn chosen(&self) -> &BTreeSet<usize> {
        &self.chosen
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Triangle> {
        self.chosen.iter().map(|&i| &self.host.triangles()[i])
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        self.host
            .triangle_position(t)
            .is_some_and(|i| self.chosen.contains(&i))
    }

    /// The edges of the host covered by no chosen triangle.
    pub fn defect(&self) -> BTreeSet<Edge> {
        let mut covered = BTreeSet::new();
        for t in self.triangles() {
            covered.extend(t.edges());
        }
        self.host
            .edges()
            .iter()
            .filter(|e| !covered.contains(e))
            .copied()
            .collect()
    }

    /// A matching with empty defect.
    pub fn is_perfect(&self) -> bool {
        self.defect().is_empty()
    }

    /// Sum of the per-triangle weights over the chosen triangles.
    pub fn weight(&self, weights: &[u8]) -> usize {
        self.chosen.iter().map(|&i| weights[i] as usize).sum()
    }
}

/// Backtracking exact-cover search state over (edges, triangles).
struct Search {
    tri_edges: Vec<[usize; 3]>,
    edge_tris: Vec<Vec<usize>>,
    covered: Vec<bool>,
    /// Per triangle: number of its edges already covered; available iff 0.
    banned: Vec<u32>,
    /// Per uncovered edge: number of available triangles containing it.
    avail: Vec<u32>,
    uncovered: usize,
    chosen: Vec<usize>,
    results: Vec<BTreeSet<usize>>,
}

struct Undo {
    covered: Vec<usize>,
    bans: Vec<usize>,
}

impl Search {
    fn new(cfg: &TriangularConfiguration) -> Self {
        let tri_edges: Vec<[usize; 3]> = cfg
            .triangles()
            .iter()
            .map(|t| {
                t.edges()
                    .map(|e| cfg.edge_position(&e).expect("closed complex"))
            })
            .collect();
        let mut edge_tris = vec![Vec::new(); cfg.edges().len()];
        for (i, edges) in tri_edges.iter().enumerate() {
            for &e in edges {
                edge_tris[e].push(i);
            }
        }
        let avail = edge_tris.iter().map(|v| v.len() as u32).collect();
        Self {
            tri_edges,
            edge_tris,
            covered: vec![false; cfg.edges().len()],
            banned: vec![0; cfg.triangles().len()],
            avail,
            uncovered: cfg.edges().len(),
            chosen: Vec::new(),
            results: Vec::new(),
        }
    }

    fn choose(&mut self, t: usize) -> Undo {
        let mut undo = Undo {
            covered: Vec::with_capacity(3),
            bans: Vec::new(),
        };
        for &e in &self.tri_edges[t] {
            debug_assert!(!self.covered[e]);
            self.covered[e] = true;
            self.uncovered -= 1;
            undo.covered.push(e);
        }
        for ei in 0..3 {
            let e = self.tri_edges[t][ei];
            for ti in 0..self.edge_tris[e].len() {
                let u = self.edge_tris[e][ti];
                if self.banned[u] == 0 {
                    for &f in &self.tri_edges[u] {
                        if !self.covered[f] {
                            self.avail[f] -= 1;
                        }
                    }
                }
                self.banned[u] += 1;
                undo.bans.push(u);
            }
        }
        undo
    }

    fn unchoose(&mut self, undo: Undo) {
        for &u in undo.bans.iter().rev() {
            self.banned[u] -= 1;
            if self.banned[u] == 0 {
                for &f in &self.tri_edges[u] {
                    if !self.covered[f] {
                        self.avail[f] += 1;
                    }
                }
            }
        }
        for &e in undo.covered.iter().rev() {
            self.covered[e] = false;
            self.uncovered += 1;
        }
    }

    fn run(&mut self) {
        if self.uncovered == 0 {
            self.results.push(self.chosen.iter().copied().collect());
            return;
        }
        // Uncovered edge with the fewest available covers. An edge with one
        // cover is forced, so the scan can stop there; a dead edge prunes.
        let mut best = usize::MAX;
        let mut best_avail = u32::MAX;
        for e in 0..self.covered.len() {
            if !self.covered[e] && self.avail[e] < best_avail {
                best_avail = self.avail[e];
                best = e;
                if best_avail == 0 {
                    return; // dead branch
                }
                if best_avail == 1 {
                    break;
                }
            }
        }
        let candidates: Vec<usize> = self.edge_tris[best]
            .iter()
            .copied()
            .filter(|&t| self.banned[t] == 0)
            .collect();
        debug_assert_eq!(candidates.len() as u32, best_avail);
        for t in candidates {
            let undo = self.choose(t);
            self.chosen.push(t);
            self.run();
            self.chosen.pop();
            self.unchoose(undo);
        }
    }
}

/// All perfect matchings under the given triangle-count guard, each exactly
/// once, in canonical (chosen-set lexicographic) order.
pub fn enumerate_perfect_matchings_with_guard(
    cfg: &TriangularConfiguration,
    max_triangles: usize,
) -> Result<Vec<Matching<'_>>, MatchError> {
    if cfg.triangle_count() > max_triangles {
        return Err(MatchError::SearchGuard(cfg.triangle_count(), max_triangles));
    }
    let mut search = Search::new(cfg);
    search.run();
    let mut results = search.results;
    results.sort();
    Ok(results
        .into_iter()
        .map(|chosen| Matching { host: cfg, chosen })
        .collect())
}

/// `enumerate_perfect_matchings_with_guard` at the default guard.
pub fn enumerate_perfect_matchings(
    cfg: &TriangularConfiguration,
) -> Result<Vec<Matching<'_>>, MatchError> {
    enumerate_perfect_matchings_with_guard(cfg, MAX_SEARCH_TRIANGLES)
}

/// The weight enumerator of the perfect matchings of a weighted
/// configuration: one term `x^{sum of chosen weights}` per perfect matching.
pub fn perfect_matching_enumerator(
    cfg: &TriangularConfiguration,
    weights: &[u8],
    max_triangles: usize,
) -> Result<WeightEnumerator, MatchError> {
    assert_eq!(
        weights.len(),
        cfg.triangle_count(),
        "one weight per triangle"
    );
    let matchings = enumerate_perfect_matchings_with_guard(cfg, max_triangles)?;
    Ok(WeightEnumerator::from_weights(
        matchings.iter().map(|m| m.weight(weights)),
    ))
}

/// Registry entry for one source triangle: its faceless port triples (one
/// per edge of the source triangle, in edge order) and the gadget block with
/// its two canonical states.
#[derive(Clone, Debug)]
pub struct TriangleGadget {
    pub source: Triangle,
    pub ports: [Triangle; 3],
    pub(crate) block: TriangleBlock,
}

impl TriangleGadget {
    /// The state used when the source triangle lies in the cycle; carries
    /// the weight-1 triangle.
    pub fn active_state(&self) -> &[Triangle] {
        &self.block.active_state
    }

    /// The state used when the source triangle is outside the cycle.
    pub fn inactive_state(&self) -> &[Triangle] {
        &self.block.inactive_state
    }

    pub fn weight_triangle(&self) -> Triangle {
        self.block.weight_triangle
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.block.triangles
    }
}

/// Registry entry for one source edge: the incident source triangles
/// (ascending positions), their port triples in the same order, and the
/// chain block wired over those ports.
#[derive(Clone, Debug)]
pub struct EdgeGadget {
    pub source: Edge,
    pub incident: Vec<usize>,
    pub ports: Vec<Triangle>,
    pub(crate) chain: ChainBlock,
}

impl EdgeGadget {
    pub fn triangles(&self) -> impl Iterator<Item = &Triangle> {
        self.chain.triangles()
    }
}

/// The matching reduction Δ′ of a source configuration Δ: the assembled
/// configuration, per-triangle weights in `{0,1}`, and the gadget registry.
#[derive(Clone, Debug)]
pub struct MatchingInstance {
    source: TriangularConfiguration,
    config: TriangularConfiguration,
    weights: Vec<u8>,
    triangle_gadgets: Vec<TriangleGadget>,
    edge_gadgets: Vec<EdgeGadget>,
}

/// Builds the reduction of Δ. Port triples are faceless: their edges exist
/// only inside the adjacent gadget blocks, so a perfect matching must settle
/// every port from exactly one side.
pub fn reduce(source: &TriangularConfiguration) -> MatchingInstance {
    let mut alloc = VertexAlloc::new();

    // One port triple per (triangle, edge-of-triangle) incidence.
    let mut port_of: BTreeMap<(usize, Edge), Triangle> = BTreeMap::new();
    for (ti, t) in source.triangles().iter().enumerate() {
        for e in t.edges() {
            port_of.insert((ti, e), alloc.fresh_triple());
        }
    }

    let mut triangles = Vec::new();
    let mut triangle_gadgets = Vec::with_capacity(source.triangle_count());
    for (ti, t) in source.triangles().iter().enumerate() {
        let ports = t.edges().map(|e| port_of[&(ti, e)]);
        let block = triangle_block(&mut alloc, ports);
        triangles.extend(block.triangles.iter().copied());
        triangle_gadgets.push(TriangleGadget {
            source: *t,
            ports,
            block,
        });
    }

    let mut edge_gadgets = Vec::with_capacity(source.edges().len());
    for e in source.edges() {
        let incident = source.triangles_on_edge(e);
        let ports: Vec<Triangle> = incident.iter().map(|&ti| port_of[&(ti, *e)]).collect();
        let chain = chain_block(&mut alloc, &ports).expect("ports are fresh disjoint triples");
        triangles.extend(chain.triangles().copied());
        edge_gadgets.push(EdgeGadget {
            source: *e,
            incident,
            ports,
            chain,
        });
    }

    let config = TriangularConfiguration::from_unique_triangles(triangles);
    let mut weights = vec![0u8; config.triangle_count()];
    for gadget in &triangle_gadgets {
        let i = config
            .triangle_position(&gadget.block.weight_triangle)
            .expect("weight triangle present");
        weights[i] = 1;
    }

    MatchingInstance {
        source: source.clone(),
        config,
        weights,
        triangle_gadgets,
        edge_gadgets,
    }
}

impl MatchingInstance {
    pub fn source(&self) -> &TriangularConfiguration {
        &self.source
    }

    /// The assembled configuration Δ′.
    pub fn config(&self) -> &TriangularConfiguration {
        &self.config
    }

    /// Per-triangle weights, aligned with `config().triangles()`.
    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn triangle_gadgets(&self) -> &[TriangleGadget] {
        &self.triangle_gadgets
    }

    pub fn edge_gadgets(&self) -> &[EdgeGadget] {
        &self.edge_gadgets
    }

    pub fn perfect_matchings(&self) -> Result<Vec<Matching<'_>>, MatchError> {
        enumerate_perfect_matchings(&self.config)
    }

    /// The weight enumerator of the perfect matchings of Δ′.
    pub fn matching_weight_enumerator(&self) -> Result<WeightEnumerator, MatchError> {
        perfect_matching_enumerator(&self.config, &self.weights, MAX_SEARCH_TRIANGLES)
    }

    /// The unique perfect matching of Δ′ that corresponds to a cycle of the
    /// source, given by its incidence vector. Its weight equals the cycle
    /// size. Fails on a non-cycle selection, naming an odd edge.
    pub fn matching_for_cycle(&self, cycle: &BitVec) -> Result<Matching<'_>, MatchError> {
        if cycle.len() != self.source.triangle_count() {
            return Err(MatchError::SelectionLength(
                cycle.len(),
                self.source.triangle_count(),
            ));
        }
        let mut chosen = Vec::new();
        for (ti, gadget) in self.triangle_gadgets.iter().enumerate() {
            let state = if cycle.get(ti) {
                gadget.active_state()
            } else {
                gadget.inactive_state()
            };
            chosen.extend_from_slice(state);
        }
        for gadget in &self.edge_gadgets {
            let external: BTreeSet<usize> = gadget
                .incident
                .iter()
                .enumerate()
                .filter(|(_, &ti)| cycle.get(ti))
                .map(|(k, _)| k)
                .collect();
            let Some(state) = gadget.chain.state_for(&external) else {
                let [a, b] = gadget.source.vertices();
                return Err(MatchError::NotACycle(a, b));
            };
            chosen.extend(state);
        }
        let indices = chosen
            .iter()
            .map(|t| self.config.triangle_position(t).expect("gadget triangle"))
            .collect();
        let matching = Matching::new(&self.config, indices)?;
        debug_assert!(matching.is_perfect());
        Ok(matching)
    }

    /// Reads the cycle of the source off a perfect matching of Δ′ by
    /// inspecting each triangle gadget's state.
    pub fn cycle_for_matching(&self, matching: &Matching<'_>) -> Result<BitVec, MatchError> {
        let mut cycle = BitVec::zeros(self.source.triangle_count());
        for (ti, gadget) in self.triangle_gadgets.iter().enumerate() {
            let active = matching.contains(&gadget.block.weight_triangle);
            // inactive_state[0] is the surviving pyramid face of the
            // hands-off state.
            let inactive = matching.contains(&gadget.block.inactive_state[0]);
            match (active, inactive) {
                (true, false) => cycle.set(ti, true),
                (false, true) => {}
                _ => return Err(MatchError::AmbiguousGadgetState(ti)),
            }
        }
        Ok(cycle)
    }
}
