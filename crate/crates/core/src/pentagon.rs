//! Pentagons through edges of girth-5 graphs.
//!
//! In a graph without 3- and 4-cycles, a 5-cycle through the edge `xy` is
//! fixed by the 3-path `x_i x y y_j` it uses, so an edge whose endpoints have
//! degree 3 has four *slots*, one per pair `(x_i, y_j)`. Two 5-cycles are
//! *opposite* at `xy` when they occupy complementary slots `(i, j)` and
//! `(3-i, 3-j)`. An edge is *irregular* when exactly three slots are filled.
//!
//! The gluing procedure in [`pentagon_embedding`] starts from one pentagon and
//! keeps attaching the opposite pentagon across each boundary edge until the
//! surface closes or an opposite slot turns out to be empty.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Girth, Graph, GraphError, Vertex};
use crate::transport::{lly_curvature, TransportError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PentagonError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("vertex {0} has degree {1} > 3")]
    DegreeTooLarge(Vertex, usize),
    #[error("girth {0} is below 5")]
    GirthTooSmall(Girth),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Transport(#[from] TransportError),
}

/// A 5-cycle stored as its lexicographically smallest rotation or reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiveCycle([Vertex; 5]);

impl FiveCycle {
    /// Canonicalizes a cyclic vertex sequence. The caller guarantees the
    /// vertices are distinct and consecutive ones adjacent.
    pub fn new(seq: [Vertex; 5]) -> Self {
        let mut best = seq;
        for start in 0..5 {
            for dir in [1usize, 4] {
                let cand: [Vertex; 5] = std::array::from_fn(|k| seq[(start + dir * k) % 5]);
                if cand < best {
                    best = cand;
                }
            }
        }
        FiveCycle(best)
    }

    pub fn vertices(&self) -> &[Vertex; 5] {
        &self.0
    }

    /// The five edges as `(min, max)` pairs.
    pub fn edges(&self) -> [(Vertex, Vertex); 5] {
        std::array::from_fn(|k| {
            let (a, b) = (self.0[k], self.0[(k + 1) % 5]);
            (a.min(b), a.max(b))
        })
    }

    pub fn contains_edge(&self, x: Vertex, y: Vertex) -> bool {
        self.edges().contains(&(x.min(y), x.max(y)))
    }

    /// Neighbor of `v` along the cycle other than `not`.
    fn other_neighbor(&self, v: Vertex, not: Vertex) -> Option<Vertex> {
        let k = self.0.iter().position(|&u| u == v)?;
        let prev = self.0[(k + 4) % 5];
        let next = self.0[(k + 1) % 5];
        if prev == not {
            Some(next)
        } else if next == not {
            Some(prev)
        } else {
            None
        }
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let distinct: BTreeSet<_> = self.0.iter().collect();
        distinct.len() == 5 && self.edges().iter().all(|&(a, b)| g.has_edge(a, b))
    }
}

fn require_edge(g: &Graph, x: Vertex, y: Vertex) -> Result<(), PentagonError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if g.has_edge(x, y) {
        Ok(())
    } else {
        Err(PentagonError::NotAnEdge(x, y))
    }
}

/// All simple 5-cycles through the edge `xy`, sorted and deduplicated.
pub fn five_cycles_through(g: &Graph, x: Vertex, y: Vertex) -> Result<Vec<FiveCycle>, PentagonError> {
    require_edge(g, x, y)?;
    let mut out = BTreeSet::new();
    for &p in g.neighbors(y).iter().filter(|&&p| p != x) {
        for &r in g.neighbors(x).iter().filter(|&&r| r != y && r != p) {
            for &q in g.neighbors(p) {
                if q != x && q != y && q != r && g.has_edge(q, r) {
                    out.insert(FiveCycle::new([x, y, p, q, r]));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Every distinct 5-cycle of `g`, sorted.
pub fn all_five_cycles(g: &Graph) -> Vec<FiveCycle> {
    let mut all = BTreeSet::new();
    for (x, y) in g.edges() {
        all.extend(five_cycles_through(g, x, y).expect("edge from edge list"));
    }
    all.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeProfile {
    pub edge: (Vertex, Vertex),
    /// `x_1 < x_2`: neighbors of `x` other than `y`.
    pub x_neighbors: Vec<Vertex>,
    /// `y_1 < y_2`: neighbors of `y` other than `x`.
    pub y_neighbors: Vec<Vertex>,
    /// `slots[i][j]` is the 5-cycle through `x_{i+1} x y y_{j+1}`, if any.
    pub slots: [[Option<FiveCycle>; 2]; 2],
    pub cycles: Vec<FiveCycle>,
    pub c5_count: usize,
    pub irregular: bool,
    pub has_opposite_pair: bool,
}

impl EdgeProfile {
    /// Slot indices `(i, j)` (0-based) that `cycle` occupies at this edge.
    pub fn slot_of(&self, cycle: &FiveCycle) -> Option<(usize, usize)> {
        let (x, y) = self.edge;
        let a = cycle.other_neighbor(x, y)?;
        let b = cycle.other_neighbor(y, x)?;
        let i = self.x_neighbors.iter().position(|&v| v == a)?;
        let j = self.y_neighbors.iter().position(|&v| v == b)?;
        Some((i, j))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "edge": [self.edge.0, self.edge.1],
            "c5_count": self.c5_count,
            "irregular": self.irregular,
            "opposite_pair": self.has_opposite_pair,
            "cycles": self.cycles.iter().map(|c| c.vertices().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Slot structure of the edge `xy`. Neighbors are labeled by ascending id.
pub fn edge_profile(g: &Graph, x: Vertex, y: Vertex) -> Result<EdgeProfile, PentagonError> {
    require_edge(g, x, y)?;
    for v in [x, y] {
        if g.degree(v) > 3 {
            return Err(PentagonError::DegreeTooLarge(v, g.degree(v)));
        }
    }
    let x_neighbors: Vec<_> = g.neighbors(x).iter().copied().filter(|&v| v != y).collect();
    let y_neighbors: Vec<_> = g.neighbors(y).iter().copied().filter(|&v| v != x).collect();
    let cycles = five_cycles_through(g, x, y)?;
    let mut profile = EdgeProfile {
        edge: (x, y),
        x_neighbors,
        y_neighbors,
        slots: [[None; 2]; 2],
        cycles,
        c5_count: 0,
        irregular: false,
        has_opposite_pair: false,
    };
    for c in &profile.cycles {
        let (i, j) = profile.slot_of(c).expect("cycle passes through xy");
        // With short cycles present two pentagons can share a slot; keep the first.
        profile.slots[i][j].get_or_insert(*c);
    }
    let s = &profile.slots;
    profile.c5_count = s.iter().flatten().filter(|c| c.is_some()).count();
    profile.irregular = profile.c5_count == 3;
    profile.has_opposite_pair =
        (s[0][0].is_some() && s[1][1].is_some()) || (s[0][1].is_some() && s[1][0].is_some());
    Ok(profile)
}

/// First edge with both endpoints of degree 3 that has no opposite pair of
/// pentagons. Such an edge cannot have zero curvature in a girth-5 graph.
pub fn missing_opposite_pair(g: &Graph) -> Option<(Vertex, Vertex)> {
    g.edges()
        .filter(|&(x, y)| g.degree(x) == 3 && g.degree(y) == 3)
        .find(|&(x, y)| !edge_profile(g, x, y).is_ok_and(|p| p.has_opposite_pair))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Report {
    /// Edges with two degree-3 endpoints and zero curvature.
    pub checked: Vec<(Vertex, Vertex)>,
    /// Checked edges lacking an opposite pair of pentagons.
    pub violations: Vec<(Vertex, Vertex)>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every flat edge between two degree-3 vertices lies on two
/// opposite pentagons.
pub fn verify_lemma1(g: &Graph) -> Result<Lemma1Report, PentagonError> {
    let girth = g.girth();
    if !girth.at_least(5) {
        return Err(PentagonError::GirthTooSmall(girth));
    }
    let mut report = Lemma1Report { checked: Vec::new(), violations: Vec::new() };
    for (x, y) in g.edges() {
        if g.degree(x) != 3 || g.degree(y) != 3 {
            continue;
        }
        if !lly_curvature(g, x, y)?.is_zero() {
            continue;
        }
        report.checked.push((x, y));
        if !edge_profile(g, x, y)?.has_opposite_pair {
            report.violations.push((x, y));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    NoStartingC5,
    MissingOpposite,
    EdgeOversaturated,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::NoStartingC5 => "NO_STARTING_C5",
            FailureReason::MissingOpposite => "MISSING_OPPOSITE",
            FailureReason::EdgeOversaturated => "EDGE_OVERSATURATED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingResult {
    Closed {
        faces: Vec<FiveCycle>,
        euler_characteristic: i64,
    },
    Failed {
        /// `None` only when there is no pentagon at all.
        witness: Option<(Vertex, Vertex)>,
        reason: FailureReason,
    },
}

impl EmbeddingResult {
    pub fn is_closed(&self) -> bool {
        matches!(self, EmbeddingResult::Closed { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            EmbeddingResult::Closed { faces, euler_characteristic } => json!({
                "closed": true,
                "faces": faces.iter().map(|c| c.vertices().to_vec()).collect::<Vec<_>>(),
                "euler_characteristic": euler_characteristic,
            }),
            EmbeddingResult::Failed { witness, reason } => json!({
                "closed": false,
                "witness": witness.map(|(a, b)| vec![a, b]),
                "reason": reason.as_str(),
            }),
        }
    }
}

/// Glues pentagons onto a connected cubic graph of girth at least 5.
pub fn pentagon_embedding(g: &Graph) -> Result<EmbeddingResult, PentagonError> {
    let girth = g.girth();
    if !girth.at_least(5) {
        return Err(PentagonError::PreconditionViolated(format!("girth {girth} < 5")));
    }
    if !g.is_connected() {
        return Err(PentagonError::PreconditionViolated("graph is disconnected".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) != 3) {
        return Err(PentagonError::PreconditionViolated(format!(
            "vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    Ok(glue(g))
}

/// [`pentagon_embedding`] with only the slot-model requirement (maximum
/// degree 3). Vertices of lower degree simply have empty opposite slots.
pub fn pentagon_embedding_relaxed(g: &Graph) -> Result<EmbeddingResult, PentagonError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 3) {
        return Err(PentagonError::DegreeTooLarge(v, g.degree(v)));
    }
    Ok(glue(g))
}

fn glue(g: &Graph) -> EmbeddingResult {
    let Some(seed) = all_five_cycles(g).into_iter().next() else {
        return EmbeddingResult::Failed { witness: None, reason: FailureReason::NoStartingC5 };
    };
    let mut surface = Surface::default();
    surface.add(seed);

    while let Some((x, y)) = surface.queue.pop_front() {
        let here = &surface.on_edge[&(x, y)];
        if here.len() != 1 {
            continue;
        }
        let face = surface.faces[here[0]];
        let profile = edge_profile(g, x, y).expect("max degree checked by caller");
        let (i, j) = profile.slot_of(&face).expect("face passes through its edge");
        let opposite = profile.slots.get(1 - i).and_then(|row| row.get(1 - j)).copied().flatten();
        let Some(next) = opposite else {
            return EmbeddingResult::Failed {
                witness: Some((x, y)),
                reason: FailureReason::MissingOpposite,
            };
        };
        if surface.face_set.contains(&next) {
            continue;
        }
        if let Some(e) = next.edges().into_iter().find(|e| surface.faces_on(e) >= 2) {
            return EmbeddingResult::Failed {
                witness: Some(e),
                reason: FailureReason::EdgeOversaturated,
            };
        }
        surface.add(next);
    }

    // With every vertex of degree 3 and a connected graph the closed region
    // reaches every edge; anything else still lacks a second face somewhere.
    if let Some((x, y)) = g.edges().find(|e| surface.faces_on(e) != 2) {
        return EmbeddingResult::Failed {
            witness: Some((x, y)),
            reason: FailureReason::MissingOpposite,
        };
    }
    let faces = surface.faces;
    let euler_characteristic = g.n() as i64 - g.m() as i64 + faces.len() as i64;
    EmbeddingResult::Closed { faces, euler_characteristic }
}

#[derive(Default)]
struct Surface {
    faces: Vec<FiveCycle>,
    face_set: BTreeSet<FiveCycle>,
    on_edge: BTreeMap<(Vertex, Vertex), Vec<usize>>,
    /// Edges to revisit, FIFO.
    queue: VecDeque<(Vertex, Vertex)>,
}

impl Surface {
    fn add(&mut self, c: FiveCycle) {
        self.face_set.insert(c);
        for e in c.edges() {
            self.on_edge.entry(e).or_default().push(self.faces.len());
            self.queue.push_back(e);
        }
        self.faces.push(c);
    }

    fn faces_on(&self, e: &(Vertex, Vertex)) -> usize {
        self.on_edge.get(e).map_or(0, Vec::len)
    }
}
