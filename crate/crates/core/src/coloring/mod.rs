//! Edge colorings: the shared [`EdgeColoring`] container, properness
//! verification, the classical constructions for complete graphs, the
//! Kempe-chain machinery, and the exchange engine that turns a near-coloring
//! of `K_n` into a coloring of a power graph.
//!
//! Colors are 0-based internally. Exported files use 1-based colors.

mod delta;
mod exchange;
pub mod io;
mod kempe;
mod schemes;

pub use delta::{delta_color, DeltaColoring, DeltaConfig, DeltaError, OverfullCertificate, Strategy};
pub use exchange::{
    rhee_transform, ExchangeError, ExchangeState, ExchangeStep, RheeConfig, RheeFailure,
    RheeOutcome, RheeStats, StepKind,
};
pub use kempe::{
    invert_component, kempe_invert, kempe_invert_in_place, kempe_path, KempeError, KempePath,
};
pub use schemes::{base_near_coloring, round_robin_even, sp_classes};

use serde::Serialize;
use thiserror::Error;

use crate::powergraph::{Edge, Graph};

pub type Color = usize;

const ABSENT: u16 = u16::MAX;
const UNCOLORED: u16 = u16::MAX - 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("edge ({}, {}) is not part of the coloring's edge set", .0.u, .0.v)]
    NotInUniverse(Edge),
    #[error("color {color} is outside the palette of size {palette}")]
    ColorOutOfRange { color: Color, palette: usize },
    #[error("vertex count mismatch: coloring has {coloring}, graph has {graph}")]
    VertexCount { coloring: usize, graph: usize },
    #[error("{} colored edge(s) do not exist in the graph, first ({}, {})", .0.len(), .0[0].u, .0[0].v)]
    Structural(Vec<Edge>),
    #[error("parity violation: {0}")]
    Parity(String),
}

/// A partial or total assignment of colors to the edges of a graph on
/// `0..n`.
///
/// The coloring owns its edge universe, so it can represent the evolving
/// working graph of the exchange engine. It may be improper;
/// [`verify_proper`] reports conflicts. Per-vertex color counts are kept so
/// that "is color `c` present at `v`" is constant time.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    palette: usize,
    cells: Vec<u16>,
    usage: Vec<u16>,
    universe: usize,
    colored: usize,
}

impl std::fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EdgeColoring")
            .field("n", &self.n)
            .field("palette", &self.palette)
            .field("edges", &self.universe)
            .field("colored", &self.colored)
            .finish()
    }
}

impl EdgeColoring {
    /// Empty universe on `n` vertices.
    pub fn new(n: usize, palette: usize) -> Self {
        assert!(palette < UNCOLORED as usize, "palette too large");
        EdgeColoring {
            n,
            palette,
            cells: vec![ABSENT; n * n],
            usage: vec![0; n * palette],
            universe: 0,
            colored: 0,
        }
    }

    /// All edges of `g`, uncolored.
    pub fn for_graph(g: &Graph, palette: usize) -> Self {
        let mut c = EdgeColoring::new(g.n(), palette);
        for e in g.edges() {
            c.add_edge(e);
        }
        c
    }

    /// All edges of `K_n`, uncolored.
    pub fn for_complete(n: usize, palette: usize) -> Self {
        let mut c = EdgeColoring::new(n, palette);
        for u in 0..n {
            for v in u + 1..n {
                c.add_edge(Edge { u, v });
            }
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    /// Number of edges in the universe.
    pub fn edge_count(&self) -> usize {
        self.universe
    }

    pub fn colored_count(&self) -> usize {
        self.colored
    }

    #[inline]
    fn cell(&self, u: usize, v: usize) -> u16 {
        self.cells[u * self.n + v]
    }

    #[inline]
    fn set_cell(&mut self, u: usize, v: usize, x: u16) {
        self.cells[u * self.n + v] = x;
        self.cells[v * self.n + u] = x;
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.cell(e.u, e.v) != ABSENT
    }

    /// Adds `e` to the universe, uncolored. No-op if already present.
    pub fn add_edge(&mut self, e: Edge) {
        if self.cell(e.u, e.v) == ABSENT {
            self.set_cell(e.u, e.v, UNCOLORED);
            self.universe += 1;
        }
    }

    /// Drops `e` from the universe, returning its color if it had one.
    pub fn remove_edge(&mut self, e: Edge) -> Option<Color> {
        if !self.contains(e) {
            return None;
        }
        let old = self.color(e);
        self.uncolor(e);
        self.set_cell(e.u, e.v, ABSENT);
        self.universe -= 1;
        old
    }

    pub fn color(&self, e: Edge) -> Option<Color> {
        match self.cell(e.u, e.v) {
            ABSENT | UNCOLORED => None,
            c => Some(c as Color),
        }
    }

    /// Color of the pair `{a, b}` if it is a colored edge.
    #[inline]
    pub fn color_between(&self, a: usize, b: usize) -> Option<Color> {
        if a == b {
            return None;
        }
        match self.cell(a, b) {
            ABSENT | UNCOLORED => None,
            c => Some(c as Color),
        }
    }

    /// Assigns `color` to `e`, replacing any previous color. Properness is
    /// not enforced here.
    pub fn set_color(&mut self, e: Edge, color: Color) -> Result<(), ColoringError> {
        if !self.contains(e) {
            return Err(ColoringError::NotInUniverse(e));
        }
        if color >= self.palette {
            return Err(ColoringError::ColorOutOfRange {
                color,
                palette: self.palette,
            });
        }
        self.uncolor(e);
        self.set_cell(e.u, e.v, color as u16);
        self.usage[e.u * self.palette + color] += 1;
        self.usage[e.v * self.palette + color] += 1;
        self.colored += 1;
        Ok(())
    }

    /// Clears the color of `e`, returning it. The edge stays in the universe.
    pub fn uncolor(&mut self, e: Edge) -> Option<Color> {
        let old = self.color(e)?;
        self.set_cell(e.u, e.v, UNCOLORED);
        self.usage[e.u * self.palette + old] -= 1;
        self.usage[e.v * self.palette + old] -= 1;
        self.colored -= 1;
        Some(old)
    }

    #[inline]
    pub fn has_color(&self, v: usize, c: Color) -> bool {
        self.usage[v * self.palette + c] > 0
    }

    /// Palette colors not present at `v`, ascending.
    pub fn missing_colors(&self, v: usize) -> Vec<Color> {
        (0..self.palette).filter(|&c| !self.has_color(v, c)).collect()
    }

    /// Neighbor of `v` across an edge colored `c`, if any.
    pub fn neighbor_via(&self, v: usize, c: Color) -> Option<usize> {
        if !self.has_color(v, c) {
            return None;
        }
        let row = &self.cells[v * self.n..(v + 1) * self.n];
        row.iter().position(|&x| x as usize == c)
    }

    /// Edges of the universe, lexicographically sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.universe);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.cell(u, v) != ABSENT {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn colored_edges(&self) -> Vec<(Edge, Color)> {
        self.edges()
            .into_iter()
            .filter_map(|e| self.color(e).map(|c| (e, c)))
            .collect()
    }

    pub fn uncolored_edges(&self) -> Vec<Edge> {
        self.edges()
            .into_iter()
            .filter(|&e| self.color(e).is_none())
            .collect()
    }

    /// Number of distinct colors actually assigned.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.palette];
        for (_, c) in self.colored_edges() {
            seen[c] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// Edges of a color class, sorted.
    pub fn class(&self, c: Color) -> Vec<Edge> {
        self.colored_edges()
            .into_iter()
            .filter(|&(_, x)| x == c)
            .map(|(e, _)| e)
            .collect()
    }

    /// The colored edges as a graph.
    pub fn colored_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.colored_edges().iter().map(|(e, _)| (e.u, e.v)))
            .expect("universe is a simple graph")
    }

    /// Copy onto the edge set of `g`: every edge of `g` keeps the color it
    /// has here (or stays uncolored); edges outside `g` are dropped.
    pub fn restrict_to(&self, g: &Graph) -> EdgeColoring {
        let mut out = EdgeColoring::for_graph(g, self.palette);
        for e in g.edges() {
            if let Some(c) = self.color_between(e.u, e.v) {
                out.set_color(e, c).expect("same palette");
            }
        }
        out
    }

    /// Same assignment with a larger or smaller palette. Fails if a used
    /// color does not fit.
    pub fn with_palette(&self, palette: usize) -> Result<EdgeColoring, ColoringError> {
        let mut out = EdgeColoring::new(self.n, palette);
        for e in self.edges() {
            out.add_edge(e);
            if let Some(c) = self.color(e) {
                out.set_color(e, c)?;
            }
        }
        Ok(out)
    }

    /// True if no vertex sees the same color twice.
    pub fn is_proper(&self) -> bool {
        self.usage.iter().all(|&k| k <= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub vertex: usize,
    pub color: Color,
    pub edges: (Edge, Edge),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub conflicts: Vec<Conflict>,
    pub uncolored: Vec<Edge>,
    pub colors_used: usize,
    pub edges: usize,
}

/// Checks `c` against `g`. A colored edge that `g` lacks is a structural
/// error; same-color pairs at a vertex and uncolored graph edges go in the
/// report.
pub fn verify_proper(g: &Graph, c: &EdgeColoring) -> Result<VerificationReport, ColoringError> {
    if g.n() != c.n() {
        return Err(ColoringError::VertexCount {
            coloring: c.n(),
            graph: g.n(),
        });
    }
    let stray: Vec<Edge> = c
        .colored_edges()
        .into_iter()
        .map(|(e, _)| e)
        .filter(|e| !g.has_edge(e.u, e.v))
        .collect();
    if !stray.is_empty() {
        return Err(ColoringError::Structural(stray));
    }
    let mut conflicts = Vec::new();
    for v in 0..g.n() {
        let mut by_color: Vec<Vec<Edge>> = vec![Vec::new(); c.palette()];
        for &w in g.neighbors(v) {
            if let Some(col) = c.color_between(v, w) {
                by_color[col].push(Edge::new(v, w));
            }
        }
        for (color, es) in by_color.iter().enumerate() {
            for i in 0..es.len() {
                for j in i + 1..es.len() {
                    conflicts.push(Conflict {
                        vertex: v,
                        color,
                        edges: (es[i], es[j]),
                    });
                }
            }
        }
    }
    let uncolored: Vec<Edge> = g
        .edges()
        .into_iter()
        .filter(|e| c.color(*e).is_none())
        .collect();
    Ok(VerificationReport {
        valid: conflicts.is_empty() && uncolored.is_empty(),
        conflicts,
        uncolored,
        colors_used: c.colors_used(),
        edges: g.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_conflicts() {
        let k3 = Graph::complete(3);
        let mut c = EdgeColoring::for_graph(&k3, 3);
        for e in k3.edges() {
            c.set_color(e, 0).unwrap();
        }
        let r = verify_proper(&k3, &c).unwrap();
        assert_eq!(r.conflicts.len(), 3);
        assert!(!r.valid);
        assert!(!c.is_proper());

        for (i, e) in k3.edges().into_iter().enumerate() {
            c.set_color(e, i).unwrap();
        }
        let r = verify_proper(&k3, &c).unwrap();
        assert!(r.valid);
        assert_eq!(r.colors_used, 3);
    }

    #[test]
    fn structural_and_uncolored() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut c = EdgeColoring::for_complete(3, 2);
        c.set_color(Edge::new(0, 2), 0).unwrap();
        assert!(matches!(verify_proper(&path, &c), Err(ColoringError::Structural(_))));
        let mut c = EdgeColoring::for_graph(&path, 2);
        c.set_color(Edge::new(0, 1), 1).unwrap();
        let r = verify_proper(&path, &c).unwrap();
        assert_eq!(r.uncolored, vec![Edge::new(1, 2)]);
        assert!(!r.valid);
        assert!(verify_proper(&Graph::complete(4), &c).is_err());
    }

    #[test]
    fn bookkeeping() {
        let mut c = EdgeColoring::for_complete(4, 3);
        let e = Edge::new(1, 3);
        assert_eq!(c.set_color(e, 5), Err(ColoringError::ColorOutOfRange { color: 5, palette: 3 }));
        c.set_color(e, 2).unwrap();
        assert!(c.has_color(1, 2) && c.has_color(3, 2));
        assert_eq!(c.neighbor_via(1, 2), Some(3));
        assert_eq!(c.missing_colors(1), vec![0, 1]);
        c.set_color(e, 0).unwrap();
        assert!(!c.has_color(1, 2));
        assert_eq!(c.remove_edge(e), Some(0));
        assert!(!c.contains(e));
        assert_eq!(c.edge_count(), 5);
        assert_eq!(c.colored_count(), 0);
        assert!(c.set_color(e, 0).is_err());
    }
}
