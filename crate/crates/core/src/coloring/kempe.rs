//! Two-colored alternating paths and cycles.
//!
//! In a proper coloring every vertex has at most one edge of each color, so
//! the subgraph on colors `{a, b}` is a disjoint union of paths and even
//! cycles. Swapping `a` and `b` along a whole component keeps the coloring
//! proper.

use thiserror::Error;

use super::{Color, EdgeColoring};
use crate::powergraph::Edge;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KempeError {
    #[error("colors of a Kempe chain must differ (got {0} twice)")]
    SameColors(Color),
    #[error("vertex {0} out of range")]
    Vertex(usize),
    #[error("path is not maximal: endpoint {vertex} still has color {color}")]
    NotMaximal { vertex: usize, color: Color },
    #[error("path edge ({0}, {1}) does not carry the expected color")]
    Broken(usize, usize),
}

/// An alternating path (or cycle, when `closed`) on two colors.
///
/// `edge_colors[i]` is the color of the edge `vertices[i]–vertices[i+1]`;
/// for a closed walk the final edge runs from the last vertex back to the
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempePath {
    pub vertices: Vec<usize>,
    pub edge_colors: Vec<Color>,
    pub colors: (Color, Color),
    pub closed: bool,
}

impl KempePath {
    pub fn len(&self) -> usize {
        self.edge_colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_colors.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("non-empty")
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        let mut out: Vec<Edge> = self
            .vertices
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]))
            .collect();
        if self.closed && k > 2 {
            out.push(Edge::new(self.vertices[k - 1], self.vertices[0]));
        }
        out
    }

    fn other(&self, c: Color) -> Color {
        if c == self.colors.0 {
            self.colors.1
        } else {
            self.colors.0
        }
    }
}

fn walk(c: &EdgeColoring, v: usize, first: Color, pair: (Color, Color)) -> (Vec<usize>, Vec<Color>, bool) {
    let other = |x: Color| if x == pair.0 { pair.1 } else { pair.0 };
    let mut vertices = vec![v];
    let mut colors = Vec::new();
    let mut cur = v;
    let mut col = first;
    while let Some(next) = c.neighbor_via(cur, col) {
        colors.push(col);
        if next == v {
            return (vertices, colors, true);
        }
        vertices.push(next);
        cur = next;
        col = other(col);
        if vertices.len() > c.n() {
            // only reachable on an improper coloring
            break;
        }
    }
    (vertices, colors, false)
}

/// The `{a, b}` component through `v`.
///
/// If `v` carries only one of the colors the walk starts at `v`. If it
/// carries neither, the result is the single vertex `v`. If it carries
/// both, the walk leaves along `a`; when that returns to `v` the component
/// is a cycle (`closed`), otherwise the result is the whole maximal path
/// with `v` in its interior.
pub fn kempe_path(c: &EdgeColoring, v: usize, a: Color, b: Color) -> Result<KempePath, KempeError> {
    if a == b {
        return Err(KempeError::SameColors(a));
    }
    if v >= c.n() {
        return Err(KempeError::Vertex(v));
    }
    let pair = (a, b);
    let (has_a, has_b) = (c.has_color(v, a), c.has_color(v, b));
    let (vertices, edge_colors, closed) = match (has_a, has_b) {
        (false, false) => (vec![v], vec![], false),
        (true, false) => walk(c, v, a, pair),
        (false, true) => walk(c, v, b, pair),
        (true, true) => {
            let (fwd, fwd_cols, closed) = walk(c, v, a, pair);
            if closed {
                (fwd, fwd_cols, true)
            } else {
                let (back, back_cols, _) = walk(c, v, b, pair);
                let mut vs: Vec<usize> = back.into_iter().rev().collect();
                vs.extend_from_slice(&fwd[1..]);
                let mut cs: Vec<Color> = back_cols.into_iter().rev().collect();
                cs.extend(fwd_cols);
                (vs, cs, false)
            }
        }
    };
    Ok(KempePath {
        vertices,
        edge_colors,
        colors: pair,
        closed,
    })
}

fn check(c: &EdgeColoring, p: &KempePath) -> Result<(), KempeError> {
    for (e, &col) in p.edges().iter().zip(&p.edge_colors) {
        if c.color(*e) != Some(col) {
            return Err(KempeError::Broken(e.u, e.v));
        }
    }
    if !p.closed && !p.is_empty() {
        let first = p.edge_colors[0];
        let last = *p.edge_colors.last().expect("non-empty");
        let ext_start = p.other(first);
        let ext_end = p.other(last);
        if c.has_color(p.start(), ext_start) {
            return Err(KempeError::NotMaximal {
                vertex: p.start(),
                color: ext_start,
            });
        }
        if c.has_color(p.end(), ext_end) {
            return Err(KempeError::NotMaximal {
                vertex: p.end(),
                color: ext_end,
            });
        }
    }
    Ok(())
}

/// Swaps the two colors along `p` in place. Rejects paths that are not
/// maximal, since a truncated swap would clash at the cut.
pub fn kempe_invert_in_place(c: &mut EdgeColoring, p: &KempePath) -> Result<(), KempeError> {
    check(c, p)?;
    let edges = p.edges();
    for e in &edges {
        c.uncolor(*e);
    }
    for (e, &col) in edges.iter().zip(&p.edge_colors) {
        c.set_color(*e, p.other(col)).expect("edge in universe");
    }
    Ok(())
}

pub fn kempe_invert(c: &EdgeColoring, p: &KempePath) -> Result<EdgeColoring, KempeError> {
    let mut out = c.clone();
    kempe_invert_in_place(&mut out, p)?;
    Ok(out)
}

/// Inverts the whole `{a, b}` component through `v`, path or cycle.
/// Returns the inverted component.
pub fn invert_component(
    c: &mut EdgeColoring,
    v: usize,
    a: Color,
    b: Color,
) -> Result<KempePath, KempeError> {
    let p = kempe_path(c, v, a, b)?;
    kempe_invert_in_place(c, &p)?;
    Ok(p)
}
