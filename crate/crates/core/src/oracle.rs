//! Exact chromatic index on small graphs.
//!
//! `χ'` is either `Δ` or `Δ + 1`, so deciding `Δ`-colorability settles it.
//! The `Δ` test is a backtracking search; the `Δ + 1` witness comes from
//! Misra–Gries fan recoloring, which always succeeds.

use serde::Serialize;

use crate::coloring::{kempe_invert_in_place, kempe_path, Color, EdgeColoring};
use crate::powergraph::{Edge, Graph};

/// Default search node cap.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest palette the bitmask search supports.
pub const MAX_SEARCH_COLORS: usize = 128;

#[derive(Clone, Debug)]
pub enum Colorability {
    Yes(EdgeColoring),
    No,
    Indeterminate,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub answer: Colorability,
    pub nodes: u64,
}

/// Decides whether `g` has a proper edge coloring with `k` colors.
///
/// Rejects immediately when some degree exceeds `k` or when
/// `|E| > k·⌊n/2⌋` (each color class is a matching). Otherwise searches
/// edges most-constrained first, ties broken by descending endpoint degree
/// sum then lexicographically, with the edges at one maximum-degree vertex
/// fixed to colors `0..d` and unused colors treated as interchangeable.
/// Palettes above [`MAX_SEARCH_COLORS`] come back `Indeterminate`.
pub fn is_k_edge_colorable(g: &Graph, k: usize, budget: u64) -> SearchOutcome {
    let no = SearchOutcome {
        answer: Colorability::No,
        nodes: 0,
    };
    let n = g.n();
    if g.edge_count() == 0 {
        return SearchOutcome {
            answer: Colorability::Yes(EdgeColoring::for_graph(g, k)),
            nodes: 0,
        };
    }
    if g.max_degree() > k || g.edge_count() > k * (n / 2) {
        return no;
    }
    if k > MAX_SEARCH_COLORS {
        return SearchOutcome {
            answer: Colorability::Indeterminate,
            nodes: 0,
        };
    }

    let mut edges = g.edges();
    edges.sort_by_key(|e| (std::cmp::Reverse(g.degree(e.u) + g.degree(e.v)), *e));
    let full: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let mut search = Search {
        edges,
        assigned: Vec::new(),
        used: vec![0; n],
        full,
        next_unused: 0,
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.assigned = vec![None; search.edges.len()];

    let hub = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("n > 0");
    for (c, &w) in g.neighbors(hub).iter().enumerate() {
        let idx = search
            .edges
            .iter()
            .position(|&e| e == Edge::new(hub, w))
            .expect("hub edge");
        search.place(idx, c);
    }
    search.next_unused = g.degree(hub);

    let found = search.dfs();
    let nodes = search.nodes;
    let answer = if found {
        let mut c = EdgeColoring::for_graph(g, k);
        for (e, col) in search.edges.iter().zip(&search.assigned) {
            c.set_color(*e, col.expect("complete")).expect("in range");
        }
        Colorability::Yes(c)
    } else if search.exhausted {
        Colorability::Indeterminate
    } else {
        Colorability::No
    };
    SearchOutcome { answer, nodes }
}

struct Search {
    edges: Vec<Edge>,
    assigned: Vec<Option<usize>>,
    used: Vec<u128>,
    full: u128,
    next_unused: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search {
    fn place(&mut self, idx: usize, c: usize) {
        let e = self.edges[idx];
        self.assigned[idx] = Some(c);
        self.used[e.u] |= 1 << c;
        self.used[e.v] |= 1 << c;
    }

    fn unplace(&mut self, idx: usize, c: usize) {
        let e = self.edges[idx];
        self.assigned[idx] = None;
        self.used[e.u] &= !(1 << c);
        self.used[e.v] &= !(1 << c);
    }

    fn available(&self, idx: usize) -> u128 {
        let e = self.edges[idx];
        !(self.used[e.u] | self.used[e.v]) & self.full
    }

    fn dfs(&mut self) -> bool {
        let mut pick = None;
        let mut best = u32::MAX;
        for idx in 0..self.edges.len() {
            if self.assigned[idx].is_some() {
                continue;
            }
            let options = self.available(idx).count_ones();
            if options < best {
                best = options;
                pick = Some(idx);
                if options <= 1 {
                    break;
                }
            }
        }
        let Some(idx) = pick else {
            return true;
        };
        let mut avail = self.available(idx);
        while avail != 0 {
            let c = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            if c > self.next_unused {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return false;
            }
            let fresh = c == self.next_unused;
            if fresh {
                self.next_unused += 1;
            }
            self.place(idx, c);
            if self.dfs() {
                return true;
            }
            self.unplace(idx, c);
            if fresh {
                self.next_unused -= 1;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    /// `None` when the `Δ` test ran out of budget.
    pub chromatic_index: Option<usize>,
    #[serde(skip)]
    pub witness: Option<EdgeColoring>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

pub fn exact_chromatic_index(g: &Graph, budget: u64) -> OracleResult {
    let delta = g.max_degree();
    let search = is_k_edge_colorable(g, delta, budget);
    let (chromatic_index, witness, exhausted) = match search.answer {
        Colorability::Yes(w) => (Some(delta), Some(w), false),
        Colorability::No => (Some(delta + 1), Some(misra_gries(g)), false),
        Colorability::Indeterminate => (None, None, true),
    };
    OracleResult {
        chromatic_index,
        witness,
        nodes_explored: search.nodes,
        budget_exhausted: exhausted,
    }
}

fn first_free(c: &EdgeColoring, x: usize) -> Color {
    (0..c.palette())
        .find(|&col| !c.has_color(x, col))
        .expect("degree below palette size")
}

/// Proper edge coloring with at most `Δ + 1` colors (Misra–Gries).
pub fn misra_gries(g: &Graph) -> EdgeColoring {
    let mut c = EdgeColoring::for_graph(g, g.max_degree() + 1);
    for e in g.edges() {
        color_with_fan(&mut c, g, e.u, e.v);
    }
    c
}

fn color_with_fan(c: &mut EdgeColoring, g: &Graph, u: usize, v: usize) {
    let mut fan = vec![v];
    loop {
        let last = *fan.last().expect("non-empty");
        let next = g.neighbors(u).iter().copied().find(|&w| {
            !fan.contains(&w)
                && c
                    .color_between(u, w)
                    .is_some_and(|col| !c.has_color(last, col))
        });
        match next {
            Some(w) => fan.push(w),
            None => break,
        }
    }
    let free_u = first_free(c, u);
    let free_end = first_free(c, *fan.last().expect("non-empty"));
    if free_u != free_end && c.has_color(u, free_end) {
        let path = kempe_path(c, u, free_end, free_u).expect("distinct colors");
        kempe_invert_in_place(c, &path).expect("maximal path from a free endpoint");
    }
    let d = free_end;
    let mut w = None;
    for i in 0..fan.len() {
        if i > 0 {
            let ok = c
                .color_between(u, fan[i])
                .is_some_and(|col| !c.has_color(fan[i - 1], col));
            if !ok {
                break;
            }
        }
        if !c.has_color(fan[i], d) {
            w = Some(i);
            break;
        }
    }
    let w = w.expect("Misra-Gries always finds a rotatable prefix");
    for j in 0..w {
        let col = c.uncolor(Edge::new(u, fan[j + 1])).expect("fan edge colored");
        c.set_color(Edge::new(u, fan[j]), col).expect("in palette");
    }
    c.set_color(Edge::new(u, fan[w]), d).expect("in palette");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_decisions() {
        let r = is_k_edge_colorable(&Graph::complete(3), 2, DEFAULT_BUDGET);
        assert!(matches!(r.answer, Colorability::No));
        assert_eq!(r.nodes, 0);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(is_k_edge_colorable(&path, 2, DEFAULT_BUDGET).answer, Colorability::Yes(_)));
        assert!(matches!(is_k_edge_colorable(&cycle(5), 2, DEFAULT_BUDGET).answer, Colorability::No));
        match is_k_edge_colorable(&cycle(5), 3, DEFAULT_BUDGET).answer {
            Colorability::Yes(w) => assert!(verify_proper(&cycle(5), &w).unwrap().valid),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chromatic_indices() {
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(exact_chromatic_index(&star, DEFAULT_BUDGET).chromatic_index, Some(4));
        let r = exact_chromatic_index(&Graph::complete(9), DEFAULT_BUDGET);
        assert_eq!(r.chromatic_index, Some(9));
        assert!(verify_proper(&Graph::complete(9), r.witness.as_ref().unwrap()).unwrap().valid);
        assert_eq!(exact_chromatic_index(&Graph::empty(3), DEFAULT_BUDGET).chromatic_index, Some(0));
    }

    #[test]
    fn budget_exhaustion() {
        // Petersen graph is Class 2 with no counting shortcut
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        let r = exact_chromatic_index(&petersen, 3);
        assert!(r.budget_exhausted);
        assert_eq!(r.chromatic_index, None);
        let r = exact_chromatic_index(&petersen, DEFAULT_BUDGET);
        assert_eq!(r.chromatic_index, Some(4));
    }

    #[test]
    fn misra_gries_bound() {
        for n in 2..12 {
            let g = Graph::complete(n);
            let c = misra_gries(&g);
            let r = verify_proper(&g, &c).unwrap();
            assert!(r.valid, "K_{n}");
            assert!(r.colors_used <= n);
        }
    }
}
