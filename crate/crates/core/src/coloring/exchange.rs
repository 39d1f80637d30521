//! Edge exchanges: trade a colored edge the target lacks for a target edge
//! that is still uncolored, keeping the coloring proper and the palette
//! fixed.
//!
//! [`rhee_transform`] starts from the near-coloring of `K_n` (odd `n`) in
//! `n - 1` colors and exchanges its way onto a target graph with a
//! universal vertex. Each step removes one edge and inserts one, so the
//! working graph keeps its edge count until only surplus edges remain,
//! which are then dropped.
//!
//! Escalation per stuck insertion:
//! 1. direct recolor when both endpoints miss a common color,
//! 2. one Kempe inversion making both endpoints miss a common color,
//! 3. chains of up to three exchanges through intermediate target edges,
//! 4. seeded random Kempe perturbations of the whole coloring,
//! 5. exhaustive search on the target with a node budget.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::kempe::{invert_component, kempe_invert_in_place, kempe_path, KempePath};
use super::schemes::base_near_coloring;
use super::{verify_proper, Color, EdgeColoring};
use crate::oracle::{is_k_edge_colorable, Colorability};
use crate::powergraph::{Edge, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("edge ({}, {}) to remove is not colored", .0.u, .0.v)]
    RemoveNotColored(Edge),
    #[error("edge ({}, {}) to add is already colored", .0.u, .0.v)]
    AddAlreadyColored(Edge),
    #[error("no single Kempe inversion frees a common color for ({}, {}) after removing ({}, {})",
        .add.u, .add.v, .remove.u, .remove.v)]
    StepFailed { remove: Edge, add: Edge },
    #[error("exchange state needs a proper coloring on {expected} vertices")]
    BadStart { expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Both endpoints already missed the color.
    Direct,
    /// One alternating path was inverted first.
    Kempe(KempePath),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeStep {
    pub removed: Edge,
    pub removed_color: Color,
    pub added: Edge,
    pub color: Color,
    pub kind: StepKind,
}

/// A proper coloring of a working graph on the vertices of `K_n`, together
/// with its differences from a target graph.
#[derive(Clone, Debug)]
pub struct ExchangeState {
    coloring: EdgeColoring,
    target: Graph,
    extra: BTreeSet<Edge>,
    missing: BTreeSet<Edge>,
}

impl ExchangeState {
    /// The colored edges of `coloring` form the working graph. `extra` is
    /// what the target lacks, `missing` is what the working graph lacks.
    pub fn new(coloring: EdgeColoring, target: Graph) -> Result<Self, ExchangeError> {
        if coloring.n() != target.n() || !coloring.is_proper() {
            return Err(ExchangeError::BadStart {
                expected: target.n(),
            });
        }
        let mut coloring = coloring;
        for e in target.edges() {
            coloring.add_edge(e);
        }
        let extra = coloring
            .colored_edges()
            .into_iter()
            .map(|(e, _)| e)
            .filter(|e| !target.has_edge(e.u, e.v))
            .collect();
        let missing = target
            .edges()
            .into_iter()
            .filter(|&e| coloring.color(e).is_none())
            .collect();
        Ok(ExchangeState {
            coloring,
            target,
            extra,
            missing,
        })
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn extra(&self) -> &BTreeSet<Edge> {
        &self.extra
    }

    pub fn missing(&self) -> &BTreeSet<Edge> {
        &self.missing
    }

    pub fn working_edge_count(&self) -> usize {
        self.coloring.colored_count()
    }

    pub fn is_done(&self) -> bool {
        self.missing.is_empty()
    }

    /// Removes the colored edge `remove` and inserts `add` in its place,
    /// using at most one Kempe inversion. On failure the state is unchanged.
    pub fn exchange_edge(&mut self, remove: Edge, add: Edge) -> Result<ExchangeStep, ExchangeError> {
        let removed_color = self
            .coloring
            .color(remove)
            .ok_or(ExchangeError::RemoveNotColored(remove))?;
        if self.coloring.color(add).is_some() {
            return Err(ExchangeError::AddAlreadyColored(add));
        }
        let fresh = !self.coloring.contains(add);
        self.coloring.add_edge(add);
        self.coloring.uncolor(remove);
        match insert(&mut self.coloring, add, removed_color) {
            Some((color, kind)) => {
                if self.target.has_edge(remove.u, remove.v) {
                    self.missing.insert(remove);
                } else {
                    self.extra.remove(&remove);
                }
                if self.target.has_edge(add.u, add.v) {
                    self.missing.remove(&add);
                } else {
                    self.extra.insert(add);
                }
                Ok(ExchangeStep {
                    removed: remove,
                    removed_color,
                    added: add,
                    color,
                    kind,
                })
            }
            None => {
                self.coloring
                    .set_color(remove, removed_color)
                    .expect("restoring a removed edge");
                if fresh {
                    self.coloring.remove_edge(add);
                }
                Err(ExchangeError::StepFailed { remove, add })
            }
        }
    }

    /// Uncolors every surplus edge.
    fn drop_extra(&mut self) -> usize {
        let k = self.extra.len();
        for e in std::mem::take(&mut self.extra) {
            self.coloring.uncolor(e);
        }
        k
    }
}

/// Colors the uncolored edge `e`, directly or after one Kempe inversion.
/// Prefers `preferred` when it is free at both ends.
fn insert(c: &mut EdgeColoring, e: Edge, preferred: Color) -> Option<(Color, StepKind)> {
    let (u, v) = (e.u, e.v);
    let miss_u = c.missing_colors(u);
    let miss_v = c.missing_colors(v);
    let common: Vec<Color> = miss_u.iter().copied().filter(|x| miss_v.contains(x)).collect();
    if !common.is_empty() {
        let color = if common.contains(&preferred) { preferred } else { common[0] };
        c.set_color(e, color).expect("edge in universe");
        return Some((color, StepKind::Direct));
    }
    let order = |mut xs: Vec<Color>| {
        if let Some(i) = xs.iter().position(|&x| x == preferred) {
            xs[..=i].rotate_right(1);
        }
        xs
    };
    let (miss_u, miss_v) = (order(miss_u), order(miss_v));
    // make `a` free at v by flipping the {a, b} path leaving v along a
    for (from, to, frees, keep) in [(v, u, &miss_u, &miss_v), (u, v, &miss_v, &miss_u)] {
        for &a in frees {
            for &b in keep {
                let path = kempe_path(c, from, a, b).expect("distinct colors");
                if path.closed || path.end() == to {
                    continue;
                }
                kempe_invert_in_place(c, &path).expect("maximal path");
                c.set_color(e, a).expect("edge in universe");
                return Some((a, StepKind::Kempe(path)));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct RheeConfig {
    pub seed: u64,
    /// Random perturbation rounds before falling back to search.
    pub max_restarts: usize,
    /// Kempe inversions per perturbation round; 0 means `n`.
    pub perturb_steps: usize,
    /// Longest exchange chain tried (1 to 3).
    pub chain_depth: usize,
    /// Node budget for the final exhaustive search; 0 disables it.
    pub backtrack_budget: u64,
}

impl Default for RheeConfig {
    fn default() -> Self {
        RheeConfig {
            seed: 0x5eed,
            max_restarts: 400,
            perturb_steps: 0,
            chain_depth: 3,
            backtrack_budget: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RheeStats {
    pub exchanges: usize,
    pub direct_steps: usize,
    pub kempe_steps: usize,
    pub chain_steps: usize,
    pub restarts: usize,
    pub dropped_extra: usize,
    pub backtrack_nodes: u64,
    pub used_backtracking: bool,
}

#[derive(Clone, Debug)]
pub struct RheeOutcome {
    /// Total proper coloring of the target in `n - 1` colors.
    pub coloring: EdgeColoring,
    pub stats: RheeStats,
    pub trace: Vec<ExchangeStep>,
}

#[derive(Clone, Debug, Error)]
pub enum RheeFailure {
    #[error("target not eligible: {0}")]
    InvalidTarget(String),
    #[error("exchange schedule exhausted with {} surplus and {} missing edges", remaining_extra.len(), remaining_missing.len())]
    Exhausted {
        remaining_extra: Vec<Edge>,
        remaining_missing: Vec<Edge>,
        partial: Box<EdgeColoring>,
        stats: RheeStats,
    },
}

struct Engine<'a> {
    state: ExchangeState,
    stats: RheeStats,
    trace: Vec<ExchangeStep>,
    config: &'a RheeConfig,
}

impl Engine<'_> {
    fn record(&mut self, step: ExchangeStep) {
        self.stats.exchanges += 1;
        match step.kind {
            StepKind::Direct => self.stats.direct_steps += 1,
            StepKind::Kempe(_) => self.stats.kempe_steps += 1,
        }
        self.trace.push(step);
    }

    /// Surplus edges to try against `m`: those sharing a vertex with `m`
    /// first, then the rest, each group in lexicographic order.
    fn candidates(&self, m: Edge) -> Vec<Edge> {
        let (mut near, far): (Vec<Edge>, Vec<Edge>) =
            self.state.extra.iter().partition(|r| r.shares_vertex(&m));
        near.extend(far);
        near
    }

    fn single_step(&mut self) -> bool {
        let missing: Vec<Edge> = self.state.missing.iter().copied().collect();
        for m in missing {
            for r in self.candidates(m) {
                if let Ok(step) = self.state.exchange_edge(r, m) {
                    self.record(step);
                    return true;
                }
            }
        }
        false
    }

    /// Frees `m` by sacrificing a colored target edge next to it, then
    /// recursively re-inserts the sacrifice, up to `depth` exchanges.
    fn chain(&mut self, m: Edge, depth: usize, steps: &mut Vec<ExchangeStep>) -> bool {
        if depth == 0 {
            return false;
        }
        for r in self.candidates(m) {
            if let Ok(step) = self.state.exchange_edge(r, m) {
                steps.push(step);
                return true;
            }
        }
        if depth == 1 {
            return false;
        }
        let mut sacrifices: Vec<Edge> = Vec::new();
        for x in [m.u, m.v] {
            for &y in self.state.target.neighbors(x) {
                let f = Edge::new(x, y);
                if f != m && self.state.coloring.color(f).is_some() && !sacrifices.contains(&f) {
                    sacrifices.push(f);
                }
            }
        }
        sacrifices.sort();
        for f in sacrifices {
            let snapshot = self.state.clone();
            let mark = steps.len();
            if let Ok(step) = self.state.exchange_edge(f, m) {
                steps.push(step);
                if self.chain(f, depth - 1, steps) {
                    return true;
                }
            }
            self.state = snapshot;
            steps.truncate(mark);
        }
        false
    }

    fn multi_step(&mut self) -> bool {
        let missing: Vec<Edge> = self.state.missing.iter().copied().collect();
        for m in missing {
            let mut steps = Vec::new();
            if self.chain(m, self.config.chain_depth, &mut steps) {
                self.stats.chain_steps += 1;
                for s in steps {
                    self.record(s);
                }
                return true;
            }
        }
        false
    }

    fn perturb(&mut self, rng: &mut ChaCha8Rng) {
        let c = &mut self.state.coloring;
        let (n, k) = (c.n(), c.palette());
        let steps = if self.config.perturb_steps == 0 { n } else { self.config.perturb_steps };
        for _ in 0..steps {
            let v = rng.gen_range(0..n);
            let a = rng.gen_range(0..k);
            let b = rng.gen_range(0..k - 1);
            let b = if b >= a { b + 1 } else { b };
            invert_component(c, v, a, b).expect("components of a proper coloring invert");
        }
        self.stats.restarts += 1;
    }
}

/// Colors `target` (odd order `n`, a universal vertex, not overfull) with
/// `n - 1` colors by exchanging edges of the base near-coloring of `K_n`.
///
/// Deterministic for a fixed `config.seed`. A failure says nothing about
/// the class of the target.
pub fn rhee_transform(target: &Graph, config: &RheeConfig) -> Result<RheeOutcome, RheeFailure> {
    let n = target.n();
    if n == 1 {
        return Ok(RheeOutcome {
            coloring: EdgeColoring::for_graph(target, 0),
            stats: RheeStats::default(),
            trace: Vec::new(),
        });
    }
    if n.is_multiple_of(2) {
        return Err(RheeFailure::InvalidTarget(format!("order {n} is even")));
    }
    if target.max_degree() != n - 1 {
        return Err(RheeFailure::InvalidTarget(format!(
            "max degree {} is not n - 1 = {}",
            target.max_degree(),
            n - 1
        )));
    }
    let m = (n - 1) / 2;
    if target.edge_count() > 2 * m * m {
        return Err(RheeFailure::InvalidTarget(format!(
            "{} edges exceed 2m^2 = {}; the graph is overfull",
            target.edge_count(),
            2 * m * m
        )));
    }
    let (base, _) = base_near_coloring(n).expect("odd n");
    let state = ExchangeState::new(base, target.clone()).expect("base coloring is proper");
    let mut engine = Engine {
        state,
        stats: RheeStats::default(),
        trace: Vec::new(),
        config,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    while !engine.state.is_done() {
        if engine.single_step() || engine.multi_step() {
            continue;
        }
        if engine.stats.restarts < config.max_restarts {
            engine.perturb(&mut rng);
            continue;
        }
        break;
    }

    if !engine.state.is_done() {
        if config.backtrack_budget > 0 {
            let search = is_k_edge_colorable(target, n - 1, config.backtrack_budget);
            engine.stats.backtrack_nodes = search.nodes;
            if let Colorability::Yes(witness) = search.answer {
                engine.stats.used_backtracking = true;
                return Ok(RheeOutcome {
                    coloring: witness,
                    stats: engine.stats,
                    trace: engine.trace,
                });
            }
        }
        return Err(RheeFailure::Exhausted {
            remaining_extra: engine.state.extra.iter().copied().collect(),
            remaining_missing: engine.state.missing.iter().copied().collect(),
            partial: Box::new(engine.state.coloring.restrict_to(target)),
            stats: engine.stats,
        });
    }

    engine.stats.dropped_extra = engine.state.drop_extra();
    let coloring = engine.state.coloring.restrict_to(target);
    debug_assert!(verify_proper(target, &coloring).map(|r| r.valid).unwrap_or(false));
    Ok(RheeOutcome {
        coloring,
        stats: engine.stats,
        trace: engine.trace,
    })
}
