use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::exchange::{rhee_transform, RheeConfig, RheeFailure, RheeStats};
use super::schemes::{round_robin_even, sp_classes};
use super::{verify_proper, EdgeColoring};
use crate::groups::Group;
use crate::oracle::{exact_chromatic_index, misra_gries, DEFAULT_BUDGET};
use crate::overfull::{is_overfull, predict_class, EdgeClass};
use crate::powergraph::{build_power_graph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Pick by order: round robin when even, the `S_p` scheme for odd
    /// prime-power cyclic groups, exchanges otherwise.
    Auto,
    RoundRobin,
    Sp,
    Rhee,
    Exact,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "roundrobin" | "round-robin" => Ok(Strategy::RoundRobin),
            "sp" => Ok(Strategy::Sp),
            "rhee" => Ok(Strategy::Rhee),
            "exact" => Ok(Strategy::Exact),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::RoundRobin => "roundrobin",
            Strategy::Sp => "sp",
            Strategy::Rhee => "rhee",
            Strategy::Exact => "exact",
        })
    }
}

/// Counting proof that `Δ` colors cannot suffice: every color class is a
/// matching of at most `⌊n/2⌋` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OverfullCertificate {
    pub edges: usize,
    pub max_degree: usize,
    pub max_matching: usize,
}

impl OverfullCertificate {
    pub fn of(g: &Graph) -> Option<Self> {
        is_overfull(g).then(|| OverfullCertificate {
            edges: g.edge_count(),
            max_degree: g.max_degree(),
            max_matching: g.n() / 2,
        })
    }

    pub fn holds(&self) -> bool {
        self.edges > self.max_degree * self.max_matching
    }
}

#[derive(Clone, Debug)]
pub struct DeltaColoring {
    pub graph: Graph,
    pub coloring: EdgeColoring,
    /// `None` if the coloring uses `Δ + 1` colors without a certificate
    /// (a forced strategy on a Class 1 graph).
    pub class: Option<EdgeClass>,
    pub strategy: Strategy,
    pub colors_used: usize,
    pub certificate: Option<OverfullCertificate>,
    pub exchange_stats: Option<RheeStats>,
    pub search_nodes: u64,
}

#[derive(Clone, Debug, Default)]
pub struct DeltaConfig {
    pub strategy: Option<Strategy>,
    pub rhee: RheeConfig,
    pub oracle_budget: Option<u64>,
}

#[derive(Debug, Error)]
pub enum DeltaError {
    #[error("strategy {strategy} does not apply to order {order}: {reason}")]
    NotApplicable {
        strategy: Strategy,
        order: usize,
        reason: String,
    },
    #[error("no Δ-coloring found for {label}; escalation exhausted")]
    Indeterminate {
        label: String,
        partial: Box<EdgeColoring>,
    },
}

fn from_complete(k: &EdgeColoring, g: &Graph) -> EdgeColoring {
    k.restrict_to(g)
}

/// Colors the power graph of `group` with `Δ` colors when it is Class 1
/// and with `Δ + 1` plus an overfull certificate when it is Class 2.
/// The result always passes [`verify_proper`].
pub fn delta_color(group: &Group, config: &DeltaConfig) -> Result<DeltaColoring, DeltaError> {
    let graph = build_power_graph(group);
    let n = group.order();
    let delta = graph.max_degree();
    let prediction = predict_class(group);
    let strategy = match config.strategy.unwrap_or(Strategy::Auto) {
        Strategy::Auto if n.is_multiple_of(2) => Strategy::RoundRobin,
        Strategy::Auto if n == 1 => Strategy::Exact,
        Strategy::Auto if prediction.class_label == EdgeClass::Class2 => Strategy::Sp,
        Strategy::Auto => Strategy::Rhee,
        s => s,
    };
    let not_applicable = |reason: &str| DeltaError::NotApplicable {
        strategy,
        order: n,
        reason: reason.to_string(),
    };
    let mut exchange_stats = None;
    let mut search_nodes = 0;
    let coloring = match strategy {
        Strategy::RoundRobin => {
            let k = round_robin_even(n).map_err(|e| not_applicable(&e.to_string()))?;
            from_complete(&k, &graph)
        }
        Strategy::Sp => {
            let classes = sp_classes(n).map_err(|e| not_applicable(&e.to_string()))?;
            let mut k = EdgeColoring::for_complete(n, n);
            for (color, class) in classes.iter().enumerate() {
                for &e in class {
                    k.set_color(e, color).expect("palette n");
                }
            }
            from_complete(&k, &graph)
        }
        Strategy::Rhee => match rhee_transform(&graph, &config.rhee) {
            Ok(out) => {
                exchange_stats = Some(out.stats);
                out.coloring
            }
            Err(RheeFailure::InvalidTarget(reason)) => return Err(not_applicable(&reason)),
            Err(RheeFailure::Exhausted { partial, stats, .. }) => {
                exchange_stats = Some(stats);
                let r = exact_chromatic_index(&graph, config.oracle_budget.unwrap_or(DEFAULT_BUDGET));
                search_nodes = r.nodes_explored;
                match (r.chromatic_index, r.witness) {
                    (Some(k), Some(w)) if k == delta => w,
                    _ => {
                        return Err(DeltaError::Indeterminate {
                            label: group.label().to_string(),
                            partial,
                        })
                    }
                }
            }
        },
        Strategy::Exact => {
            let r = exact_chromatic_index(&graph, config.oracle_budget.unwrap_or(DEFAULT_BUDGET));
            search_nodes = r.nodes_explored;
            match r.witness {
                Some(w) => w,
                None => {
                    return Err(DeltaError::Indeterminate {
                        label: group.label().to_string(),
                        partial: Box::new(misra_gries(&graph)),
                    })
                }
            }
        }
        Strategy::Auto => unreachable!("resolved above"),
    };

    let report = verify_proper(&graph, &coloring).expect("coloring built on the graph");
    assert!(report.valid, "constructed coloring must verify: {report:?}");
    let colors_used = report.colors_used;
    let certificate = OverfullCertificate::of(&graph);
    let class = if colors_used <= delta {
        Some(EdgeClass::Class1)
    } else if certificate.is_some() {
        Some(EdgeClass::Class2)
    } else {
        None
    };
    Ok(DeltaColoring {
        graph,
        coloring,
        class,
        strategy,
        colors_used,
        certificate,
        exchange_stats,
        search_nodes,
    })
}
