//! Catalog-wide sweep checking the overfull and class theorems, with
//! optional coloring witnesses and exact cross-checks.

use std::time::Instant;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::coloring::{delta_color, verify_proper, DeltaConfig, DeltaError, RheeConfig, RheeStats, Strategy};
use crate::groups::{construct_group, euler_phi, Group};
use crate::oracle::{exact_chromatic_index, DEFAULT_BUDGET};
use crate::overfull::{deficiency_report, predict_class, EdgeClass, PredictionReason};
use crate::par::Execution;
use crate::powergraph::build_power_graph;

#[derive(Clone, Debug, Serialize)]
pub struct SurveyOptions {
    pub max_order: usize,
    /// Run the exact search on groups up to this order (0 disables it).
    pub oracle_max_order: usize,
    pub witness: bool,
    pub seed: u64,
    /// Record wall-clock time per group. Off by default so output is
    /// byte-identical across runs.
    pub timing: bool,
    pub oracle_budget: u64,
    /// Groups surveyed in addition to the catalog (e.g. `table:` specs).
    pub extra_specs: Vec<String>,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            max_order: 0,
            oracle_max_order: 0,
            witness: false,
            seed: RheeConfig::default().seed,
            timing: false,
            oracle_budget: DEFAULT_BUDGET,
            extra_specs: Vec::new(),
            execution: Execution::Parallel,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessStatus {
    pub colors_used: Option<usize>,
    pub verified: bool,
    pub strategy: Option<Strategy>,
    pub indeterminate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exchange_stats: Option<RheeStats>,
    pub search_nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleStatus {
    pub chromatic_index: Option<usize>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub spec: String,
    pub order: usize,
    pub is_cyclic: bool,
    pub odd: bool,
    pub prime_power: bool,
    pub edge_count: usize,
    pub max_degree: usize,
    pub deficiency: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    pub overfull: bool,
    pub full_degree_vertices: usize,
    pub predicted_class: EdgeClass,
    pub prediction_reason: PredictionReason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
    #[serde(skip)]
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub spec: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub overfull_groups: Vec<String>,
    pub class2_groups: Vec<String>,
    pub witnesses_verified: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Survey {
    pub params: SurveyOptions,
    pub reports: Vec<ClassReport>,
    pub summary: Summary,
}

impl Survey {
    pub fn ok(&self) -> bool {
        self.summary.mismatches.is_empty()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Size of the set of vertices joined to everything, by group structure:
/// all of `G` for cyclic prime-power order, the identity plus generators
/// for other cyclic groups, identity plus the unique involution for
/// generalized quaternion groups, the identity alone otherwise.
pub fn expected_join_size(group: &Group) -> usize {
    let n = group.order();
    if group.is_cyclic() {
        if n == 1 || crate::groups::is_prime_power(n as u64) {
            n
        } else {
            1 + euler_phi(n as u64) as usize
        }
    } else if group.is_generalized_quaternion() {
        2
    } else {
        1
    }
}

fn mismatch(spec: &str, check: &str, detail: String) -> Mismatch {
    Mismatch {
        spec: spec.to_string(),
        check: check.to_string(),
        detail,
    }
}

/// Report for a single group.
pub fn survey_group(spec: &str, group: &Group, options: &SurveyOptions) -> ClassReport {
    let start = Instant::now();
    let graph = build_power_graph(group);
    let over = deficiency_report(&graph);
    let prediction = predict_class(group);
    let facts = prediction.group_facts;
    let n = group.order();
    let mut mismatches = Vec::new();

    let theorem = facts.is_cyclic && facts.odd && facts.prime_power && n >= 3;
    if over.overfull != theorem {
        mismatches.push(mismatch(spec, "overfull", format!("overfull = {}, theorem says {theorem}", over.overfull)));
    }
    let joins = graph.full_degree_vertices().len();
    let expected = expected_join_size(group);
    if joins != expected {
        mismatches.push(mismatch(spec, "join-set", format!("{joins} universal vertices, expected {expected}")));
    }
    let target = prediction.class_label.colors(over.max_degree);

    let witness = options.witness.then(|| {
        let config = DeltaConfig {
            strategy: None,
            rhee: RheeConfig {
                seed: options.seed,
                ..RheeConfig::default()
            },
            oracle_budget: Some(options.oracle_budget),
        };
        match delta_color(group, &config) {
            Ok(d) => {
                let report = verify_proper(&graph, &d.coloring);
                let verified = report.as_ref().is_ok_and(|r| r.valid && r.colors_used == d.colors_used);
                if !verified {
                    mismatches.push(mismatch(spec, "witness-unverified", format!("{report:?}")));
                }
                if d.colors_used != target {
                    mismatches.push(mismatch(spec, "witness-class", format!("{} colors, predicted {target}", d.colors_used)));
                }
                if prediction.class_label == EdgeClass::Class2 && !d.certificate.is_some_and(|c| c.holds()) {
                    mismatches.push(mismatch(spec, "witness-certificate", "no overfull certificate".into()));
                }
                WitnessStatus {
                    colors_used: Some(d.colors_used),
                    verified,
                    strategy: Some(d.strategy),
                    indeterminate: false,
                    exchange_stats: d.exchange_stats,
                    search_nodes: d.search_nodes,
                    error: None,
                }
            }
            Err(e) => {
                let indeterminate = matches!(e, DeltaError::Indeterminate { .. });
                mismatches.push(mismatch(spec, "witness-failed", e.to_string()));
                WitnessStatus {
                    colors_used: None,
                    verified: false,
                    strategy: None,
                    indeterminate,
                    exchange_stats: None,
                    search_nodes: 0,
                    error: Some(e.to_string()),
                }
            }
        }
    });

    let oracle = (n <= options.oracle_max_order).then(|| {
        let r = exact_chromatic_index(&graph, options.oracle_budget);
        match r.chromatic_index {
            None => mismatches.push(mismatch(spec, "oracle-indeterminate", format!("budget exhausted after {} nodes", r.nodes_explored))),
            Some(k) if k != target => mismatches.push(mismatch(spec, "oracle-class", format!("chromatic index {k}, predicted {target}"))),
            _ => {}
        }
        OracleStatus {
            chromatic_index: r.chromatic_index,
            nodes_explored: r.nodes_explored,
            budget_exhausted: r.budget_exhausted,
        }
    });

    ClassReport {
        spec: spec.to_string(),
        order: n,
        is_cyclic: facts.is_cyclic,
        odd: facts.odd,
        prime_power: facts.prime_power,
        edge_count: over.edge_count,
        max_degree: over.max_degree,
        deficiency: over.deficiency,
        budget: over.budget,
        overfull: over.overfull,
        full_degree_vertices: joins,
        predicted_class: prediction.class_label,
        prediction_reason: prediction.reason,
        witness,
        oracle,
        millis: options.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        mismatches,
    }
}

/// Surveys every catalog group up to `options.max_order` plus the extra
/// specs. Work fans out per group; reports come back sorted by
/// `(order, spec)`. Specs that fail to construct are reported as
/// mismatches.
pub fn run_survey(catalog: &Catalog, options: &SurveyOptions) -> Survey {
    let mut specs: Vec<String> = catalog
        .entries
        .iter()
        .filter(|e| e.order <= options.max_order)
        .map(|e| e.spec.clone())
        .collect();
    specs.extend(options.extra_specs.iter().cloned());

    let results = options.execution.map(&specs, |spec| match construct_group(spec) {
        Ok(g) => Ok(survey_group(spec, &g, options)),
        Err(e) => Err(mismatch(spec, "construct", e.to_string())),
    });

    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(m) => mismatches.push(m),
        }
    }
    reports.sort_by(|a, b| (a.order, &a.spec).cmp(&(b.order, &b.spec)));
    mismatches.extend(reports.iter().flat_map(|r| r.mismatches.iter().cloned()));

    let summary = Summary {
        groups: reports.len(),
        overfull_groups: reports.iter().filter(|r| r.overfull).map(|r| r.spec.clone()).collect(),
        class2_groups: reports
            .iter()
            .filter(|r| r.predicted_class == EdgeClass::Class2)
            .map(|r| r.spec.clone())
            .collect(),
        witnesses_verified: reports
            .iter()
            .filter(|r| r.witness.as_ref().is_some_and(|w| w.verified))
            .count(),
        mismatches,
    };
    Survey {
        params: options.clone(),
        reports,
        summary,
    }
}
