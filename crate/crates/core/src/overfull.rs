//! Overfullness, edge deficiency, and the Class 1 / Class 2 prediction for
//! power graphs. All comparisons use exact integer arithmetic.

use serde::{Deserialize, Serialize};

use crate::groups::{factorize, Group};
use crate::powergraph::{build_power_graph, Graph};

/// `|E| > Δ·⌊n/2⌋`. False for `n <= 1`.
pub fn is_overfull(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return false;
    }
    g.edge_count() > g.max_degree() * (n / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverfullReport {
    pub n: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub overfull: bool,
    /// Edges missing relative to `K_n`.
    pub deficiency: usize,
    /// For odd `n = 2m + 1`: the largest deficiency (`m - 1`) a graph with a
    /// universal vertex can have and still be overfull.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

pub fn deficiency_report(g: &Graph) -> OverfullReport {
    let n = g.n();
    let complete = n * n.saturating_sub(1) / 2;
    let budget = (n % 2 == 1 && n >= 3).then(|| (n - 1) / 2 - 1);
    OverfullReport {
        n,
        edge_count: g.edge_count(),
        max_degree: g.max_degree(),
        overfull: is_overfull(g),
        deficiency: complete - g.edge_count(),
        budget,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    Class1,
    Class2,
}

impl EdgeClass {
    /// Colors needed relative to the maximum degree.
    pub fn colors(self, max_degree: usize) -> usize {
        match self {
            EdgeClass::Class1 => max_degree,
            EdgeClass::Class2 => max_degree + 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionReason {
    EvenOrder,
    OddPrimePowerCyclicOverfull,
    CoreSmall,
    TheoremClassification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFacts {
    pub is_cyclic: bool,
    pub odd: bool,
    pub prime_power: bool,
}

impl GroupFacts {
    pub fn of(group: &Group) -> Self {
        let n = group.order() as u64;
        GroupFacts {
            is_cyclic: group.is_cyclic(),
            odd: n % 2 == 1,
            prime_power: factorize(n).is_prime_power(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPrediction {
    pub class_label: EdgeClass,
    pub reason: PredictionReason,
    pub group_facts: GroupFacts,
}

/// Class 2 exactly for cyclic groups of odd prime-power order `>= 3`.
pub fn predict_class(group: &Group) -> ClassPrediction {
    let facts = GroupFacts::of(group);
    let n = group.order();
    let (class_label, reason) = if n.is_multiple_of(2) {
        (EdgeClass::Class1, PredictionReason::EvenOrder)
    } else if facts.is_cyclic && facts.prime_power && n >= 3 {
        (EdgeClass::Class2, PredictionReason::OddPrimePowerCyclicOverfull)
    } else if core_class1_check(&build_power_graph(group)).is_some() {
        (EdgeClass::Class1, PredictionReason::CoreSmall)
    } else {
        (EdgeClass::Class1, PredictionReason::TheoremClassification)
    };
    ClassPrediction {
        class_label,
        reason,
        group_facts: facts,
    }
}

/// Sufficient conditions for Class 1 read off the core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CoreWitness {
    /// The core has at most two vertices.
    SmallCore { vertices: usize },
    /// The core is a forest.
    AcyclicCore { vertices: usize },
}

impl std::fmt::Display for CoreWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoreWitness::SmallCore { vertices: 1 } => write!(f, "core has 1 vertex"),
            CoreWitness::SmallCore { vertices } => write!(f, "core has {vertices} vertices"),
            CoreWitness::AcyclicCore { vertices } => {
                write!(f, "core is acyclic on {vertices} vertices")
            }
        }
    }
}

/// Returns a witness if the core is small or acyclic. `None` says nothing
/// about the class.
pub fn core_class1_check(g: &Graph) -> Option<CoreWitness> {
    let (core, _) = g.core_subgraph();
    if core.n() <= 2 {
        Some(CoreWitness::SmallCore { vertices: core.n() })
    } else if core.is_acyclic() {
        Some(CoreWitness::AcyclicCore { vertices: core.n() })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct_group;

    fn pg(spec: &str) -> Graph {
        build_power_graph(&construct_group(spec).unwrap())
    }

    #[test]
    fn overfull_examples() {
        assert!(is_overfull(&pg("cyclic:9")));
        assert!(!is_overfull(&pg("cyclic:15")));
        assert!(!is_overfull(&pg("cyclic:6")));
        assert!(!is_overfull(&pg("cyclic:1")));
        assert!(!is_overfull(&Graph::empty(0)));
        // K_2 is a single edge: 1 > 1·1 fails
        assert!(!is_overfull(&pg("cyclic:2")));
        assert!(is_overfull(&Graph::complete(3)));
    }

    #[test]
    fn deficiency_examples() {
        let r = deficiency_report(&pg("cyclic:15"));
        assert_eq!((r.deficiency, r.budget, r.overfull), (8, Some(6), false));
        let r = deficiency_report(&Graph::complete(9));
        assert_eq!((r.deficiency, r.budget, r.overfull), (0, Some(3), true));
        let r = deficiency_report(&pg("cyclic:21"));
        assert_eq!((r.edge_count, r.deficiency, r.budget, r.overfull), (198, 12, Some(9), false));
        assert_eq!(deficiency_report(&pg("cyclic:8")).budget, None);
    }

    #[test]
    fn budget_characterizes_overfull_with_universal_vertex() {
        for spec in ["cyclic:3", "cyclic:9", "cyclic:15", "cyclic:25", "product:cyclic:3,cyclic:3"] {
            let r = deficiency_report(&pg(spec));
            assert_eq!(r.max_degree, r.n - 1);
            assert_eq!(r.overfull, r.deficiency <= r.budget.unwrap(), "{spec}");
        }
    }

    #[test]
    fn predictions() {
        let p = predict_class(&construct_group("cyclic:27").unwrap());
        assert_eq!(p.class_label, EdgeClass::Class2);
        assert_eq!(p.reason, PredictionReason::OddPrimePowerCyclicOverfull);
        let p = predict_class(&construct_group("cyclic:15").unwrap());
        assert_eq!((p.class_label, p.reason), (EdgeClass::Class1, PredictionReason::TheoremClassification));
        let p = predict_class(&construct_group("cyclic:16").unwrap());
        assert_eq!((p.class_label, p.reason), (EdgeClass::Class1, PredictionReason::EvenOrder));
        let p = predict_class(&construct_group("cyclic:1").unwrap());
        assert_eq!(p.class_label, EdgeClass::Class1);
        let p = predict_class(&construct_group("product:cyclic:3,cyclic:3").unwrap());
        assert_eq!((p.class_label, p.reason), (EdgeClass::Class1, PredictionReason::CoreSmall));
    }

    #[test]
    fn core_witnesses() {
        let w = core_class1_check(&pg("dihedral:3")).unwrap();
        assert_eq!(w.to_string(), "core has 1 vertex");
        let w = core_class1_check(&pg("quaternion:2")).unwrap();
        assert_eq!(w.to_string(), "core has 2 vertices");
        assert_eq!(core_class1_check(&Graph::complete(9)), None);
        let star_core = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        // max degree 1 on four vertices, core is a matching
        assert!(matches!(core_class1_check(&star_core), Some(CoreWitness::AcyclicCore { vertices: 4 })));
    }
}
