use proptest::prelude::*;

use powergraph::catalog::generate_catalog;
use powergraph::coloring::io::{read_csv, read_json, write_csv, write_json};
use powergraph::coloring::{kempe_invert, kempe_path, rhee_transform, verify_proper, RheeConfig};
use powergraph::groups::construct_group;
use powergraph::oracle::misra_gries;
use powergraph::overfull::is_overfull;
use powergraph::powergraph::{build_power_graph, Graph};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Odd `n`, vertex 0 universal, other edges random, never overfull.
fn universal_target() -> impl Strategy<Value = Graph> {
    (1usize..=4).prop_flat_map(|m| {
        let n = 2 * m + 1;
        let pairs = (n - 1) * (n - 2) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
            let mut k = 0;
            for a in 1..n {
                for b in a + 1..n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            edges.truncate(2 * m * m);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn misra_gries_is_proper_within_vizing(g in graph_strategy(12)) {
        let c = misra_gries(&g);
        let r = verify_proper(&g, &c).unwrap();
        prop_assert!(r.valid);
        prop_assert!(r.colors_used <= g.max_degree() + 1);
    }

    #[test]
    fn kempe_inversion_is_a_proper_involution(g in graph_strategy(10), v in 0usize..10, a in 0usize..11, b in 0usize..11) {
        let c = misra_gries(&g);
        let v = v % g.n();
        let (a, b) = (a % c.palette().max(1), b % c.palette().max(1));
        prop_assume!(a != b);
        let p = kempe_path(&c, v, a, b).unwrap();
        let inv = kempe_invert(&c, &p).unwrap();
        prop_assert!(inv.is_proper());
        let back = kempe_invert(&inv, &kempe_path(&inv, v, a, b).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn coloring_formats_round_trip(g in graph_strategy(12)) {
        let c = misra_gries(&g);
        prop_assert_eq!(read_json(&write_json(&c)).unwrap(), c.clone());
        let csv = read_csv(&write_csv(&c), Some(g.n())).unwrap();
        prop_assert_eq!(csv.colored_edges(), c.colored_edges());
        prop_assert_eq!(Graph::from_json_str(&g.to_json_string()).unwrap().edges(), g.edges());
    }

    #[test]
    fn exchange_reaches_non_overfull_targets(t in universal_target(), seed in any::<u64>()) {
        prop_assert!(!is_overfull(&t));
        let out = rhee_transform(&t, &RheeConfig { seed, ..RheeConfig::default() }).unwrap();
        let r = verify_proper(&t, &out.coloring).unwrap();
        prop_assert!(r.valid);
        prop_assert!(r.colors_used < t.n());
    }
}

#[test]
fn power_graph_structure_over_catalog() {
    for e in &generate_catalog(40).entries {
        let group = construct_group(&e.spec).unwrap();
        let g = build_power_graph(&group);
        let n = group.order();
        if n >= 2 {
            assert_eq!(g.degree(0), n - 1, "{}", e.spec);
        }
        // brute-force adjacency from the multiplication table
        for a in 0..n {
            let mut powers = vec![0usize];
            let mut x = a;
            while x != 0 {
                powers.push(x);
                x = group.mul(x, a);
            }
            for &p in &powers {
                if p != a {
                    assert!(g.has_edge(a, p), "{}: {a}~{p}", e.spec);
                }
            }
        }
        let sum: usize = (0..n).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
        let complete = g.edge_count() == n * (n.saturating_sub(1)) / 2;
        let prime_power_cyclic = group.is_cyclic() && (n == 1 || powergraph::groups::is_prime_power(n as u64));
        assert_eq!(complete, prime_power_cyclic, "{}", e.spec);
    }
}
