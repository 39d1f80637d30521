use powergraph::coloring::io::read_csv;
use powergraph::coloring::{kempe_invert, kempe_path, verify_proper, ExchangeState};
use powergraph::groups::construct_group;
use powergraph::powergraph::{build_power_graph, from_paper_label, paper_label, Edge};

fn table1() -> powergraph::coloring::EdgeColoring {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/table1_c15.csv")).unwrap();
    read_csv(&text, Some(15)).unwrap()
}

fn v(label: usize) -> usize {
    from_paper_label(label, 15)
}

fn p(a: usize, b: usize) -> Edge {
    Edge::new(v(a), v(b))
}

// colors in the table are 1-based
const TWO: usize = 1;
const SEVEN: usize = 6;

#[test]
fn remark_alternating_path_on_table_one() {
    let c = table1();
    assert!(c.has_color(v(5), TWO) && !c.has_color(v(5), SEVEN));
    let path = kempe_path(&c, v(5), TWO, SEVEN).unwrap();
    let labels: Vec<usize> = path.vertices.iter().map(|&x| paper_label(x, 15)).collect();
    assert_eq!(labels, vec![5, 14, 15, 4, 10]);
    assert_eq!(path.edge_colors, vec![TWO, SEVEN, TWO, SEVEN]);
    assert!(!c.has_color(v(10), TWO));
    let inv = kempe_invert(&c, &path).unwrap();
    assert!(inv.is_proper());
    assert!(!inv.has_color(v(5), TWO));
}

#[test]
fn remark_exchange_restores_the_power_graph() {
    // the Remark's state: drop (5, 10), add (6, 10) colored 2
    let mut c = table1();
    c.remove_edge(p(5, 10));
    c.add_edge(p(6, 10));
    c.set_color(p(6, 10), TWO).unwrap();
    assert!(c.is_proper());
    let target = build_power_graph(&construct_group("cyclic:15").unwrap());
    let mut state = ExchangeState::new(c, target.clone()).unwrap();
    assert_eq!(state.extra().iter().copied().collect::<Vec<_>>(), vec![p(6, 10)]);
    state.exchange_edge(p(6, 10), p(5, 10)).unwrap();
    assert!(state.is_done() && state.extra().is_empty());
    let r = verify_proper(&target, state.coloring()).unwrap();
    assert!(r.valid);
    assert_eq!(r.colors_used, 14);
}
