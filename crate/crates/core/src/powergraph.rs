//! Simple undirected graphs and the power graph of a finite group.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::Group;

/// Canonical unordered vertex pair with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonicalizes the pair. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loops are not edges");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is out of range for {2} vertices")]
    OutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("label count {0} does not match vertex count {1}")]
    Labels(usize, usize),
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Simple undirected graph on `0..n` with sorted adjacency lists and a
/// bitset row per vertex for constant-time edge tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    bits: Vec<Vec<u64>>,
    edge_count: usize,
    labels: Vec<String>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adjacency: vec![Vec::new(); n],
            bits: vec![vec![0; n.div_ceil(64).max(1)]; n],
            edge_count: 0,
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g.finish()
    }

    /// Builds a graph from an edge list; rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if g.has_edge(a, b) {
                return Err(GraphError::Duplicate(a.min(b), a.max(b)));
            }
            g.insert(a, b);
        }
        Ok(g.finish())
    }

    fn insert(&mut self, a: usize, b: usize) {
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        self.bits[a][b / 64] |= 1 << (b % 64);
        self.bits[b][a / 64] |= 1 << (a % 64);
        self.edge_count += 1;
    }

    fn finish(mut self) -> Self {
        for list in &mut self.adjacency {
            list.sort_unstable();
        }
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::Labels(labels.len(), self.n));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.bits[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// All edges, lexicographically sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adjacency[u] {
                if u < v {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertices adjacent to every other vertex.
    pub fn full_degree_vertices(&self) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        (0..self.n).filter(|&v| self.degree(v) == self.n - 1).collect()
    }

    /// Subgraph induced by `vertices` (which must be sorted and distinct),
    /// plus the map from new indices back to parent vertices.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut sub = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    sub.insert(i, j);
                }
            }
        }
        sub.labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        (sub.finish(), vertices.to_vec())
    }

    /// The core: subgraph induced by the maximum-degree vertices.
    pub fn core_subgraph(&self) -> (Graph, Vec<usize>) {
        let delta = self.max_degree();
        let vs: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) == delta).collect();
        self.induced(&vs)
    }

    /// Non-edges relative to `K_n`, sorted.
    pub fn complement_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    /// True if the graph has no cycle (is a forest).
    pub fn is_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.edges() {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    pub fn remove_edges(&self, remove: &[Edge]) -> Graph {
        let drop: std::collections::HashSet<Edge> = remove.iter().copied().collect();
        let edges = self
            .edges()
            .into_iter()
            .filter(|e| !drop.contains(e))
            .map(|e| (e.u, e.v));
        Graph::from_edges(self.n, edges)
            .expect("subset of a simple graph")
            .with_labels(self.labels.clone())
            .expect("same vertex set")
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().iter().map(|e| [e.u, e.v]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(doc: &GraphJson) -> Result<Graph, GraphError> {
        let g = Graph::from_edges(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?;
        if doc.labels.is_empty() {
            Ok(g)
        } else {
            g.with_labels(doc.labels.clone())
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph JSON serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Graph, GraphError> {
        let doc: GraphJson = serde_json::from_str(s)?;
        Graph::from_json(&doc)
    }

    /// Graphviz rendering. `edge_color` supplies an optional 1-based color
    /// attribute per edge.
    pub fn to_dot(&self, edge_color: impl Fn(Edge) -> Option<usize>) -> String {
        let mut out = String::from("graph G {\n");
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for e in self.edges() {
            match edge_color(e) {
                Some(c) => {
                    let _ = writeln!(out, "  {} -- {} [color={c}, label=\"{c}\"];", e.u, e.v);
                }
                None => {
                    let _ = writeln!(out, "  {} -- {};", e.u, e.v);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized graph: `{"n": .., "edges": [[u, v], ..], "labels": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Vec<String>,
}

/// How vertices are named in exported files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Labeling {
    /// Element names from the group (`e`, `c^3`, `(c^1, c^2)`, ...).
    #[default]
    Names,
    /// Integers `1..n`: internal vertex `i` is `i`, the identity (vertex 0)
    /// is `n`. For cyclic groups this is the `c^i -> i` convention of the
    /// classic coloring tables.
    Paper,
}

/// Paper-style label of internal vertex `v` among `n`.
pub fn paper_label(v: usize, n: usize) -> usize {
    if v == 0 {
        n
    } else {
        v
    }
}

/// Inverse of [`paper_label`]: label `1..=n` to internal vertex.
pub fn from_paper_label(label: usize, n: usize) -> usize {
    label % n
}

/// Power graph: `a ~ b` iff one is a power of the other.
pub fn build_power_graph(group: &Group) -> Graph {
    build_power_graph_labeled(group, Labeling::Names)
}

pub fn build_power_graph_labeled(group: &Group, labeling: Labeling) -> Graph {
    let n = group.order();
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if group.in_cyclic_subgroup(a, b) || group.in_cyclic_subgroup(b, a) {
                g.insert(a, b);
            }
        }
    }
    g.labels = match labeling {
        Labeling::Names => group.element_names().to_vec(),
        Labeling::Paper => (0..n).map(|v| paper_label(v, n).to_string()).collect(),
    };
    g.finish()
}
