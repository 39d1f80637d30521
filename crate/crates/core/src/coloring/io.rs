//! Coloring file formats.
//!
//! * CSV in the layout of the classic coloring tables: a header row of
//!   1-based colors, then each column lists the edges of that color as
//!   `(a, b)` in paper labeling (`c^i` is `i`, the identity is `n`).
//! * JSON: `{"n": .., "palette": k, "edges": [{"u", "v", "color"}]}` with
//!   0-based vertices and 1-based colors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::EdgeColoring;
use crate::powergraph::{from_paper_label, paper_label, Edge};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad header cell `{0}`: expected a positive color number")]
    Header(String),
    #[error("bad edge cell `{0}`: expected `(a, b)`")]
    Cell(String),
    #[error("vertex label {label} outside 1..={n}")]
    Label { label: usize, n: usize },
    #[error("edge ({0}, {1}) listed twice")]
    Duplicate(usize, usize),
    #[error("color {color} outside palette {palette}")]
    Color { color: usize, palette: usize },
    #[error("vertex count could not be determined")]
    NoVertices,
}

/// Writes the table layout. Columns are colors `1..=palette`, each sorted by
/// paper-labeled endpoints.
pub fn write_csv(c: &EdgeColoring) -> String {
    let n = c.n();
    let mut columns: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.palette()];
    for (e, col) in c.colored_edges() {
        let (a, b) = (paper_label(e.u, n), paper_label(e.v, n));
        columns[col].push((a.min(b), a.max(b)));
    }
    for col in &mut columns {
        col.sort_unstable();
    }
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record((1..=c.palette()).map(|k| k.to_string()))
        .expect("in-memory write");
    for r in 0..rows {
        let record = columns.iter().map(|col| {
            col.get(r)
                .map(|&(a, b)| format!("({a}, {b})"))
                .unwrap_or_default()
        });
        w.write_record(record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn parse_cell(cell: &str) -> Result<(usize, usize), FormatError> {
    let bad = || FormatError::Cell(cell.to_string());
    let inner = cell
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

/// Reads the table layout. `n` is the vertex count; `None` takes the
/// largest label seen. The edge universe is exactly the listed edges.
pub fn read_csv(text: &str, n: Option<usize>) -> Result<EdgeColoring, FormatError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<usize> = r
        .headers()?
        .iter()
        .map(|h| match h.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(FormatError::Header(h.to_string())),
        })
        .collect::<Result<_, _>>()?;
    let mut listed = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        for (i, cell) in rec.iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let color = *header.get(i).ok_or_else(|| FormatError::Cell(cell.to_string()))?;
            listed.push((parse_cell(cell)?, color));
        }
    }
    let max_label = listed.iter().map(|&((a, b), _)| a.max(b)).max();
    let n = n.or(max_label).ok_or(FormatError::NoVertices)?;
    let palette = header.iter().map(|k| k + 1).max().unwrap_or(0);
    let mut c = EdgeColoring::new(n, palette);
    for ((a, b), color) in listed {
        for label in [a, b] {
            if label == 0 || label > n {
                return Err(FormatError::Label { label, n });
            }
        }
        if a == b {
            return Err(FormatError::Cell(format!("({a}, {b})")));
        }
        let e = Edge::new(from_paper_label(a, n), from_paper_label(b, n));
        if c.contains(e) {
            return Err(FormatError::Duplicate(a, b));
        }
        c.add_edge(e);
        c.set_color(e, color).expect("palette covers header");
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdgeJson {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub palette: usize,
    pub edges: Vec<ColoredEdgeJson>,
}

pub fn to_json(c: &EdgeColoring) -> ColoringJson {
    ColoringJson {
        n: Some(c.n()),
        palette: c.palette(),
        edges: c
            .colored_edges()
            .into_iter()
            .map(|(e, col)| ColoredEdgeJson {
                u: e.u,
                v: e.v,
                color: col + 1,
            })
            .collect(),
    }
}

pub fn write_json(c: &EdgeColoring) -> String {
    serde_json::to_string_pretty(&to_json(c)).expect("serializable")
}

pub fn from_json(doc: &ColoringJson) -> Result<EdgeColoring, FormatError> {
    let n = doc
        .n
        .or_else(|| doc.edges.iter().map(|e| e.u.max(e.v) + 1).max())
        .ok_or(FormatError::NoVertices)?;
    let mut c = EdgeColoring::new(n, doc.palette);
    for e in &doc.edges {
        if e.u >= n || e.v >= n {
            return Err(FormatError::Label {
                label: e.u.max(e.v),
                n,
            });
        }
        if e.u == e.v {
            return Err(FormatError::Cell(format!("({}, {})", e.u, e.v)));
        }
        if e.color == 0 || e.color > doc.palette {
            return Err(FormatError::Color {
                color: e.color,
                palette: doc.palette,
            });
        }
        let edge = Edge::new(e.u, e.v);
        if c.contains(edge) {
            return Err(FormatError::Duplicate(e.u, e.v));
        }
        c.add_edge(edge);
        c.set_color(edge, e.color - 1).expect("checked range");
    }
    Ok(c)
}

pub fn read_json(text: &str) -> Result<EdgeColoring, FormatError> {
    from_json(&serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::round_robin_even;

    #[test]
    fn csv_roundtrip() {
        let c = round_robin_even(6).unwrap();
        let text = write_csv(&c);
        assert!(text.starts_with("1,2,3,4,5\n"));
        assert!(text.contains("\"("));
        let back = read_csv(&text, Some(6)).unwrap();
        assert_eq!(back, c);
        assert_eq!(write_csv(&back), text);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(read_csv("x\n\"(1, 2)\"\n", None), Err(FormatError::Header(_))));
        assert!(matches!(read_csv("1\n\"1, 2\"\n", None), Err(FormatError::Cell(_))));
        assert!(matches!(read_csv("1\n\"(1, 9)\"\n", Some(3)), Err(FormatError::Label { .. })));
        assert!(matches!(read_csv("1,2\n\"(1, 2)\",\"(2, 1)\"\n", None), Err(FormatError::Duplicate(2, 1))));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let c = round_robin_even(4).unwrap();
        let text = write_json(&c);
        assert_eq!(read_json(&text).unwrap(), c);
        assert!(matches!(read_json(r#"{"palette":1,"edges":[{"u":0,"v":1,"color":2}]}"#), Err(FormatError::Color { .. })));
        assert!(matches!(read_json(r#"{"palette":1,"edges":[{"u":0,"v":0,"color":1}]}"#), Err(FormatError::Cell(_))));
        let inferred = read_json(r#"{"palette":1,"edges":[{"u":0,"v":2,"color":1}]}"#).unwrap();
        assert_eq!(inferred.n(), 3);
    }
}
