//! Explicit colorings of complete graphs.

use super::{ColoringError, EdgeColoring};
use crate::powergraph::{from_paper_label, Edge};

/// 1-factorization of `K_n` for even `n` by the circle method: vertex
/// `n - 1` is fixed, the others sit on a circle and rotate one step per
/// round. Round `r` gets color `r`.
pub fn round_robin_even(n: usize) -> Result<EdgeColoring, ColoringError> {
    if !n.is_multiple_of(2) || n < 2 {
        return Err(ColoringError::Parity(format!(
            "round robin needs an even vertex count >= 2, got {n}"
        )));
    }
    let m = n - 1;
    let mut c = EdgeColoring::for_complete(n, m);
    for r in 0..m {
        c.set_color(Edge::new(r, m), r)?;
        for i in 1..n / 2 {
            let a = (r + i) % m;
            let b = (r + m - i) % m;
            c.set_color(Edge::new(a, b), r)?;
        }
    }
    Ok(c)
}

/// The classes `S_p = {(p - q, p + q) : q = 1..(n-1)/2}` for odd `n`, with
/// vertices labeled `1..n` modulo `n`. Element `p - 1` of the result is
/// `S_p`, converted to internal vertices (label `n` is vertex 0).
pub fn sp_classes(n: usize) -> Result<Vec<Vec<Edge>>, ColoringError> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(ColoringError::Parity(format!(
            "S_p classes need an odd vertex count >= 3, got {n}"
        )));
    }
    let wrap = |x: isize| -> usize {
        let r = x.rem_euclid(n as isize) as usize;
        if r == 0 {
            n
        } else {
            r
        }
    };
    Ok((1..=n as isize)
        .map(|p| {
            (1..=(n as isize - 1) / 2)
                .map(|q| {
                    let a = from_paper_label(wrap(p - q), n);
                    let b = from_paper_label(wrap(p + q), n);
                    Edge::new(a, b)
                })
                .collect()
        })
        .collect())
}

/// `K_n` (odd `n`) with `S_1..S_{n-1}` colored `0..n-2` and the last class
/// `S_n` left uncolored. Returns the coloring and that uncolored matching.
pub fn base_near_coloring(n: usize) -> Result<(EdgeColoring, Vec<Edge>), ColoringError> {
    let classes = sp_classes(n)?;
    let mut c = EdgeColoring::for_complete(n, n - 1);
    for (color, class) in classes[..n - 1].iter().enumerate() {
        for &e in class {
            c.set_color(e, color)?;
        }
    }
    let mut matching = classes[n - 1].clone();
    matching.sort();
    Ok((c, matching))
}
