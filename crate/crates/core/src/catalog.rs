//! The finite test universe: cyclic, abelian, dihedral and dicyclic groups
//! up to a maximum order.

use serde::Serialize;

use crate::groups::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub spec: String,
    pub order: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub max_order: usize,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn specs(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.spec.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of order at most `max_order`.
    pub fn up_to(&self, max_order: usize) -> Catalog {
        Catalog {
            max_order,
            entries: self
                .entries
                .iter()
                .filter(|e| e.order <= max_order)
                .cloned()
                .collect(),
        }
    }
}

/// Invariant-factor lists `d1 | d2 | ... | dk` with product `n`, every
/// `d_i >= 2`. The single list `[n]` is the cyclic group.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && d % prev == 0 {
                acc.push(d);
                extend(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    extend(n, 1, &mut Vec::new(), &mut out);
    out
}

/// All catalog groups of order at most `max_order`, sorted by
/// `(order, spec)`. Abelian groups appear once each, in invariant-factor
/// form. `max_order == 0` yields an empty catalog.
pub fn generate_catalog(max_order: usize) -> Catalog {
    let mut entries = Vec::new();
    let mut push = |spec: GroupSpec, order: usize| {
        entries.push(CatalogEntry {
            spec: spec.to_string(),
            order,
        })
    };
    for n in 1..=max_order {
        for factors in invariant_factor_lists(n) {
            let spec = match factors.as_slice() {
                [] | [_] => GroupSpec::Cyclic(n),
                fs => GroupSpec::Product(fs.iter().map(|&d| GroupSpec::Cyclic(d)).collect()),
            };
            push(spec, n);
        }
        if n % 2 == 0 && n >= 6 {
            push(GroupSpec::Dihedral(n / 2), n);
        }
        if n % 4 == 0 && n >= 8 {
            push(GroupSpec::Quaternion(n / 4), n);
        }
    }
    entries.sort_by(|a, b| (a.order, &a.spec).cmp(&(b.order, &b.spec)));
    Catalog { max_order, entries }
}
