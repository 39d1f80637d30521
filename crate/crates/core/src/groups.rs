//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`, with the identity always at index 0.
//! Groups are built either from a family spec (`cyclic:n`, `dihedral:n`,
//! `quaternion:m`, `product:<spec>,<spec>,...`) or loaded from a table file
//! (`table:<path>`). Every constructed group passes full validation.

use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Index of an element inside a [`Group`].
pub type Element = usize;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("malformed group spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("element index {index} out of range for group of order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("failed to read table file `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A finite group as a validated Cayley table with cached element orders
/// and cyclic-subgroup membership.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    element_orders: Vec<usize>,
    // powers[b] is a bitset of <b>
    powers: Vec<Vec<u64>>,
    label: String,
    family: Family,
    element_names: Vec<String>,
}

/// Which constructor produced a group. Used for labeling and to identify
/// generalized quaternion groups without searching for presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Product(Vec<Family>),
    Table,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl Group {
    /// Builds a group from a row-major Cayley table, validating every group
    /// axiom. `table[g * n + h]` is the product `g·h`.
    pub fn from_table(
        order: usize,
        table: Vec<usize>,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let names = (0..order)
            .map(|g| if g == 0 { "e".to_string() } else { format!("g{g}") })
            .collect();
        Self::assemble(order, table, label.into(), Family::Table, names)
    }

    fn assemble(
        order: usize,
        table: Vec<usize>,
        label: String,
        family: Family,
        element_names: Vec<String>,
    ) -> Result<Self, GroupError> {
        validate_table(order, &table)?;
        let mut element_orders = vec![0; order];
        let mut powers = vec![vec![0u64; words(order)]; order];
        for g in 0..order {
            let mut x = 0;
            let mut k = 0;
            loop {
                powers[g][x / 64] |= 1 << (x % 64);
                x = table[x * order + g];
                k += 1;
                if x == 0 {
                    break;
                }
            }
            element_orders[g] = k;
        }
        Ok(Group {
            order,
            table,
            element_orders,
            powers,
            label,
            family,
            element_names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Human-readable name of an element, e.g. `c^3` or `(c^1, c^2)`.
    pub fn element_name(&self, g: Element) -> &str {
        &self.element_names[g]
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn mul(&self, g: Element, h: Element) -> Element {
        self.table[g * self.order + h]
    }

    fn check(&self, g: Element) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::OutOfRange {
                index: g,
                order: self.order,
            })
        }
    }

    /// Smallest `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: Element) -> Result<usize, GroupError> {
        self.check(g)?;
        Ok(self.element_orders[g])
    }

    /// Whether `a` lies in the cyclic subgroup generated by `b`.
    pub fn is_power_of(&self, a: Element, b: Element) -> Result<bool, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.in_cyclic_subgroup(a, b))
    }

    #[inline]
    pub(crate) fn in_cyclic_subgroup(&self, a: Element, b: Element) -> bool {
        self.powers[b][a / 64] >> (a % 64) & 1 == 1
    }

    /// Elements of `<b>`, ascending.
    pub fn cyclic_subgroup(&self, b: Element) -> Vec<Element> {
        (0..self.order)
            .filter(|&a| self.in_cyclic_subgroup(a, b))
            .collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders.contains(&self.order)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|g| (g + 1..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn inverse(&self, g: Element) -> Element {
        let row = &self.table[g * self.order..(g + 1) * self.order];
        row.iter().position(|&x| x == 0).expect("validated group")
    }

    /// Number of involutions (elements of order 2).
    pub fn involution_count(&self) -> usize {
        self.element_orders.iter().filter(|&&k| k == 2).count()
    }

    /// True for the dicyclic family at 2-power order, i.e. the generalized
    /// quaternion groups Q_8, Q_16, Q_32, ...
    pub fn is_generalized_quaternion(&self) -> bool {
        matches!(self.family, Family::Dicyclic(_)) && self.order.is_power_of_two()
    }
}

/// Checks the Latin-square property, two-sided identity at 0, and full
/// associativity (cubic in the order).
pub fn validate_table(n: usize, table: &[usize]) -> Result<(), GroupError> {
    let bad = |msg: String| Err(GroupError::InvalidTable(msg));
    if n == 0 {
        return bad("group order must be positive".into());
    }
    if table.len() != n * n {
        return bad(format!("expected {} entries, found {}", n * n, table.len()));
    }
    if let Some(&x) = table.iter().find(|&&x| x >= n) {
        return bad(format!("entry {x} out of range 0..{n}"));
    }
    let mut seen = vec![false; n];
    for g in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for h in 0..n {
            let x = table[g * n + h];
            if seen[x] {
                return bad(format!("row {g} repeats {x}"));
            }
            seen[x] = true;
        }
    }
    for h in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for g in 0..n {
            let x = table[g * n + h];
            if seen[x] {
                return bad(format!("column {h} repeats {x}"));
            }
            seen[x] = true;
        }
    }
    for g in 0..n {
        if table[g] != g || table[g * n] != g {
            return bad(format!("element 0 is not a two-sided identity (fails at {g})"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return bad(format!("not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}

/// Parsed form of a group spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Product(Vec<GroupSpec>),
    Table(String),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(m) => write!(f, "quaternion:{m}"),
            GroupSpec::Table(p) => write!(f, "table:{p}"),
            GroupSpec::Product(fs) => {
                f.write_str("product:")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    match s {
                        GroupSpec::Product(_) => write!(f, "({s})")?,
                        _ => write!(f, "{s}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s.trim(), s)
    }
}

fn parse_spec(s: &str, whole: &str) -> Result<GroupSpec, GroupError> {
    let malformed = |reason: &str| GroupError::MalformedSpec {
        spec: whole.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return parse_spec(inner, whole);
    }
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| malformed("expected `<family>:<argument>`"))?;
    let number = |min: usize| -> Result<usize, GroupError> {
        let v: usize = arg
            .trim()
            .parse()
            .map_err(|_| malformed("expected a positive integer argument"))?;
        if v < min {
            Err(malformed(&format!("argument must be at least {min}")))
        } else {
            Ok(v)
        }
    };
    match kind.trim() {
        "cyclic" => Ok(GroupSpec::Cyclic(number(1)?)),
        "dihedral" => Ok(GroupSpec::Dihedral(number(3)?)),
        "quaternion" => Ok(GroupSpec::Quaternion(number(2)?)),
        "table" => {
            if arg.trim().is_empty() {
                Err(malformed("missing table path"))
            } else {
                Ok(GroupSpec::Table(arg.trim().to_string()))
            }
        }
        "product" => {
            let parts = split_top_level(arg).map_err(&malformed)?;
            if parts.len() < 2 {
                return Err(malformed("a product needs at least two factors"));
            }
            let factors = parts
                .into_iter()
                .map(|p| parse_spec(p, whole))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GroupSpec::Product(factors))
        }
        other => Err(malformed(&format!("unknown family `{other}`"))),
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>, &'static str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses");
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses");
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err("empty product factor");
    }
    Ok(parts)
}

/// Parses and builds a group from its spec string.
pub fn construct_group(spec: &str) -> Result<Group, GroupError> {
    let parsed: GroupSpec = spec.parse()?;
    build(&parsed)
}

/// Builds a group from an already parsed spec.
pub fn build(spec: &GroupSpec) -> Result<Group, GroupError> {
    let label = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n;
            let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
            let names = (0..n)
                .map(|i| if i == 0 { "e".into() } else { format!("c^{i}") })
                .collect();
            Group::assemble(n, table, label, Family::Cyclic(n), names)
        }
        GroupSpec::Dihedral(n) => {
            // r^i -> i, s r^i -> n + i; (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
            let n = *n;
            let order = 2 * n;
            let mut table = vec![0; order * order];
            for x in 0..order {
                let (a, i) = (x / n, x % n);
                for y in 0..order {
                    let (b, j) = (y / n, y % n);
                    let rot = if b == 0 { (i + j) % n } else { (n - i + j) % n };
                    table[x * order + y] = ((a + b) % 2) * n + rot;
                }
            }
            let names = (0..order)
                .map(|x| match (x / n, x % n) {
                    (0, 0) => "e".into(),
                    (0, i) => format!("r^{i}"),
                    (_, 0) => "s".into(),
                    (_, i) => format!("sr^{i}"),
                })
                .collect();
            Group::assemble(order, table, label, Family::Dihedral(n), names)
        }
        GroupSpec::Quaternion(m) => {
            // <a, x | a^2m = 1, x^2 = a^m, x a x^-1 = a^-1>; a^i -> i, x a^i -> 2m + i
            let m = *m;
            let half = 2 * m;
            let order = 4 * m;
            let mut table = vec![0; order * order];
            for p in 0..order {
                let (s, i) = (p / half, p % half);
                for q in 0..order {
                    let (t, j) = (q / half, q % half);
                    table[p * order + q] = match (s, t) {
                        (0, 0) => (i + j) % half,
                        (0, _) => half + (half - i + j) % half,
                        (_, 0) => half + (i + j) % half,
                        _ => (m + half - i + j) % half,
                    };
                }
            }
            let names = (0..order)
                .map(|p| match (p / half, p % half) {
                    (0, 0) => "e".into(),
                    (0, i) => format!("a^{i}"),
                    (_, 0) => "x".into(),
                    (_, i) => format!("xa^{i}"),
                })
                .collect();
            Group::assemble(order, table, label, Family::Dicyclic(m), names)
        }
        GroupSpec::Product(factors) => {
            let groups = factors.iter().map(build).collect::<Result<Vec<_>, _>>()?;
            let mut acc = groups[0].clone();
            let mut fam = vec![acc.family.clone()];
            for g in &groups[1..] {
                acc = direct_product(&acc, g);
                fam.push(g.family.clone());
            }
            acc.label = label;
            acc.family = Family::Product(fam);
            acc.element_names = product_names(&groups);
            Ok(acc)
        }
        GroupSpec::Table(path) => {
            let mut g = load_table_file(Path::new(path))?;
            g.label = label;
            Ok(g)
        }
    }
}

fn product_names(groups: &[Group]) -> Vec<String> {
    let total: usize = groups.iter().map(|g| g.order).product();
    (0..total)
        .map(|mut idx| {
            if idx == 0 {
                return "e".to_string();
            }
            let mut parts = vec![String::new(); groups.len()];
            for (k, g) in groups.iter().enumerate().rev() {
                parts[k] = g.element_names[idx % g.order].clone();
                idx /= g.order;
            }
            format!("({})", parts.join(", "))
        })
        .collect()
}

/// Direct product; element `(g, h)` has index `g * |H| + h`.
pub fn direct_product(a: &Group, b: &Group) -> Group {
    let (na, nb) = (a.order, b.order);
    let n = na * nb;
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (g1, h1) = (x / nb, x % nb);
        for y in 0..n {
            let (g2, h2) = (y / nb, y % nb);
            table[x * n + y] = a.mul(g1, g2) * nb + b.mul(h1, h2);
        }
    }
    let label = format!("product:{},{}", a.label, b.label);
    let mut g = Group::assemble(
        n,
        table,
        label,
        Family::Product(vec![a.family.clone(), b.family.clone()]),
        Vec::new(),
    )
    .expect("product of valid groups is a group");
    g.element_names = product_names(&[a.clone(), b.clone()]);
    g
}

/// Parses the table text format: first line `n`, then `n` rows of `n`
/// whitespace-separated element indices.
pub fn parse_table(text: &str, label: &str) -> Result<Group, GroupError> {
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| GroupError::InvalidTable("empty table file".into()))?
        .parse()
        .map_err(|_| GroupError::InvalidTable("first token must be the order".into()))?;
    let table = tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| GroupError::InvalidTable(format!("bad entry `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Group::from_table(n, table, label)
}

pub fn load_table_file(path: &Path) -> Result<Group, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|source| GroupError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text, &format!("table:{}", path.display()))
}

/// Renders a group in the table text format accepted by [`parse_table`].
pub fn format_table(g: &Group) -> String {
    let n = g.order;
    let mut out = format!("{n}\n");
    for row in g.table.chunks(n) {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Prime factorization: `(prime, exponent)` pairs, primes increasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, a)| p.pow(a)).product()
    }

    /// Exactly one distinct prime. `1` is not a prime power.
    pub fn is_prime_power(&self) -> bool {
        self.0.len() == 1
    }
}

pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Factorization(out)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .0
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn is_prime_power(n: u64) -> bool {
    n >= 2 && factorize(n).is_prime_power()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_multiset(g: &Group) -> std::collections::BTreeMap<usize, usize> {
        let mut m = std::collections::BTreeMap::new();
        for &k in g.element_orders() {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn cyclic_15_orders() {
        let g = construct_group("cyclic:15").unwrap();
        assert_eq!(g.order(), 15);
        // n / gcd(k, n) by brute force
        let mut expect = std::collections::BTreeMap::new();
        for k in 0..15u64 {
            *expect.entry((15 / gcd(k, 15)) as usize).or_insert(0) += 1;
        }
        assert_eq!(order_multiset(&g), expect);
        assert_eq!(expect, [(1, 1), (3, 2), (5, 4), (15, 8)].into_iter().collect());
        assert_eq!(g.element_order(3).unwrap(), 5);
    }

    #[test]
    fn trivial_group() {
        let g = construct_group("cyclic:1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_orders(), &[1]);
        assert!(g.is_cyclic());
    }

    #[test]
    fn quaternion_unique_involution() {
        let g = construct_group("quaternion:2").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.involution_count(), 1);
        assert!(g.is_generalized_quaternion());
        assert!(!g.is_abelian());
        // a^2 = -1
        assert_eq!(g.element_order(2).unwrap(), 2);
        // dicyclic of order 12 also has a unique involution
        let d = construct_group("quaternion:3").unwrap();
        assert_eq!(d.involution_count(), 1);
        assert!(!d.is_generalized_quaternion());
    }

    #[test]
    fn power_relation() {
        let g = construct_group("cyclic:15").unwrap();
        assert!(g.is_power_of(10, 5).unwrap());
        assert!(!g.is_power_of(3, 5).unwrap());
        assert_eq!(g.cyclic_subgroup(5), vec![0, 5, 10]);
        for b in 0..15 {
            assert!(g.is_power_of(0, b).unwrap());
        }
        assert!(g.is_power_of(15, 0).is_err());
        assert!(g.element_order(99).is_err());
    }

    #[test]
    fn cyclicity() {
        assert!(construct_group("cyclic:15").unwrap().is_cyclic());
        assert!(!construct_group("product:cyclic:3,cyclic:3").unwrap().is_cyclic());
        assert!(construct_group("product:cyclic:3,cyclic:5").unwrap().is_cyclic());
        assert!(!construct_group("dihedral:3").unwrap().is_cyclic());
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(factorize(15).0, vec![(3, 1), (5, 1)]);
        assert_eq!(factorize(27).0, vec![(3, 3)]);
        assert!(factorize(1).0.is_empty());
        assert!(!is_prime_power(1));
        assert!(is_prime_power(2));
        assert!(!is_prime_power(12));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn phi_matches_gcd_count() {
        for n in 1..=1000u64 {
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn spec_parsing() {
        let s: GroupSpec = "product:cyclic:2,(product:cyclic:2,cyclic:3)".parse().unwrap();
        assert_eq!(s.to_string(), "product:cyclic:2,(product:cyclic:2,cyclic:3)");
        assert_eq!(build(&s).unwrap().order(), 12);
        for bad in ["", "cyclic", "cyclic:0", "cyclic:x", "dihedral:2", "quaternion:1",
                    "product:cyclic:2", "product:cyclic:2,", "mystery:3", "product:(cyclic:2,cyclic:3"] {
            assert!(construct_group(bad).is_err(), "{bad} should fail");
        }
        assert_eq!(construct_group(" cyclic:7 ").unwrap().label(), "cyclic:7");
    }

    #[test]
    fn table_validation_errors() {
        // not a Latin square
        assert!(parse_table("2\n0 1\n1 1\n", "t").is_err());
        // identity not at 0
        assert!(parse_table("2\n1 0\n0 1\n", "t").is_err());
        // wrong count
        assert!(parse_table("2\n0 1\n1\n", "t").is_err());
        // Latin square with identity but not associative (order 5 loop)
        let loop5 = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        match parse_table(loop5, "t") {
            Err(GroupError::InvalidTable(msg)) => assert!(msg.contains("associative"), "{msg}"),
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn table_roundtrip() {
        let g = construct_group("dihedral:5").unwrap();
        let h = parse_table(&format_table(&g), "copy").unwrap();
        assert_eq!(g.table(), h.table());
        assert_eq!(g.element_orders(), h.element_orders());
    }

    #[test]
    fn subgroup_sizes_match_orders() {
        for spec in ["cyclic:12", "dihedral:6", "quaternion:4", "product:cyclic:2,cyclic:6"] {
            let g = construct_group(spec).unwrap();
            for b in 0..g.order() {
                assert_eq!(g.cyclic_subgroup(b).len(), g.element_orders()[b]);
                assert_eq!(g.order() % g.element_orders()[b], 0);
            }
        }
    }
}
