//! Finite groups given by Cayley tables, plus a small catalog of standard
//! families addressed by a compact spec string (`Z6`, `D4`, `S3`, `Q8`,
//! `Z2xZ4`, `file:<path>`).

use std::fmt;
use std::path::Path;

use crate::error::GroupError;

/// Index of a group element. The identity is always `0`.
pub type Element = usize;

/// Default upper bound on the order of groups built from a spec string.
pub const DEFAULT_MAX_ORDER: usize = 16;

/// Which side a translation multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `x -> b·x`
    Left,
    /// `x -> x·b`
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

/// A validated finite group. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major `order × order` table, `table[a * order + b] = a·b`.
    table: Vec<Element>,
    inverses: Vec<Element>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validate a Cayley table and build a group from it.
    ///
    /// If the identity sits at some index `e != 0`, labels `0` and `e` are
    /// swapped so that the identity ends up at index `0`.
    pub fn from_cayley_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_cayley_table_named(rows, "custom")
    }

    pub fn from_cayley_table_named(
        rows: Vec<Vec<usize>>,
        name: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let m = rows.len();
        if m == 0 {
            return Err(GroupError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(GroupError::NotSquare { row: r, len: row.len(), expected: m });
            }
            if let Some(&v) = row.iter().find(|&&v| v >= m) {
                return Err(GroupError::EntryOutOfRange { row: r, value: v, order: m });
            }
        }
        for (r, row) in rows.iter().enumerate() {
            if !is_permutation(row.iter().copied(), m) {
                return Err(GroupError::RowNotPermutation { row: r });
            }
        }
        for c in 0..m {
            if !is_permutation(rows.iter().map(|row| row[c]), m) {
                return Err(GroupError::ColumnNotPermutation { column: c });
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        let mut table: Vec<Element> = rows.into_iter().flatten().collect();
        if identity != 0 {
            table = relabel_swap(&table, m, 0, identity);
        }

        for a in 0..m {
            for b in 0..m {
                let ab = table[a * m + b];
                for c in 0..m {
                    if table[ab * m + c] != table[a * m + table[b * m + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut inverses = vec![0; m];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..m)
                .find(|&b| table[a * m + b] == 0 && table[b * m + a] == 0)
                .ok_or(GroupError::NoInverse { element: a })?;
        }

        Ok(FiniteGroup { name: name.into(), order: m, table, inverses })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: Element) -> Element {
        self.inverses[a]
    }

    /// Multiply `x` by `b` on the given side.
    #[inline]
    pub fn translate(&self, x: Element, b: Element, side: Side) -> Element {
        match side {
            Side::Left => self.mul(b, x),
            Side::Right => self.mul(x, b),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    /// The table as nested rows.
    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(<[Element]>::to_vec).collect()
    }

    /// Least `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: Element) -> Result<usize, GroupError> {
        if g >= self.order {
            return Err(GroupError::ElementOutOfRange { element: g, order: self.order });
        }
        let mut k = 1;
        let mut power = g;
        while power != 0 {
            power = self.mul(power, g);
            k += 1;
        }
        Ok(k)
    }

    /// Orders of all elements, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements()
            .map(|g| self.element_order(g).expect("element in range"))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True when some element generates the whole group.
    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == Ok(self.order))
    }

    fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Render the table in the Cayley-table file format.
    pub fn to_table_file(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.table.chunks(self.order) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn is_permutation(values: impl Iterator<Item = usize>, m: usize) -> bool {
    let mut seen = vec![false; m];
    for v in values {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

fn relabel_swap(table: &[Element], m: usize, x: Element, y: Element) -> Vec<Element> {
    let swap = |v: Element| {
        if v == x {
            y
        } else if v == y {
            x
        } else {
            v
        }
    };
    let mut out = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            out[swap(a) * m + swap(b)] = swap(table[a * m + b]);
        }
    }
    out
}

/// Build a group from a spec string with the default order limit.
pub fn make_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    make_group_with_limit(spec, DEFAULT_MAX_ORDER)
}

/// Build a group from a spec string, rejecting anything larger than
/// `max_order`.
pub fn make_group_with_limit(spec: &str, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    let group = if let Some(path) = spec.strip_prefix("file:") {
        read_table_file(Path::new(path))?.with_name(spec)
    } else {
        let factors: Vec<&str> = spec.split('x').collect();
        if factors.iter().any(|f| f.is_empty()) {
            return Err(GroupError::BadSpec(spec.to_string()));
        }
        let mut acc: Option<FiniteGroup> = None;
        for factor in factors {
            let g = catalog_factor(factor, max_order)?;
            acc = Some(match acc {
                None => g,
                Some(prev) => {
                    if prev.order() * g.order() > max_order {
                        return Err(GroupError::TooLarge { order: prev.order() * g.order(), max: max_order });
                    }
                    direct_product(&prev, &g)
                }
            });
        }
        acc.expect("at least one factor").with_name(spec)
    };
    if group.order() > max_order {
        return Err(GroupError::TooLarge { order: group.order(), max: max_order });
    }
    Ok(group)
}

fn parse_index(spec: &str, digits: &str) -> Result<usize, GroupError> {
    digits.parse::<usize>().map_err(|_| GroupError::BadSpec(spec.to_string()))
}

fn catalog_factor(spec: &str, max_order: usize) -> Result<FiniteGroup, GroupError> {
    let too_large = |order: usize| GroupError::TooLarge { order, max: max_order };
    if spec == "Q8" {
        return Ok(quaternion());
    }
    let (family, digits) = spec.split_at(1.min(spec.len()));
    let k = parse_index(spec, digits)?;
    if k == 0 {
        return Err(GroupError::BadSpec(spec.to_string()));
    }
    match family {
        "Z" => {
            if k > max_order {
                return Err(too_large(k));
            }
            Ok(cyclic(k))
        }
        "D" => {
            if 2 * k > max_order {
                return Err(too_large(2 * k));
            }
            Ok(dihedral(k))
        }
        "S" => {
            let order: usize = (1..=k).product();
            if order > max_order {
                return Err(too_large(order));
            }
            Ok(symmetric(k))
        }
        _ => Err(GroupError::BadSpec(spec.to_string())),
    }
}

fn build(name: String, m: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let rows = (0..m).map(|a| (0..m).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_cayley_table_named(rows, name).expect("catalog construction is a group")
}

/// Integers mod `m` under addition.
pub fn cyclic(m: usize) -> FiniteGroup {
    build(format!("Z{m}"), m, |a, b| (a + b) % m)
}

/// Symmetries of the regular `k`-gon, order `2k`. Element `i + k·j` is
/// `r^i s^j`.
pub fn dihedral(k: usize) -> FiniteGroup {
    build(format!("D{k}"), 2 * k, |x, y| {
        let (i, a) = (x % k, x / k);
        let (j, b) = (y % k, y / k);
        let rot = if a == 0 { (i + j) % k } else { (i + k - j) % k };
        rot + k * ((a + b) % 2)
    })
}

/// Permutations of `0..k` in lexicographic order; `a·b` applies `a` first.
pub fn symmetric(k: usize) -> FiniteGroup {
    let perms = lexicographic_permutations(k);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation listed");
    build(format!("S{k}"), perms.len(), |a, b| {
        let composed: Vec<usize> = (0..k).map(|x| perms[b][perms[a][x]]).collect();
        index(&composed)
    })
}

fn lexicographic_permutations(k: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                extend(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// The quaternion group `{±1, ±i, ±j, ±k}`. Element `2u + s` is `(-1)^s`
/// times unit `u` with `u = 0, 1, 2, 3` for `1, i, j, k`.
pub fn quaternion() -> FiniteGroup {
    // (sign, unit) of the product of two units
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    build("Q8".to_string(), 8, |x, y| {
        let (s, t) = UNIT[x / 2][y / 2];
        2 * t + ((x % 2 + y % 2 + s) % 2)
    })
}

/// Componentwise product; `(a, b)` has index `a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let n = h.order();
    build(format!("{}x{}", g.name(), h.name()), g.order() * n, |x, y| {
        g.mul(x / n, y / n) * n + h.mul(x % n, y % n)
    })
}

/// Parse the Cayley-table file format: first non-comment line is the
/// order `m`, then `m` rows of `m` whitespace-separated indices. Lines
/// starting with `#` are ignored.
pub fn parse_table_file(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| GroupError::Malformed("missing order line".into()))?;
    let m: usize = header
        .parse()
        .map_err(|_| GroupError::Malformed(format!("bad order line `{header}`")))?;
    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| GroupError::Malformed(format!("expected {m} rows, found {r}")))?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| GroupError::Malformed(format!("bad entry `{tok}` in row {r}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(GroupError::Malformed(format!("trailing content `{extra}`")));
    }
    FiniteGroup::from_cayley_table(rows)
}

pub fn read_table_file(path: &Path) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_table_file(&text)
}

/// Spec strings of the built-in catalog, every group of order at most
/// `max_order` that the mini-language names without aliasing.
pub fn catalog_specs(max_order: usize) -> Vec<String> {
    let mut specs: Vec<String> = (1..=max_order).map(|m| format!("Z{m}")).collect();
    let extra = [
        ("Z2xZ2", 4),
        ("Z2xZ4", 8),
        ("Z2xZ2xZ2", 8),
        ("Z3xZ3", 9),
        ("Z2xZ6", 12),
        ("Z4xZ4", 16),
        ("Z2xZ8", 16),
        ("Z2xZ2xZ4", 16),
        ("S3", 6),
        ("D4", 8),
        ("Q8", 8),
        ("D5", 10),
        ("D6", 12),
        ("D7", 14),
        ("D8", 16),
    ];
    specs.extend(extra.iter().filter(|(_, o)| *o <= max_order).map(|(s, _)| s.to_string()));
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_rows() -> Vec<Vec<usize>> {
        (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = make_group("Z1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0).unwrap(), 1);
    }

    #[test]
    fn klein_four() {
        let g = make_group("Z2xZ2").unwrap();
        assert_eq!(g.order(), 4);
        for x in 1..4 {
            assert_eq!(g.element_order(x).unwrap(), 2);
        }
        assert!(g.is_abelian());
        assert!(!g.is_cyclic());
    }

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = make_group("S3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let mut orders = g.element_orders();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn z2_table() {
        let g = FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let err = FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::RowNotPermutation { row: 1 });
    }

    #[test]
    fn addition_mod_three() {
        let g = FiniteGroup::from_cayley_table(z3_rows()).unwrap();
        assert_eq!(g, cyclic(3).with_name("custom"));
    }

    #[test]
    fn identity_is_moved_to_index_zero() {
        // Z3 with labels 0 and 2 swapped: identity sits at index 2.
        let swap = |v: usize| [2, 1, 0][v];
        let mut rows = vec![vec![0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                rows[swap(a)][swap(b)] = swap((a + b) % 3);
            }
        }
        let g = FiniteGroup::from_cayley_table(rows).unwrap();
        assert!((0..3).all(|x| g.mul(0, x) == x && g.mul(x, 0) == x));
    }

    #[test]
    fn associativity_failure_reports_triple() {
        // Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley_table(rows) {
            Err(GroupError::NotAssociative { .. }) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn element_orders() {
        let z6 = make_group("Z6").unwrap();
        assert_eq!(z6.element_order(2).unwrap(), 3);
        assert_eq!(z6.element_order(0).unwrap(), 1);
        let z4 = make_group("Z4").unwrap();
        assert_eq!(z4.element_order(1).unwrap(), 4);
        assert!(z4.element_order(4).is_err());
    }

    #[test]
    fn abelian_flags() {
        assert!(make_group("Z6").unwrap().is_abelian());
        assert!(!make_group("S3").unwrap().is_abelian());
        assert!(make_group("Z2xZ4").unwrap().is_abelian());
        assert!(!make_group("Q8").unwrap().is_abelian());
        assert!(!make_group("D4").unwrap().is_abelian());
    }

    #[test]
    fn d3_matches_s3_census() {
        let mut d3 = make_group("D3").unwrap().element_orders();
        let mut s3 = make_group("S3").unwrap().element_orders();
        d3.sort_unstable();
        s3.sort_unstable();
        assert_eq!(d3, s3);
    }

    #[test]
    fn quaternion_census() {
        let mut orders = quaternion().element_orders();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(make_group("Y3"), Err(GroupError::BadSpec(_))));
        assert!(matches!(make_group("Z"), Err(GroupError::BadSpec(_))));
        assert!(matches!(make_group("Z2x"), Err(GroupError::BadSpec(_))));
        assert!(matches!(make_group("Z0"), Err(GroupError::BadSpec(_))));
        assert!(matches!(make_group("S4"), Err(GroupError::TooLarge { order: 24, max: 16 })));
        assert!(make_group_with_limit("S4", 24).is_ok());
        assert!(matches!(make_group("Z4xZ8"), Err(GroupError::TooLarge { .. })));
        assert!(matches!(make_group("file:/nonexistent/table"), Err(GroupError::Io { .. })));
    }

    #[test]
    fn table_file_round_trip() {
        let g = make_group("D4").unwrap();
        let text = format!("# dihedral of order 8\n{}", g.to_table_file());
        let back = parse_table_file(&text).unwrap();
        assert_eq!(back.rows(), g.rows());
    }

    #[test]
    fn table_file_errors() {
        assert!(matches!(parse_table_file(""), Err(GroupError::Malformed(_))));
        assert!(matches!(parse_table_file("2\n0 1\n"), Err(GroupError::Malformed(_))));
        assert!(matches!(parse_table_file("2\n0 1\n1 x\n"), Err(GroupError::Malformed(_))));
        assert!(matches!(parse_table_file("2\n0 1\n1 0\n0 0\n"), Err(GroupError::Malformed(_))));
        assert!(matches!(parse_table_file("2\n0 1 1\n1 0\n"), Err(GroupError::NotSquare { .. })));
    }

    #[test]
    fn catalog_validates_and_every_single_mutation_fails() {
        for spec in catalog_specs(8) {
            let g = make_group(&spec).unwrap();
            let rows = g.rows();
            let m = g.order();
            for a in 0..m {
                for b in 0..m {
                    for v in 0..m {
                        if v == rows[a][b] {
                            continue;
                        }
                        let mut mutated = rows.clone();
                        mutated[a][b] = v;
                        assert!(
                            FiniteGroup::from_cayley_table(mutated).is_err(),
                            "{spec}: mutation at ({a},{b}) -> {v} accepted"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lagrange_and_generator_order() {
        for spec in catalog_specs(16) {
            let g = make_group(&spec).unwrap();
            for x in g.elements() {
                assert_eq!(g.order() % g.element_order(x).unwrap(), 0, "{spec}");
            }
        }
        for m in 1..=16 {
            let g = make_group(&format!("Z{m}")).unwrap();
            assert_eq!(g.element_order(1 % m).unwrap(), if m == 1 { 1 } else { m });
        }
    }

    #[test]
    fn inverses() {
        let g = make_group("Q8").unwrap();
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inverse(x)), 0);
        }
    }
}
