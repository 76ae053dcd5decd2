use std::fmt;

use serde::Serialize;

use super::GradingError;

/// An element of a [`GroupSpec`]. Its meaning depends on the group: an
/// integer for `Z`, a coordinate vector for `Z^k`, a residue for `Z/n` and a
/// row index for a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub(crate) Vec<i64>);

impl GroupElement {
    pub fn int(n: i64) -> Self {
        GroupElement(vec![n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    symbols: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyTable {
    /// Validates the group axioms exhaustively.
    pub fn new(symbols: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GradingError> {
        let n = symbols.len();
        let bad = |msg: String| Err(GradingError::InvalidTable(msg));
        if n == 0 {
            return bad("empty table".into());
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("table must be {n} x {n}"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("entry out of range".into());
        }
        let Some(identity) =
            (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        else {
            return bad("no identity element".into());
        };
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses.push(b),
                None => return bad(format!("`{}` has no inverse", symbols[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            symbols[a], symbols[b], symbols[c]
                        ));
                    }
                }
            }
        }
        Ok(CayleyTable {
            symbols,
            table,
            identity,
            inverses,
        })
    }

    /// Reads a table written as
    ///
    /// ```text
    /// elements: e a b
    /// e: e a b
    /// a: a b e
    /// b: b e a
    /// ```
    ///
    /// where the row for `x` lists `x*y` for each `y` in header order.
    pub fn parse(text: &str) -> Result<Self, GradingError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GradingError::InvalidTable("missing `elements:` header".into()))?;
        let symbols: Vec<String> = header
            .strip_prefix("elements:")
            .ok_or_else(|| GradingError::InvalidTable("missing `elements:` header".into()))?
            .split_whitespace()
            .map(String::from)
            .collect();
        let index = |s: &str| {
            symbols
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| GradingError::InvalidTable(format!("unknown symbol `{s}`")))
        };
        let mut table = vec![None; symbols.len()];
        for line in lines {
            let (row, entries) = line
                .split_once(':')
                .ok_or_else(|| GradingError::InvalidTable(format!("malformed row `{line}`")))?;
            let r = index(row.trim())?;
            let entries = entries
                .split_whitespace()
                .map(index)
                .collect::<Result<Vec<_>, _>>()?;
            table[r] = Some(entries);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.ok_or_else(|| GradingError::InvalidTable(format!("missing row `{}`", symbols[i])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CayleyTable::new(symbols, table)
    }

    /// The cyclic group of order `n` with symbols `c0..c{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        let symbols = (0..n).map(|i| format!("c{i}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CayleyTable::new(symbols, table).expect("cyclic groups are groups")
    }

    pub fn order(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}

/// The grading groups supported: `Z`, `Z^k`, `Z/n` and finite groups given
/// by a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Integers,
    Lattice(usize),
    Cyclic(u64),
    Table(CayleyTable),
}

impl GroupSpec {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Integers | GroupSpec::Cyclic(_) => GroupElement(vec![0]),
            GroupSpec::Lattice(k) => GroupElement(vec![0; *k]),
            GroupSpec::Table(t) => GroupElement(vec![t.identity as i64]),
        }
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match self {
            GroupSpec::Integers | GroupSpec::Lattice(_) => {
                GroupElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
            }
            GroupSpec::Cyclic(n) => GroupElement(vec![(a.0[0] + b.0[0]).rem_euclid(*n as i64)]),
            GroupSpec::Table(t) => {
                GroupElement(vec![t.table[a.0[0] as usize][b.0[0] as usize] as i64])
            }
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match self {
            GroupSpec::Integers | GroupSpec::Lattice(_) => {
                GroupElement(a.0.iter().map(|x| -x).collect())
            }
            GroupSpec::Cyclic(n) => GroupElement(vec![(-a.0[0]).rem_euclid(*n as i64)]),
            GroupSpec::Table(t) => GroupElement(vec![t.inverses[a.0[0] as usize] as i64]),
        }
    }

    /// `a^n` for an integer `n`.
    pub fn pow(&self, a: &GroupElement, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        (0..n.unsigned_abs()).fold(self.identity(), |acc, _| self.op(&acc, &base))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupSpec::Cyclic(_) | GroupSpec::Table(_))
    }

    /// All elements of a finite group, in their natural order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupSpec::Cyclic(n) => Some((0..*n as i64).map(GroupElement::int).collect()),
            GroupSpec::Table(t) => Some((0..t.order() as i64).map(GroupElement::int).collect()),
            _ => None,
        }
    }

    /// The element every edge gets under the canonical grading, where one
    /// exists: `1` in `Z` and `Z/n`, the first basis vector in `Z^k`.
    pub fn generator(&self) -> Option<GroupElement> {
        match self {
            GroupSpec::Integers => Some(GroupElement::int(1)),
            GroupSpec::Cyclic(n) => Some(GroupElement::int(1 % *n as i64)),
            GroupSpec::Lattice(k) if *k > 0 => {
                let mut v = vec![0; *k];
                v[0] = 1;
                Some(GroupElement(v))
            }
            _ => None,
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GradingError> {
        let s = s.trim();
        let bad = || GradingError::BadElement {
            text: s.to_string(),
            group: self.to_string(),
        };
        match self {
            GroupSpec::Integers => s.parse().map(GroupElement::int).map_err(|_| bad()),
            GroupSpec::Cyclic(n) => s
                .parse::<i64>()
                .map(|x| GroupElement::int(x.rem_euclid(*n as i64)))
                .map_err(|_| bad()),
            GroupSpec::Lattice(k) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(s);
                let coords = inner
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                if coords.len() != *k {
                    return Err(bad());
                }
                Ok(GroupElement(coords))
            }
            GroupSpec::Table(t) => t
                .symbols
                .iter()
                .position(|x| x == s)
                .map(|i| GroupElement::int(i as i64))
                .ok_or_else(bad),
        }
    }

    pub fn render(&self, a: &GroupElement) -> String {
        match self {
            GroupSpec::Integers | GroupSpec::Cyclic(_) => a.0[0].to_string(),
            GroupSpec::Lattice(_) => {
                let parts: Vec<String> = a.0.iter().map(|x| x.to_string()).collect();
                parts.join(",")
            }
            GroupSpec::Table(t) => t.symbols[a.0[0] as usize].clone(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Integers => write!(f, "Z"),
            GroupSpec::Lattice(k) => write!(f, "Z^{k}"),
            GroupSpec::Cyclic(n) => write!(f, "Z/{n}"),
            GroupSpec::Table(t) => write!(f, "table of order {}", t.order()),
        }
    }
}
