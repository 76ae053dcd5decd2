//! Standard group gradings: every vertex has degree `e`, each edge a chosen
//! group element and each ghost edge its inverse.

mod group;

use std::collections::BTreeMap;
use std::path::Path as FsPath;

use thiserror::Error;

use crate::algebra::{Algebra, Coefficient, Element, Monomial};
use crate::graph::{EdgeId, Graph, Path};

pub use group::{CayleyTable, GroupElement, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` has no degree")]
    MissingDegree(String),
    #[error("edge `{0}` is assigned a degree twice")]
    DuplicateDegree(String),
    #[error("`{text}` is not an element of {group}")]
    BadElement { text: String, group: String },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("{0} has no canonical generator")]
    NoGenerator(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

/// Degrees of the edges of one graph in one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMap {
    group: GroupSpec,
    degrees: Vec<GroupElement>,
}

impl DegreeMap {
    /// The canonical `Z`-grading: every edge has degree 1.
    pub fn canonical(graph: &Graph) -> Self {
        Self::canonical_in(graph, GroupSpec::Integers).expect("Z has a generator")
    }

    /// Every edge gets the group's distinguished generator.
    pub fn canonical_in(graph: &Graph, group: GroupSpec) -> Result<Self, GradingError> {
        let g = group
            .generator()
            .ok_or_else(|| GradingError::NoGenerator(group.to_string()))?;
        Ok(DegreeMap {
            degrees: vec![g; graph.edge_count()],
            group,
        })
    }

    pub fn from_assignments<'a, I>(graph: &Graph, group: GroupSpec, assignments: I) -> Result<Self, GradingError>
    where
        I: IntoIterator<Item = (&'a str, GroupElement)>,
    {
        let mut degrees: Vec<Option<GroupElement>> = vec![None; graph.edge_count()];
        for (name, g) in assignments {
            let e = graph
                .edge_by_name(name)
                .ok_or_else(|| GradingError::UnknownEdge(name.to_string()))?;
            if degrees[e.index()].replace(g).is_some() {
                return Err(GradingError::DuplicateDegree(name.to_string()));
            }
        }
        let degrees = degrees
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or_else(|| {
                    GradingError::MissingDegree(graph.edge_name(EdgeId(i as u32)).to_string())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DegreeMap { group, degrees })
    }

    /// Reads a degree file:
    ///
    /// ```text
    /// group Z/5            # or Z, Z^k, table <file>
    /// deg f1 = 1
    /// deg f2 = 4
    /// ```
    ///
    /// A `table` path is resolved against `base_dir`.
    pub fn parse(text: &str, graph: &Graph, base_dir: Option<&FsPath>) -> Result<Self, GradingError> {
        let mut group = None;
        let mut raw = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| GradingError::Syntax {
                line: lineno,
                message: message.to_string(),
            };
            if let Some(rest) = line.strip_prefix("group ") {
                if group.is_some() {
                    return Err(syntax("second `group` line"));
                }
                group = Some(parse_group(rest.trim(), base_dir).map_err(|e| match e {
                    GradingError::Syntax { message, .. } => GradingError::Syntax {
                        line: lineno,
                        message,
                    },
                    other => other,
                })?);
            } else if let Some(rest) = line.strip_prefix("deg ") {
                let (edge, value) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax("expected `deg <edge> = <element>`"))?;
                raw.push((edge.trim().to_string(), value.trim().to_string(), lineno));
            } else {
                return Err(syntax("expected `group ...` or `deg <edge> = <element>`"));
            }
        }
        let group = group.ok_or(GradingError::Syntax {
            line: 1,
            message: "missing `group` line".into(),
        })?;
        let mut parsed = Vec::with_capacity(raw.len());
        for (edge, value, _) in &raw {
            parsed.push((edge.as_str(), group.parse_element(value)?));
        }
        Self::from_assignments(graph, group, parsed)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn edge_degree(&self, e: EdgeId) -> &GroupElement {
        &self.degrees[e.index()]
    }

    pub fn set_edge_degree(&mut self, e: EdgeId, g: GroupElement) {
        self.degrees[e.index()] = g;
    }

    /// Whether this is the canonical `Z`-grading.
    pub fn is_canonical_z(&self) -> bool {
        self.group == GroupSpec::Integers && self.degrees.iter().all(|d| *d == GroupElement::int(1))
    }

    /// Ordered product of the edge degrees; `e` for a vertex.
    pub fn path_degree(&self, p: &Path) -> GroupElement {
        p.edges()
            .iter()
            .fold(self.group.identity(), |acc, &e| self.group.op(&acc, self.edge_degree(e)))
    }

    /// `deg(alpha) deg(beta)^-1`.
    pub fn degree_of(&self, m: &Monomial) -> GroupElement {
        let a = self.path_degree(m.alpha());
        let b = self.path_degree(m.beta());
        self.group.op(&a, &self.group.inverse(&b))
    }

    pub fn render(&self, g: &GroupElement) -> String {
        self.group.render(g)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GradingError> {
        self.group.parse_element(s)
    }

    /// The file form read by [`DegreeMap::parse`], for groups other than
    /// tables.
    pub fn to_text(&self, graph: &Graph) -> String {
        let mut out = format!("group {}\n", self.group);
        for e in graph.edge_ids() {
            out.push_str(&format!(
                "deg {} = {}\n",
                graph.edge_name(e),
                self.render(self.edge_degree(e))
            ));
        }
        out
    }
}

fn parse_group(s: &str, base_dir: Option<&FsPath>) -> Result<GroupSpec, GradingError> {
    let syntax = |m: &str| GradingError::Syntax {
        line: 0,
        message: m.to_string(),
    };
    if s == "Z" {
        return Ok(GroupSpec::Integers);
    }
    if let Some(k) = s.strip_prefix("Z^") {
        let k: usize = k.trim().parse().map_err(|_| syntax("bad rank in `Z^k`"))?;
        if k == 0 {
            return Err(syntax("rank must be positive"));
        }
        return Ok(GroupSpec::Lattice(k));
    }
    if let Some(n) = s.strip_prefix("Z/") {
        let n: u64 = n.trim().parse().map_err(|_| syntax("bad modulus in `Z/n`"))?;
        if n == 0 {
            return Err(syntax("modulus must be positive"));
        }
        return Ok(GroupSpec::Cyclic(n));
    }
    if let Some(file) = s.strip_prefix("table ") {
        let file = file.trim();
        let path = match base_dir {
            Some(dir) => dir.join(file),
            None => file.into(),
        };
        let text = std::fs::read_to_string(&path).map_err(|e| GradingError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        return Ok(GroupSpec::Table(CayleyTable::parse(&text)?));
    }
    Err(syntax("expected `Z`, `Z^k`, `Z/n` or `table <file>`"))
}

/// An element split into its homogeneous components.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousDecomposition<R> {
    pub parts: BTreeMap<GroupElement, Element<R>>,
}

impl<R: Coefficient> HomogeneousDecomposition<R> {
    pub fn part(&self, g: &GroupElement) -> Element<R> {
        self.parts.get(g).cloned().unwrap_or_else(Element::zero)
    }

    pub fn reassemble(&self) -> Element<R> {
        self.parts.values().cloned().sum()
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<&GroupElement> {
        match self.parts.len() {
            1 => self.parts.keys().next(),
            _ => None,
        }
    }
}

/// Groups the terms of `a` by degree.
pub fn decompose<R: Coefficient>(a: &Element<R>, d: &DegreeMap) -> HomogeneousDecomposition<R> {
    let mut parts: BTreeMap<GroupElement, Element<R>> = BTreeMap::new();
    for (m, c) in a.terms() {
        parts
            .entry(d.degree_of(m))
            .or_insert_with(Element::zero)
            .terms
            .insert(m.clone(), c.clone());
    }
    HomogeneousDecomposition { parts }
}

/// The degree of `a` if it is nonzero and homogeneous.
pub fn homogeneous_degree<R: Coefficient>(a: &Element<R>, d: &DegreeMap) -> Option<GroupElement> {
    let mut degrees = a.monomials().map(|m| d.degree_of(m));
    let first = degrees.next()?;
    degrees.all(|g| g == first).then_some(first)
}

/// Normal-form monomials with both paths of length at most `bound`, indexed
/// by degree. Flagged vertices only contribute their listed sample edges.
#[derive(Clone, Debug)]
pub struct MonomialCatalog {
    bound: usize,
    by_degree: BTreeMap<GroupElement, Vec<Monomial>>,
}

impl MonomialCatalog {
    pub fn build<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, bound: usize) -> Self {
        let mut by_degree: BTreeMap<GroupElement, Vec<Monomial>> = BTreeMap::new();
        for m in alg.normal_monomials(bound) {
            by_degree.entry(d.degree_of(&m)).or_default().push(m);
        }
        MonomialCatalog { bound, by_degree }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The monomials of degree `g`, in monomial order.
    pub fn of_degree(&self, g: &GroupElement) -> &[Monomial] {
        self.by_degree.get(g).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.by_degree.keys()
    }

    pub fn all(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.by_degree.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_degree.is_empty()
    }
}

/// The normal-form monomials of degree `g` with both paths of length at most
/// `bound`.
pub fn enumerate_xg<R: Coefficient>(
    alg: &Algebra<R>,
    g: &GroupElement,
    d: &DegreeMap,
    bound: usize,
) -> Vec<Monomial> {
    MonomialCatalog::build(alg, d, bound).of_degree(g).to_vec()
}

/// A product whose homogeneous components are not where the factor degrees
/// say they should be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingCounterexample {
    pub left: Monomial,
    pub right: Monomial,
    pub expected: GroupElement,
    pub found: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingAxiomReport {
    pub bound: usize,
    pub products_checked: usize,
    pub counterexample: Option<GradingCounterexample>,
}

impl GradingAxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `S_g S_h ⊆ S_gh` on all pairs of monomials up to `bound`.
pub fn check_grading_axiom<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, bound: usize) -> GradingAxiomReport {
    check_grading_axiom_between(alg, d, d, bound)
}

/// As [`check_grading_axiom`], but with factor degrees read from `factors`
/// and product components classified by `products`. With two different maps
/// this is a negative control for the checker itself.
pub fn check_grading_axiom_between<R: Coefficient>(
    alg: &Algebra<R>,
    factors: &DegreeMap,
    products: &DegreeMap,
    bound: usize,
) -> GradingAxiomReport {
    let monomials = alg.normal_monomials(bound);
    let group = factors.group();
    let mut checked = 0;
    for x in &monomials {
        let gx = factors.degree_of(x);
        for y in &monomials {
            checked += 1;
            let expected = group.op(&gx, &factors.degree_of(y));
            let product = alg.mono_mul(x, y);
            let found: Vec<GroupElement> = decompose(&product, products).parts.into_keys().collect();
            if found.iter().any(|g| *g != expected) {
                return GradingAxiomReport {
                    bound,
                    products_checked: checked,
                    counterexample: Some(GradingCounterexample {
                        left: x.clone(),
                        right: y.clone(),
                        expected,
                        found,
                    }),
                };
            }
        }
    }
    GradingAxiomReport {
        bound,
        products_checked: checked,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests;
