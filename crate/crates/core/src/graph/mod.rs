//! Directed graphs, paths and the path combinatorics the algebra is built on.
//!
//! Vertex and edge names share one namespace. Internally both are stored in
//! lexicographic order of their names, so comparing [`VertexId`]s or
//! [`EdgeId`]s is the same as comparing names; every deterministic ordering
//! in the crate relies on this.

mod dsl;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use smallvec::SmallVec;
use thiserror::Error;

pub use dsl::parse_graph;

/// Index of a vertex inside its [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

/// Index of an edge inside its [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A name resolved against a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` uses undeclared vertex `{vertex}`")]
    UndeclaredEndpoint { edge: String, vertex: String },
    #[error("`{0}` is flagged infinite but is not a declared vertex")]
    UndeclaredInfinite(String),
    #[error("infinite emitter `{vertex}` lists {count} sample edge(s); at least 2 are required")]
    TooFewSamples { vertex: String, count: usize },
    #[error("invalid identifier `{0}`")]
    InvalidId(String),
    #[error("edges do not compose into a path: {0}")]
    NotAPath(String),
}

/// A finite directed graph, possibly with vertices flagged as infinite
/// emitters. A flagged vertex lists a few of its outgoing edges as samples.
#[derive(Clone, Debug)]
pub struct Graph {
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    infinite: Vec<bool>,
    symbols: HashMap<String, Symbol>,
}

/// Collects vertices and edges by name and validates them into a [`Graph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    infinite: Vec<String>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
    ) -> Self {
        self.edges.push((id.into(), source.into(), range.into()));
        self
    }

    pub fn infinite(mut self, vertex: impl Into<String>) -> Self {
        self.infinite.push(vertex.into());
        self
    }

    pub(crate) fn set_name(&mut self, name: String) {
        self.name = Some(name);
    }

    pub(crate) fn push_vertex(&mut self, id: String) {
        self.vertices.push(id);
    }

    pub(crate) fn push_edge(&mut self, id: String, source: String, range: String) {
        self.edges.push((id, source, range));
    }

    pub(crate) fn push_infinite(&mut self, id: String) {
        self.infinite.push(id);
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        for id in self.vertices.iter().chain(self.edges.iter().map(|e| &e.0)) {
            if !is_identifier(id) {
                return Err(GraphError::InvalidId(id.clone()));
            }
            if !seen.insert(id.as_str()) {
                return Err(GraphError::DuplicateId(id.clone()));
            }
        }

        let mut vertices = self.vertices.clone();
        vertices.sort();
        let vertex_index: HashMap<&str, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), VertexId(i as u32)))
            .collect();

        let mut raw_edges = self.edges.clone();
        raw_edges.sort_by(|a, b| a.0.cmp(&b.0));
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (id, source, range) in raw_edges {
            let lookup = |v: &str| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UndeclaredEndpoint {
                        edge: id.clone(),
                        vertex: v.to_string(),
                    })
            };
            let source = lookup(&source)?;
            let range = lookup(&range)?;
            edges.push(Edge {
                name: id,
                source,
                range,
            });
        }

        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.index()].push(EdgeId(i as u32));
            in_edges[e.range.index()].push(EdgeId(i as u32));
        }

        let mut infinite = vec![false; vertices.len()];
        for v in &self.infinite {
            let id = vertex_index
                .get(v.as_str())
                .copied()
                .ok_or_else(|| GraphError::UndeclaredInfinite(v.clone()))?;
            let count = out_edges[id.index()].len();
            if count < 2 {
                return Err(GraphError::TooFewSamples {
                    vertex: v.clone(),
                    count,
                });
            }
            infinite[id.index()] = true;
        }

        let mut symbols = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            symbols.insert(v.clone(), Symbol::Vertex(VertexId(i as u32)));
        }
        for (i, e) in edges.iter().enumerate() {
            symbols.insert(e.name.clone(), Symbol::Edge(EdgeId(i as u32)));
        }

        Ok(Graph {
            name: self.name,
            vertices,
            edges,
            out_edges,
            in_edges,
            infinite,
            symbols,
        })
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.symbols.get(name).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        match self.lookup(name) {
            Some(Symbol::Vertex(v)) => Some(v),
            _ => None,
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        match self.lookup(name) {
            Some(Symbol::Edge(e)) => Some(e),
            _ => None,
        }
    }

    /// Listed outgoing edges of `v`, in name order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.infinite[v.index()]
    }

    pub fn has_infinite_emitters(&self) -> bool {
        self.infinite.iter().any(|&f| f)
    }

    pub fn infinite_emitters(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_infinite_emitter(v)).collect()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty() && !self.infinite[v.index()]
    }

    /// A regular vertex emits a nonempty, finite set of edges; the
    /// Cuntz-Krieger sum relation holds exactly at these vertices.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.out_edges[v.index()].is_empty() && !self.infinite[v.index()]
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn regular_vertices(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_regular(v)).collect()
    }

    /// The edge eliminated by the normal form at a regular vertex: its
    /// smallest outgoing edge by name.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.out_edges[v.index()].first().copied()
        } else {
            None
        }
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special_edge(self.source(e)) == Some(e)
    }

    /// All paths of length `n`, sorted.
    pub fn paths_of_length(&self, n: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = self.vertex_ids().map(Path::vertex).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                for &e in self.out_edges(p.end) {
                    next.push(p.extended(e, self.range(e)));
                }
            }
            next.sort();
            layer = next;
        }
        layer
    }

    /// All paths of length at most `max_len`, ordered by length and then
    /// lexicographically by edge names. Length-0 paths are the vertices.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertex_ids().map(Path::vertex).collect();
        let mut layer = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &layer {
                for &e in self.out_edges(p.end) {
                    next.push(p.extended(e, self.range(e)));
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// Builds a path from edge names, checking that consecutive edges compose.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path, GraphError> {
        let mut edges = Vec::with_capacity(names.len());
        for n in names {
            match self.lookup(n) {
                Some(Symbol::Edge(e)) => edges.push(e),
                Some(Symbol::Vertex(v)) if names.len() == 1 => return Ok(Path::vertex(v)),
                _ => return Err(GraphError::NotAPath(names.join("."))),
            }
        }
        self.path(&edges)
    }

    pub fn path(&self, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let Some((&first, rest)) = edges.split_first() else {
            return Err(GraphError::NotAPath(String::new()));
        };
        let mut p = Path::edge(self, first);
        for &e in rest {
            if self.source(e) != p.end {
                let names: Vec<&str> = edges.iter().map(|&e| self.edge_name(e)).collect();
                return Err(GraphError::NotAPath(names.join(".")));
            }
            p = p.extended(e, self.range(e));
        }
        Ok(p)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_vertex() {
            self.vertex_name(p.start).to_string()
        } else {
            let names: Vec<&str> = p.edges.iter().map(|&e| self.edge_name(e)).collect();
            names.join(".")
        }
    }
}

/// Prefix test with the vertex convention: a vertex is an initial subpath of
/// every path starting at it.
pub fn is_initial_subpath(a: &Path, b: &Path) -> bool {
    a.is_initial_subpath_of(b)
}

pub(crate) type EdgeVec = SmallVec<[EdgeId; 8]>;

/// A path in a graph. Length-0 paths are vertices, with `start == end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub(crate) start: VertexId,
    pub(crate) end: VertexId,
    pub(crate) edges: EdgeVec,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            start: v,
            end: v,
            edges: SmallVec::new(),
        }
    }

    pub fn edge(graph: &Graph, e: EdgeId) -> Self {
        let mut edges = SmallVec::new();
        edges.push(e);
        Path {
            start: graph.source(e),
            end: graph.range(e),
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self) -> VertexId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub(crate) fn extended(&self, e: EdgeId, range: VertexId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            start: self.start,
            end: range,
            edges,
        }
    }

    /// `self` followed by `tail`; the caller guarantees `tail` starts where
    /// `self` ends.
    pub(crate) fn concat(&self, tail: &Path) -> Path {
        debug_assert_eq!(self.end, tail.start);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&tail.edges);
        Path {
            start: self.start,
            end: tail.end,
            edges,
        }
    }

    /// Drops the last edge, keeping track of the new endpoint.
    pub(crate) fn without_last(&self, graph: &Graph) -> Path {
        let mut edges = self.edges.clone();
        let last = edges.pop().expect("path has an edge to drop");
        Path {
            start: self.start,
            end: graph.source(last),
            edges,
        }
    }

    pub fn is_initial_subpath_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// The remainder of `self` after removing `prefix`, if it is a prefix.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_initial_subpath_of(self) {
            return None;
        }
        Some(Path {
            start: prefix.end,
            end: self.end,
            edges: self.edges[prefix.len()..].iter().copied().collect(),
        })
    }

    /// Prefix of the first `n` edges.
    pub fn prefix(&self, graph: &Graph, n: usize) -> Path {
        if n == 0 {
            return Path::vertex(self.start);
        }
        let edges: EdgeVec = self.edges[..n].iter().copied().collect();
        Path {
            start: self.start,
            end: graph.range(edges[n - 1]),
            edges,
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_graph() -> Graph {
        parse_graph(
            "graph degree { vertices: v1 v2 v3 v4 v5; \
             edges: f1: v2 -> v1; f2: v2 -> v3; f3: v4 -> v3; f4: v5 -> v4; }",
        )
        .unwrap()
    }

    fn graph_a() -> Graph {
        parse_graph("vertices v w; edges e: v -> v; f: w -> v;").unwrap()
    }

    fn names(g: &Graph, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    #[test]
    fn sinks_and_regular_vertices() {
        let g = example_graph();
        assert_eq!(names(&g, &g.sinks()), ["v1", "v3"]);
        assert_eq!(names(&g, &g.regular_vertices()), ["v2", "v4", "v5"]);

        let single = parse_graph("vertices v; edges;").unwrap();
        assert_eq!(names(&single, &single.sinks()), ["v"]);
        assert!(single.regular_vertices().is_empty());

        let a = graph_a();
        assert!(a.sinks().is_empty());
        // brute-force outgoing count
        for v in a.vertex_ids() {
            let count = a.edge_ids().filter(|&e| a.source(e) == v).count();
            assert!(count > 0);
        }
    }

    #[test]
    fn flagged_vertex_is_neither_sink_nor_regular() {
        let c = parse_graph(
            "vertices v1 v2; edges f1: v1 -> v2; f2: v1 -> v2; f3: v1 -> v2; infinite: v1;",
        )
        .unwrap();
        assert!(c.regular_vertices().is_empty());
        assert_eq!(names(&c, &c.sinks()), ["v2"]);
        assert_eq!(names(&c, &c.infinite_emitters()), ["v1"]);
        assert_eq!(c.special_edge(c.vertex_by_name("v1").unwrap()), None);
    }

    #[test]
    fn enumerate_small_bounds() {
        let g = example_graph();
        assert_eq!(g.enumerate_paths(0).len(), 5);
        let paths = g.enumerate_paths(2);
        let rendered: Vec<String> = paths.iter().map(|p| g.format_path(p)).collect();
        assert_eq!(
            rendered,
            ["v1", "v2", "v3", "v4", "v5", "f1", "f2", "f3", "f4", "f4.f3"]
        );

        let a = graph_a();
        let rendered: Vec<String> = a
            .enumerate_paths(2)
            .iter()
            .map(|p| a.format_path(p))
            .collect();
        assert_eq!(rendered, ["v", "w", "e", "f", "e.e", "f.e"]);
    }

    #[test]
    fn enumeration_is_prefix_stable_and_composes() {
        let a = graph_a();
        let short = a.enumerate_paths(4);
        let long = a.enumerate_paths(5);
        assert_eq!(&long[..short.len()], &short[..]);
        for p in &long {
            for w in p.edges().windows(2) {
                assert_eq!(a.range(w[0]), a.source(w[1]));
            }
        }
    }

    #[test]
    fn initial_subpaths() {
        let g = example_graph();
        let f4 = g.path_from_names(&["f4"]).unwrap();
        let f4f3 = g.path_from_names(&["f4", "f3"]).unwrap();
        let f1 = g.path_from_names(&["f1"]).unwrap();
        let f2 = g.path_from_names(&["f2"]).unwrap();
        let v2 = g.path_from_names(&["v2"]).unwrap();
        let v3 = g.path_from_names(&["v3"]).unwrap();
        assert!(is_initial_subpath(&f4, &f4f3));
        assert!(is_initial_subpath(&v2, &f1));
        assert!(!is_initial_subpath(&f1, &f2));
        assert!(!is_initial_subpath(&v3, &f2));
        assert!(!is_initial_subpath(&f4f3, &f4));
        assert_eq!(f4f3.strip_prefix(&f4).map(|p| g.format_path(&p)), Some("f3".into()));
    }

    #[test]
    fn subpath_relation_is_a_preorder() {
        let a = graph_a();
        let paths = a.enumerate_paths(4);
        for x in &paths {
            assert!(is_initial_subpath(x, x));
            for y in &paths {
                for z in &paths {
                    if is_initial_subpath(x, y) && is_initial_subpath(y, z) {
                        assert!(is_initial_subpath(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn path_composition_is_checked() {
        let g = example_graph();
        assert!(g.path_from_names(&["f3", "f4"]).is_err());
        assert!(g.path_from_names(&["f4", "f3"]).is_ok());
    }

    #[test]
    fn builder_rejects_bad_graphs() {
        let dup = Graph::builder().vertex("v").edge("v", "v", "v").build();
        assert_eq!(dup.unwrap_err(), GraphError::DuplicateId("v".into()));
        let undeclared = Graph::builder().vertex("v").edge("e", "v", "w").build();
        assert!(matches!(undeclared, Err(GraphError::UndeclaredEndpoint { .. })));
        let few = Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "w")
            .infinite("v")
            .build();
        assert!(matches!(few, Err(GraphError::TooFewSamples { count: 1, .. })));
    }
}
