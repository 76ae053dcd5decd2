use std::collections::BTreeMap;
use std::sync::Arc;


use crate::graph::{EdgeId, Graph, Path, VertexId};

use super::element::add_term;
use super::{Coefficient, Element, Monomial};

/// A Leavitt path algebra: a graph together with a coefficient ring.
///
/// Normal forms eliminate, at every regular vertex `v`, the pattern where
/// both paths of a monomial end in the special edge `g_v` of `v` (its
/// smallest outgoing edge by name), using
/// `g_v g_v* = v - sum_{f != g_v, s(f) = v} f f*`.
#[derive(Clone, Debug)]
pub struct Algebra<R: Coefficient> {
    graph: Arc<Graph>,
    ctx: R::Context,
}

impl<R: Coefficient> Algebra<R> {
    pub fn new(graph: Arc<Graph>, ctx: R::Context) -> Self {
        Algebra { graph, ctx }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn context(&self) -> &R::Context {
        &self.ctx
    }

    pub fn ring_name(&self) -> String {
        R::ring_name(&self.ctx)
    }

    pub fn one_coefficient(&self) -> R {
        R::one(&self.ctx)
    }

    pub fn int(&self, n: i64) -> R {
        R::from_i64(&self.ctx, n)
    }

    pub fn vertex(&self, v: VertexId) -> Element<R> {
        Element::from_normal_monomial(Monomial::vertex(v), self.one_coefficient())
    }

    pub fn edge(&self, e: EdgeId) -> Element<R> {
        self.monomial(&Monomial::real(Path::edge(&self.graph, e)))
    }

    pub fn ghost(&self, e: EdgeId) -> Element<R> {
        self.monomial(&Monomial::ghost(Path::edge(&self.graph, e)))
    }

    /// The element `alpha beta*`, brought into normal form.
    pub fn monomial(&self, m: &Monomial) -> Element<R> {
        self.normal_form([(m.clone(), self.one_coefficient())])
    }

    /// The multiplicative identity `sum_v v`.
    pub fn identity(&self) -> Element<R> {
        let one = self.one_coefficient();
        Element {
            terms: self
                .graph
                .vertex_ids()
                .map(|v| (Monomial::vertex(v), one.clone()))
                .collect(),
        }
    }

    /// The special edge shared by both paths of `m`, if `m` is reducible.
    fn redex(&self, m: &Monomial) -> Option<EdgeId> {
        let a = m.alpha.last_edge()?;
        let b = m.beta.last_edge()?;
        (a == b && self.graph.is_special(a)).then_some(a)
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.redex(m).is_none()
    }

    /// One rewrite step at the tail of `m`, or `None` if `m` is normal.
    pub fn rewrite_step(&self, m: &Monomial, c: &R) -> Option<Vec<(Monomial, R)>> {
        let special = self.redex(m)?;
        let v = self.graph.source(special);
        let alpha = m.alpha.without_last(&self.graph);
        let beta = m.beta.without_last(&self.graph);
        let mut out = Vec::with_capacity(self.graph.out_edges(v).len());
        for &f in self.graph.out_edges(v) {
            if f != special {
                let r = self.graph.range(f);
                out.push((
                    Monomial {
                        alpha: alpha.extended(f, r),
                        beta: beta.extended(f, r),
                    },
                    -c.clone(),
                ));
            }
        }
        out.push((Monomial { alpha, beta }, c.clone()));
        Some(out)
    }

    fn reduce_into(&self, mut m: Monomial, c: R, out: &mut BTreeMap<Monomial, R>) {
        if c.is_zero() {
            return;
        }
        while let Some(special) = self.redex(&m) {
            let v = self.graph.source(special);
            let alpha = m.alpha.without_last(&self.graph);
            let beta = m.beta.without_last(&self.graph);
            for &f in self.graph.out_edges(v) {
                if f != special {
                    // f is not special at v, so these terms are already normal
                    let r = self.graph.range(f);
                    let t = Monomial {
                        alpha: alpha.extended(f, r),
                        beta: beta.extended(f, r),
                    };
                    add_term(out, t, -c.clone());
                }
            }
            m = Monomial { alpha, beta };
        }
        add_term(out, m, c);
    }

    /// Normal form of a raw combination of well-formed monomials.
    pub fn normal_form<I>(&self, raw: I) -> Element<R>
    where
        I: IntoIterator<Item = (Monomial, R)>,
    {
        let mut terms = BTreeMap::new();
        for (m, c) in raw {
            debug_assert_eq!(m.alpha.range(), m.beta.range());
            self.reduce_into(m, c, &mut terms);
        }
        Element { terms }
    }

    /// Normal form computed by single rewrite steps, with `choose(n)`
    /// picking which of the `n` currently reducible terms to rewrite next.
    pub fn normal_form_by<I, F>(&self, raw: I, mut choose: F) -> Element<R>
    where
        I: IntoIterator<Item = (Monomial, R)>,
        F: FnMut(usize) -> usize,
    {
        let mut work: Vec<(Monomial, R)> = raw.into_iter().collect();
        loop {
            let redexes: Vec<usize> = work
                .iter()
                .enumerate()
                .filter(|(_, (m, _))| !self.is_normal(m))
                .map(|(i, _)| i)
                .collect();
            if redexes.is_empty() {
                break;
            }
            let pick = redexes[choose(redexes.len()) % redexes.len()];
            let (m, c) = work.swap_remove(pick);
            work.extend(self.rewrite_step(&m, &c).expect("picked a redex"));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in work {
            add_term(&mut terms, m, c);
        }
        Element { terms }
    }

    /// The product of two monomials before normalization, or `None` when it
    /// vanishes. `(a b*)(c d*)` survives only if one of `b`, `c` is an
    /// initial subpath of the other.
    pub fn raw_product(x: &Monomial, y: &Monomial) -> Option<Monomial> {
        if let Some(rest) = y.alpha.strip_prefix(&x.beta) {
            // b* b rest = rest
            Some(Monomial {
                alpha: x.alpha.concat(&rest),
                beta: y.beta.clone(),
            })
        } else {
            // b = c rest, so b* c = rest*
            x.beta.strip_prefix(&y.alpha).map(|rest| Monomial {
                alpha: x.alpha.clone(),
                beta: y.beta.concat(&rest),
            })
        }
    }

    pub fn mono_mul(&self, x: &Monomial, y: &Monomial) -> Element<R> {
        match Self::raw_product(x, y) {
            Some(m) => self.monomial(&m),
            None => Element::zero(),
        }
    }

    pub fn mul(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        let mut terms = BTreeMap::new();
        for (x, c) in &a.terms {
            for (y, d) in &b.terms {
                if let Some(m) = Self::raw_product(x, y) {
                    self.reduce_into(m, c.clone() * d.clone(), &mut terms);
                }
            }
        }
        Element { terms }
    }

    /// Product of a list of elements, left to right. The empty product is
    /// the identity.
    pub fn product<'a, I>(&self, factors: I) -> Element<R>
    where
        I: IntoIterator<Item = &'a Element<R>>,
    {
        let mut it = factors.into_iter();
        let Some(first) = it.next() else {
            return self.identity();
        };
        it.fold(first.clone(), |acc, x| self.mul(&acc, x))
    }

    /// The involution `(alpha beta*)* = beta alpha*`, coefficients fixed.
    pub fn involution(&self, a: &Element<R>) -> Element<R> {
        // the redex condition is symmetric in alpha and beta, so adjoints of
        // normal monomials are normal
        Element {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.adjoint(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        a + b
    }

    pub fn scalar_mul(&self, c: &R, a: &Element<R>) -> Element<R> {
        a.scale(c)
    }

    pub fn equals(&self, a: &Element<R>, b: &Element<R>) -> bool {
        a == b
    }

    /// Every normal-form monomial `alpha beta*` with both paths of length at
    /// most `max_len`, in monomial order.
    pub fn normal_monomials(&self, max_len: usize) -> Vec<Monomial> {
        normal_monomials(&self.graph, max_len)
    }

    /// `x x*`, which only depends on the first path of `x`.
    pub fn nmap(&self, x: &Monomial) -> Element<R> {
        self.mono_mul(x, &x.adjoint())
    }
}

pub(crate) fn is_normal_pair(graph: &Graph, alpha: &Path, beta: &Path) -> bool {
    match (alpha.last_edge(), beta.last_edge()) {
        (Some(a), Some(b)) => a != b || !graph.is_special(a),
        _ => true,
    }
}

pub(crate) fn normal_monomials(graph: &Graph, max_len: usize) -> Vec<Monomial> {
    let paths = graph.enumerate_paths(max_len);
    let mut by_range: Vec<Vec<&Path>> = vec![Vec::new(); graph.vertex_count()];
    for p in &paths {
        by_range[p.range().index()].push(p);
    }
    let mut out = Vec::new();
    for group in &by_range {
        for a in group {
            for b in group {
                if is_normal_pair(graph, a, b) {
                    out.push(Monomial {
                        alpha: (*a).clone(),
                        beta: (*b).clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

impl<R: Coefficient> Algebra<R> {
    /// Checks the defining relations as identities between elements:
    /// vertex orthogonality, `s(f) f = f r(f) = f` with its ghost
    /// counterpart, `f* f' = delta r(f)`, and `sum f f* = v` at regular
    /// vertices. Returns a description of every failure.
    pub fn relation_violations(&self) -> Vec<String> {
        let g = self.graph();
        let mut bad = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                bad.push(what);
            }
        };
        for v in g.vertex_ids() {
            for w in g.vertex_ids() {
                let expect = if v == w { self.vertex(v) } else { Element::zero() };
                check(
                    self.mul(&self.vertex(v), &self.vertex(w)) == expect,
                    format!("{} {}", g.vertex_name(v), g.vertex_name(w)),
                );
            }
        }
        for e in g.edge_ids() {
            let name = g.edge_name(e);
            let (f, fs) = (self.edge(e), self.ghost(e));
            let (s, r) = (self.vertex(g.source(e)), self.vertex(g.range(e)));
            check(self.mul(&s, &f) == f, format!("s({name}) {name}"));
            check(self.mul(&f, &r) == f, format!("{name} r({name})"));
            check(self.mul(&r, &fs) == fs, format!("r({name}) {name}*"));
            check(self.mul(&fs, &s) == fs, format!("{name}* s({name})"));
            for e2 in g.edge_ids() {
                let expect = if e == e2 { r.clone() } else { Element::zero() };
                check(
                    self.mul(&fs, &self.edge(e2)) == expect,
                    format!("{name}* {}", g.edge_name(e2)),
                );
            }
        }
        for v in g.regular_vertices() {
            let sum: Element<R> = g
                .out_edges(v)
                .iter()
                .map(|&e| self.mul(&self.edge(e), &self.ghost(e)))
                .sum();
            check(sum == self.vertex(v), format!("sum of f f* at {}", g.vertex_name(v)));
        }
        bad
    }
}
