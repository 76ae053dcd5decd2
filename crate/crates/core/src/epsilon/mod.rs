//! The order on `X_g`, minimal classes, the idempotents `ε_g`, element-wise
//! local units, and the property checkers built on them.
//!
//! Two monomials of degree `g` are compared through their first paths:
//! `αβ* ⪯ γδ*` when `α` is an initial subpath of `γ`. Classes of the induced
//! equivalence are therefore keyed by `α`, and `n(αβ*) = αα*` only depends
//! on the class.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, Coefficient, Element, Monomial};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::grading::{decompose, homogeneous_degree, DegreeMap, GroupElement, MonomialCatalog};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsilonError {
    #[error("degrees differ: {left} and {right}")]
    DegreeMismatch { left: String, right: String },
    #[error("the zero element has no degree")]
    Zero,
    #[error("element is not homogeneous (degrees {degrees})")]
    NotHomogeneous { degrees: String },
    #[error("empty list")]
    EmptyList,
    #[error("degree window must contain the identity")]
    WindowWithoutIdentity,
    #[error("degree window contains {0} but not its inverse")]
    WindowNotSymmetric(String),
}

/// A class of `X_g`, given by its first path and the smallest monomial in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRep {
    pub alpha: Path,
    pub representative: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    /// Every path of length `bound` extends a listed class, so no longer
    /// first path can be minimal.
    Complete,
    /// `frontier` has length `bound` and extends no listed class.
    BoundExhausted { frontier: Path },
    /// Two minimal classes whose first paths only differ in which sample
    /// edge of the flagged `vertex` they take. Every further edge out of
    /// `vertex` gives another one.
    InfiniteWitness { first: Path, second: Path, vertex: VertexId },
    /// Two minimal classes with `second` obtained from `first` by inserting
    /// the closed walk `cycle`; inserting it again and again gives more.
    Pumped { first: Path, second: Path, cycle: Path },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalClassSet {
    pub g: GroupElement,
    /// Sorted by length and then lexicographically by first path.
    pub classes: Vec<ClassRep>,
    pub bound_used: usize,
    pub verdict: ClassVerdict,
}

/// `x ⪯ y` on `X_g`.
pub fn class_leq(x: &Monomial, y: &Monomial, d: &DegreeMap) -> Result<bool, EpsilonError> {
    let (gx, gy) = (d.degree_of(x), d.degree_of(y));
    if gx != gy {
        return Err(EpsilonError::DegreeMismatch {
            left: d.render(&gx),
            right: d.render(&gy),
        });
    }
    Ok(x.alpha().is_initial_subpath_of(y.alpha()))
}

/// The minimal classes of `X_g`.
///
/// Finite groups on graphs without flagged vertices are decided exactly and
/// `bound` is only recorded. Otherwise both paths of each monomial are
/// limited to length `bound`.
pub fn minimal_classes(graph: &Graph, g: &GroupElement, d: &DegreeMap, bound: usize) -> MinimalClassSet {
    let group = d.group();
    if !graph.has_infinite_emitters() {
        if let Some(elements) = group.elements() {
            let (classes, verdict) = exact_minimal_classes(graph, g, d, &elements);
            return MinimalClassSet {
                g: g.clone(),
                classes,
                bound_used: bound,
                verdict,
            };
        }
    }
    bounded_minimal_classes(graph, g, d, bound)
}

/// Minimal classes among first paths of length at most `bound`, with second
/// paths bounded the same way.
pub(crate) fn bounded_minimal_classes(graph: &Graph, g: &GroupElement, d: &DegreeMap, bound: usize) -> MinimalClassSet {
    let group = d.group();
    let paths = graph.enumerate_paths(bound);

    // smallest second path for each (range, degree)
    let mut betas: HashMap<(VertexId, GroupElement), &Path> = HashMap::new();
    for p in &paths {
        betas.entry((p.range(), d.path_degree(p))).or_insert(p);
    }

    let g_inv = group.inverse(g);
    let mut members: HashMap<&Path, &Path> = HashMap::new();
    for alpha in &paths {
        let want = group.op(&g_inv, &d.path_degree(alpha));
        if let Some(beta) = betas.get(&(alpha.range(), want)) {
            members.insert(alpha, beta);
        }
    }
    let has_member_prefix =
        |p: &Path, up_to: usize| (0..=up_to.min(p.len())).any(|k| members.contains_key(&p.prefix(graph, k)));

    let mut classes: Vec<ClassRep> = paths
        .iter()
        .filter_map(|alpha| {
            let beta = members.get(alpha)?;
            if alpha.len() > 0 && has_member_prefix(alpha, alpha.len() - 1) {
                return None;
            }
            Some(ClassRep {
                alpha: alpha.clone(),
                representative: Monomial::new(alpha.clone(), (*beta).clone()).expect("ranges agree"),
            })
        })
        .collect();
    classes.sort_by(|a, b| a.alpha.cmp(&b.alpha));

    let verdict = match infinite_witness(graph, d, &classes) {
        Some(w) => w,
        None => match graph
            .paths_of_length(bound)
            .into_iter()
            .find(|p| !has_member_prefix(p, bound))
        {
            Some(frontier) => ClassVerdict::BoundExhausted { frontier },
            None => ClassVerdict::Complete,
        },
    };
    MinimalClassSet {
        g: g.clone(),
        classes,
        bound_used: bound,
        verdict,
    }
}

/// For a finite group the question is decided on the automaton whose states
/// are pairs (range, degree). A first path is in `A_g` when its state can be
/// closed off by some second path; minimal ones are the walks that stay
/// outside `A_g` until their last step.
fn exact_minimal_classes(
    graph: &Graph,
    g: &GroupElement,
    d: &DegreeMap,
    elements: &[GroupElement],
) -> (Vec<ClassRep>, ClassVerdict) {
    let group = d.group();
    let index: HashMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let n = elements.len();
    let state = |v: VertexId, h: &GroupElement| v.index() * n + index[h];
    let states = graph.vertex_count() * n;
    let step = |s: usize, e: EdgeId| {
        let h = group.op(&elements[s % n], d.edge_degree(e));
        state(graph.range(e), &h)
    };

    // shortest second path into every state, layer by layer
    let mut betas: Vec<Option<Path>> = vec![None; states];
    let mut layer: Vec<Path> = graph.vertex_ids().map(Path::vertex).collect();
    let e = group.identity();
    while !layer.is_empty() {
        let mut fresh = Vec::new();
        for p in layer {
            let s = state(p.range(), &d.path_degree(&p));
            if betas[s].is_none() {
                betas[s] = Some(p.clone());
                fresh.push(p);
            }
        }
        let mut next: Vec<Path> = fresh
            .iter()
            .flat_map(|p| graph.out_edges(p.range()).iter().map(move |&f| p.extended(f, graph.range(f))))
            .collect();
        next.sort();
        layer = next;
    }

    let g_inv = group.inverse(g);
    let closing = |s: usize| {
        let want = group.op(&g_inv, &elements[s % n]);
        betas[state(VertexId((s / n) as u32), &want)].as_ref()
    };
    let accepting: Vec<bool> = (0..states).map(|s| closing(s).is_some()).collect();

    // states outside A_g from which A_g can still be entered
    let mut live = vec![false; states];
    loop {
        let mut changed = false;
        for s in 0..states {
            if accepting[s] || live[s] {
                continue;
            }
            let v = VertexId((s / n) as u32);
            if graph.out_edges(v).iter().any(|&f| {
                let t = step(s, f);
                accepting[t] || live[t]
            }) {
                live[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let class = |alpha: Path, s: usize| ClassRep {
        representative: Monomial::new(alpha.clone(), closing(s).expect("accepting state").clone())
            .expect("ranges agree"),
        alpha,
    };
    let mut classes = Vec::new();
    let mut starts = Vec::new();
    for v in graph.vertex_ids() {
        let s = state(v, &e);
        if accepting[s] {
            classes.push(class(Path::vertex(v), s));
        } else if live[s] {
            starts.push(s);
        }
    }

    let automaton = Automaton {
        graph,
        n,
        step: &step,
        live: &live,
    };
    if let Some((cycle, c)) = automaton.cycle(&starts) {
        let head = automaton.walk(&starts, |t| t == c).expect("cycle is reachable");
        let tail = automaton.walk(&[c], |t| accepting[t]).expect("live states reach A_g");
        return (
            classes_sorted(classes),
            ClassVerdict::Pumped {
                first: head.concat(&tail),
                second: head.concat(&cycle).concat(&tail),
                cycle,
            },
        );
    }

    // no cycle: the live part is a finite dag, so walk all of it
    let mut stack: Vec<(Path, usize)> = starts.iter().map(|&s| (Path::vertex(VertexId((s / n) as u32)), s)).collect();
    while let Some((p, s)) = stack.pop() {
        for &f in graph.out_edges(p.range()) {
            let t = step(s, f);
            let q = p.extended(f, graph.range(f));
            if accepting[t] {
                classes.push(class(q, t));
            } else if live[t] {
                stack.push((q, t));
            }
        }
    }
    (classes_sorted(classes), ClassVerdict::Complete)
}

fn classes_sorted(mut classes: Vec<ClassRep>) -> Vec<ClassRep> {
    classes.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    classes
}

/// Transitions between (range, degree) states, numbered `v * n + degree`.
struct Automaton<'a> {
    graph: &'a Graph,
    n: usize,
    step: &'a dyn Fn(usize, EdgeId) -> usize,
    live: &'a [bool],
}

impl Automaton<'_> {
    fn vertex(&self, s: usize) -> VertexId {
        VertexId((s / self.n) as u32)
    }

    fn successors(&self, s: usize) -> impl Iterator<Item = (EdgeId, usize)> + '_ {
        self.graph
            .out_edges(self.vertex(s))
            .iter()
            .map(move |&f| (f, (self.step)(s, f)))
    }

    /// Shortest path from one of `from` to a state satisfying `goal`, moving
    /// through live states only. A goal state itself need not be live.
    fn walk(&self, from: &[usize], goal: impl Fn(usize) -> bool) -> Option<Path> {
        let mut parent: HashMap<usize, Option<(usize, EdgeId)>> = from.iter().map(|&s| (s, None)).collect();
        let mut queue: std::collections::VecDeque<usize> = from.iter().copied().collect();
        let mut found = from.iter().copied().find(|&s| goal(s));
        'search: while let Some(s) = queue.pop_front().filter(|_| found.is_none()) {
            for (f, t) in self.successors(s) {
                if parent.contains_key(&t) {
                    continue;
                }
                if goal(t) || self.live[t] {
                    parent.insert(t, Some((s, f)));
                }
                if goal(t) {
                    found = Some(t);
                    break 'search;
                }
                if self.live[t] {
                    queue.push_back(t);
                }
            }
        }
        let mut edges = Vec::new();
        let mut s = found?;
        while let Some(&Some((prev, f))) = parent.get(&s) {
            edges.push(f);
            s = prev;
        }
        edges.reverse();
        let start = Path::vertex(self.vertex(s));
        Some(edges.into_iter().fold(start, |p, f| p.extended(f, self.graph.range(f))))
    }

    /// A closed walk among live states reachable from `starts`, if any.
    fn cycle(&self, starts: &[usize]) -> Option<(Path, usize)> {
        // 0 unvisited, 1 on the stack, 2 done
        let mut color: HashMap<usize, u8> = HashMap::new();
        let mut on_stack: Vec<(usize, EdgeId)> = Vec::new();
        for &root in starts {
            if color.contains_key(&root) {
                continue;
            }
            let mut frames: Vec<(usize, Vec<(EdgeId, usize)>)> = vec![(root, self.successors(root).collect())];
            color.insert(root, 1);
            while let Some((s, todo)) = frames.last_mut() {
                let s = *s;
                let Some((f, t)) = todo.pop() else {
                    color.insert(s, 2);
                    frames.pop();
                    on_stack.pop();
                    continue;
                };
                if !self.live[t] {
                    continue;
                }
                match color.get(&t).copied().unwrap_or(0) {
                    0 => {
                        color.insert(t, 1);
                        on_stack.push((s, f));
                        frames.push((t, self.successors(t).collect()));
                    }
                    1 => {
                        // the stack edges from t onwards, then f back to t
                        let from = on_stack.iter().position(|&(u, _)| u == t).unwrap_or(on_stack.len());
                        let mut edges: Vec<EdgeId> = on_stack[from..].iter().map(|&(_, e)| e).collect();
                        edges.push(f);
                        let start = Path::vertex(self.vertex(t));
                        let cycle = edges.into_iter().fold(start, |p, e| p.extended(e, self.graph.range(e)));
                        return Some((cycle, t));
                    }
                    _ => {}
                }
            }
        }
        None
    }
}

fn infinite_witness(graph: &Graph, d: &DegreeMap, classes: &[ClassRep]) -> Option<ClassVerdict> {
    if !graph.has_infinite_emitters() {
        return None;
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let (a, b) = (&a.alpha, &b.alpha);
            if a.len() != b.len() || a.source() != b.source() {
                continue;
            }
            let diffs: Vec<usize> = (0..a.len()).filter(|&k| a.edges()[k] != b.edges()[k]).collect();
            let [k] = diffs[..] else { continue };
            let (e, f) = (a.edges()[k], b.edges()[k]);
            let v = graph.source(e);
            if graph.is_infinite_emitter(v)
                && graph.source(f) == v
                && graph.range(e) == graph.range(f)
                && d.edge_degree(e) == d.edge_degree(f)
            {
                return Some(ClassVerdict::InfiniteWitness {
                    first: a.clone(),
                    second: b.clone(),
                    vertex: v,
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub enum AbsenceReason {
    InfiniteMinimalSet { first: Path, second: Path, vertex: VertexId },
    PumpedMinimalSet { first: Path, second: Path, cycle: Path },
    Undetermined { frontier: Path },
    /// The candidate did not act as the identity on `monomial`, from the
    /// left when `left` is set.
    VerificationFailed { candidate: String, monomial: Monomial, left: bool },
}

impl AbsenceReason {
    /// Whether the reason rules `ε_g` out, rather than leaving it open.
    ///
    /// Every element of `S_g S_{g^-1}` is a finite sum of terms sitting
    /// under some minimal class, and `n(x) y = 0` for incomparable classes,
    /// so no finite sum can fix every member of an infinite minimal set.
    pub fn is_proof(&self) -> bool {
        matches!(
            self,
            AbsenceReason::InfiniteMinimalSet { .. } | AbsenceReason::PumpedMinimalSet { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EpsilonOutcome<R> {
    /// `epsilon` is the sum of `x y` over the certificate pairs, with `x` in
    /// `X_g` and `y = x*` in `X_{g^-1}`.
    Present {
        epsilon: Element<R>,
        certificate: Vec<(Monomial, Monomial)>,
    },
    Absent(AbsenceReason),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonReport<R> {
    pub g: GroupElement,
    pub bound_used: usize,
    pub identity_checked_on: usize,
    pub classes: MinimalClassSet,
    pub outcome: EpsilonOutcome<R>,
}

impl<R> EpsilonReport<R> {
    pub fn epsilon(&self) -> Option<&Element<R>> {
        match &self.outcome {
            EpsilonOutcome::Present { epsilon, .. } => Some(epsilon),
            EpsilonOutcome::Absent(_) => None,
        }
    }

    pub fn certificate(&self) -> &[(Monomial, Monomial)] {
        match &self.outcome {
            EpsilonOutcome::Present { certificate, .. } => certificate,
            EpsilonOutcome::Absent(_) => &[],
        }
    }
}

/// `ε_g` with its factorization, checked on `X_g` from the left and on
/// `X_{g^-1}` from the right.
pub fn epsilon<R: Coefficient>(alg: &Algebra<R>, g: &GroupElement, d: &DegreeMap, bound: usize) -> EpsilonReport<R> {
    let catalog = MonomialCatalog::build(alg, d, bound);
    epsilon_in(alg, g, d, &catalog)
}

/// As [`epsilon`], reusing an existing catalog (and its bound).
pub fn epsilon_in<R: Coefficient>(
    alg: &Algebra<R>,
    g: &GroupElement,
    d: &DegreeMap,
    catalog: &MonomialCatalog,
) -> EpsilonReport<R> {
    let bound = catalog.bound();
    let classes = minimal_classes(alg.graph(), g, d, bound);
    let absent = |reason| EpsilonReport {
        g: g.clone(),
        bound_used: bound,
        identity_checked_on: 0,
        classes: classes.clone(),
        outcome: EpsilonOutcome::Absent(reason),
    };
    match &classes.verdict {
        ClassVerdict::InfiniteWitness { first, second, vertex } => {
            return absent(AbsenceReason::InfiniteMinimalSet {
                first: first.clone(),
                second: second.clone(),
                vertex: *vertex,
            })
        }
        ClassVerdict::Pumped { first, second, cycle } => {
            return absent(AbsenceReason::PumpedMinimalSet {
                first: first.clone(),
                second: second.clone(),
                cycle: cycle.clone(),
            })
        }
        ClassVerdict::BoundExhausted { frontier } => {
            return absent(AbsenceReason::Undetermined {
                frontier: frontier.clone(),
            })
        }
        ClassVerdict::Complete => {}
    }

    let certificate: Vec<(Monomial, Monomial)> = classes
        .classes
        .iter()
        .map(|c| (c.representative.clone(), c.representative.adjoint()))
        .collect();
    let eps: Element<R> = certificate.iter().map(|(x, y)| alg.mono_mul(x, y)).sum();

    let xs = catalog.of_degree(g);
    let ys = catalog.of_degree(&d.group().inverse(g));
    let left_fail = xs.par_iter().find_first(|x| {
        let x = alg.monomial(x);
        alg.mul(&eps, &x) != x
    });
    let right_fail = || {
        ys.par_iter().find_first(|y| {
            let y = alg.monomial(y);
            alg.mul(&y, &eps) != y
        })
    };
    let failure = match left_fail {
        Some(m) => Some((m, true)),
        None => right_fail().map(|m| (m, false)),
    };
    let outcome = match failure {
        Some((m, left)) => EpsilonOutcome::Absent(AbsenceReason::VerificationFailed {
            candidate: alg.format(&eps),
            monomial: m.clone(),
            left,
        }),
        None => EpsilonOutcome::Present {
            epsilon: eps,
            certificate,
        },
    };
    EpsilonReport {
        g: g.clone(),
        bound_used: bound,
        identity_checked_on: xs.len() + ys.len(),
        classes,
        outcome,
    }
}

/// A local unit and the pairs `(x, x*)` whose products add up to it.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnit<R> {
    pub unit: Element<R>,
    pub certificate: Vec<(Monomial, Monomial)>,
}

/// `ε_g(s)` on the left and `ε'_g(s) = ε_{g^-1}(s*)` on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitPair<R> {
    pub s: Element<R>,
    pub degree: GroupElement,
    pub left: LocalUnit<R>,
    pub right: LocalUnit<R>,
    pub left_verified: bool,
    pub right_verified: bool,
}

impl<R> LocalUnitPair<R> {
    pub fn verified(&self) -> bool {
        self.left_verified && self.right_verified
    }
}

/// Sum of `n` over the minimal first paths among `support`.
fn unit_of_support<'a, R: Coefficient>(
    alg: &Algebra<R>,
    support: impl IntoIterator<Item = &'a Monomial>,
) -> LocalUnit<R> {
    let mut by_alpha: BTreeMap<&Path, &Monomial> = BTreeMap::new();
    for m in support {
        by_alpha
            .entry(m.alpha())
            .and_modify(|r| {
                if m < *r {
                    *r = m
                }
            })
            .or_insert(m);
    }
    let alphas: Vec<&Path> = by_alpha.keys().copied().collect();
    let certificate: Vec<(Monomial, Monomial)> = by_alpha
        .iter()
        .filter(|(a, _)| !alphas.iter().any(|b| b != *a && b.is_initial_subpath_of(a)))
        .map(|(_, m)| ((*m).clone(), m.adjoint()))
        .collect();
    let unit = certificate.iter().map(|(x, y)| alg.mono_mul(x, y)).sum();
    LocalUnit { unit, certificate }
}

fn degree_of_nonzero<R: Coefficient>(s: &Element<R>, d: &DegreeMap) -> Result<GroupElement, EpsilonError> {
    if s.is_zero() {
        return Err(EpsilonError::Zero);
    }
    homogeneous_degree(s, d).ok_or_else(|| EpsilonError::NotHomogeneous {
        degrees: decompose(s, d)
            .parts
            .keys()
            .map(|g| d.render(g))
            .collect::<Vec<_>>()
            .join(", "),
    })
}

/// Element-specific local units of a nonzero homogeneous `s`, built from the
/// support of `s` alone and checked exactly.
pub fn local_units<R: Coefficient>(alg: &Algebra<R>, s: &Element<R>, d: &DegreeMap) -> Result<LocalUnitPair<R>, EpsilonError> {
    let degree = degree_of_nonzero(s, d)?;
    let left = unit_of_support(alg, s.monomials());
    let star = alg.involution(s);
    let right = unit_of_support(alg, star.monomials());
    let left_verified = alg.mul(&left.unit, s) == *s;
    let right_verified = alg.mul(s, &right.unit) == *s;
    Ok(LocalUnitPair {
        s: s.clone(),
        degree,
        left,
        right,
        left_verified,
        right_verified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One element acting as the identity from `side` on every element of
/// `list`, all of which have the same degree. Zero entries are ignored.
pub fn common_local_unit<R: Coefficient>(
    alg: &Algebra<R>,
    list: &[Element<R>],
    d: &DegreeMap,
    side: Side,
) -> Result<LocalUnit<R>, EpsilonError> {
    if list.is_empty() {
        return Err(EpsilonError::EmptyList);
    }
    let mut degree: Option<GroupElement> = None;
    for s in list.iter().filter(|s| !s.is_zero()) {
        let g = degree_of_nonzero(s, d)?;
        match &degree {
            Some(h) if *h != g => {
                return Err(EpsilonError::DegreeMismatch {
                    left: d.render(h),
                    right: d.render(&g),
                })
            }
            _ => degree = Some(g),
        }
    }
    Ok(match side {
        Side::Left => unit_of_support(alg, list.iter().flat_map(|s| s.monomials())),
        Side::Right => {
            let stars: Vec<Element<R>> = list.iter().map(|s| alg.involution(s)).collect();
            unit_of_support(alg, stars.iter().flat_map(|s| s.monomials()))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricReport {
    pub bound: usize,
    pub checked: usize,
    pub counterexample: Option<Monomial>,
}

impl SymmetricReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// `m m* m = m` for every monomial up to `bound`, which puts each `S_g`
/// inside `S_g S_{g^-1} S_g`.
pub fn check_symmetric<R: Coefficient>(alg: &Algebra<R>, bound: usize) -> SymmetricReport {
    let monomials = alg.normal_monomials(bound);
    let counterexample = monomials
        .par_iter()
        .find_first(|m| {
            let x = alg.monomial(m);
            alg.mul(&alg.mono_mul(m, &m.adjoint()), &x) != x
        })
        .cloned();
    SymmetricReport {
        bound,
        checked: monomials.len(),
        counterexample,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsilonStrongVerdict {
    EpsilonStrong,
    NotEpsilonStrong,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonStrongReport<R> {
    pub bound: usize,
    pub window: Vec<GroupElement>,
    pub verdict: EpsilonStrongVerdict,
    /// The first degree in the window that decided a negative or
    /// undetermined verdict.
    pub witness: Option<GroupElement>,
    pub reports: Vec<EpsilonReport<R>>,
    /// The verdict holds for all of `G`, not just the window. Needs no
    /// flagged vertices, and either a finite group with the whole group in
    /// the window (each `ε_g` is then decided exactly) or the canonical
    /// Z-grading with every degree that has monomials up to the bound in the
    /// window. Other gradings of finite graphs can lack some `ε_g`.
    pub theorem_applies: bool,
}

fn check_window(window: &[GroupElement], d: &DegreeMap) -> Result<(), EpsilonError> {
    let group = d.group();
    if !window.contains(&group.identity()) {
        return Err(EpsilonError::WindowWithoutIdentity);
    }
    match window.iter().find(|g| !window.contains(&group.inverse(g))) {
        Some(g) => Err(EpsilonError::WindowNotSymmetric(d.render(g))),
        None => Ok(()),
    }
}

fn epsilons_on_window<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    window: &[GroupElement],
    catalog: &MonomialCatalog,
) -> Vec<EpsilonReport<R>> {
    window.par_iter().map(|g| epsilon_in(alg, g, d, catalog)).collect()
}

/// Computes `ε_g` for each `g` in the window.
pub fn check_epsilon_strong<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    window: &[GroupElement],
    bound: usize,
) -> Result<EpsilonStrongReport<R>, EpsilonError> {
    check_window(window, d)?;
    let catalog = MonomialCatalog::build(alg, d, bound);
    let reports = epsilons_on_window(alg, d, window, &catalog);

    let infinite = reports
        .iter()
        .find(|r| matches!(&r.outcome, EpsilonOutcome::Absent(reason) if reason.is_proof()));
    let open = reports.iter().find(|r| r.epsilon().is_none());
    let (verdict, witness) = match (infinite, open) {
        (Some(r), _) => (EpsilonStrongVerdict::NotEpsilonStrong, Some(r.g.clone())),
        (None, Some(r)) => (EpsilonStrongVerdict::Undetermined, Some(r.g.clone())),
        (None, None) => (EpsilonStrongVerdict::EpsilonStrong, None),
    };
    let covered = match d.group().elements() {
        Some(all) => all.iter().all(|g| window.contains(g)),
        None => d.is_canonical_z() && catalog.degrees().all(|g| window.contains(g)),
    };
    let theorem_applies = !alg.graph().has_infinite_emitters() && covered;
    Ok(EpsilonStrongReport {
        bound,
        window: window.to_vec(),
        verdict,
        witness,
        reports,
        theorem_applies,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrongVerdict {
    Strong,
    NotStrong,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StronglyGradedReport<R> {
    pub bound: usize,
    pub window: Vec<GroupElement>,
    /// Sink criterion, available for the canonical `Z`-grading of a graph
    /// without flagged vertices.
    pub structural: Option<StrongVerdict>,
    pub sinks: Vec<VertexId>,
    /// Every `ε_g` on the window equals the identity.
    pub computational: StrongVerdict,
    /// Degree at which the computational arm failed or stayed open.
    pub witness: Option<GroupElement>,
    pub reports: Vec<EpsilonReport<R>>,
    pub arms_agree: Option<bool>,
    pub verdict: StrongVerdict,
}

pub fn check_strongly_graded<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    window: &[GroupElement],
    bound: usize,
) -> Result<StronglyGradedReport<R>, EpsilonError> {
    check_window(window, d)?;
    let graph = alg.graph();
    let sinks = graph.sinks();
    let structural = (d.is_canonical_z() && !graph.has_infinite_emitters()).then(|| {
        if sinks.is_empty() {
            StrongVerdict::Strong
        } else {
            StrongVerdict::NotStrong
        }
    });

    let catalog = MonomialCatalog::build(alg, d, bound);
    let reports = epsilons_on_window(alg, d, window, &catalog);
    let one = alg.identity();
    let mut computational = StrongVerdict::Strong;
    let mut witness = None;
    for r in &reports {
        let verdict = match &r.outcome {
            EpsilonOutcome::Present { epsilon, .. } if *epsilon == one => continue,
            EpsilonOutcome::Present { .. } => StrongVerdict::NotStrong,
            EpsilonOutcome::Absent(reason) if reason.is_proof() => StrongVerdict::NotStrong,
            EpsilonOutcome::Absent(_) => StrongVerdict::Undetermined,
        };
        if verdict == StrongVerdict::NotStrong {
            computational = verdict;
            witness = Some(r.g.clone());
            break;
        }
        if computational == StrongVerdict::Strong {
            computational = verdict;
            witness = Some(r.g.clone());
        }
    }

    let arms_agree = match (structural, computational) {
        (Some(s), c) if c != StrongVerdict::Undetermined => Some(s == c),
        _ => None,
    };
    let verdict = match (computational, structural) {
        (StrongVerdict::Undetermined, Some(s)) => s,
        (c, _) => c,
    };
    Ok(StronglyGradedReport {
        bound,
        window: window.to_vec(),
        structural,
        sinks,
        computational,
        witness,
        reports,
        arms_agree,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NearlyEpsilonReport<R> {
    pub checked: usize,
    pub skipped_zero: usize,
    pub pairs: Vec<LocalUnitPair<R>>,
    /// Index into the sample list of the first unverified pair.
    pub failure: Option<usize>,
}

impl<R> NearlyEpsilonReport<R> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builds and checks local units for every nonzero sample. A failure here
/// contradicts the construction and points at a bug.
pub fn check_nearly_epsilon<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    samples: &[Element<R>],
) -> Result<NearlyEpsilonReport<R>, EpsilonError> {
    let results: Vec<Option<Result<LocalUnitPair<R>, EpsilonError>>> = samples
        .par_iter()
        .map(|s| (!s.is_zero()).then(|| local_units(alg, s, d)))
        .collect();
    let mut report = NearlyEpsilonReport {
        checked: 0,
        skipped_zero: 0,
        pairs: Vec::new(),
        failure: None,
    };
    for (i, r) in results.into_iter().enumerate() {
        let Some(r) = r else {
            report.skipped_zero += 1;
            continue;
        };
        let pair = r?;
        report.checked += 1;
        if !pair.verified() && report.failure.is_none() {
            report.failure = Some(i);
        }
        report.pairs.push(pair);
    }
    Ok(report)
}

/// Witnesses `t ∈ S_{g^-1} S_g` with `s t = s` and `t' ∈ S_g S_{g^-1}` with
/// `t' s = s`, so `s S_{g^-1} ≠ 0` and `S_{g^-1} s ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NondegeneracyWitness<R> {
    pub degree: GroupElement,
    pub left: LocalUnit<R>,
    pub right: LocalUnit<R>,
    pub verified: bool,
}

pub fn check_nondegenerate<R: Coefficient>(
    alg: &Algebra<R>,
    s: &Element<R>,
    d: &DegreeMap,
) -> Result<NondegeneracyWitness<R>, EpsilonError> {
    let pair = local_units(alg, s, d)?;
    let verified = pair.verified();
    Ok(NondegeneracyWitness {
        degree: pair.degree,
        left: pair.left,
        right: pair.right,
        verified,
    })
}
