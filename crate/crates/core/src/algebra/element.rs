use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::graph::{Path, VertexId};

use super::Coefficient;

/// The formal product `alpha beta*` of a path and the adjoint of a path with
/// the same range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) alpha: Path,
    pub(crate) beta: Path,
}

impl Monomial {
    /// `None` unless `alpha` and `beta` end at the same vertex.
    pub fn new(alpha: Path, beta: Path) -> Option<Self> {
        (alpha.range() == beta.range()).then_some(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Self {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    /// The path `p` itself, i.e. `p r(p)*`.
    pub fn real(p: Path) -> Self {
        let beta = Path::vertex(p.range());
        Monomial { alpha: p, beta }
    }

    /// The ghost path `p*`, i.e. `r(p) p*`.
    pub fn ghost(p: Path) -> Self {
        let alpha = Path::vertex(p.range());
        Monomial { alpha, beta: p }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `(alpha beta*)* = beta alpha*`.
    pub fn adjoint(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn total_len(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.alpha.is_vertex() && self.beta.is_vertex()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_len()
            .cmp(&other.total_len())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of normal-form monomials with nonzero
/// coefficients. The empty combination is zero.
///
/// Elements only ever hold normal-form monomials, so structural equality is
/// equality in the algebra. Linear operations are available directly;
/// multiplication needs the graph and goes through
/// [`Algebra`](super::Algebra).
#[derive(Clone, Debug, PartialEq)]
pub struct Element<R> {
    pub(crate) terms: BTreeMap<Monomial, R>,
}

impl<R: Coefficient> Default for Element<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> Element<R> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Monomial, R> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&R> {
        self.terms.get(m)
    }

    pub(crate) fn from_normal_monomial(m: Monomial, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), c.clone() * x.clone()))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Element { terms }
    }
}

pub(crate) fn add_term<R: Coefficient>(terms: &mut BTreeMap<Monomial, R>, m: Monomial, c: R) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().clone() + c;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

impl<R: Coefficient> AddAssign<&Element<R>> for Element<R> {
    fn add_assign(&mut self, rhs: &Element<R>) {
        for (m, c) in &rhs.terms {
            add_term(&mut self.terms, m.clone(), c.clone());
        }
    }
}

impl<R: Coefficient> Add<&Element<R>> for &Element<R> {
    type Output = Element<R>;

    fn add(self, rhs: &Element<R>) -> Element<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Coefficient> Add for Element<R> {
    type Output = Element<R>;

    fn add(mut self, rhs: Element<R>) -> Element<R> {
        self += &rhs;
        self
    }
}

impl<R: Coefficient> Neg for &Element<R> {
    type Output = Element<R>;

    fn neg(self) -> Element<R> {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<R: Coefficient> Neg for Element<R> {
    type Output = Element<R>;

    fn neg(self) -> Element<R> {
        -&self
    }
}

impl<R: Coefficient> Sub<&Element<R>> for &Element<R> {
    type Output = Element<R>;

    fn sub(self, rhs: &Element<R>) -> Element<R> {
        self + &(-rhs)
    }
}

impl<R: Coefficient> Sub for Element<R> {
    type Output = Element<R>;

    fn sub(self, rhs: Element<R>) -> Element<R> {
        &self - &rhs
    }
}

impl<R: Coefficient> std::iter::Sum for Element<R> {
    fn sum<I: Iterator<Item = Element<R>>>(iter: I) -> Self {
        iter.fold(Element::zero(), |acc, x| acc + x)
    }
}
