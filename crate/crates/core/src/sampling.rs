//! Seeded random elements for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Coefficient, Element, Monomial};
use crate::grading::{GroupElement, MonomialCatalog};

/// Draws elements from a monomial catalog. The same seed always gives the
/// same sequence.
pub struct Sampler<'a> {
    catalog: &'a MonomialCatalog,
    degrees: Vec<&'a GroupElement>,
    rng: ChaCha8Rng,
    /// Largest number of terms drawn per element.
    pub max_support: usize,
    /// Coefficients are drawn from `-max_coefficient..=max_coefficient`.
    pub max_coefficient: i64,
}

impl<'a> Sampler<'a> {
    pub fn new(catalog: &'a MonomialCatalog, seed: u64) -> Self {
        Sampler {
            degrees: catalog.degrees().collect(),
            catalog,
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_support: 4,
            max_coefficient: 3,
        }
    }

    fn coefficient<R: Coefficient>(&mut self, alg: &Algebra<R>) -> R {
        loop {
            let c = alg.int(self.rng.gen_range(-self.max_coefficient..=self.max_coefficient));
            if !c.is_zero() {
                return c;
            }
        }
    }

    fn combination<R: Coefficient>(&mut self, alg: &Algebra<R>, pool: &[Monomial]) -> Element<R> {
        if pool.is_empty() {
            return Element::zero();
        }
        let n = self.rng.gen_range(1..=self.max_support.max(1));
        let mut raw = Vec::with_capacity(n);
        for _ in 0..n {
            let m = pool.choose(&mut self.rng).expect("nonempty pool").clone();
            raw.push((m, self.coefficient(alg)));
        }
        alg.normal_form(raw)
    }

    /// A homogeneous element of degree `g`; zero when the catalog has no
    /// monomials of that degree or the terms cancel.
    pub fn homogeneous_of<R: Coefficient>(&mut self, alg: &Algebra<R>, g: &GroupElement) -> Element<R> {
        let pool = self.catalog.of_degree(g);
        self.combination(alg, pool)
    }

    /// A nonzero homogeneous element of a randomly chosen degree.
    pub fn homogeneous<R: Coefficient>(&mut self, alg: &Algebra<R>) -> Element<R> {
        assert!(!self.degrees.is_empty(), "empty catalog");
        loop {
            let g = *self.degrees.choose(&mut self.rng).expect("nonempty");
            let s = self.homogeneous_of(alg, g);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// An element with terms of any degree.
    pub fn element<R: Coefficient>(&mut self, alg: &Algebra<R>) -> Element<R> {
        let pool: Vec<Monomial> = self.catalog.all().cloned().collect();
        self.combination(alg, &pool)
    }
}
