//! Frobenius systems for gradings by finite groups.
//!
//! With `E` the projection onto the degree-`e` part and `(x_j, y_j)` running
//! over the pairs `(m, m*)` behind every `ε_g`, each `s` satisfies
//! `s = Σ x_j E(y_j s) = Σ E(s x_j) y_j`.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, Coefficient, Element};
use crate::epsilon::{epsilon_in, AbsenceReason, EpsilonOutcome};
use crate::grading::{decompose, DegreeMap, GroupElement, MonomialCatalog};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrobeniusError {
    #[error("the grading group {0} is infinite")]
    InfiniteGroup(String),
    #[error("the graph has infinite emitters")]
    InfiniteEmitters,
    /// `proven` is set when `ε_g` cannot exist, rather than not being found
    /// within the bound.
    #[error("no epsilon at degree {degree}: {reason}")]
    EpsilonAbsent { degree: String, reason: String, proven: bool },
}

/// The degree-`e` part of `a`.
pub fn projection_e<R: Coefficient>(a: &Element<R>, d: &DegreeMap) -> Element<R> {
    decompose(a, d).part(&d.group().identity())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusPair<R> {
    /// Degree of `x`; `y` has the inverse degree.
    pub degree: GroupElement,
    pub x: Element<R>,
    pub y: Element<R>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSystem<R> {
    pub degrees: DegreeMap,
    pub bound: usize,
    pub pairs: Vec<FrobeniusPair<R>>,
    /// `ε_g` for every `g` in the group.
    pub epsilons: Vec<(GroupElement, Element<R>)>,
}

impl<R: Coefficient> FrobeniusSystem<R> {
    /// `E`, the trace of the system.
    pub fn trace(&self, a: &Element<R>) -> Element<R> {
        projection_e(a, &self.degrees)
    }

    /// `Σ x_j E(y_j s)`.
    pub fn left_expansion(&self, alg: &Algebra<R>, s: &Element<R>) -> Element<R> {
        self.pairs
            .iter()
            .map(|p| alg.mul(&p.x, &self.trace(&alg.mul(&p.y, s))))
            .sum()
    }

    /// `Σ E(s x_j) y_j`.
    pub fn right_expansion(&self, alg: &Algebra<R>, s: &Element<R>) -> Element<R> {
        self.pairs
            .iter()
            .map(|p| alg.mul(&self.trace(&alg.mul(s, &p.x)), &p.y))
            .sum()
    }

    /// A copy with the `y` of pair `j` replaced by zero.
    pub fn without_dual(&self, j: usize) -> Self {
        let mut out = self.clone();
        out.pairs[j].y = Element::zero();
        out
    }
}

/// Collects the certificate pairs of every `ε_g`, `g` ranging over the
/// whole (finite) group.
pub fn build_frobenius_system<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    bound: usize,
) -> Result<FrobeniusSystem<R>, FrobeniusError> {
    let elements = d
        .group()
        .elements()
        .ok_or_else(|| FrobeniusError::InfiniteGroup(d.group().to_string()))?;
    if alg.graph().has_infinite_emitters() {
        return Err(FrobeniusError::InfiniteEmitters);
    }
    let catalog = MonomialCatalog::build(alg, d, bound);
    let reports: Vec<_> = elements
        .par_iter()
        .map(|g| epsilon_in(alg, g, d, &catalog))
        .collect();
    let mut pairs = Vec::new();
    let mut epsilons = Vec::new();
    for r in reports {
        match r.outcome {
            EpsilonOutcome::Present { epsilon, certificate } => {
                for (x, y) in certificate {
                    pairs.push(FrobeniusPair {
                        degree: r.g.clone(),
                        x: alg.monomial(&x),
                        y: alg.monomial(&y),
                    });
                }
                epsilons.push((r.g, epsilon));
            }
            EpsilonOutcome::Absent(reason) => {
                return Err(FrobeniusError::EpsilonAbsent {
                    degree: d.render(&r.g),
                    reason: describe_absence(alg, &reason),
                    proven: reason.is_proof(),
                })
            }
        }
    }
    Ok(FrobeniusSystem {
        degrees: d.clone(),
        bound,
        pairs,
        epsilons,
    })
}

pub(crate) fn describe_absence<R: Coefficient>(alg: &Algebra<R>, reason: &AbsenceReason) -> String {
    let g = alg.graph();
    match reason {
        AbsenceReason::InfiniteMinimalSet { first, second, vertex } => format!(
            "infinitely many minimal classes: {} and {} differ by sample edges of {}",
            g.format_path(first),
            g.format_path(second),
            g.vertex_name(*vertex)
        ),
        AbsenceReason::PumpedMinimalSet { first, second, cycle } => format!(
            "infinitely many minimal classes: {} and {} differ by the cycle {}",
            g.format_path(first),
            g.format_path(second),
            g.format_path(cycle)
        ),
        AbsenceReason::Undetermined { frontier } => {
            format!("undetermined at this bound: {} extends no minimal class", g.format_path(frontier))
        }
        AbsenceReason::VerificationFailed { candidate, monomial, left } => format!(
            "candidate {} is not a {} identity on {}",
            candidate,
            if *left { "left" } else { "right" },
            alg.format_monomial(monomial)
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusIdentity {
    /// `s = Σ x_j E(y_j s)`
    Left,
    /// `s = Σ E(s x_j) y_j`
    Right,
    /// `E(t a t') = t E(a) t'`
    Bimodule,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusFailure<R> {
    pub identity: FrobeniusIdentity,
    /// The sample, or `a` for the bimodule law.
    pub sample: Element<R>,
    pub expected: Element<R>,
    pub found: Element<R>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusReport<R> {
    pub samples_checked: usize,
    pub triples_checked: usize,
    pub counterexample: Option<FrobeniusFailure<R>>,
}

impl<R> FrobeniusReport<R> {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks both expansions on every sample and the bimodule law on every
/// `(t, a, t')`; `t` and `t'` should have degree `e`.
pub fn verify_frobenius<R: Coefficient>(
    alg: &Algebra<R>,
    sys: &FrobeniusSystem<R>,
    samples: &[Element<R>],
    triples: &[(Element<R>, Element<R>, Element<R>)],
) -> FrobeniusReport<R> {
    let expansions = samples.par_iter().find_map_first(|s| {
        let left = sys.left_expansion(alg, s);
        if left != *s {
            return Some(FrobeniusFailure {
                identity: FrobeniusIdentity::Left,
                sample: s.clone(),
                expected: s.clone(),
                found: left,
            });
        }
        let right = sys.right_expansion(alg, s);
        (right != *s).then(|| FrobeniusFailure {
            identity: FrobeniusIdentity::Right,
            sample: s.clone(),
            expected: s.clone(),
            found: right,
        })
    });
    let counterexample = expansions.or_else(|| {
        triples.par_iter().find_map_first(|(t, a, t2)| {
            let found = sys.trace(&alg.product([t, a, t2]));
            let expected = alg.product([t, &sys.trace(a), t2]);
            (found != expected).then(|| FrobeniusFailure {
                identity: FrobeniusIdentity::Bimodule,
                sample: a.clone(),
                expected,
                found,
            })
        })
    });
    FrobeniusReport {
        samples_checked: samples.len(),
        triples_checked: triples.len(),
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::fixtures;
    use crate::grading::GroupSpec;
    use crate::sampling::Sampler;

    fn cyclic(alg: &Algebra<BigInt>, n: u64) -> DegreeMap {
        DegreeMap::canonical_in(alg.graph(), GroupSpec::Cyclic(n)).unwrap()
    }

    #[test]
    fn projection_examples() {
        let alg = Algebra::<BigInt>::new(fixtures::zigzag(), ());
        let d3 = cyclic(&alg, 3);
        let a = alg.parse("v1 + f1").unwrap();
        assert_eq!(projection_e(&a, &d3), alg.parse("v1").unwrap());
        let h = alg.parse("v2 - f2.f3*").unwrap();
        assert_eq!(projection_e(&h, &d3), h);
        assert!(projection_e(&alg.parse("f2.(f4.f3)*").unwrap(), &d3).is_zero());
        let d = DegreeMap::canonical(alg.graph());
        assert_eq!(projection_e(&projection_e(&a, &d), &d), projection_e(&a, &d));
    }

    #[test]
    fn point_system() {
        let alg = Algebra::<BigInt>::new(fixtures::point(), ());
        let d = DegreeMap::canonical_in(alg.graph(), GroupSpec::Cyclic(1)).unwrap();
        let sys = build_frobenius_system(&alg, &d, 2).unwrap();
        assert_eq!(sys.pairs.len(), 1);
        let v = alg.parse("v").unwrap();
        assert_eq!(sys.pairs[0].x, v);
        assert_eq!(sys.pairs[0].y, v);
        assert!(verify_frobenius(&alg, &sys, &[v.clone()], &[]).passed());
    }

    #[test]
    fn zigzag_mod_five() {
        let alg = Algebra::<BigInt>::new(fixtures::zigzag(), ());
        let d = cyclic(&alg, 5);
        let sys = build_frobenius_system(&alg, &d, 4).unwrap();
        let per_degree: Vec<usize> = (0..5)
            .map(|g| sys.pairs.iter().filter(|p| p.degree == GroupElement::int(g)).count())
            .collect();
        assert_eq!(per_degree, [5, 4, 1, 1, 4]);
        let sum_xy: Element<BigInt> = sys.pairs.iter().map(|p| alg.mul(&p.x, &p.y)).sum();
        let sum_eps: Element<BigInt> = sys.epsilons.iter().map(|(_, e)| e.clone()).sum();
        assert_eq!(sum_xy, sum_eps);

        let samples: Vec<_> = alg.normal_monomials(2).iter().map(|m| alg.monomial(m)).collect();
        assert!(verify_frobenius(&alg, &sys, &samples, &[]).passed());
    }

    #[test]
    fn loop_exit_mod_two_and_negative_control() {
        let alg = Algebra::<BigInt>::new(fixtures::loop_exit(), ());
        let d = cyclic(&alg, 2);
        let sys = build_frobenius_system(&alg, &d, 4).unwrap();
        let catalog = MonomialCatalog::build(&alg, &d, 3);
        let mut sampler = Sampler::new(&catalog, 5);
        sampler.max_support = 6;
        let samples: Vec<_> = (0..30).map(|_| sampler.element(&alg)).collect();
        let e = GroupElement::int(0);
        let triples: Vec<_> = (0..10)
            .map(|_| {
                (
                    sampler.homogeneous_of(&alg, &e),
                    sampler.element(&alg),
                    sampler.homogeneous_of(&alg, &e),
                )
            })
            .collect();
        let report = verify_frobenius(&alg, &sys, &samples, &triples);
        assert!(report.passed(), "{:?}", report.counterexample);

        let broken = sys.without_dual(0);
        let probe = sys.pairs[0].x.clone();
        let report = verify_frobenius(&alg, &broken, &[probe], &[]);
        assert_eq!(report.counterexample.unwrap().identity, FrobeniusIdentity::Left);
    }

    #[test]
    fn refusals() {
        let alg = Algebra::<BigInt>::new(fixtures::zigzag(), ());
        assert!(matches!(
            build_frobenius_system(&alg, &DegreeMap::canonical(alg.graph()), 3),
            Err(FrobeniusError::InfiniteGroup(_))
        ));
        let c = Algebra::<BigInt>::new(fixtures::infinite_fan(), ());
        assert_eq!(
            build_frobenius_system(&c, &cyclic(&c, 2), 3),
            Err(FrobeniusError::InfiniteEmitters)
        );
        let b = Algebra::<BigInt>::new(fixtures::loop_exit(), ());
        let d = DegreeMap::from_assignments(
            b.graph(),
            GroupSpec::Cyclic(2),
            [("e", GroupElement::int(0)), ("h", GroupElement::int(1))],
        )
        .unwrap();
        match build_frobenius_system(&b, &d, 3) {
            Err(FrobeniusError::EpsilonAbsent { degree, proven, .. }) => {
                assert_eq!(degree, "1");
                assert!(proven);
            }
            other => panic!("{other:?}"),
        }
    }
}
