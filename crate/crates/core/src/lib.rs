//! Exact computation in Leavitt path algebras of directed graphs, with
//! standard group gradings and the constructions around epsilon-strong and
//! nearly epsilon-strong gradings.
//!
//! The algebra is generic over its coefficient ring; the aliases below fix
//! the exact rings that are supported.
//!
//! ```
//! use leavitt_core::{fixtures, grading::{DegreeMap, GroupElement}, epsilon::epsilon, IntegerAlgebra};
//!
//! let alg = IntegerAlgebra::new(fixtures::zigzag(), ());
//! let d = DegreeMap::canonical(alg.graph());
//! let eps = epsilon(&alg, &GroupElement::int(1), &d, 6);
//! assert_eq!(alg.format(eps.epsilon().unwrap()), "v2 + v4 + v5");
//! ```
//!
//! Graphs can also be read from text:
//!
//! ```
//! use leavitt_core::{parse_graph, IntegerAlgebra};
//! use leavitt_core::grading::{DegreeMap, GroupElement};
//! use leavitt_core::epsilon::epsilon;
//!
//! let graph = parse_graph("vertices: u w; edges: e: u -> u; h: u -> w;").unwrap();
//! let alg = IntegerAlgebra::new(graph.into(), ());
//! let d = DegreeMap::canonical(alg.graph());
//! let eps = epsilon(&alg, &GroupElement::int(1), &d, 4);
//! assert_eq!(alg.format(eps.epsilon().unwrap()), "u");
//! ```

pub mod algebra;
pub mod epsilon;
pub mod fixtures;
pub mod frobenius;
pub mod grading;
pub mod graph;
pub mod report;
pub mod sampling;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use algebra::{Algebra, Coefficient, CoefficientRingSpec, Element, Modulus, Monomial, ZMod};
pub use graph::{parse_graph, Graph, Path};

pub type IntegerAlgebra = Algebra<BigInt>;
pub type RationalAlgebra = Algebra<BigRational>;
pub type ModularAlgebra = Algebra<ZMod>;

pub type IntegerElement = Element<BigInt>;
pub type RationalElement = Element<BigRational>;
pub type ModularElement = Element<ZMod>;
