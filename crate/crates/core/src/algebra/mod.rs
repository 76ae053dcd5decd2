//! Exact arithmetic in Leavitt path algebras.

mod coefficient;
mod element;
mod expr;
mod ops;

pub use coefficient::{Coefficient, CoefficientError, CoefficientRingSpec, Modulus, ZMod};
pub use element::{Element, Monomial};
pub use expr::ExprError;
pub use ops::Algebra;
