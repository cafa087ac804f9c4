//! Univariate and multivariate polynomial arithmetic over the rationals.

mod multi;
mod uni;

pub use multi::{multi_arith, MonomialOrder, MultiOp, MultiPoly};
pub use uni::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
}
