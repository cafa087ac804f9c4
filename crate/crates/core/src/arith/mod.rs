//! Exact rationals, dyadic numbers, and certified complex balls.

mod ball;
mod dyadic;
mod rational;

pub use ball::{ball_disjoint, ComplexBall};
pub use dyadic::{Dyadic, Round};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("division by a ball that may contain zero")]
    BallContainsZero,
}

/// Exact commutative ring elements that can produce their own identities.
///
/// Number field elements carry their modulus, so the identities have to be
/// derived from an existing value rather than conjured from nothing.
pub trait RingElement: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl RingElement for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}
