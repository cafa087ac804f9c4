//! Complex ball arithmetic over dyadic centers.
//!
//! A ball is `{ z : |z - (re + i im)| <= rad }`. Every operation returns a ball
//! containing all exact results for operands drawn from the input balls: the
//! exact center is computed first, rounded to the working precision, and the
//! rounding error is added to the radius. Radii are kept to a short mantissa
//! rounded upward.

use std::fmt;

use super::dyadic::{Dyadic, Round};
use super::{ArithError, Rational};

const RADIUS_BITS: u32 = 30;

#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
}

fn radius_up(r: Dyadic) -> Dyadic {
    r.round(RADIUS_BITS, Round::Ceil)
}

/// Upper bound for `|re + i im|` that avoids square roots.
fn manhattan(re: &Dyadic, im: &Dyadic) -> Dyadic {
    &re.abs() + &im.abs()
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic) -> Self {
        assert!(!rad.is_negative(), "negative ball radius");
        ComplexBall {
            re,
            im,
            rad: radius_up(rad),
        }
    }

    /// Exact point ball.
    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        ComplexBall {
            re,
            im,
            rad: Dyadic::zero(),
        }
    }

    pub fn zero() -> Self {
        ComplexBall::point(Dyadic::zero(), Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ComplexBall::point(Dyadic::from_int(n), Dyadic::zero())
    }

    /// Ball around the real rational `q`; exact when `q` is dyadic.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let re = Dyadic::from_rational(q, prec, Round::Nearest);
        let err = (q - &re.to_rational()).abs();
        let rad = Dyadic::from_rational(&err, RADIUS_BITS, Round::Ceil);
        ComplexBall::new(re, Dyadic::zero(), rad)
    }

    pub fn with_radius(&self, rad: Dyadic) -> Self {
        ComplexBall::new(self.re.clone(), self.im.clone(), rad)
    }

    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn radius(&self) -> &Dyadic {
        &self.rad
    }

    /// The center as an exact point ball.
    pub fn midpoint(&self) -> Self {
        ComplexBall::point(self.re.clone(), self.im.clone())
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
            rad: self.rad.clone(),
        }
    }

    fn finish(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let re_r = re.round(prec, Round::Nearest);
        let im_r = im.round(prec, Round::Nearest);
        let err = &(&re - &re_r).abs() + &(&im - &im_r).abs();
        ComplexBall {
            re: re_r,
            im: im_r,
            rad: radius_up(&rad + &err),
        }
    }

    pub fn add(&self, other: &ComplexBall, prec: u32) -> Self {
        Self::finish(
            &self.re + &other.re,
            &self.im + &other.im,
            &self.rad + &other.rad,
            prec,
        )
    }

    pub fn sub(&self, other: &ComplexBall, prec: u32) -> Self {
        Self::finish(
            &self.re - &other.re,
            &self.im - &other.im,
            &self.rad + &other.rad,
            prec,
        )
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, other: &ComplexBall, prec: u32) -> Self {
        let re = &(&self.re * &other.re) - &(&self.im * &other.im);
        let im = &(&self.re * &other.im) + &(&self.im * &other.re);
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            Dyadic::zero()
        } else {
            let a = manhattan(&self.re, &self.im);
            let b = manhattan(&other.re, &other.im);
            &(&(&a * &other.rad) + &(&b * &self.rad)) + &(&self.rad * &other.rad)
        };
        Self::finish(re, im, rad, prec)
    }

    /// Multiplication by an exact integer.
    pub fn mul_int(&self, k: i64, prec: u32) -> Self {
        let kd = Dyadic::from_int(k);
        Self::finish(
            &self.re * &kd,
            &self.im * &kd,
            &self.rad * &Dyadic::from_int(k.abs()),
            prec,
        )
    }

    pub fn mul_rational(&self, q: &Rational, prec: u32) -> Self {
        self.mul(&ComplexBall::from_rational(q, prec), prec)
    }

    /// `1 / self`. Fails when the ball cannot be proven to exclude zero.
    pub fn inv(&self, prec: u32) -> Result<Self, ArithError> {
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        if norm.is_zero() {
            return Err(ArithError::BallContainsZero);
        }
        let lower = norm.root_lower(2);
        if lower <= self.rad {
            return Err(ArithError::BallContainsZero);
        }
        // center conj(c)/|c|^2, each coordinate off by less than one ulp
        let re_lo = self.re.div(&norm, prec, Round::Floor);
        let re_hi = self.re.div(&norm, prec, Round::Ceil);
        let im_lo = (-&self.im).div(&norm, prec, Round::Floor);
        let im_hi = (-&self.im).div(&norm, prec, Round::Ceil);
        let err = &(&re_hi - &re_lo) + &(&im_hi - &im_lo);
        // |1/z - 1/c| = |z - c| / (|z||c|) <= r / (L (L - r))
        let spread = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let den = &lower * &(&lower - &self.rad);
            self.rad.div(&den, RADIUS_BITS, Round::Ceil)
        };
        Ok(ComplexBall {
            re: re_lo,
            im: im_lo,
            rad: radius_up(&spread + &err),
        })
    }

    pub fn div(&self, other: &ComplexBall, prec: u32) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv(prec)?, prec))
    }

    pub fn pow(&self, k: u32, prec: u32) -> Self {
        let mut acc = ComplexBall::from_int(1);
        for _ in 0..k {
            acc = acc.mul(self, prec);
        }
        acc
    }

    /// Exact test of whether the point `re + i im` lies in the ball.
    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        let dx = re - &self.re.to_rational();
        let dy = im - &self.im.to_rational();
        let r = self.rad.to_rational();
        &dx * &dx + &dy * &dy <= &r * &r
    }

    pub fn contains_zero(&self) -> bool {
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        norm <= &self.rad * &self.rad
    }

    /// Whether the ball meets the real axis.
    pub fn meets_real_axis(&self) -> bool {
        self.im.abs() <= self.rad
    }

    /// Upper bound for `|z|` over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        &norm.root_upper(2) + &self.rad
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &ComplexBall) -> bool {
        if other.rad > self.rad {
            return false;
        }
        let dx = &self.re - &other.re;
        let dy = &self.im - &other.im;
        let slack = &self.rad - &other.rad;
        &(&dx * &dx) + &(&dy * &dy) <= &slack * &slack
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// True only when the two balls are provably disjoint: the distance between
/// the centers strictly exceeds the sum of the radii.
pub fn ball_disjoint(a: &ComplexBall, b: &ComplexBall) -> bool {
    let dx = &a.re - &b.re;
    let dy = &a.im - &b.im;
    let reach = &a.rad + &b.rad;
    &(&dx * &dx) + &(&dy * &dy) > &reach * &reach
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i) ± {}", self.re, self.im, self.rad)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im == 0.0 {
            write!(f, "{re:.6}")
        } else if im < 0.0 {
            write!(f, "{re:.6}-{:.6}i", -im)
        } else {
            write!(f, "{re:.6}+{im:.6}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64, r: f64) -> ComplexBall {
        let q = |v: f64| Dyadic::from_rational(&rat_of(v), 60, Round::Nearest);
        ComplexBall::new(q(x), Dyadic::zero(), q(r))
    }

    fn rat_of(v: f64) -> Rational {
        // exact value of the double
        let scaled = (v * 2f64.powi(52)).round() as i64;
        Rational::new(scaled, 1i64 << 52)
    }

    #[test]
    fn disjointness_examples() {
        assert!(ball_disjoint(&real(0.0, 0.1), &real(1.0, 0.1)));
        assert!(!ball_disjoint(&real(0.0, 0.6), &real(1.0, 0.6)));
        // touching balls are not provably disjoint
        assert!(!ball_disjoint(&real(0.0, 0.5), &real(1.0, 0.5)));
    }

    #[test]
    fn inverse_of_ball_around_zero_fails() {
        assert!(real(0.0, 0.1).inv(64).is_err());
        assert!(real(0.05, 0.1).inv(64).is_err());
        assert!(ComplexBall::zero().inv(64).is_err());
    }

    #[test]
    fn inverse_encloses_exact() {
        let z = ComplexBall::point(Dyadic::from_int(3), Dyadic::from_int(-4));
        let w = z.inv(80).unwrap();
        // 1/(3-4i) = (3+4i)/25
        assert!(w.contains(&Rational::new(3, 25), &Rational::new(4, 25)));
        assert!(w.radius().log2_abs() < -70.0);
    }

    #[test]
    fn third_is_enclosed() {
        let b = ComplexBall::from_rational(&Rational::new(1, 3), 64);
        assert!(b.contains(&Rational::new(1, 3), &Rational::zero()));
        let three = b.mul_int(3, 64);
        assert!(three.contains(&Rational::one(), &Rational::zero()));
    }
}
