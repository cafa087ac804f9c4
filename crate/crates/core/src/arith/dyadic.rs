//! Binary floating point with arbitrary-precision mantissa.
//!
//! A `Dyadic` is exactly `mantissa * 2^exponent`. Ring operations are exact;
//! precision loss only happens in [`Dyadic::round`] and the division and root
//! helpers, each of which takes an explicit rounding direction so callers can
//! keep enclosures rigorous.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
    Nearest,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `num / den` rounded to an integer in the given direction. `den > 0`.
fn div_round(num: &BigInt, den: &BigInt, mode: Round) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    match mode {
        Round::Floor => q,
        Round::Ceil => {
            if r.is_zero() {
                q
            } else {
                q + 1
            }
        }
        Round::Nearest => {
            // floor(num/den + 1/2)
            if (&r << 1u32) >= *den {
                q + 1
            } else {
                q
            }
        }
    }
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        match mantissa.trailing_zeros() {
            None => Dyadic::zero(),
            Some(tz) => Dyadic {
                mantissa: mantissa >> tz,
                exponent: exponent + tz as i64,
            },
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    /// Exact value of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        let (m, e, sign) = num_traits::float::FloatCore::integer_decode(x);
        Dyadic::new(BigInt::from(m) * sign as i64, e as i64)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic::new(BigInt::one(), k)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        Dyadic::new(
            num_traits::Pow::pow(&self.mantissa, k),
            self.exponent * k as i64,
        )
    }

    /// Number of significant mantissa bits.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(self.mantissa.clone(), pow2((-self.exponent) as u64))
        }
    }

    /// Rounds `q` to a dyadic with about `prec` significant bits.
    pub fn from_rational(q: &Rational, prec: u32, mode: Round) -> Self {
        let num = q.numer();
        let den = q.denom();
        if num.is_zero() {
            return Dyadic::zero();
        }
        if den.is_one() {
            return Dyadic::from_bigint(num.clone()).round(prec, mode);
        }
        // den > 0 always.
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        Self::scaled_quotient(num, den, shift, 0, mode)
    }

    /// `(num / den) * 2^extra` rounded with `shift` fractional bits of headroom.
    fn scaled_quotient(num: &BigInt, den: &BigInt, shift: i64, extra: i64, mode: Round) -> Self {
        let (n, d) = if shift >= 0 {
            (num << shift as u64, den.clone())
        } else {
            (num.clone(), den << (-shift) as u64)
        };
        Dyadic::new(div_round(&n, &d, mode), extra - shift)
    }

    /// Keeps at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Round) -> Self {
        let bits = self.mantissa.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let q = div_round(&self.mantissa, &pow2(shift), mode);
        Dyadic::new(q, self.exponent + shift as i64)
    }

    /// Quotient `self / other` to about `prec` bits. Panics when `other` is zero.
    pub fn div(&self, other: &Dyadic, prec: u32, mode: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (num, den) = if other.mantissa.is_negative() {
            (-&self.mantissa, -&other.mantissa)
        } else {
            (self.mantissa.clone(), other.mantissa.clone())
        };
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        Self::scaled_quotient(&num, &den, shift, self.exponent - other.exponent, mode)
    }

    /// Approximate `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mantissa.bits();
        let drop = bits.saturating_sub(64);
        let top = (self.mantissa.abs() >> drop).to_f64().unwrap_or(f64::MAX);
        top.log2() + drop as f64 + self.exponent as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let drop = bits.saturating_sub(64);
        let top = (&self.mantissa >> drop).to_f64().unwrap_or(f64::NAN);
        let e = (drop as i64 + self.exponent).clamp(-2000, 2000) as i32;
        top * 2f64.powi(e)
    }

    /// Smallest-ish `r >= 0` with `r^k >= self`. Requires `self >= 0`.
    pub fn root_upper(&self, k: u32) -> Dyadic {
        assert!(!self.is_negative(), "root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut r = approx_root(self, k, Round::Ceil);
        while r.pow(k) < *self {
            r = (&r + &r.mul_pow2(-30)).round(64, Round::Ceil);
        }
        r
    }

    /// Largest-ish `r >= 0` with `r^k <= self`. Requires `self >= 0`.
    pub fn root_lower(&self, k: u32) -> Dyadic {
        assert!(!self.is_negative(), "root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut r = approx_root(self, k, Round::Floor);
        while r.pow(k) > *self {
            r = (&r - &r.mul_pow2(-30)).round(64, Round::Floor);
        }
        r
    }
}

fn approx_root(x: &Dyadic, k: u32, mode: Round) -> Dyadic {
    let t = x.log2_abs() / k as f64;
    let whole = t.floor();
    let frac = t - whole;
    let scaled = 2f64.powf(frac) * (1u64 << 52) as f64;
    let m = match mode {
        Round::Floor => scaled.floor() as u64 - 1,
        _ => scaled.ceil() as u64 + 1,
    };
    Dyadic::new(BigInt::from(m), whole as i64 - 52)
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &rhs.mantissa << (rhs.exponent - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(d(12, 0), d(3, 2));
        assert_eq!(d(0, 17), Dyadic::zero());
    }

    #[test]
    fn rounding_directions() {
        // 11 = 0b1011; two bits keep 0b10 (floor 8) or 0b11 (ceil 12).
        let x = d(11, 0);
        assert_eq!(x.round(2, Round::Floor), d(8, 0));
        assert_eq!(x.round(2, Round::Ceil), d(12, 0));
        assert_eq!(x.round(2, Round::Nearest), d(12, 0));
        let y = d(-11, 0);
        assert_eq!(y.round(2, Round::Floor), d(-12, 0));
        assert_eq!(y.round(2, Round::Ceil), d(-8, 0));
    }

    #[test]
    fn rational_enclosure() {
        let third = Rational::new(1, 3);
        let lo = Dyadic::from_rational(&third, 60, Round::Floor);
        let hi = Dyadic::from_rational(&third, 60, Round::Ceil);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!((&hi - &lo).log2_abs() < -58.0);
        let neg = Dyadic::from_rational(&-third.clone(), 60, Round::Floor);
        assert!(neg.to_rational() < -third);
    }

    #[test]
    fn division_brackets_quotient() {
        let a = d(1, 0);
        let b = d(-3, 0);
        let lo = a.div(&b, 50, Round::Floor);
        let hi = a.div(&b, 50, Round::Ceil);
        let exact = Rational::new(-1, 3);
        assert!(lo.to_rational() <= exact && exact <= hi.to_rational());
    }

    #[test]
    fn doubles_are_exact() {
        assert_eq!(Dyadic::from_f64(-0.375), d(-3, -3));
        assert_eq!(Dyadic::from_f64(0.0), Dyadic::zero());
        assert_eq!(Dyadic::from_f64(1e10).to_f64(), 1e10);
    }

    #[test]
    fn roots_bracket() {
        let two = d(2, 0);
        let up = two.root_upper(2);
        let down = two.root_lower(2);
        assert!(up.pow(2) >= two && down.pow(2) <= two);
        assert!((&up - &down).log2_abs() < -40.0);
        let tiny = d(3, -4000);
        let r = tiny.root_upper(5);
        assert!(r.pow(5) >= tiny);
        assert!(r.log2_abs() > -801.0 && r.log2_abs() < -799.0);
    }
}
