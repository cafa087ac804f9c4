//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::PolyError;
use crate::arith::{ComplexBall, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        UniPoly::monomial(Rational::one(), 1)
    }

    /// Monic product of `(x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(UniPoly::one(), |acc, r| {
            &acc * &UniPoly::new(vec![-r, Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rational::from(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in ball arithmetic; the result contains `p(z)` for
    /// every `z` in `x`.
    pub fn eval_ball(&self, x: &ComplexBall, prec: u32) -> ComplexBall {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexBall::zero(), |acc, c| {
                acc.mul(x, prec)
                    .add(&ComplexBall::from_rational(c, prec), prec)
            })
    }

    /// Evaluation at a polynomial, i.e. composition `self(q)`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            &(&acc * q) + &UniPoly::constant(c.clone())
        })
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&n| n >= d) else {
            return Ok((UniPoly::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); top - d + 1];
        for k in (d..=top).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[k - d + j] -= &t;
            }
            quot[k - d] = q;
        }
        rem.truncate(d);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &UniPoly) -> Result<bool, PolyError> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly), PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0.leading().expect("nonzero gcd").recip();
        Ok((r0.scale(&lc), s0.scale(&lc), t0.scale(&lc)))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false),
        }
    }

    /// Rescales to a monic polynomial with integer coefficients whose roots
    /// are `c` times the roots of `self`. Returns the polynomial and `c`.
    pub fn to_monic_integral(&self) -> Option<(UniPoly, BigInt)> {
        let n = self.degree()?;
        // clear denominators
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &Rational::from_integer(l.clone())).numer().clone())
            .collect();
        let lead = ints[n].clone();
        let lead_abs = num_traits::Signed::abs(&lead);
        if lead_abs.is_one() {
            let p = UniPoly::new(ints.into_iter().map(Rational::from_integer).collect());
            return Some((p.monic(), BigInt::one()));
        }
        // roots c*r with c = |lead|: coefficient k becomes a_k * c^(n-k) / a_n
        let c = lead_abs;
        let mut out = Vec::with_capacity(n + 1);
        for (k, a) in ints.iter().enumerate() {
            let scaled = Rational::from_integer(a * num_traits::pow::pow(c.clone(), n - k))
                / Rational::from_integer(lead.clone());
            out.push(scaled);
        }
        Some((UniPoly::new(out), c))
    }

    /// Renders with variable name `var`, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag.is_integer() {
                out.push_str(&format!("{mag}{mono}"));
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), UniPoly::zero()));
        let (q, r) = p(&[-2, 0, 0, 1]).divmod(&p(&[0, 0, 1])).unwrap();
        assert_eq!((q, r), (p(&[0, 1]), p(&[-2])));
        assert_eq!(
            p(&[1, 1]).divmod(&UniPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn divmod_low_degree_dividend() {
        let (q, r) = p(&[3, 1]).divmod(&p(&[0, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p(&[3, 1]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(f.gcd(&f.derivative()).unwrap(), UniPoly::one());
        let sq = p(&[1, -2, 1]);
        assert_eq!(sq.gcd(&sq.derivative()).unwrap(), p(&[-1, 1]));
        assert_eq!(
            UniPoly::zero().gcd(&UniPoly::zero()),
            Err(PolyError::GcdOfZeros)
        );
        assert!(!sq.is_squarefree());
        assert!(f.is_squarefree());
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = p(&[1, 1]);
        let m = p(&[-2, 0, 1]);
        let (g, s, t) = a.extended_gcd(&m).unwrap();
        assert_eq!(g, UniPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &m), g);
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn ball_eval_examples() {
        let f = p(&[-2, 0, 1]);
        let v = f.eval_ball(&ComplexBall::zero(), 64);
        assert!(v.contains(&Rational::from(-2), &Rational::zero()));
        let five = p(&[5]).eval_ball(&ComplexBall::from_int(123), 64);
        assert_eq!(five, ComplexBall::from_int(5));
    }

    #[test]
    fn monic_integral_rescaling() {
        // 2x^2 - 3 -> roots scaled by 2: y^2 - 6
        let f = UniPoly::new(vec![
            Rational::from(-3),
            Rational::zero(),
            Rational::from(2),
        ]);
        let (g, c) = f.to_monic_integral().unwrap();
        assert_eq!(g, p(&[-6, 0, 1]));
        assert_eq!(c, BigInt::from(2));
        // x^2 - 1/4 -> 4x^2 - 1 -> y^2 - 4
        let h = UniPoly::new(vec![
            Rational::new(-1, 4),
            Rational::zero(),
            Rational::one(),
        ]);
        let (g, c) = h.to_monic_integral().unwrap();
        assert_eq!(g, p(&[-4, 0, 1]));
        assert_eq!(c, BigInt::from(4));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 0, 0, 1]).to_string(), "x^3 - 2");
        assert_eq!(p(&[1, -3, 0, -1]).to_string(), "-x^3 - 3x + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
