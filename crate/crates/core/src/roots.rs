//! Certified complex root isolation and rational reconstruction.
//!
//! Roots are approximated by simultaneous Aberth iteration. An approximation
//! `z` of a root of a monic degree-`n` polynomial `f` satisfies
//! `min_i |z - r_i| <= |f(z)|^(1/n)`, so the ball of that radius around `z`
//! holds a root. When the `n` balls are pairwise disjoint each holds exactly
//! one, which is the certificate returned with every [`RootSystem`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{ball_disjoint, ComplexBall, Dyadic, Rational};
use crate::poly::UniPoly;

/// Starting working precision in bits.
pub const START_PRECISION: u32 = 64;
/// Working precision ceiling (2^16 bits).
pub const MAX_PRECISION: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial must have degree at least 1")]
    Constant,
    #[error("polynomial is not monic: {0}")]
    NotMonic(UniPoly),
    #[error("polynomial is not squarefree: gcd(f, f') = {0}")]
    NotSquarefree(UniPoly),
    #[error("could not certify roots at {precision} bits; radius exponents {radii_log2:?}")]
    CertificationFailed {
        precision: u32,
        radii_log2: Vec<f64>,
    },
    #[error("refined enclosures could not be matched to the previous ones")]
    Relabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// Provably real.
    Real,
    /// Provably non-real.
    NonReal,
    /// Neither could be shown at the current precision.
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    poly: UniPoly,
    enclosures: Vec<ComplexBall>,
    precision_bits: u32,
    working_precision: u32,
}

impl RootSystem {
    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn enclosures(&self) -> &[ComplexBall] {
        &self.enclosures
    }

    pub fn enclosure(&self, i: usize) -> &ComplexBall {
        &self.enclosures[i]
    }

    pub fn degree(&self) -> usize {
        self.enclosures.len()
    }

    /// Every radius is at most `2^-precision_bits`.
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Bits used by the last iteration.
    pub fn working_precision(&self) -> u32 {
        self.working_precision
    }

    /// Tightens the enclosures to radius `2^-bits`, keeping root labels: the
    /// new ball `i` is shown to meet only the old ball `i`.
    pub fn refine(&self, bits: u32) -> Result<RootSystem, RootError> {
        if bits <= self.precision_bits {
            return Ok(self.clone());
        }
        let start: Vec<ComplexBall> = self.enclosures.iter().map(ComplexBall::midpoint).collect();
        let fresh = run(&self.poly, start, bits, self.working_precision)?;
        let mut order = vec![usize::MAX; self.degree()];
        for (j, b) in fresh.enclosures.iter().enumerate() {
            let mut hits = self
                .enclosures
                .iter()
                .enumerate()
                .filter(|(_, old)| !ball_disjoint(old, b))
                .map(|(i, _)| i);
            match (hits.next(), hits.next()) {
                (Some(i), None) if order[i] == usize::MAX => order[i] = j,
                _ => return Err(RootError::Relabel),
            }
        }
        Ok(RootSystem {
            enclosures: order.iter().map(|&j| fresh.enclosures[j].clone()).collect(),
            ..fresh
        })
    }

    /// Realness of root `i`. For a real polynomial the conjugate of a root is
    /// a root; if the conjugate of ball `i` misses every other ball, that
    /// conjugate root lies in ball `i` and so equals the root there.
    pub fn root_kind(&self, i: usize) -> RootKind {
        let b = &self.enclosures[i];
        if !b.meets_real_axis() {
            return RootKind::NonReal;
        }
        let c = b.conj();
        let alone = self
            .enclosures
            .iter()
            .enumerate()
            .all(|(j, other)| j == i || ball_disjoint(&c, other));
        if alone {
            RootKind::Real
        } else {
            RootKind::Undetermined
        }
    }
}

/// Isolates all roots of a monic squarefree `f` with radii at most
/// `2^-precision_bits`.
pub fn isolate_roots(f: &UniPoly, precision_bits: u32) -> Result<RootSystem, RootError> {
    let n = match f.degree() {
        None | Some(0) => return Err(RootError::Constant),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(RootError::NotMonic(f.clone()));
    }
    let g = f.gcd(&f.derivative()).expect("f is nonzero");
    if g.degree() != Some(0) {
        return Err(RootError::NotSquarefree(g));
    }
    run(f, initial_points(f, n), precision_bits, START_PRECISION)
}

/// Perturbed roots of unity on the circle of radius `1 + max |a_i|`.
fn initial_points(f: &UniPoly, n: usize) -> Vec<ComplexBall> {
    let bound = 1.0
        + f.coeffs()[..n]
            .iter()
            .map(|c| c.abs().to_f64())
            .fold(0.0, f64::max);
    (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            let radius = bound * (1.0 - 0.05 * (k % 3) as f64);
            ComplexBall::point(
                Dyadic::from_f64(radius * angle.cos()),
                Dyadic::from_f64(radius * angle.sin()),
            )
        })
        .collect()
}

fn run(
    f: &UniPoly,
    mut z: Vec<ComplexBall>,
    bits: u32,
    start: u32,
) -> Result<RootSystem, RootError> {
    let n = z.len();
    let df = f.derivative();
    let mut prec = start.max(START_PRECISION);
    let mut iterations = 200 + 40 * n;
    loop {
        aberth(f, &df, &mut z, prec, iterations);
        iterations = 40 + 10 * n;
        let balls = certify(f, &z, prec);
        if let Some(balls) = &balls {
            let target = Dyadic::pow2(-(bits as i64));
            if balls.iter().all(|b| *b.radius() <= target) {
                return Ok(RootSystem {
                    poly: f.clone(),
                    enclosures: balls.clone(),
                    precision_bits: bits,
                    working_precision: prec,
                });
            }
        }
        if prec >= MAX_PRECISION {
            let radii_log2 = match balls {
                Some(b) => b.iter().map(|x| x.radius().log2_abs()).collect(),
                None => vec![f64::INFINITY; n],
            };
            return Err(RootError::CertificationFailed {
                precision: prec,
                radii_log2,
            });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

/// Inflates each approximation to radius `|f(z)|^(1/n)`; `None` unless the
/// inflated balls are pairwise disjoint.
fn certify(f: &UniPoly, z: &[ComplexBall], prec: u32) -> Option<Vec<ComplexBall>> {
    let n = z.len() as u32;
    let balls: Vec<ComplexBall> = z
        .iter()
        .map(|zi| {
            let value = f.eval_ball(zi, prec);
            zi.with_radius(value.abs_upper().root_upper(n))
        })
        .collect();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if !ball_disjoint(&balls[i], &balls[j]) {
                return None;
            }
        }
    }
    Some(balls)
}

/// Aberth iteration on the centers, Gauss-Seidel style.
fn aberth(f: &UniPoly, df: &UniPoly, z: &mut [ComplexBall], prec: u32, max_iter: usize) {
    let one = ComplexBall::from_int(1);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..z.len() {
            let fz = f.eval_ball(&z[i], prec).midpoint();
            if fz.re().is_zero() && fz.im().is_zero() {
                continue;
            }
            let dfz = df.eval_ball(&z[i], prec).midpoint();
            let Ok(newton) = fz.div(&dfz, prec) else {
                // stationary point of f: nudge and retry next sweep
                z[i] = z[i]
                    .add(
                        &ComplexBall::point(Dyadic::pow2(-20), Dyadic::pow2(-21)),
                        prec,
                    )
                    .midpoint();
                converged = false;
                continue;
            };
            let newton = newton.midpoint();
            let mut repulsion = ComplexBall::zero();
            for j in 0..z.len() {
                if j == i {
                    continue;
                }
                if let Ok(t) = z[i].sub(&z[j], prec).midpoint().inv(prec) {
                    repulsion = repulsion.add(&t, prec).midpoint();
                }
            }
            let denom = one.sub(&newton.mul(&repulsion, prec), prec).midpoint();
            let step = newton.div(&denom, prec).unwrap_or(newton).midpoint();
            let scale = z[i].re().log2_abs().max(z[i].im().log2_abs()).max(0.0);
            let size = step.re().log2_abs().max(step.im().log2_abs());
            if size > scale - prec as f64 + 8.0 {
                converged = false;
            }
            z[i] = z[i].sub(&step, prec).midpoint();
        }
        if converged {
            break;
        }
    }
}

/// The unique rational with denominator at most `denominator_bound` inside
/// the ball, when the ball meets the real axis and is narrower than the
/// spacing `1/(q * bound)` of such rationals around the candidate `p/q`.
pub fn reconstruct_rational(x: &ComplexBall, denominator_bound: &BigInt) -> Option<Rational> {
    assert!(
        *denominator_bound >= BigInt::one(),
        "denominator bound must be positive"
    );
    if !x.meets_real_axis() {
        return None;
    }
    let center = x.re().to_rational();
    let rad = x.radius().to_rational();
    let q = simplest_in(&(&center - &rad), &(&center + &rad), denominator_bound)?;
    let width = &rad + &rad;
    let gap = Rational::new(BigInt::one(), q.denom() * denominator_bound);
    (width < gap).then_some(q)
}

/// Smallest-denominator rational in `[lo, hi]`, or `None` when its
/// denominator would exceed `bound`.
fn simplest_in(lo: &Rational, hi: &Rational, bound: &BigInt) -> Option<Rational> {
    if !hi.is_negative() && (lo.is_negative() || lo.is_zero()) {
        return Some(Rational::zero());
    }
    if hi.is_negative() {
        return simplest_in(&-hi, &-lo, bound).map(|q| -q);
    }
    // 0 < lo <= hi; the value is (p1 y + p0) / (q1 y + q0) for y in [a, b]
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let (mut p1, mut p0) = (BigInt::one(), BigInt::zero());
    let (mut q1, mut q0) = (BigInt::zero(), BigInt::one());
    loop {
        let fl = a.floor();
        let pick = if Rational::from_integer(fl.clone()) == a {
            Some(fl.clone())
        } else if Rational::from_integer(&fl + 1) <= b {
            Some(&fl + 1)
        } else {
            None
        };
        if let Some(y) = pick {
            let den = &q1 * &y + &q0;
            if den > *bound {
                return None;
            }
            return Some(Rational::new(&p1 * &y + &p0, den));
        }
        let flr = Rational::from_integer(fl.clone());
        (p1, p0) = (&p1 * &fl + &p0, p1);
        (q1, q0) = (&q1 * &fl + &q0, q1);
        if q1 > *bound {
            return None;
        }
        (a, b) = ((&b - &flr).recip(), (&a - &flr).recip());
    }
}
