//! The splitting field as `Q[V]/(m(V))`.
//!
//! Roots are expressed as polynomials `phi_i(V)` and each Galois group
//! element as the image `psi_s(V)` of the generator. Every numeric guess is
//! confirmed by an exact identity modulo `m` before it is used.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{ball_disjoint, ComplexBall, Rational, RingElement};
use crate::groups::{PermGroup, Permutation};
use crate::linalg::{determinant, solve, Matrix};
use crate::poly::{PolyError, UniPoly};
use crate::resolvent::{
    conjugate_balls, eval_precision, identify_galois, next_precision, GaloisData, ResolventError,
    ResolventSpec,
};
use crate::roots::{reconstruct_rational, RootError, RootSystem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumberFieldError {
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element shares a factor with the modulus")]
    NotInvertible,
    #[error("could not reconstruct {what} up to {precision} bits")]
    Reconstruction { what: String, precision: u32 },
    #[error("exact verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Resolvent(#[from] ResolventError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `c_0 + c_1 V + ... + c_{d-1} V^{d-1}` reduced modulo `m`.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberFieldElement {
    coeffs: Vec<Rational>,
    modulus: Arc<UniPoly>,
}

impl NumberFieldElement {
    /// Reduces `p` modulo `modulus`.
    pub fn from_poly(p: &UniPoly, modulus: &Arc<UniPoly>) -> Self {
        let r = p.rem(modulus).expect("modulus is nonzero");
        let d = modulus.degree().expect("modulus is nonzero");
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(d, Rational::zero());
        NumberFieldElement {
            coeffs,
            modulus: Arc::clone(modulus),
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>, modulus: &Arc<UniPoly>) -> Self {
        Self::from_poly(&UniPoly::new(coeffs), modulus)
    }

    pub fn constant(c: Rational, modulus: &Arc<UniPoly>) -> Self {
        Self::from_poly(&UniPoly::constant(c), modulus)
    }

    pub fn generator(modulus: &Arc<UniPoly>) -> Self {
        Self::from_poly(&UniPoly::x(), modulus)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &Arc<UniPoly> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        NumberFieldElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse, by solving `self * y = 1` with the multiplication matrix.
    pub fn inverse(&self) -> Result<Self, NumberFieldError> {
        if self.is_zero() {
            return Err(NumberFieldError::ZeroInverse);
        }
        let mut rhs = vec![Rational::zero(); self.degree()];
        rhs[0] = Rational::one();
        let y =
            solve(&self.multiplication_matrix(), &rhs).ok_or(NumberFieldError::NotInvertible)?;
        Ok(Self::from_coeffs(y, &self.modulus))
    }

    /// `p(self)` reduced modulo the modulus.
    pub fn eval_poly(&self, p: &UniPoly) -> Self {
        let mut acc = self.zero_like();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::constant(c.clone(), &self.modulus);
        }
        acc
    }

    /// Substitutes `image` for `V`: `a(image)` reduced modulo the modulus.
    pub fn substitute(&self, image: &NumberFieldElement) -> Self {
        image.eval_poly(&self.to_poly())
    }

    pub fn eval_ball(&self, v: &ComplexBall, prec: u32) -> ComplexBall {
        self.to_poly().eval_ball(v, prec)
    }

    /// Matrix of multiplication by `self` in the power basis; column `j`
    /// holds the coordinates of `self * V^j`.
    pub fn multiplication_matrix(&self) -> Matrix {
        let d = self.degree();
        let v = Self::generator(&self.modulus);
        let mut columns = Vec::with_capacity(d);
        let mut current = self.clone();
        for _ in 0..d {
            columns.push(current.coeffs.clone());
            current = &current * &v;
        }
        (0..d)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    pub fn norm(&self) -> Rational {
        determinant(&self.multiplication_matrix())
    }

    fn check_modulus(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus,
            "number field elements from different fields"
        );
    }
}

impl RingElement for NumberFieldElement {
    fn zero_like(&self) -> Self {
        NumberFieldElement {
            coeffs: vec![Rational::zero(); self.degree()],
            modulus: Arc::clone(&self.modulus),
        }
    }
    fn one_like(&self) -> Self {
        Self::constant(Rational::one(), &self.modulus)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Add<&NumberFieldElement> for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn add(self, other: &NumberFieldElement) -> NumberFieldElement {
        self.check_modulus(other);
        NumberFieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            modulus: Arc::clone(&self.modulus),
        }
    }
}

impl Sub<&NumberFieldElement> for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn sub(self, other: &NumberFieldElement) -> NumberFieldElement {
        self.check_modulus(other);
        NumberFieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            modulus: Arc::clone(&self.modulus),
        }
    }
}

/// Coefficients scaled to integers, with the common denominator.
fn clear_denominators(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

impl Mul<&NumberFieldElement> for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn mul(self, other: &NumberFieldElement) -> NumberFieldElement {
        self.check_modulus(other);
        let m = &self.modulus;
        if !(m.is_monic() && m.is_integral()) {
            return NumberFieldElement::from_poly(&(&self.to_poly() * &other.to_poly()), m);
        }
        // integer convolution, then reduction by the monic integer modulus
        let d = self.degree();
        let (a, da) = clear_denominators(&self.coeffs);
        let (b, db) = clear_denominators(&other.coeffs);
        let mut prod = vec![BigInt::zero(); 2 * d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let mc: Vec<BigInt> = m.coeffs()[..d].iter().map(|c| c.numer().clone()).collect();
        for k in (d..2 * d).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in mc.iter().enumerate() {
                prod[k - d + j] -= &c * mj;
            }
        }
        let den = da * db;
        NumberFieldElement {
            coeffs: prod[..d]
                .iter()
                .map(|c| Rational::new(c.clone(), den.clone()))
                .collect(),
            modulus: Arc::clone(m),
        }
    }
}

impl Neg for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly().display_with("V"))
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self, self.modulus.display_with("V"))
    }
}

pub fn nf_inverse(a: &NumberFieldElement) -> Result<NumberFieldElement, NumberFieldError> {
    a.inverse()
}

/// Powers `x^0, ..., x^d` of a field element, for repeated substitution.
#[derive(Clone, Debug)]
pub struct PowerTable {
    powers: Vec<NumberFieldElement>,
    cleared: Vec<(Vec<BigInt>, BigInt)>,
}

impl PowerTable {
    pub fn new(x: &NumberFieldElement) -> Self {
        let d = x.degree();
        let mut powers = Vec::with_capacity(d + 1);
        let mut current = x.one_like();
        for _ in 0..=d {
            let next = &current * x;
            powers.push(current);
            current = next;
        }
        let cleared = powers
            .iter()
            .map(|p| clear_denominators(&p.coeffs))
            .collect();
        PowerTable { powers, cleared }
    }

    pub fn base(&self) -> &NumberFieldElement {
        &self.powers[1]
    }

    pub fn power(&self, k: usize) -> &NumberFieldElement {
        &self.powers[k]
    }

    /// `p(x)` for `deg p <= d`; higher degrees fall back to Horner's rule.
    pub fn eval(&self, p: &UniPoly) -> NumberFieldElement {
        let coeffs = p.coeffs();
        if coeffs.len() > self.powers.len() {
            return self.base().eval_poly(p);
        }
        let terms: Vec<(BigInt, BigInt, usize)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.numer().clone(), c.denom() * &self.cleared[k].1, k))
            .collect();
        let lcm = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, q, _)| acc.lcm(q));
        let mut sum = vec![BigInt::zero(); self.powers[0].degree()];
        for (num, q, k) in &terms {
            let factor = num * (&lcm / q);
            for (s, x) in sum.iter_mut().zip(&self.cleared[*k].0) {
                *s += &factor * x;
            }
        }
        NumberFieldElement {
            coeffs: sum
                .into_iter()
                .map(|c| Rational::new(c, lcm.clone()))
                .collect(),
            modulus: Arc::clone(&self.powers[0].modulus),
        }
    }

    /// `a(x)`.
    pub fn substitute_into(&self, a: &NumberFieldElement) -> NumberFieldElement {
        self.eval(&a.to_poly())
    }

    /// Columns are the coordinates of `x^0, ..., x^(d-1)`.
    pub fn matrix(&self) -> Matrix {
        let d = self.powers[0].degree();
        (0..d)
            .map(|i| {
                self.powers[..d]
                    .iter()
                    .map(|p| p.coeffs[i].clone())
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Automorphism {
    pub perm: Permutation,
    /// `psi_s(V)`.
    pub image: NumberFieldElement,
    /// Induced permutation of the root expressions.
    pub root_perm: Permutation,
    table: PowerTable,
}

impl Automorphism {
    /// `a(psi_s)` reduced modulo `m`.
    pub fn apply(&self, a: &NumberFieldElement) -> NumberFieldElement {
        self.table.substitute_into(a)
    }
}

#[derive(Clone, Debug)]
pub struct SplittingField {
    pub galois: GaloisData,
    pub modulus: Arc<UniPoly>,
    pub root_exprs: Vec<NumberFieldElement>,
    pub automorphisms: Vec<Automorphism>,
    /// Root enclosures at the precision the certificates used.
    pub roots: RootSystem,
}

impl SplittingField {
    /// Degree of the field over the rationals.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn generator(&self) -> NumberFieldElement {
        NumberFieldElement::generator(&self.modulus)
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> NumberFieldElement {
        NumberFieldElement::from_coeffs(coeffs, &self.modulus)
    }

    pub fn constant(&self, c: Rational) -> NumberFieldElement {
        NumberFieldElement::constant(c, &self.modulus)
    }

    pub fn automorphism(&self, s: &Permutation) -> Option<&Automorphism> {
        self.automorphisms.iter().find(|a| &a.perm == s)
    }

    /// `apply_s(a) = a(psi_s)` reduced modulo `m`.
    pub fn apply(&self, s: &Permutation, a: &NumberFieldElement) -> Option<NumberFieldElement> {
        self.automorphism(s).map(|auto| auto.apply(a))
    }

    /// Matrix of `apply_s` in the power basis; column `j` is the image of `V^j`.
    pub fn apply_matrix(&self, s: &Permutation) -> Option<Matrix> {
        self.automorphism(s).map(|auto| auto.table.matrix())
    }
}

/// Ball coefficients of `m(x) / (x - v)` by synthetic division.
fn deflate(m: &UniPoly, v: &ComplexBall, prec: u32) -> Vec<ComplexBall> {
    let d = m.degree().expect("nonconstant");
    let mut q = vec![ComplexBall::zero(); d];
    q[d - 1] = ComplexBall::from_int(1);
    for k in (1..d).rev() {
        let mk = ComplexBall::from_rational(&m.coeff(k), prec);
        q[k - 1] = mk.add(&v.mul(&q[k], prec), prec);
    }
    q
}

fn reconstruct_coeffs(balls: &[ComplexBall], bound: &BigInt) -> Option<Vec<Rational>> {
    balls
        .iter()
        .map(|b| reconstruct_rational(b, bound))
        .collect()
}

/// `|disc(m)|`, the denominator bound for power-basis coordinates of
/// algebraic integers in `Q[V]`.
fn discriminant_bound(modulus: &Arc<UniPoly>) -> BigInt {
    let dm = NumberFieldElement::from_poly(&modulus.derivative(), modulus);
    let n = dm.norm();
    n.numer().abs()
}

/// Interpolates `phi_i` through `phi_i(V_s) = r_{s(i)}` for `s` in the group.
fn interpolate_roots(gd: &GaloisData, rs: &RootSystem) -> Vec<Vec<ComplexBall>> {
    let prec = eval_precision(rs);
    let m = &gd.min_poly;
    let d = m.degree().unwrap_or(0);
    let elems = gd.group.elements();
    let values = conjugate_balls(&gd.spec, rs, elems);
    let dm = m.derivative();
    // basis[s] = m(x) / ((x - V_s) m'(V_s))
    let basis: Vec<Vec<ComplexBall>> = values
        .iter()
        .map(|v| {
            let scale = dm
                .eval_ball(v, prec)
                .inv(prec)
                .expect("m' is nonzero at a simple root");
            deflate(m, v, prec)
                .iter()
                .map(|c| c.mul(&scale, prec))
                .collect()
        })
        .collect();
    (0..rs.degree())
        .map(|i| {
            let mut coeffs = vec![ComplexBall::zero(); d];
            for (s, b) in elems.iter().zip(&basis) {
                let r = rs.enclosure(s.apply(i));
                for (c, bk) in coeffs.iter_mut().zip(b) {
                    *c = c.add(&bk.mul(r, prec), prec);
                }
            }
            coeffs
        })
        .collect()
}

/// Checks that `x(V)` can only be root `i` of `rs`.
fn lands_on_root(x: &NumberFieldElement, v: &ComplexBall, rs: &RootSystem, i: usize) -> bool {
    let prec = eval_precision(rs);
    let b = x.eval_ball(v, prec);
    (0..rs.degree()).all(|j| j == i || ball_disjoint(&b, rs.enclosure(j)))
}

/// Expresses every root as a polynomial in `V`. Returns the expressions and
/// the root system at the precision that certified them.
pub fn express_roots(
    gd: &GaloisData,
    rs: &RootSystem,
) -> Result<(Vec<NumberFieldElement>, RootSystem), NumberFieldError> {
    let modulus = Arc::new(gd.min_poly.clone());
    let bound = discriminant_bound(&modulus);
    let f = rs.poly().clone();
    let mut current = rs.clone();
    loop {
        let guesses = interpolate_roots(gd, &current);
        let v = gd.spec.value_ball(
            &current,
            &Permutation::identity(current.degree()),
            eval_precision(&current),
        );
        let mut exprs = Vec::with_capacity(guesses.len());
        let mut pending = false;
        for (i, g) in guesses.iter().enumerate() {
            let Some(c) = reconstruct_coeffs(g, &bound) else {
                pending = true;
                break;
            };
            let phi = NumberFieldElement::from_coeffs(c, &modulus);
            if !phi.eval_poly(&f).is_zero() || !lands_on_root(&phi, &v, &current, i) {
                pending = true;
                break;
            }
            exprs.push(phi);
        }
        if !pending {
            return Ok((exprs, current));
        }
        match next_precision(&current) {
            Some(bits) => current = current.refine(bits)?,
            None => {
                return Err(NumberFieldError::Reconstruction {
                    what: "root expressions".into(),
                    precision: current.precision_bits(),
                })
            }
        }
    }
}

/// Builds `psi_s = sum_i A_i phi_{s(i)}` for each group element and certifies
/// it against the conjugate values and the root expressions.
pub fn automorphism_table(
    gd: &GaloisData,
    root_exprs: Vec<NumberFieldElement>,
    rs: &RootSystem,
) -> Result<SplittingField, NumberFieldError> {
    let modulus = Arc::clone(root_exprs[0].modulus());
    let n = rs.degree();
    let weights = gd.spec.weights();
    let mut autos = Vec::with_capacity(gd.group.order());
    for s in gd.group.elements() {
        let mut psi = NumberFieldElement::constant(Rational::zero(), &modulus);
        for (i, &a) in weights.iter().enumerate() {
            psi = &psi + &root_exprs[s.apply(i)].scale(&Rational::from(a));
        }
        let table = PowerTable::new(&psi);
        if !table.eval(&gd.min_poly).is_zero() {
            return Err(NumberFieldError::Verification(format!(
                "m(psi) != 0 for {}",
                s.cycle_string()
            )));
        }
        let mut images = Vec::with_capacity(n);
        for phi in &root_exprs {
            let moved = table.substitute_into(phi);
            let j = root_exprs.iter().position(|x| x == &moved).ok_or_else(|| {
                NumberFieldError::Verification(format!(
                    "{} does not permute the roots",
                    s.cycle_string()
                ))
            })?;
            images.push(j);
        }
        let root_perm = Permutation::new(images).map_err(|_| {
            NumberFieldError::Verification(format!("{} is not a bijection", s.cycle_string()))
        })?;
        if &root_perm != s {
            return Err(NumberFieldError::Verification(format!(
                "{} induces {} on the roots",
                s.cycle_string(),
                root_perm.cycle_string()
            )));
        }
        autos.push(Automorphism {
            perm: s.clone(),
            image: psi,
            root_perm,
            table,
        });
    }
    let current = certify_images(gd, &autos, rs)?;
    Ok(SplittingField {
        galois: gd.clone(),
        modulus,
        root_exprs,
        automorphisms: autos,
        roots: current,
    })
}

/// Ball check that `psi_s(V)` is the conjugate `V_s` and no other `V_t`.
fn certify_images(
    gd: &GaloisData,
    autos: &[Automorphism],
    rs: &RootSystem,
) -> Result<RootSystem, NumberFieldError> {
    let sn = PermGroup::symmetric(rs.degree());
    let mut current = rs.clone();
    loop {
        let prec = eval_precision(&current);
        let values = conjugate_balls(&gd.spec, &current, sn.elements());
        let id = sn
            .elements()
            .binary_search(&Permutation::identity(rs.degree()))
            .expect("identity");
        let ok = autos.iter().all(|a| {
            let b = a.image.eval_ball(&values[id], prec);
            sn.elements()
                .iter()
                .zip(&values)
                .all(|(t, vt)| t == &a.perm || ball_disjoint(&b, vt))
        });
        if ok {
            return Ok(current);
        }
        match next_precision(&current) {
            Some(bits) => current = current.refine(bits)?,
            None => {
                return Err(NumberFieldError::Reconstruction {
                    what: "automorphism images".into(),
                    precision: current.precision_bits(),
                })
            }
        }
    }
}

/// Runs Galois group identification, root expression, and the automorphism
/// table for a certified weight vector.
pub fn splitting_field(
    f: &UniPoly,
    spec: &ResolventSpec,
    rs: &RootSystem,
) -> Result<SplittingField, NumberFieldError> {
    let gd = identify_galois(f, spec, rs)?;
    let (exprs, current) = express_roots(&gd, &gd.roots)?;
    automorphism_table(&gd, exprs, &current)
}
