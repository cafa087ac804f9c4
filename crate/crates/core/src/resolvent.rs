//! Galois resolvents.
//!
//! For integer weights `A = (A_1..A_n)` and a permutation `s` of the root
//! indices, `V_s = sum_i A_i r_{s(i)}`. Weights are admissible when the `n!`
//! values are pairwise distinct; then `V = V_id` generates the splitting
//! field. The resolvent `R(x) = prod_s (x - V_s)` has rational coefficients,
//! obtained here exactly by reducing each coefficient (a symmetric polynomial
//! in the roots) to elementary symmetric polynomials.
//!
//! The Galois group is the smallest subgroup `G` of `S_n` whose partial
//! product `prod_{s in G} (x - V_s)` has rational coefficients: an
//! automorphism `t` sends `V_s` to `V_{t s}`, so a subgroup's product is
//! rational exactly when it is stable under the Galois group, i.e. contains it.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::arith::{ball_disjoint, ComplexBall, Rational};
use crate::groups::{all_subgroups, GroupError, PermGroup, Permutation};
use crate::poly::{MultiPoly, PolyError, UniPoly};
use crate::roots::{reconstruct_rational, RootError, RootSystem, MAX_PRECISION};
use crate::sympoly::{vieta_values, Decomposer, SymmetricError};

/// Largest supported degree; the resolvent has degree `n!`.
pub const MAX_DEGREE: usize = 4;

/// Extra bits carried by ball evaluations beyond the root enclosure radius.
const GUARD_BITS: u32 = 64;

/// Precision escalations tried before a weight vector is given up on.
const SEPARATION_ATTEMPTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolventError {
    #[error("degree {0} is outside the supported range 1..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("no admissible weights with max-norm at most {bound}")]
    SearchExhausted { bound: u32 },
    #[error("weights {0:?} do not give provably distinct conjugate values")]
    NotSeparated(Vec<i64>),
    #[error("polynomial must be monic with integer coefficients")]
    NotIntegral,
    #[error("no subgroup produced a rational factor of the resolvent up to {precision} bits")]
    NoSubgroupPasses { precision: u32 },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ResolventSpec {
    weights: Vec<i64>,
}

impl ResolventSpec {
    pub fn new(weights: Vec<i64>) -> Self {
        ResolventSpec { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Ball around `V_s`.
    pub fn value_ball(&self, rs: &RootSystem, s: &Permutation, prec: u32) -> ComplexBall {
        self.weights
            .iter()
            .enumerate()
            .fold(ComplexBall::zero(), |acc, (i, &a)| {
                acc.add(&rs.enclosure(s.apply(i)).mul_int(a, prec), prec)
            })
    }

    /// `V_s` as a linear form in `x_1..x_n`.
    pub fn linear_form(&self, s: &Permutation) -> MultiPoly {
        let n = self.weights.len();
        let mut w = vec![Rational::zero(); n];
        for (i, &a) in self.weights.iter().enumerate() {
            w[s.apply(i)] = Rational::from(a);
        }
        MultiPoly::linear(&w)
    }

    /// Some transposition fixes every `V_s` when two weights agree.
    fn has_repeated_weight(&self) -> bool {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w.windows(2).any(|p| p[0] == p[1])
    }
}

impl std::fmt::Display for ResolventSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Working precision for ball evaluations over `rs`.
pub(crate) fn eval_precision(rs: &RootSystem) -> u32 {
    rs.precision_bits() + GUARD_BITS
}

pub(crate) fn conjugate_balls(
    spec: &ResolventSpec,
    rs: &RootSystem,
    perms: &[Permutation],
) -> Vec<ComplexBall> {
    let prec = eval_precision(rs);
    perms.iter().map(|s| spec.value_ball(rs, s, prec)).collect()
}

fn pairwise_disjoint(balls: &[ComplexBall]) -> bool {
    (0..balls.len()).all(|i| (i + 1..balls.len()).all(|j| ball_disjoint(&balls[i], &balls[j])))
}

pub(crate) fn next_precision(rs: &RootSystem) -> Option<u32> {
    let bits = rs.precision_bits().saturating_mul(2);
    (rs.precision_bits() < MAX_PRECISION).then_some(bits.min(MAX_PRECISION))
}

/// Certifies that all `n!` values of `spec` are pairwise distinct, refining
/// `rs` a bounded number of times. Returns the root system that achieved it.
pub fn certify_spec(rs: &RootSystem, spec: &ResolventSpec) -> Result<RootSystem, ResolventError> {
    let n = rs.degree();
    if spec.len() != n {
        return Err(ResolventError::WeightCount {
            expected: n,
            got: spec.len(),
        });
    }
    if spec.has_repeated_weight() {
        return Err(ResolventError::NotSeparated(spec.weights.clone()));
    }
    let sn = PermGroup::symmetric(n);
    let mut current = rs.clone();
    for attempt in 0..SEPARATION_ATTEMPTS {
        if pairwise_disjoint(&conjugate_balls(spec, &current, sn.elements())) {
            return Ok(current);
        }
        match next_precision(&current) {
            Some(bits) if attempt + 1 < SEPARATION_ATTEMPTS => current = current.refine(bits)?,
            _ => break,
        }
    }
    Err(ResolventError::NotSeparated(spec.weights.clone()))
}

/// Nonnegative weight vectors of max-norm exactly `k`, in lex order.
fn vectors_with_norm(n: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        if cur.contains(&k) {
            out.push(cur.clone());
        }
        // odometer increment, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < k {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// All admissible weight vectors of max-norm at most `norm_bound`, in search
/// order: increasing max-norm, then lexicographic.
pub fn admissible_specs(
    rs: &RootSystem,
    norm_bound: u32,
) -> impl Iterator<Item = ResolventSpec> + '_ {
    let n = rs.degree();
    (1..=norm_bound as i64)
        .flat_map(move |k| vectors_with_norm(n, k))
        .map(ResolventSpec::new)
        .filter(move |spec| certify_spec(rs, spec).is_ok())
}

/// The first admissible weight vector in search order.
pub fn search_resolvent(rs: &RootSystem, norm_bound: u32) -> Result<ResolventSpec, ResolventError> {
    admissible_specs(rs, norm_bound)
        .next()
        .ok_or(ResolventError::SearchExhausted { bound: norm_bound })
}

/// `R(x) = prod over S_n of (x - V_s)` with exact rational coefficients.
pub fn resolvent_poly(f: &UniPoly, spec: &ResolventSpec) -> Result<UniPoly, ResolventError> {
    let n = f.degree().unwrap_or(0);
    if n == 0 || n > MAX_DEGREE {
        return Err(ResolventError::DegreeOutOfRange(n));
    }
    if spec.len() != n {
        return Err(ResolventError::WeightCount {
            expected: n,
            got: spec.len(),
        });
    }
    let f = f.monic();
    // coeffs[k] multiplies x^k; each is a polynomial in the roots
    let mut coeffs = vec![MultiPoly::one(n)];
    for s in PermGroup::symmetric(n).elements() {
        let form = spec.linear_form(s);
        let mut next = vec![MultiPoly::zero(n); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(&form * c);
        }
        coeffs = next;
    }
    let e = vieta_values(&f);
    let mut decomposer = Decomposer::new(n);
    let values = coeffs
        .iter()
        .map(|c| Ok(decomposer.decompose(c)?.evaluate(&e)?))
        .collect::<Result<Vec<Rational>, ResolventError>>()?;
    Ok(UniPoly::new(values))
}

/// Exact value of `prod_{s < t} (V_s - V_t)^2` for `n <= 3`, obtained by
/// symmetric reduction. Nonzero exactly when the weights are admissible.
pub fn exact_separation_certificate(
    f: &UniPoly,
    spec: &ResolventSpec,
) -> Result<Rational, ResolventError> {
    let n = f.degree().unwrap_or(0);
    if n == 0 || n > 3 {
        return Err(ResolventError::DegreeOutOfRange(n));
    }
    let forms: Vec<MultiPoly> = PermGroup::symmetric(n)
        .elements()
        .iter()
        .map(|s| spec.linear_form(s))
        .collect();
    let mut product = MultiPoly::one(n);
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let d = &forms[i] - &forms[j];
            product = &product * &(&d * &d);
        }
    }
    let q = Decomposer::new(n).decompose(&product)?;
    Ok(q.evaluate(&vieta_values(&f.monic()))?)
}

#[derive(Clone, Debug)]
pub struct GaloisData {
    pub spec: ResolventSpec,
    /// Minimal polynomial of `V` over the rationals.
    pub min_poly: UniPoly,
    /// Enclosure of `V = V_id`.
    pub v_ball: ComplexBall,
    /// Permutations `s` with `V_s` a root of `min_poly`.
    pub group: PermGroup,
    pub resolvent: UniPoly,
    /// `(s, ball of V_s)` for every `s` in the group, in group order.
    pub conjugates: Vec<(Permutation, ComplexBall)>,
    /// The root system at the precision the certificates were obtained.
    pub roots: RootSystem,
}

impl GaloisData {
    pub fn degree(&self) -> usize {
        self.group.order()
    }

    pub fn conjugate_ball(&self, s: &Permutation) -> Option<&ComplexBall> {
        self.conjugates.iter().find(|(p, _)| p == s).map(|(_, b)| b)
    }
}

enum Candidate {
    Rational(UniPoly),
    Irrational,
    Ambiguous,
}

/// Expands `prod (x - v)` in balls and reads off integer coefficients.
fn integer_candidate(values: &[&ComplexBall], prec: u32) -> Candidate {
    let mut coeffs = vec![ComplexBall::from_int(1)];
    for v in values {
        let mut next = vec![ComplexBall::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c, prec);
            next[k] = next[k].sub(&c.mul(v, prec), prec);
        }
        coeffs = next;
    }
    let quarter = crate::arith::Dyadic::pow2(-2);
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if *c.radius() >= quarter {
            return Candidate::Ambiguous;
        }
        match reconstruct_rational(c, &BigInt::one()) {
            Some(q) => out.push(q),
            None => return Candidate::Irrational,
        }
    }
    Candidate::Rational(UniPoly::new(out))
}

enum Outcome {
    Found(UniPoly, usize),
    Refine,
    NoneFound,
}

fn try_subgroups(
    subgroups: &[PermGroup],
    perms: &[Permutation],
    balls: &[ComplexBall],
    resolvent: &UniPoly,
    prec: u32,
) -> Result<Outcome, ResolventError> {
    let ball_of = |s: &Permutation| &balls[perms.binary_search(s).expect("element of S_n")];
    for (idx, g) in subgroups.iter().enumerate() {
        let values: Vec<&ComplexBall> = g.elements().iter().map(ball_of).collect();
        let m = match integer_candidate(&values, prec) {
            Candidate::Irrational => continue,
            Candidate::Ambiguous => return Ok(Outcome::Refine),
            Candidate::Rational(m) => m,
        };
        if !m.divides(resolvent)? {
            continue;
        }
        // m | R, so its roots are among the V_s; rule out those outside g
        let mut excluded = true;
        for (s, b) in perms.iter().zip(balls) {
            if !g.contains(s) && m.eval_ball(b, prec).contains_zero() {
                excluded = false;
                break;
            }
        }
        if !excluded {
            return Ok(Outcome::Refine);
        }
        return Ok(Outcome::Found(m, idx));
    }
    Ok(Outcome::NoneFound)
}

/// Finds the Galois group and the minimal polynomial of `V`.
pub fn identify_galois(
    f: &UniPoly,
    spec: &ResolventSpec,
    rs: &RootSystem,
) -> Result<GaloisData, ResolventError> {
    if !f.is_monic() || !f.is_integral() {
        return Err(ResolventError::NotIntegral);
    }
    let resolvent = resolvent_poly(f, spec)?;
    let mut current = certify_spec(rs, spec)?;
    let sn = PermGroup::symmetric(f.degree().unwrap_or(0));
    let perms = sn.elements().to_vec();
    let subgroups = all_subgroups(&sn)?;
    loop {
        let prec = eval_precision(&current);
        let balls = conjugate_balls(spec, &current, &perms);
        if pairwise_disjoint(&balls) {
            if let Outcome::Found(min_poly, idx) =
                try_subgroups(&subgroups, &perms, &balls, &resolvent, prec)?
            {
                let group = subgroups[idx].clone();
                let conjugates = group
                    .elements()
                    .iter()
                    .map(|s| {
                        (
                            s.clone(),
                            balls[perms.binary_search(s).expect("in S_n")].clone(),
                        )
                    })
                    .collect();
                let id = Permutation::identity(perms[0].degree());
                return Ok(GaloisData {
                    spec: spec.clone(),
                    min_poly,
                    v_ball: balls[perms.binary_search(&id).expect("identity")].clone(),
                    group,
                    resolvent,
                    conjugates,
                    roots: current,
                });
            }
        }
        match next_precision(&current) {
            Some(bits) => current = current.refine(bits)?,
            None => {
                return Err(ResolventError::NoSubgroupPasses {
                    precision: current.precision_bits(),
                })
            }
        }
    }
}
