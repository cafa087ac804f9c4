//! Symmetric polynomials: symmetry testing, decomposition into elementary
//! symmetric polynomials, and exact evaluation of elementary symmetric values.
//!
//! Decomposition is the classical leading-term reduction. Since the input is
//! symmetric, it is determined by its coefficients on monomials with
//! non-increasing exponents, and the reduction runs entirely on that
//! compressed form; the full expansion is only needed to check results.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::arith::{Rational, RingElement};
use crate::poly::{MultiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("polynomial is not symmetric: swapping x{} and x{} changes it", .0 + 1, .1 + 1)]
    NotSymmetric(usize, usize),
    #[error("elementary index {k} out of range 1..={len}")]
    IndexOutOfRange { k: usize, len: usize },
    #[error("expected {expected} elementary values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// A polynomial in formal variables `E1..En` standing for `e1..en`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementarySymmetricExpression {
    poly: MultiPoly,
}

impl ElementarySymmetricExpression {
    pub fn new(poly: MultiPoly) -> Self {
        ElementarySymmetricExpression { poly }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Substitutes `e_k(x1..xn)` for `E_k`, giving back a polynomial in the x's.
    pub fn expand(&self) -> MultiPoly {
        let n = self.poly.nvars();
        let es: Vec<MultiPoly> = (1..=n).map(|k| elementary(n, k)).collect();
        self.poly.substitute(&es)
    }

    pub fn evaluate(&self, e_values: &[Rational]) -> Result<Rational, SymmetricError> {
        substitute_elementary(self, e_values)
    }
}

impl std::fmt::Display for ElementarySymmetricExpression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.poly.display_with("E"))
    }
}

/// `e_k(x1..xn)` as an explicit polynomial.
pub fn elementary(n: usize, k: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    if k > n {
        return p;
    }
    for subset in subsets(n, k) {
        let mut e = vec![0; n];
        for i in subset {
            e[i] = 1;
        }
        p.add_term(e, Rational::one());
    }
    p
}

/// All `k`-element subsets of `0..n`, each sorted, in lex order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// First adjacent transposition that changes `p`, if any.
fn symmetry_witness(p: &MultiPoly) -> Option<(usize, usize)> {
    let n = p.nvars();
    (0..n.saturating_sub(1)).find_map(|i| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        (p.permute_vars(&perm) != *p).then_some((i, i + 1))
    })
}

/// Invariance under every adjacent transposition, hence under all of `S_n`.
pub fn is_symmetric(p: &MultiPoly) -> bool {
    symmetry_witness(p).is_none()
}

fn sorted_desc(mut e: Vec<u32>) -> Vec<u32> {
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// A symmetric polynomial stored by its coefficients on non-increasing
/// exponent vectors (one representative per orbit).
#[derive(Clone, Debug, Default)]
struct OrbitForm {
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl OrbitForm {
    fn one(n: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0; n], Rational::one());
        OrbitForm { coeffs }
    }

    fn from_symmetric(p: &MultiPoly) -> Self {
        let coeffs = p
            .terms()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        OrbitForm { coeffs }
    }

    fn get(&self, e: Vec<u32>) -> Option<&Rational> {
        self.coeffs.get(&sorted_desc(e))
    }

    /// Product with `e_k`, where `subsets` lists the `k`-subsets of positions.
    fn mul_elementary(&self, subsets: &[Vec<usize>]) -> OrbitForm {
        let mut candidates = BTreeSet::new();
        for nu in self.coeffs.keys() {
            for s in subsets {
                let mut mu = nu.clone();
                for &i in s {
                    mu[i] += 1;
                }
                candidates.insert(sorted_desc(mu));
            }
        }
        let mut coeffs = BTreeMap::new();
        for mu in candidates {
            let mut c = Rational::zero();
            for s in subsets {
                if s.iter().all(|&i| mu[i] > 0) {
                    let mut nu = mu.clone();
                    for &i in s {
                        nu[i] -= 1;
                    }
                    if let Some(x) = self.get(nu) {
                        c += x;
                    }
                }
            }
            if !c.is_zero() {
                coeffs.insert(mu, c);
            }
        }
        OrbitForm { coeffs }
    }

    fn sub_scaled(&mut self, other: &OrbitForm, c: &Rational) {
        for (e, x) in &other.coeffs {
            let t = x * c;
            let entry = self.coeffs.entry(e.clone()).or_default();
            *entry -= &t;
            if entry.is_zero() {
                self.coeffs.remove(e);
            }
        }
    }
}

/// Reusable decomposition context for a fixed number of variables; caches
/// products of elementary symmetric polynomials across calls.
pub struct Decomposer {
    n: usize,
    subsets: Vec<Vec<Vec<usize>>>,
    powers: HashMap<Vec<u32>, OrbitForm>,
}

impl Decomposer {
    pub fn new(n: usize) -> Self {
        Decomposer {
            n,
            subsets: (0..=n).map(|k| subsets(n, k)).collect(),
            powers: HashMap::new(),
        }
    }

    /// `e1^d1 * ... * en^dn` in orbit form.
    fn power_product(&mut self, d: &[u32]) -> OrbitForm {
        if let Some(p) = self.powers.get(d) {
            return p.clone();
        }
        let result = match d.iter().rposition(|&x| x > 0) {
            None => OrbitForm::one(self.n),
            Some(i) => {
                let mut smaller = d.to_vec();
                smaller[i] -= 1;
                let base = self.power_product(&smaller);
                base.mul_elementary(&self.subsets[i + 1])
            }
        };
        self.powers.insert(d.to_vec(), result.clone());
        result
    }

    pub fn decompose(
        &mut self,
        p: &MultiPoly,
    ) -> Result<ElementarySymmetricExpression, SymmetricError> {
        assert_eq!(p.nvars(), self.n, "decomposer arity mismatch");
        if let Some((i, j)) = symmetry_witness(p) {
            return Err(SymmetricError::NotSymmetric(i, j));
        }
        let n = self.n;
        let mut rest = OrbitForm::from_symmetric(p);
        let mut out = MultiPoly::zero(n);
        while let Some((lead, c)) = rest.coeffs.iter().next_back() {
            let (lead, c) = (lead.clone(), c.clone());
            // exponents of E: a1-a2, a2-a3, ..., an
            let d: Vec<u32> = (0..n)
                .map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0))
                .collect();
            let prod = self.power_product(&d);
            rest.sub_scaled(&prod, &c);
            debug_assert!(rest.coeffs.keys().next_back().is_none_or(|l| *l < lead));
            out.add_term(d, c);
        }
        Ok(ElementarySymmetricExpression::new(out))
    }
}

/// Writes a symmetric `p` as a polynomial in `e1..en`.
pub fn decompose(p: &MultiPoly) -> Result<ElementarySymmetricExpression, SymmetricError> {
    Decomposer::new(p.nvars()).decompose(p)
}

/// All elementary symmetric values `e0..em` of `values`. Empty input yields
/// an empty vector, since there is no element to take the identity from.
pub fn elementary_values<T: RingElement>(values: &[T]) -> Vec<T> {
    let Some(first) = values.first() else {
        return Vec::new();
    };
    let mut e = vec![first.zero_like(); values.len() + 1];
    e[0] = first.one_like();
    for (i, v) in values.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] = e[j].add_ref(&v.mul_ref(&e[j - 1]));
        }
    }
    e
}

/// `e_k(values)`, the sum of all `k`-fold products.
pub fn eval_elementary<T: RingElement>(values: &[T], k: usize) -> Result<T, SymmetricError> {
    if k == 0 || k > values.len() {
        return Err(SymmetricError::IndexOutOfRange {
            k,
            len: values.len(),
        });
    }
    Ok(elementary_values(values).swap_remove(k))
}

pub fn substitute_elementary(
    q: &ElementarySymmetricExpression,
    e_values: &[Rational],
) -> Result<Rational, SymmetricError> {
    if e_values.len() != q.nvars() {
        return Err(SymmetricError::LengthMismatch {
            expected: q.nvars(),
            got: e_values.len(),
        });
    }
    Ok(q.poly.eval(e_values))
}

/// `e_j` of the roots of monic `f`, for `j = 1..n`: `(-1)^j * coeff_{n-j}(f)`.
pub fn vieta_values(f: &UniPoly) -> Vec<Rational> {
    let n = f.degree().unwrap_or(0);
    (1..=n)
        .map(|j| {
            let c = f.coeff(n - j);
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn e_expr(n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            n,
            terms.iter().map(|(e, c)| (e.to_vec(), Rational::from(*c))),
        )
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&(&x(2, 0).pow(2) + &x(2, 1).pow(2))));
        assert!(!is_symmetric(&(&x(2, 0).pow(2) * &x(2, 1))));
        let d = |i, j| (&x(3, i) - &x(3, j)).pow(2);
        let disc = &(&d(0, 1) * &d(0, 2)) * &d(1, 2);
        assert!(is_symmetric(&disc));
    }

    #[test]
    fn decompose_power_sum() {
        let p = &x(2, 0).pow(2) + &x(2, 1).pow(2);
        let q = decompose(&p).unwrap();
        assert_eq!(q.poly(), &e_expr(2, &[(&[2, 0], 1), (&[0, 1], -2)]));
        assert_eq!(q.to_string(), "E1^2 - 2*E2");
        assert_eq!(q.expand(), p);
    }

    #[test]
    fn decompose_square_difference() {
        let p = (&x(2, 0) - &x(2, 1)).pow(2);
        let q = decompose(&p).unwrap();
        assert_eq!(q.poly(), &e_expr(2, &[(&[2, 0], 1), (&[0, 1], -4)]));
    }

    #[test]
    fn decompose_e1() {
        for n in 1..=4 {
            let e1 = elementary(n, 1);
            let mut exps = vec![0; n];
            exps[0] = 1;
            assert_eq!(
                decompose(&e1).unwrap().poly(),
                &MultiPoly::monomial(Rational::one(), exps)
            );
        }
    }

    #[test]
    fn single_variable_is_identity() {
        let p = &x(1, 0).pow(3) + &MultiPoly::constant(1, Rational::from(5));
        let q = decompose(&p).unwrap();
        assert_eq!(q.poly(), &p);
    }

    #[test]
    fn discriminant_of_cubic() {
        let d = |i, j| (&x(3, i) - &x(3, j)).pow(2);
        let disc = &(&d(0, 1) * &d(0, 2)) * &d(1, 2);
        let q = decompose(&disc).unwrap();
        assert_eq!(q.expand(), disc);
        // x^3 - 2: e1 = 0, e2 = 0, e3 = 2 -> disc = -27 * 4 = -108
        let v = q
            .evaluate(&[Rational::zero(), Rational::zero(), Rational::from(2)])
            .unwrap();
        assert_eq!(v, Rational::from(-108));
    }

    #[test]
    fn non_symmetric_reports_transposition() {
        let p = &x(3, 0) + &x(3, 1);
        assert_eq!(decompose(&p), Err(SymmetricError::NotSymmetric(1, 2)));
        assert_eq!(
            SymmetricError::NotSymmetric(1, 2).to_string(),
            "polynomial is not symmetric: swapping x2 and x3 changes it"
        );
    }

    #[test]
    fn elementary_value_examples() {
        let v = [Rational::from(2), Rational::from(3)];
        assert_eq!(eval_elementary(&v, 1).unwrap(), Rational::from(5));
        assert_eq!(eval_elementary(&v, 2).unwrap(), Rational::from(6));
        assert!(eval_elementary(&v, 0).is_err());
        assert!(eval_elementary(&v, 3).is_err());
    }

    #[test]
    fn elementary_values_match_subset_sums() {
        let v: Vec<Rational> = [3, -1, 4, 1, -5]
            .iter()
            .map(|&a| Rational::from(a))
            .collect();
        for k in 1..=v.len() {
            let brute: Rational = subsets(v.len(), k)
                .iter()
                .map(|s| s.iter().map(|&i| v[i].clone()).product::<Rational>())
                .sum();
            assert_eq!(eval_elementary(&v, k).unwrap(), brute);
        }
    }

    #[test]
    fn substitution_examples() {
        let q = decompose(&(&x(2, 0).pow(2) + &x(2, 1).pow(2))).unwrap();
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let e = vieta_values(&f);
        assert_eq!(e, vec![Rational::zero(), Rational::from(-2)]);
        assert_eq!(substitute_elementary(&q, &e).unwrap(), Rational::from(4));
        let disc = decompose(&(&x(2, 0) - &x(2, 1)).pow(2)).unwrap();
        assert_eq!(substitute_elementary(&disc, &e).unwrap(), Rational::from(8));
        assert_eq!(
            substitute_elementary(&q, &e[..1]),
            Err(SymmetricError::LengthMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn e1_is_minus_subleading_coefficient() {
        let f = UniPoly::from_ints(&[7, -3, 5, 1]);
        let q = decompose(&elementary(3, 1)).unwrap();
        assert_eq!(
            substitute_elementary(&q, &vieta_values(&f)).unwrap(),
            Rational::from(-5)
        );
    }
}
