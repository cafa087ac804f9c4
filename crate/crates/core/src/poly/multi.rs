//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::PolyError;
use crate::arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Plain lexicographic with `x1 > x2 > ... > xn`.
    Lex,
    /// Total degree first, ties broken by `Lex`.
    GrLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiOp {
    Add,
    Mul,
}

/// Terms keyed by exponent vector. Zero coefficients are never stored, and
/// every key has length `nvars`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        MultiPoly::monomial(c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rational::one())
    }

    pub fn monomial(c: Rational, exps: Vec<u32>) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(Rational::one(), e)
    }

    /// Linear form `sum_i weights[i] * x_i`.
    pub fn linear(weights: &[Rational]) -> Self {
        let n = weights.len();
        let mut p = MultiPoly::zero(n);
        for (i, w) in weights.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, w.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Vec<u32>, &Rational)> {
        match order {
            // BTreeMap on Vec<u32> already sorts lexicographically
            MonomialOrder::Lex => self.terms.iter().next_back(),
            MonomialOrder::GrLex => self.terms.iter().max_by(|a, b| order.compare(a.0, b.0)),
        }
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                f[perm[i]] = x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(values)
                    .fold(c.clone(), |acc, (&k, v)| acc * v.pow(k))
            })
            .sum()
    }

    /// Substitutes polynomial `subs[i]` (all in the same ring) for `x_i`.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(MultiPoly::nvars).unwrap_or(0);
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = &t * &s.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| MonomialOrder::GrLex.compare(b, a));
        let mut out = String::new();
        for e in keys {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("{var}{}", i + 1)
                    } else {
                        format!("{var}{}^{k}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

/// Checked sum or product, the single entry point for mixed-arity inputs.
pub fn multi_arith(a: &MultiPoly, b: &MultiPoly, op: MultiOp) -> Result<MultiPoly, PolyError> {
    match op {
        MultiOp::Add => a.try_add(b),
        MultiOp::Mul => a.try_mul(b),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.nvars)
    }
}

// The operator impls panic on a variable-count mismatch; use `multi_arith`
// for a checked result.
impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(&-rhs).expect("variable count mismatch")
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&a + &b) * &(&a - &b);
        let expected = &a.pow(2) - &b.pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn e1_squared() {
        let e1 = &x(2, 0) + &x(2, 1);
        let sq = multi_arith(&e1, &e1, MultiOp::Mul).unwrap();
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn cancellation_leaves_no_terms() {
        let p = &x(3, 0) + &MultiPoly::constant(3, Rational::from(4));
        let z = multi_arith(&p, &-&p, MultiOp::Add).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = multi_arith(&x(2, 0), &x(3, 0), MultiOp::Mul).unwrap_err();
        assert_eq!(err, PolyError::VariableCountMismatch { left: 2, right: 3 });
    }

    #[test]
    fn leading_terms_by_order() {
        // x1*x3^5 is grlex-leading, x1^2 is lex-leading
        let p = MultiPoly::from_terms(
            3,
            [
                (vec![2, 0, 0], Rational::one()),
                (vec![1, 0, 5], Rational::one()),
                (vec![0, 3, 0], Rational::one()),
            ],
        );
        assert_eq!(
            p.leading_term(MonomialOrder::Lex).unwrap().0,
            &vec![2, 0, 0]
        );
        assert_eq!(
            p.leading_term(MonomialOrder::GrLex).unwrap().0,
            &vec![1, 0, 5]
        );
    }

    #[test]
    fn substitute_and_permute() {
        let p = &x(2, 0).pow(2) + &x(2, 1);
        let swapped = p.permute_vars(&[1, 0]);
        assert_eq!(swapped, &x(2, 1).pow(2) + &x(2, 0));
        let s = p.substitute(&[&x(2, 0) + &x(2, 1), x(2, 1)]);
        assert_eq!(
            s.eval(&[Rational::from(1), Rational::from(2)]),
            Rational::from(11)
        );
    }
}
