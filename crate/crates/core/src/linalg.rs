//! Exact linear algebra over the rationals. Matrices are row vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Row scaled to coprime integers, or `None` for a zero row.
fn primitive_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = row.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut ints: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    if !g.is_one() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    Some(ints)
}

/// Reduced row echelon form with zero rows dropped, plus pivot columns.
///
/// Fraction-free Gauss-Jordan on integer rows: every update divides exactly
/// by the previous pivot, so entries stay minors of the input and no gcds
/// are taken until the final normalization.
pub fn rref(rows: &[Vec<Rational>]) -> (Matrix, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter_map(|r| primitive_row(r)).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // smallest nonzero entry makes the cheapest pivot
        let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].bits())
        else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = std::mem::take(&mut m[r]);
        let a = &pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let b = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let t = &*x * a - &b * y;
                debug_assert!((&t % &prev).is_zero(), "inexact division");
                *x = if prev.is_one() { t } else { t / &prev };
            }
        }
        prev = a.clone();
        m[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let out = m
        .iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            row.iter()
                .map(|x| Rational::new(x.clone(), row[c].clone()))
                .collect()
        })
        .collect();
    (out, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{v : M v = 0}` for a matrix with `ncols` columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Matrix {
    let (m, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m: Matrix = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            let pivot_row = m[c].clone();
            for (x, y) in m[i][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &(&factor * y);
            }
        }
    }
    det
}

/// Whether `v` lies in the row space of a matrix already in RREF.
pub fn in_row_space(basis: &[Vec<Rational>], pivots: &[usize], v: &[Rational]) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if w[p].is_zero() {
            continue;
        }
        let factor = w[p].clone();
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &(&factor * y);
        }
    }
    w.iter().all(Rational::is_zero)
}

/// The unique solution of `M y = b`, or `None` when `M` is singular.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let augmented: Matrix = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();
    let (r, pivots) = rref(&augmented);
    if pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

/// `M v` for a matrix given by rows.
pub fn mat_vec(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect()
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, piv) = rref(&a);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(Rational::is_zero));
        assert_eq!(kernel(&[], 2).len(), 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), Rational::from(-1));
        assert_eq!(
            determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])),
            Rational::from(6)
        );
        assert!(determinant(&m(&[&[1, 2], &[2, 4]])).is_zero());
    }

    #[test]
    fn linear_solve() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let y = solve(&a, &[Rational::from(3), Rational::from(4)]).unwrap();
        assert_eq!(y, vec![Rational::from(1), Rational::from(1)]);
        assert!(solve(
            &m(&[&[1, 2], &[2, 4]]),
            &[Rational::from(1), Rational::from(0)]
        )
        .is_none());
    }

    #[test]
    fn row_space_membership() {
        let (b, p) = rref(&m(&[&[1, 1, 0], &[0, 1, 1]]));
        assert!(in_row_space(&b, &p, &m(&[&[1, 2, 1]])[0]));
        assert!(!in_row_space(&b, &p, &m(&[&[0, 0, 1]])[0]));
    }
}
