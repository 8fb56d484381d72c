//! Small dense exact linear algebra: determinants, elimination, null spaces.

use num::{One, Signed, Zero};

use crate::arith::{Integer, Rational};

/// Exact integer types the determinant routines run on: `Integer`, or
/// `i128` when the caller has bounded the entries.
pub trait Ring: num::Integer + num::Signed + Clone {}

impl<T: num::Integer + num::Signed + Clone> Ring for T {}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det<T: Ring>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    if n == 0 {
        return T::one();
    }
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn det_int(matrix: &[Vec<Integer>]) -> Integer {
    det(matrix)
}

/// Generalized cross product: for `k - 1` rows of width `k`, the vector whose
/// entry `r` is `(-1)^r` times the minor obtained by deleting column `r`.
/// It is orthogonal to every row and vanishes iff the rows are dependent.
pub fn cofactor_normal<T: Ring>(rows: &[Vec<T>], width: usize) -> Vec<T> {
    debug_assert_eq!(rows.len() + 1, width);
    (0..width)
        .map(|r| {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != r)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if r % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect()
}

/// Whether every determinant of at most `n` rows with entries bounded by
/// `max_abs` in absolute value, and every product of two such determinants,
/// fits in an `i128`.
pub fn fits_i128(max_abs: &Integer, n: usize) -> bool {
    // Hadamard: |det|^2 <= (n * max_abs^2)^n; Bareiss intermediates are
    // minors, and the update multiplies two of them, so |det| < 2^60 suffices.
    let n = n.max(1);
    let m = max_abs.abs().max(Integer::one());
    let squared = num::pow(Integer::from(n) * &m * &m, n);
    squared < num::pow(Integer::from(2), 120)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<Integer>]) -> usize {
    let m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    rank(&m)
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for v in aug[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot_row = aug[c].clone();
                for (x, p) in aug[i][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); width];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn clear_denominators(v: &[Rational]) -> Vec<Integer> {
    let l = crate::arith::lcm_all(v.iter().map(|c| c.denom()));
    let ints: Vec<Integer> = v
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    crate::arith::IntegerVector(ints).primitive_signed().0
}
