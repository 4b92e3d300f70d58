use num_traits::Zero;

use super::IncidenceAlgebra;
use crate::algebra::IncidenceElement;
use crate::rational::Rational;

/// Dense square matrix, rows indexed by poset elements in index order.
pub type Matrix = Vec<Vec<Rational>>;

/// `m[x][y] = f[x, y]` when `x <= y`, else zero.
pub fn embed_to_matrix(alg: &IncidenceAlgebra, f: &IncidenceElement) -> Matrix {
    let n = alg.poset().len();
    (0..n)
        .map(|x| (0..n).map(|y| alg.value(f, x, y)).collect())
        .collect()
}

/// Nonzero diagonal, and whenever a path `x_0 → ... → x_n` runs through
/// nonzero entries, the entry `[x_0, x_n]` is nonzero too.
pub fn is_transitive(m: &Matrix) -> bool {
    let n = m.len();
    if (0..n).any(|x| m[x][x].is_zero()) {
        return false;
    }
    // Paths of any length reduce to the reachability closure of the support.
    let mut reach: Vec<Vec<bool>> = m
        .iter()
        .map(|row| row.iter().map(|v| !v.is_zero()).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            if !reach[i][k] {
                continue;
            }
            for j in 0..n {
                if reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).all(|i| (0..n).all(|j| !reach[i][j] || !m[i][j].is_zero()))
}

pub fn matrix_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

/// Exact Gauss–Jordan inverse; `None` for a singular matrix.
pub fn invert_matrix(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { crate::rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let d = &factor * &a[col][j];
                    a[r][j] -= d;
                }
                if !inv[col][j].is_zero() {
                    let d = &factor * &inv[col][j];
                    inv[r][j] -= d;
                }
            }
        }
    }
    Some(inv)
}
