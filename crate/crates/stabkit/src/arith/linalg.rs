//! Exact linear algebra over ℚ on small dense matrices.

use num_traits::{One, Zero};

use super::rational::{int, Rational};

pub type QMatrix = Vec<Vec<Rational>>;

/// Basis of `{x : A x = 0}` for an `m × n` matrix given by rows.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut a: QMatrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let m = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &m * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![int(0); n];
            x[free] = int(1);
            for (row, &pc) in a.iter().zip(&pivots) {
                x[pc] = -row[free].clone();
            }
            x
        })
        .collect()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: QMatrix = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return int(0);
        };
        if k != c {
            a.swap(c, k);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    (1..=m.len())
        .map(|k| {
            let sub: QMatrix = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// `x^T M y`.
pub fn bilinear(m: &[Vec<Rational>], x: &[Rational], y: &[Rational]) -> Rational {
    m.iter()
        .zip(x)
        .map(|(row, xi)| xi * row.iter().zip(y).map(|(a, b)| a * b).sum::<Rational>())
        .sum()
}

/// Gram matrix `(b_i^T M b_j)`.
pub fn gram(m: &[Vec<Rational>], basis: &[Vec<Rational>]) -> QMatrix {
    basis
        .iter()
        .map(|x| basis.iter().map(|y| bilinear(m, x, y)).collect())
        .collect()
}

/// Sylvester's criterion for negative definiteness: `(−1)^k D_k > 0`. Returns the index of
/// the first failing minor.
pub fn negative_definite(minors: &[Rational]) -> Result<(), usize> {
    for (k, d) in minors.iter().enumerate() {
        let ok = if k % 2 == 0 { *d < int(0) } else { *d > int(0) };
        if !ok {
            return Err(k + 1);
        }
    }
    Ok(())
}
