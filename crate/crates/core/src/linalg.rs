//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::Rational;

pub(crate) type Matrix = Vec<Vec<Rational>>;

/// Basis of the right kernel of `m` (columns = unknowns), via reduced row echelon form.
pub(crate) fn kernel_basis(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Matrix = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

pub(crate) fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    det
}

/// Sylvester's criterion: every leading principal minor of `-m` is positive.
pub(crate) fn is_negative_definite(m: &Matrix) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let minor: Matrix = m[..k].iter().map(|row| row[..k].iter().map(|x| -x).collect()).collect();
        determinant(&minor) > Rational::zero()
    })
}
