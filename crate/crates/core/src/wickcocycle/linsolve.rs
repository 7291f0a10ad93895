//! Small dense exact linear solves.

use num_traits::Zero;

use crate::error::{JetError, Result};
use crate::rational::Rational;

/// Solves `a x = b` by Gaussian elimination with exact pivoting.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(JetError::ShapeMismatch {
            left: a.len(),
            right: n,
        });
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(JetError::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] * &inv;
            for k in col..n {
                let v = &factor * &a[col][k];
                a[row][k] -= v;
            }
            let v = &factor * &b[col];
            b[row] -= v;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}
