//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Solves `a x = b` for a system with at least as many equations as
/// unknowns. Fails with [`Error::Singular`] when the columns are dependent
/// and with [`Error::Inconsistent`] when no exact solution exists.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    assert_eq!(rows, b.len(), "right-hand side length");
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..cols {
        let pivot = (col..rows).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
        m.swap(col, pivot);
        let inv = Rational::from_integer(1.into()) / &m[col][col];
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    if m[cols..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::Inconsistent);
    }
    Ok(m[..cols].iter().map(|row| row[cols].clone()).collect())
}

/// Inverse of a square matrix.
pub fn inverse(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| Rational::from_integer(i64::from(i == j).into()))
            .collect();
        columns.push(solve(a, &e)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect())
}
