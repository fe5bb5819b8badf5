//! Exact linear algebra over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Matrix = Vec<Vec<BigRational>>;

/// Solves `A X = B` for square `A` by fraction-free (Bareiss) elimination.
///
/// Each row of the augmented system is scaled to integers, eliminated with
/// exact integer divisions and then back-substituted over `Q`. `rhs` holds the
/// right-hand sides as columns of an `n x m` matrix.
pub fn solve_fraction_free(a: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let m = rhs.first().map_or(0, Vec::len);
    debug_assert!(a.iter().all(|r| r.len() == n) && rhs.len() == n);

    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(rhs)
        .map(|(ar, br)| {
            let den = ar
                .iter()
                .chain(br)
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            ar.iter()
                .chain(br)
                .map(|c| c.numer() * (&den / c.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !rows[i][k].is_zero()).ok_or(Error::Singular)?;
        rows.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..n + m {
                let v = (&rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }

    let mut x = vec![vec![BigRational::zero(); m]; n];
    for col in 0..m {
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(rows[i][n + col].clone());
            for j in i + 1..n {
                acc -= BigRational::from_integer(rows[i][j].clone()) * &x[j][col];
            }
            x[i][col] = acc / BigRational::from_integer(rows[i][i].clone());
        }
    }
    Ok(x)
}

/// Solves a single square system `A x = b`.
pub fn solve(a: &Matrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let rhs: Matrix = b.iter().map(|c| vec![c.clone()]).collect();
    Ok(solve_fraction_free(a, &rhs)?
        .into_iter()
        .map(|mut r| r.pop().unwrap())
        .collect())
}

/// Inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let id: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    solve_fraction_free(a, &id)
}

/// Solves a possibly overdetermined system `A x = b` (`A` is `r x c`, full
/// column rank assumed) by Gauss-Jordan elimination over `Q`.
///
/// Returns `Ok(None)` when the system is inconsistent and `Err(Singular)`
/// when the columns are dependent.
pub fn solve_overdetermined(a: &Matrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut rows: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut row = row.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    for k in 0..c {
        let pivot = (k..r).find(|&i| !rows[i][k].is_zero()).ok_or(Error::Singular)?;
        rows.swap(k, pivot);
        let inv = rows[k][k].recip();
        for v in rows[k].iter_mut() {
            *v *= &inv;
        }
        for i in 0..r {
            if i != k && !rows[i][k].is_zero() {
                let f = rows[i][k].clone();
                let pivot_row = rows[k].clone();
                for (dst, src) in rows[i][k..=c].iter_mut().zip(&pivot_row[k..=c]) {
                    *dst -= &f * src;
                }
            }
        }
    }
    if rows[c..].iter().any(|row| !row[c].is_zero()) {
        return Ok(None);
    }
    Ok(Some(rows[..c].iter().map(|row| row[c].clone()).collect()))
}

pub fn mat_vec(a: &Matrix, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}
