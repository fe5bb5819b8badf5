//! Independent reference computations, kept deliberately naive.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use orbit_equiv::IntPoly;

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
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

/// The Sylvester matrix of `a` (degree m) and `b` (degree k), size m + k.
pub fn sylvester(a: &IntPoly, b: &IntPoly) -> Vec<Vec<BigInt>> {
    let (m, k) = (a.degree().unwrap(), b.degree().unwrap());
    let n = m + k;
    let mut rows = Vec::with_capacity(n);
    for (p, d, copies) in [(a, m, k), (b, k, m)] {
        for r in 0..copies {
            let mut row = vec![BigInt::zero(); n];
            for (j, c) in p.coeffs().iter().rev().enumerate() {
                row[r + j] = c.clone();
            }
            debug_assert_eq!(p.coeffs().len(), d + 1);
            rows.push(row);
        }
    }
    rows
}

pub fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    bareiss_det(sylvester(a, b))
}

/// Schoolbook product, written independently of the library's `Mul`.
pub fn naive_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    let mut out = vec![BigInt::zero(); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntPoly::new(out)
}
