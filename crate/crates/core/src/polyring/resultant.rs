use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::{Error, Result};

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant of two nonzero integer polynomials by the subresultant PRS.
///
/// Contents are split off first; `g` and `h` are the subresultant scaling
/// factors so every division below is exact over `Z`. Two nonzero constants
/// have resultant 1.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (ca, cb) = (a.content(), b.content());
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    let t = pow(&ca, db) * pow(&cb, da);
    let mut a = a.div_exact(&ca);
    let mut b = b.div_exact(&cb);
    let mut s = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da.is_odd() && db.is_odd() {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while b.degree().unwrap() > 0 {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = dega - degb;
        if dega.is_odd() && degb.is_odd() {
            s = -s;
        }
        let (_, r, _) = a.pseudo_divrem(&b)?;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        b = r.div_exact(&(&g * pow(&h, delta)));
        g = a.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta) / pow(&h, delta - 1)
        };
    }
    let dega = a.degree().unwrap();
    let lb = b.lc().unwrap();
    let h = if dega == 0 {
        BigInt::one()
    } else {
        pow(lb, dega) / pow(&h, dega - 1)
    };
    Ok(s * t * h)
}

/// `(-1)^(n(n-1)/2) * Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPoly) -> Result<BigInt> {
    let n = p.degree_nonzero()?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(p, &p.derivative())?;
    let lc = p.lc().unwrap();
    debug_assert!((&r % lc).is_zero());
    let d = r / lc;
    Ok(if (n * (n - 1) / 2).is_odd() { -d } else { d })
}

pub fn is_squarefree(p: &IntPoly) -> Result<bool> {
    Ok(!discriminant(p)?.is_zero())
}

/// Gcd over `Z[x]` by the primitive PRS, normalised to a positive leading
/// coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let c = a.content().gcd(&b.content());
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (_, r, _) = a.pseudo_divrem(&b).expect("nonzero divisor");
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part().scale(&c)
}

/// Exact quotient `a / b` when `b` divides `a` in `Q[x]`, returned primitive.
fn exact_quotient_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (q, r, _) = a.pseudo_divrem(b).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q.primitive_part()
}

/// Product of the distinct irreducible factors, primitive with positive
/// leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    let n = p.degree_nonzero()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    if is_squarefree(p)? {
        return Ok(p.primitive_part());
    }
    let g = gcd(p, &p.derivative());
    Ok(exact_quotient_primitive(p, &g))
}

pub(crate) fn sign_of(n: &BigInt) -> i32 {
    if n.is_positive() {
        1
    } else if n.is_negative() {
        -1
    } else {
        0
    }
}
