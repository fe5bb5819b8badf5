//! Arithmetic in `Q[x]/(f)` for a monic squarefree integer modulus `f`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{discriminant, resultant, squarefree_part, IntPoly, RatPoly};
use crate::{Error, Result};

/// A validated modulus: monic, degree at least 1, nonzero discriminant.
/// Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Modulus(Arc<IntPoly>);

impl Modulus {
    pub fn new(f: &IntPoly) -> Result<Self> {
        let degree = f.degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::DegenerateModulus(format!("{f} has degree < 1")));
        }
        if !f.is_monic() {
            return Err(Error::DegenerateModulus(format!("{f} is not monic")));
        }
        if discriminant(f)?.is_zero() {
            return Err(Error::DegenerateModulus(format!("{f} is not squarefree")));
        }
        Ok(Modulus(Arc::new(f.clone())))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    /// The class of `x`.
    pub fn generator(&self) -> QuotElem {
        reduce(&RatPoly::x(), self)
    }

    pub fn one(&self) -> QuotElem {
        reduce(&RatPoly::one(), self)
    }

    pub fn zero(&self) -> QuotElem {
        QuotElem {
            rep: RatPoly::zero(),
            modulus: self.clone(),
        }
    }

    pub fn constant(&self, c: BigRational) -> QuotElem {
        reduce(&RatPoly::constant(c), self)
    }
}

impl std::fmt::Debug for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Modulus({})", self.0)
    }
}

/// An element of `Q[x]/(f)` held by its unique representative of degree
/// below `deg f`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuotElem {
    rep: RatPoly,
    modulus: Modulus,
}

impl std::fmt::Debug for QuotElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod ({})", self.rep, self.modulus.poly())
    }
}

fn rem_monic(p: &RatPoly, f: &IntPoly) -> RatPoly {
    let n = f.degree().unwrap();
    let Some(m) = p.degree() else {
        return RatPoly::zero();
    };
    if m < n {
        return p.clone();
    }
    let fc: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut r = p.coeffs().to_vec();
    for k in (0..=m - n).rev() {
        let lead = r[n + k].clone();
        if !lead.is_zero() {
            for (j, c) in fc.iter().enumerate().take(n) {
                r[k + j] -= &lead * c;
            }
        }
        r.truncate(n + k);
    }
    RatPoly::new(r)
}

/// `p mod f`.
pub fn reduce(p: &RatPoly, f: &Modulus) -> QuotElem {
    QuotElem {
        rep: rem_monic(p, f.poly()),
        modulus: f.clone(),
    }
}

pub fn reduce_int(p: &IntPoly, f: &Modulus) -> QuotElem {
    reduce(&p.to_rat(), f)
}

impl QuotElem {
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == RatPoly::one()
    }

    /// True for the class of `x` itself.
    pub fn is_generator(&self) -> bool {
        *self == self.modulus.generator()
    }

    fn check(&self, other: &QuotElem) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn add(&self, other: &QuotElem) -> Result<QuotElem> {
        self.check(other)?;
        Ok(QuotElem {
            rep: &self.rep + &other.rep,
            modulus: self.modulus.clone(),
        })
    }

    pub fn sub(&self, other: &QuotElem) -> Result<QuotElem> {
        self.check(other)?;
        Ok(QuotElem {
            rep: &self.rep - &other.rep,
            modulus: self.modulus.clone(),
        })
    }

    pub fn add_scalar(&self, c: &BigRational) -> QuotElem {
        QuotElem {
            rep: &self.rep + &RatPoly::constant(c.clone()),
            modulus: self.modulus.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> QuotElem {
        (0..e).fold(self.modulus.one(), |acc, _| {
            qmul(&acc, self).expect("same modulus")
        })
    }
}

/// `(a * b) mod f`.
pub fn qmul(a: &QuotElem, b: &QuotElem) -> Result<QuotElem> {
    a.check(b)?;
    Ok(reduce(&(&a.rep * &b.rep), &a.modulus))
}

/// `outer(inner)` reduced mod `f`, by Horner's scheme in the quotient ring.
pub fn compose_mod(outer: &RatPoly, inner: &QuotElem) -> QuotElem {
    let f = &inner.modulus;
    outer.coeffs().iter().rev().fold(f.zero(), |acc, c| {
        qmul(&acc, inner).expect("same modulus").add_scalar(c)
    })
}

pub fn compose_mod_int(outer: &IntPoly, inner: &QuotElem) -> QuotElem {
    compose_mod(&outer.to_rat(), inner)
}

/// Multiplicative inverse by the extended Euclidean algorithm over `Q`.
///
/// A nonconstant gcd with the modulus means the modulus is reducible and is
/// reported as [`Error::NotInvertible`].
pub fn qinverse(a: &QuotElem) -> Result<QuotElem> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let f = a.modulus.poly().to_rat();
    let (g, s, _) = a.rep.ext_gcd(&f);
    if g != RatPoly::one() {
        return Err(Error::NotInvertible(g.to_string()));
    }
    Ok(reduce(&s, &a.modulus))
}

/// Characteristic polynomial `Res_x(f(x), y - rep(x))`, monic of degree
/// `deg f`, by evaluation at `y = 0..=n` and Newton interpolation.
pub fn characteristic_polynomial(a: &QuotElem) -> RatPoly {
    let f = a.modulus.poly();
    let n = a.modulus.degree();
    let (p, d) = a.rep.clear_denominators();
    let d_pow = BigRational::from_integer(num_traits::pow(d.clone(), n));
    // Res(f, (k d - P)/d) = Res(f, k d - P) / d^n since deg f = n
    let values: Vec<BigRational> = (0..=n)
        .map(|k| {
            let g = &IntPoly::constant(&d * BigInt::from(k)) - &p;
            let res = if g.is_zero() {
                BigInt::zero()
            } else {
                resultant(f, &g).expect("nonzero operands")
            };
            BigRational::from_integer(res) / &d_pow
        })
        .collect();
    let cp = newton_interpolate(&values);
    debug_assert_eq!(cp.lc(), Some(&BigRational::one()));
    cp
}

/// Interpolates values at the nodes `0, 1, ..., len-1`.
fn newton_interpolate(values: &[BigRational]) -> RatPoly {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    // Horner on the Newton basis: dd[0] + (y-0)(dd[1] + (y-1)(dd[2] + ...))
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        let node = BigRational::from_integer(BigInt::from(i));
        acc = &(&acc * &RatPoly::new(vec![-node, BigRational::one()])) + &RatPoly::constant(dd[i].clone());
    }
    acc
}

/// Minimal polynomial of `a` over `Q`: the squarefree part of the
/// characteristic polynomial, primitive over `Z` with positive leading
/// coefficient.
pub fn minimal_polynomial(a: &QuotElem) -> IntPoly {
    let (cp, _) = characteristic_polynomial(a).clear_denominators();
    squarefree_part(&cp).expect("characteristic polynomial is nonconstant")
}
