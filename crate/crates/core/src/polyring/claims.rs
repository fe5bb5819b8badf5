use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use super::IntPoly;

/// A stated factorisation `unit * prod factor^multiplicity` of an integer
/// polynomial. Only checked by multiplication, never discovered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationClaim {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl FactorizationClaim {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }
}

pub fn verify_factorization(p: &IntPoly, claim: &FactorizationClaim) -> bool {
    claim.product() == *p
}

/// True when the product of the stated prime powers equals `|n|`. The sign of
/// `n` is not examined and the stated bases are not tested for primality.
pub fn verify_integer_factorization(n: &BigInt, primes_with_exponents: &[(BigInt, u32)]) -> bool {
    let product = primes_with_exponents
        .iter()
        .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
    product == n.abs()
}

/// A signed integer factorisation as printed, e.g. `-2^20 * 3^8 * ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerFactorization {
    pub negative: bool,
    pub factors: Vec<(BigInt, u32)>,
}

impl IntegerFactorization {
    /// Checks the magnitude and, separately, the sign.
    pub fn matches(&self, n: &BigInt) -> bool {
        let sign_ok = match n.sign() {
            Sign::Minus => self.negative,
            _ => !self.negative,
        };
        sign_ok && verify_integer_factorization(n, &self.factors)
    }

    pub fn value(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
        if self.negative {
            -mag
        } else {
            mag
        }
    }
}

impl std::fmt::Display for IntegerFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}
