//! Exact dense univariate polynomial arithmetic over `Z` and `Q`.

mod claims;
mod int;
mod rat;
mod resultant;
mod text;

pub use claims::{verify_factorization, verify_integer_factorization, FactorizationClaim, IntegerFactorization};
pub use int::IntPoly;
pub use rat::RatPoly;
pub use resultant::{discriminant, gcd, is_squarefree, resultant, squarefree_part};
pub(crate) use resultant::sign_of;
