//! Exact algebra for equivalences among orbital equations of polynomial maps.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyring`]: dense univariate polynomials over `Z` and `Q`, resultants,
//!   discriminants, composition and map iteration.
//! * [`quotient`]: arithmetic in `Q[x]/(f)` and minimal polynomials.
//! * [`realroots`]: Sturm sequences, exact real-root isolation and the root
//!   permutations induced by a transformation.
//! * [`morphisms`]: verification, discovery, inversion and composition of
//!   root-mapping transformations between fields.
//! * [`families`]: one-parameter isodiscriminant families generated by shifts.
//! * [`chains`]: the recursive quadratic transformation chain and cycle
//!   detection on its reduced states.
//! * [`catalog`]: the checked-in store of reference polynomials and tables.

pub mod catalog;
pub mod chains;
mod error;
pub mod families;
pub mod linalg;
pub mod morphisms;
pub mod polyring;
pub mod quotient;
pub mod realroots;
pub mod report;

pub use error::{Error, Result};
pub use polyring::{IntPoly, RatPoly};
pub use quotient::{Modulus, QuotElem};
