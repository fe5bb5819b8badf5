use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("modulus must be monic, squarefree and of degree at least 1: {0}")]
    DegenerateModulus(String),
    #[error("elements belong to different quotient rings")]
    ModulusMismatch,
    #[error("element is not invertible: gcd with the modulus is {0}, so the modulus is reducible")]
    NotInvertible(String),
    #[error("linear system is singular")]
    Singular,
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("index {index} out of range for {len} roots")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("image interval did not separate after {0} bisections")]
    NonSeparation(usize),
    #[error("transformation does not induce a bijection on roots")]
    NotABijection,
    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("polynomials have different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("unsupported signature for root search: {0}")]
    UnsupportedSignature(String),
    #[error("{map} does not map roots of {from} to roots of {to}")]
    NotAMorphism { map: String, from: String, to: String },
    #[error("morphism chain mismatch: target of the first is not the source of the second")]
    ChainMismatch,
    #[error("map is rational, its minimal polynomial is linear")]
    RationalMap,
    #[error("chain index {index} exceeds guard {guard}")]
    ChainGuard { index: usize, guard: usize },
    #[error("alpha_{0} is not defined by the chain rule")]
    UndefinedAlpha(usize),
    #[error("expected {expected} coefficient formulas, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("catalog entry {key:?} is malformed: {reason}")]
    Catalog { key: String, reason: String },
}
