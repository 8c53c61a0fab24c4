use thiserror::Error;

/// Errors raised by the polynomial, ring and scaled-inverse operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("division is not exact over the integers")]
    InexactDivision,
    #[error("polynomials are not coprime over Q")]
    NotCoprime,
    #[error("unsupported modulus {0}: expected M >= 2 of the form p^s or p^s q^t")]
    UnsupportedModulus(u64),
    #[error("ring elements belong to different moduli ({0} and {1})")]
    ModulusMismatch(usize, usize),
    #[error("exponents must satisfy 0 <= j < i < M (got i = {i}, j = {j}, M = {m})")]
    BadRange { i: i64, j: i64, m: usize },
    #[error("the zero element has no scaled inverse")]
    ZeroElement,
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
    #[error("reduction matrix entry does not fit in the narrow storage")]
    EntryOutOfRange,
    #[error("construction violated its guarantee: {0}")]
    ClaimViolated(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
