use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// The variants are grouped by how the command line front end maps them onto
/// exit statuses: capacity problems, retry exhaustion, and everything else
/// (malformed input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is a quadratic non-residue modulo {p}")]
    NonResidue { value: u64, p: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group too large for enumeration: {0}")]
    TooLarge(String),
    #[error("solution has {got} conjugators but the equation has {expected} constants")]
    LengthMismatch { expected: usize, got: usize },
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("elements are not conjugate")]
    NotConjugate,
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("operation requires non-scalar matrices")]
    ScalarInput,
    #[error("matrix is not upper triangular")]
    NotTriangular,
    #[error("randomized search gave up after {0} attempts")]
    RetryExhausted(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported equation shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("json: {0}")]
    Json(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a problem that is too big rather than wrong.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::TooLarge(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
