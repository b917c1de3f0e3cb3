use thiserror::Error;

/// Errors raised by the lattice, invariant and series computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} is outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: u32, min: u32, max: u32 },

    #[error("class has {found} coordinates but the lattice has rank {expected}")]
    LatticeMismatch { expected: usize, found: usize },

    #[error("class {0} is not a root (needs v.K = 0 and v.v = -2)")]
    NotARoot(String),

    #[error("class {0} is half-integral where an integral class is required")]
    HalfIntegral(String),

    #[error("operation needs a degree-{expected} lattice, got degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("matrix does not square to the identity")]
    NotAnInvolution,

    #[error("matrix does not preserve the intersection form")]
    NotAnIsometry,

    #[error("involution does not send K to -K")]
    KNotAntiInvariant,

    #[error("unknown real structure preset `{0}` (expected maximal, aux-d1, aux-d2, aux-d3)")]
    UnknownPreset(String),

    #[error("vector {0} is not in the span of the quadratic function's basis")]
    VectorOutsideDomain(String),

    #[error("constraints {conflicting:?} admit no quadratic function")]
    InconsistentConstraints { conflicting: Vec<usize> },

    #[error("k = {k} does not satisfy k = m - 1 (mod 2) for m = {m}")]
    ParityMismatch { m: u32, k: u32 },

    #[error("k = {k} real points exceed m - 1 for m = {m}")]
    PointsOutOfRange { m: u32, k: u32 },

    #[error("non-integral value {value} where an integer is required ({context})")]
    NonIntegralResult { value: String, context: String },

    #[error("series has constant term {found}, operation needs {expected}")]
    BadConstantTerm { expected: String, found: String },

    #[error("exponent -1 factor vanishes in the Abel specialization")]
    DivisionByZeroInSpecialization,

    #[error("total {total} and signed count {signed} have different parity")]
    OddParity { total: i64, signed: i64 },

    #[error("no value of q(-K) makes the signed counts consistent")]
    NoConsistentAnchor,

    #[error("k = {0} is not admissible here")]
    BadK(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
