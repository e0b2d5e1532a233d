use std::fmt;

/// Everything that can go wrong across the crate. Domain preconditions get
/// their own variants so callers (and the CLI) can map them to exit codes
/// without string matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus failed the deterministic primality check.
    NotPrime(u64),
    /// Modulus below 19; curve sampling needs at least 18 usable parameters.
    TooSmall(u64),
    /// Operation needs a prime field (e.g. root scans over the rationals).
    PrimeFieldOnly(&'static str),
    /// Inversion or division by zero.
    DivisionByZero,
    /// Identically zero binary form where roots were requested; signals a
    /// curve contained in the hypersurface.
    ZeroForm,
    /// All homogeneous coordinates zero.
    ZeroPoint,
    /// Point set constructor saw the same projective point twice.
    DuplicatePoint { first: usize, second: usize },
    /// Scalar does not belong to the stated field.
    MixedField,
    /// Vector length does not match the matrix shape.
    DimensionMismatch { expected: usize, got: usize },
    /// Curve parametrization vanishes identically at a parameter.
    BasePoint,
    /// Spanning points coincide or are collinear.
    DegenerateSpan,
    /// Projectivity matrix is not invertible.
    Singular,
    /// Fewer points than the scan needs.
    TooFew { need: usize, got: usize },
    /// Every point lies on one line; no plane is spanned.
    AllCollinear,
    /// More samples requested from a curve than a sextic section allows.
    CapacityExceeded { capacity: usize, requested: usize },
    /// No nonzero form through the given points (duplicates upstream).
    EmptyKernel,
    /// Bounded resampling gave up; the seed is pathological.
    RetriesExhausted(&'static str),
    /// Configuration request malformed (case/lengths/field combination).
    InvalidSpec(String),
    /// c2 outside the supported range.
    OutOfRange { c2: i64, min: i64, max: i64 },
    /// Point-set file rejected; `line` is 1-based.
    Parse { line: usize, msg: String },
    /// Unknown verification suite name.
    UnknownSuite(String),
    /// Invariant breach that should be unreachable.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::TooSmall(p) => write!(f, "modulus {p} is below the minimum 19"),
            Error::PrimeFieldOnly(op) => write!(f, "{op} requires a prime field"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroForm => write!(f, "binary form is identically zero"),
            Error::ZeroPoint => write!(f, "all coordinates are zero"),
            Error::DuplicatePoint { first, second } => {
                write!(f, "points {first} and {second} coincide")
            }
            Error::MixedField => write!(f, "scalar does not belong to the stated field"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected length {expected}, got {got}")
            }
            Error::BasePoint => write!(f, "parametrization vanishes at this parameter"),
            Error::DegenerateSpan => write!(f, "spanning points are degenerate"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::TooFew { need, got } => write!(f, "need at least {need} points, got {got}"),
            Error::AllCollinear => write!(f, "all points are collinear"),
            Error::CapacityExceeded { capacity, requested } => {
                write!(f, "requested {requested} points, sextic section capacity is {capacity}")
            }
            Error::EmptyKernel => write!(f, "no nonzero form through the given points"),
            Error::RetriesExhausted(what) => write!(f, "retries exhausted: {what}"),
            Error::InvalidSpec(msg) => write!(f, "invalid configuration spec: {msg}"),
            Error::OutOfRange { c2, min, max } => {
                write!(f, "c2 = {c2} outside supported range {min}..={max}")
            }
            Error::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            Error::UnknownSuite(name) => write!(f, "unknown suite '{name}'"),
            Error::Internal(msg) => write!(f, "internal invariant breach: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
