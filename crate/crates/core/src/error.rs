use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p must be prime >= 5, got {0}")]
    ModulusTooSmall(u64),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("singular model: 4a^3 + 27b^2 = 0")]
    Singular,
    #[error("isogeny degree {0} is not supported (use 2 or 3)")]
    UnsupportedDegree(u32),
    #[error("kernel polynomial does not divide the {0}-division polynomial")]
    NotAKernel(u32),
    #[error("curves are defined over different fields")]
    FieldMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassGroupError {
    #[error("invalid discriminant {0}: must be negative and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(i64),
    #[error("forms have different discriminants {0} and {1}")]
    DiscriminantMismatch(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModPolyError {
    #[error("modular polynomial of level {0} is not available (use 2 or 3)")]
    UnsupportedLevel(u32),
    #[error("no Hilbert class polynomial for discriminant {requested}; supported: {supported:?}")]
    UnsupportedDiscriminant { requested: i64, supported: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph needs p != ell and ell in {{2, 3}}, got p = {p}, ell = {ell}")]
    InvalidParameters { p: u64, ell: u32 },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(String),
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("empty graph")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("need p > ell, got p = {p}, ell = {ell}")]
    PrimeNotAboveEll { p: u64, ell: u64 },
    #[error("ell = {0} is not supported")]
    UnsupportedEll(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid model parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
    #[error(transparent)]
    ModPoly(#[from] ModPolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
