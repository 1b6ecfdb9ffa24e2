use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },
    #[error("matrix is singular (smallest singular value {smallest:.3e})")]
    SingularMatrix { smallest: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no geodesic: dim(L0 ∩ L⊥) = {dim10} but dim(L0⊥ ∩ L) = {dim01}")]
    NoGeodesic { dim10: usize, dim01: usize },
    #[error("the generic part of the pair is empty")]
    EmptyGenericPart,
    #[error("subspaces are not complementary (smallest singular value of P_S - P_T is {smallest:.3e})")]
    NotComplementary { smallest: f64 },
    #[error("operator is not a contraction (norm {norm:.6})")]
    NotContraction { norm: f64 },
    #[error("symbol is not unimodular on the nodes (defect {defect:.3e})")]
    InvalidSymbol { defect: f64 },
    #[error("repeated zeros away from the origin are not supported")]
    ConfluentZeros,
    #[error("quadrature grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
