use thiserror::Error;

use crate::poly::MultiPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inexact division")]
    InexactDivision,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("reductum order {k} out of range for degree {degree}")]
    ReductumOutOfRange { k: usize, degree: usize },
    #[error("resultant undefined: both polynomials have degree 0 in variable {var}")]
    ResultantUndefined { var: usize },
    #[error("discriminant undefined: degree {degree} < 2")]
    DiscriminantUndefined { degree: usize },
    #[error("nothing to project at the lowest level")]
    NothingToProject,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid variable order: {0}")]
    VarOrder(String),
    #[error("variable {var} is not fixed by the sample point")]
    UnfixedVariable { var: usize },
    #[error("separability violated: {0}")]
    Separability(String),
    #[error("polynomial is not nullified at the sample point")]
    NotNullified,
    #[error("input not well-oriented: {poly} vanishes identically over cell {index:?}")]
    NotWellOriented { index: Vec<usize>, poly: MultiPoly },
    #[error("CAD integrity error: {0}")]
    Integrity(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
