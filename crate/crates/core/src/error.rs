use std::fmt;

/// Errors shared by all kernels of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector dimensions do not fit the requested operation.
    Shape(String),
    /// An operation received an empty or otherwise degenerate input.
    DegenerateInput(String),
    /// The cone spanned by the generators contains a line, so no strictly
    /// positive grading functional exists.
    NoPositiveGrading,
    /// The generators do not span the full lattice, violating the dimension
    /// hypothesis required by the chart construction.
    LatticeNotFull,
    /// A parameter is outside its documented range.
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::DegenerateInput(msg) => write!(f, "degenerate input: {msg}"),
            Error::NoPositiveGrading => write!(f, "no positive grading"),
            Error::LatticeNotFull => write!(f, "dimension hypothesis violated: generators do not span the full lattice"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
