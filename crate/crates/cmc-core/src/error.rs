use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Dimension below 2.
    InvalidDimension(usize),
    /// Coordinate vectors of different lengths were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// Point at or beyond `1 - BOUNDARY_MARGIN` in the ball model.
    OutsideBall { norm: f64 },
    /// Quantity that is undefined at the origin (e.g. the direction of `∇r`).
    SingularPoint(&'static str),
    /// A finite-difference stencil left the admissible domain.
    Domain(String),
    /// Invalid family or profile parameters.
    Parameter(String),
    /// Lorentzian graph with `‖∇f‖ ≥ 1` somewhere it was evaluated.
    Spacelike { grad_norm: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension(m) => write!(f, "dimension must be at least 2, got {m}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::OutsideBall { norm } => {
                write!(f, "point with euclidean norm {norm} is outside the admissible ball")
            }
            Error::SingularPoint(what) => write!(f, "{what} is undefined at the origin"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::Spacelike { grad_norm } => {
                write!(f, "graph is not spacelike: gradient norm {grad_norm} >= 1")
            }
        }
    }
}

impl core::error::Error for Error {}
