use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial degree {0} exceeds the supported bound of 6")]
    DegreeTooLarge(usize),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("modulus is reducible: found a zero divisor")]
    ZeroDivisor,
    #[error("axis {axis} out of range for an order-{order} tensor")]
    AxisOutOfRange { axis: usize, order: usize },
    #[error("tensor is zero")]
    ZeroTensor,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("all forms are zero")]
    AllZero,
    #[error("degree too small for this operation")]
    DegreeTooSmall,
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("unsupported concise shape {0:?}")]
    UnsupportedShape(Vec<usize>),
    #[error("tensor is not tangential")]
    NotTangential,
    #[error("the rank-one tensor is the tangency point")]
    TangencyPointRequested,
    #[error("rank-one tensor leaves the concise space of the tensor")]
    OutsideConciseSpace,
    #[error("illegal move: rank does not drop")]
    IllegalMove,
    #[error("no rational witness found at {0}")]
    NoRationalWitnessFound(String),
    #[error("{0} is not supported here")]
    UnsupportedOrbit(String),
}

impl Error {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeTooLarge(_) => "DegreeTooLarge",
            Error::NotInvertible => "NotInvertible",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::AxisOutOfRange { .. } => "AxisOutOfRange",
            Error::ZeroTensor => "ZeroTensor",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::AllZero => "AllZero",
            Error::DegreeTooSmall => "DegreeTooSmall",
            Error::WrongShape(_) => "WrongShape",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::NotTangential => "NotTangential",
            Error::TangencyPointRequested => "TangencyPointRequested",
            Error::OutsideConciseSpace => "OutsideConciseSpace",
            Error::IllegalMove => "IllegalMove",
            Error::NoRationalWitnessFound(_) => "NoRationalWitnessFound",
            Error::UnsupportedOrbit(_) => "UnsupportedOrbit",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
