use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("variable mismatch: expected [{expected}], found [{found}]")]
    VariableMismatch { expected: String, found: String },

    #[error("{0} is not a prime characteristic")]
    NotPrime(u64),

    #[error("coefficient {0} is not defined in characteristic {1}")]
    NotInField(String, u64),

    #[error("order is indeterminate at precision {precision}")]
    PrecisionExhausted { precision: usize },

    #[error("divisor order {divisor} exceeds dividend order {dividend}")]
    DivisionOrderError { divisor: String, dividend: String },

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("point is not in the singular locus of the algebra")]
    NotInSingularLocus,

    #[error("center is not permissible: generator {index} is not divisible by the exceptional coordinate to the power {weight}")]
    NotPermissible { index: usize, weight: u32 },

    #[error("invalid Rees algebra: {0}")]
    InvalidAlgebra(String),

    #[error("arc does not lie on the hypersurface: f(arc) = {0}")]
    ArcNotOnVariety(String),

    #[error("no stable Nash multiplicity drop within {max_steps} blow-ups")]
    StepLimit { max_steps: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("characteristic {characteristic} divides the degree {degree}")]
    CharDividesDegree { characteristic: u64, degree: u32 },

    #[error("no unit tuple over the base field avoids the zero set of {0}")]
    NoRationalUnit(String),

    #[error("no admissible arc found within the sampling budget")]
    EmptySample,

    #[error("integral dependence witness is invalid: {0}")]
    DependenceInvalid(String),

    #[error("invalid parametrization: {0}")]
    InvalidParametrization(String),
}
