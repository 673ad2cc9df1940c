use thiserror::Error;

/// Errors raised by the arithmetic, sequence and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("exact division failed: nonzero remainder")]
    NotDivisible,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("operation requires a prime-field polynomial")]
    WrongField,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("resultant needs non-constant forms")]
    ConstantForm,
    #[error("forms of degree {0} and {1} cannot be added")]
    DegreeMismatch(usize, usize),
    #[error("sequence parameter is zero")]
    ZeroParameter,
    #[error("sequence parameters are not coprime")]
    NotCoprime,
    #[error("sequence parameters are both units")]
    BothUnits,
    #[error("f/g is a root of unity")]
    RatioRootOfUnity,
    #[error("tower oracle quotient does not lie in the base ring: {0}")]
    OracleMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid campaign configuration: {0}")]
    ConfigInvalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation not supported over this field")]
    UnsupportedField,
}

impl Error {
    /// Stable variant name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NotDivisible => "NotDivisible",
            Error::ZeroArgument => "ZeroArgument",
            Error::WrongField => "WrongField",
            Error::NotPrime(_) => "NotPrime",
            Error::ConstantForm => "ConstantForm",
            Error::DegreeMismatch(..) => "DegreeMismatch",
            Error::ZeroParameter => "ZeroParameter",
            Error::NotCoprime => "NotCoprime",
            Error::BothUnits => "BothUnits",
            Error::RatioRootOfUnity => "RatioRootOfUnity",
            Error::OracleMismatch(_) => "OracleMismatch",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::ConfigInvalid(_) => "ConfigInvalid",
            Error::Parse(_) => "ParseError",
            Error::UnsupportedField => "UnsupportedField",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
