use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size limit exceeded: {pairs} strand pairs requested, limit is {limit}")]
    SizeLimit { pairs: usize, limit: usize },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },

    #[error("not planar: {0}")]
    NotPlanar(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("not an endomorphism: {top} top points, {bottom} bottom points")]
    NotEndomorphism { top: usize, bottom: usize },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("no strand to bend on the {0} side")]
    NoStrand(&'static str),

    #[error("morphism is not idempotent")]
    NotIdempotent,

    #[error("scalar {0} is not invertible")]
    NonInvertibleScalar(String),

    #[error("quantum integer [{0}] vanishes in this backend")]
    VanishingQuantumInteger(i64),

    #[error("denominator {0} vanishes at the specialization point")]
    DenominatorVanishes(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

impl Error {
    /// The variant name, used as a stable error code by the command-line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SizeLimit { .. } => "SizeLimit",
            Error::SignatureMismatch(_) => "SignatureMismatch",
            Error::BackendMismatch(_) => "BackendMismatch",
            Error::ParseError { .. } => "ParseError",
            Error::NotPlanar(_) => "NotPlanar",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::NotEndomorphism { .. } => "NotEndomorphism",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::NoStrand(_) => "NoStrand",
            Error::NotIdempotent => "NotIdempotent",
            Error::NonInvertibleScalar(_) => "NonInvertibleScalar",
            Error::VanishingQuantumInteger(_) => "VanishingQuantumInteger",
            Error::DenominatorVanishes(_) => "DenominatorVanishes",
            Error::NumericalFailure(_) => "NumericalFailure",
        }
    }
}
