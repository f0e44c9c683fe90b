use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable
/// machine-readable code via [`Error::code`] and to a process exit code
/// via [`Error::exit_code`] (2 = precondition violation, 3 = resource limit).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("the zero 1-form does not define a foliation")]
    ZeroForm,

    #[error("non-polynomial construct: {0}")]
    NonPolynomial(String),

    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series has zero linear coefficient and is not invertible")]
    NotInvertible,

    #[error("singularity is not isolated: common factor {0} through the working order")]
    NonIsolated(String),

    #[error("operation requires a reduced singular point, got {0}")]
    NonReduced(String),

    #[error("operation requires a singular point, input is regular")]
    RegularPoint,

    #[error("the two foliations coincide through the working order")]
    IdenticalFoliations,

    #[error("blow-up depth limit {0} exceeded")]
    DepthLimitExceeded(usize),

    #[error("unresolved locus: {0}")]
    UnresolvedLocus(String),

    #[error("inconclusive at truncation order {0}: raise the working order")]
    InconclusiveAtOrder(usize),

    #[error("working order {have} is insufficient, need at least {need}")]
    InsufficientOrder { need: usize, have: usize },

    #[error("the given map is not a symmetry of the foliation: {0}")]
    NotASymmetry(String),

    #[error("the given map does not preserve the coordinate axes")]
    NotAxisPreserving,

    #[error("value not representable in the current coefficient field: {0}")]
    NotRepresentable(String),

    #[error("quadratic extension contexts differ: sqrt({0}) vs sqrt({1})")]
    MixedExtension(String, String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "E_PARSE",
            Error::ZeroForm => "E_ZERO_FORM",
            Error::NonPolynomial(_) => "E_NON_POLYNOMIAL",
            Error::NonzeroConstantTerm => "E_NONZERO_CONSTANT",
            Error::NotInvertible => "E_NOT_INVERTIBLE",
            Error::NonIsolated(_) => "E_NON_ISOLATED",
            Error::NonReduced(_) => "E_NON_REDUCED",
            Error::RegularPoint => "E_REGULAR_POINT",
            Error::IdenticalFoliations => "E_IDENTICAL_FOLIATIONS",
            Error::DepthLimitExceeded(_) => "E_DEPTH_LIMIT",
            Error::UnresolvedLocus(_) => "E_UNRESOLVED_LOCUS",
            Error::InconclusiveAtOrder(_) => "E_INCONCLUSIVE_AT_ORDER",
            Error::InsufficientOrder { .. } => "E_INSUFFICIENT_ORDER",
            Error::NotASymmetry(_) => "E_NOT_A_SYMMETRY",
            Error::NotAxisPreserving => "E_NOT_AXIS_PRESERVING",
            Error::NotRepresentable(_) => "E_NOT_REPRESENTABLE",
            Error::MixedExtension(_, _) => "E_MIXED_EXTENSION",
            Error::Internal(_) => "E_INTERNAL",
        }
    }

    /// Process exit code for the CLI: 3 for resource limits, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DepthLimitExceeded(_)
            | Error::InconclusiveAtOrder(_)
            | Error::InsufficientOrder { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
