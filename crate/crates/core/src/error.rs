use thiserror::Error;

/// Broad failure classes. Each maps to one CLI exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Abort,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse => 2,
            ErrorKind::Validation => 3,
            ErrorKind::Abort => 4,
            ErrorKind::Internal => 5,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("coefficients are not homogeneous of one common degree: {0}")]
    Inhomogeneous(String),

    #[error("Euler identity fails: a*x + b*y + c*z = {residual}{note}")]
    EulerFailure { residual: String, note: String },

    #[error("the 1-form is identically zero")]
    ZeroForm,

    #[error("operands live in different number fields")]
    MixedFields,

    #[error("foliation coefficients must be rational")]
    NonRationalForm,

    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("variable {0} occurs in neither polynomial")]
    MissingVariable(usize),

    #[error("minimal polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("minimal polynomial must have degree at least 2: {0}")]
    DegreeTooSmall(String),

    #[error("minimal polynomial is reducible; factor {factor}")]
    Reducible { factor: String },

    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,

    #[error("expected a univariate polynomial over the rationals: {0}")]
    NotUnivariate(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid line: {0}")]
    InvalidLine(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("point {point} does not lie on line {line}")]
    PointNotOnLine { point: String, line: String },

    #[error("point {0} is not a singular point")]
    NotSingular(String),

    #[error("E and F share a component through the point; intersection multiplicity is infinite")]
    InfiniteMultiplicity,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported map: {0}")]
    UnsupportedMap(String),

    #[error("factorization beyond the supported degree: {poly}")]
    FactorizationDegree { poly: String },

    #[error("factor search budget exhausted on {poly}")]
    FactorSearchExhausted { poly: String },

    #[error("degree ceiling {ceiling} exceeded (degree {degree})")]
    DegreeCeiling { degree: u32, ceiling: u32 },

    #[error("no rational line through two singular points; a field extension would be required ({0})")]
    ExtensionRequired(String),

    #[error("no admissible base point found on the line after {scanned} candidates")]
    ScanExhausted { scanned: usize },

    #[error("malformed transcript: {0}")]
    Json(String),

    #[error("transcript does not replay: {0}")]
    ReplayMismatch(String),

    #[error("internal invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Syntax { .. } | Json(_) => ErrorKind::Parse,
            Inhomogeneous(_)
            | EulerFailure { .. }
            | ZeroForm
            | MixedFields
            | NonRationalForm
            | ArityMismatch { .. }
            | MissingVariable(_)
            | NotMonic(_)
            | DegreeTooSmall(_)
            | Reducible { .. }
            | ZeroPolynomial
            | NotUnivariate(_)
            | DivisionByZero
            | InvalidLine(_)
            | InvalidPoint(_)
            | SingularMatrix(_)
            | PointNotOnLine { .. }
            | NotSingular(_)
            | InfiniteMultiplicity
            | Precondition(_)
            | UnsupportedMap(_)
            | ReplayMismatch(_) => ErrorKind::Validation,
            FactorizationDegree { .. }
            | FactorSearchExhausted { .. }
            | DegreeCeiling { .. }
            | ExtensionRequired(_)
            | ScanExhausted { .. } => ErrorKind::Abort,
            Invariant(_) => ErrorKind::Internal,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
