use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a rational function field")]
    WrongFieldKind,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable name collision on `{0}`")]
    NameCollision(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("module rank mismatch")]
    RankMismatch,
    #[error("reduction budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("ideal is not m-primary: no stabilization up to m^{0}")]
    NotMPrimary(u32),
    #[error("algebra is infinite dimensional")]
    InfiniteDimension,
    #[error("dimension cap exceeded: need {needed} > cap {cap}")]
    CapExceeded { needed: u128, cap: usize },
    #[error("not a ring map: relation `{relation}` maps to `{residue}`")]
    NotARingMap { relation: String, residue: String },
    #[error("relation is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("algebra is not local with nilpotent generators")]
    NotLocal,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    /// True for the errors that signal a resource limit rather than a wrong input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::CapExceeded { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
