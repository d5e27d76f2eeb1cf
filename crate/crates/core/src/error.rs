use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("selector has {got} entries but the scheme has {expected} germs")]
    SelectorMismatch { expected: usize, got: usize },

    #[error("scheme length {degree} exceeds the subscheme enumeration cap {cap}")]
    CapExceeded { degree: usize, cap: usize },

    #[error("germ is not curvilinear: {0}")]
    NonCurvilinear(String),

    #[error("projection center meets the scheme at germ {0}")]
    CenterMeetsScheme(usize),

    #[error("projection center meets the curve")]
    CenterMeetsCurve,

    #[error("curve is contained in the linear subspace")]
    CurveInSubspace,

    #[error("linear forms are dependent: {0}")]
    DependentForms(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("generator exhausted {0} redraws")]
    RedrawsExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
