use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SiltError {
    #[error("malformed quiver spec: {0}")]
    MalformedSpec(String),
    #[error("algebra is infinite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("parameter convention violated: {0}")]
    ConventionViolation(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("operation undefined on the zero object")]
    ZeroObject,
    #[error("incompatible map: {0}")]
    IncompatibleMap(String),
    #[error("input is not silting")]
    NotSilting,
    #[error("object is not two-term: {0}")]
    NotTwoTerm(String),
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("unknown poset node `{0}`")]
    UnknownNode(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("Euler matrix is singular")]
    SingularEuler,
    #[error("coordinate parameters differ")]
    ParameterMismatch,
    #[error("internal diagnostic: {0}")]
    Diagnostic(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SiltError>;

impl SiltError {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            SiltError::Diagnostic(_) | SiltError::BudgetExceeded(_) | SiltError::SingularEuler => 3,
            _ => 2,
        }
    }
}
