use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("expected an even element, got `{0}`")]
    NotEven(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("generator `{0}` has no conjugate partner")]
    MissingPartner(String),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("supplied inverse is not a two-sided inverse: {0}")]
    NotInverse(String),
    #[error("no consistent scaling factor: {0}")]
    NoConsistentScaling(String),
    #[error("bracket leaves the span: {0}")]
    OutsideSpan(String),
    #[error("linearly dependent basis")]
    DependentBasis,
    #[error("infeasible window: {0}")]
    InfeasibleWindow(String),
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
