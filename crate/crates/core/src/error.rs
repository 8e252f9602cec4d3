use thiserror::Error;

/// Everything that can go wrong below the CLI layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed scalar literal `{0}`")]
    MalformedScalar(String),
    #[error("zero denominator in scalar literal `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` has no image in F_{1} (denominator divisible by the modulus)")]
    NotInField(String, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch in tensor word: {0}")]
    DegreeMismatch(String),
    #[error("tensor word references unbound cochain slot {0}")]
    UnboundSlot(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("arity error: {0}")]
    ArityError(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("construction requires characteristic {expected}, field has characteristic {found}")]
    BadCharacteristic { expected: String, found: u64 },
    #[error("schema error at {pointer}: {message}")]
    SchemaError { pointer: String, message: String },
    #[error("Hopf axiom violated: {0}")]
    AxiomViolation(String),
    #[error("operation requires an involutive antipode (S^2 = id), but S^2 != id")]
    NotInvolutive,
    #[error("argument is not a cocycle")]
    NotACocycle,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailure(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
