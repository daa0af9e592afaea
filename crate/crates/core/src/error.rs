use thiserror::Error;

/// Errors raised by the algebra kernels and the table pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch")]
    RingMismatch,

    #[error("series shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-integral coefficient in {context}: {value}")]
    Integrality { context: String, value: String },

    #[error("polynomial is not in the image of the Lazard ring: {0}")]
    NotInImage(String),

    #[error("no value assigned to generator `{0}`")]
    MissingAssignment(String),

    #[error("substituted series has a nonzero constant term")]
    NonZeroConstantTerm,

    #[error("exact division failed in degree {degree}")]
    Division { degree: u32 },

    #[error("constant term {0} is not invertible")]
    NotInvertible(String),

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("formal group law fails associativity at coefficient x^{i} y^{j} z^{k}")]
    Associativity { i: u32, j: u32, k: u32 },

    #[error("invalid formal group law: {0}")]
    InvalidLaw(String),

    #[error("insufficient precision: {what}; rerun with --trunc {needed}")]
    InsufficientPrecision { what: String, needed: u32 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
