use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("enumeration of {required} items exceeds the budget of {budget}")]
    EnumerationTooLarge { required: u128, budget: u64 },
    #[error("the affine atlas is degenerate (its linear part has a nontrivial kernel)")]
    DegenerateAtlas,
    #[error("the form is degenerate")]
    DegenerateForm,
    #[error("parameters are not compatible: {0}")]
    NotCompatible(String),
    #[error("invalid point pair: {0}")]
    InvalidPair(&'static str),
    #[error("precondition unavailable: {0}")]
    PreconditionUnavailable(&'static str),
    #[error("invalid subspace: {0}")]
    InvalidSubspace(&'static str),
    #[error("operation requires a scalar-valued semiform (nu = 1), got nu = {0}")]
    RequiresScalarForm(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
