use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed number {0:?}")]
    Parse(String),
    #[error("slope undefined: both charge components vanish")]
    ZeroCharge,
    #[error("mixed radicals sqrt({0}) and sqrt({1})")]
    MixedRadical(u64, u64),
    #[error("square root of negative value {0}")]
    NegativeRadicand(String),
    #[error("radicand {0} is too large to factor")]
    RadicandTooLarge(String),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("enumeration cap exceeded: {what} is {value}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
