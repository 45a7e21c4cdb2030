use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid exceptional fibre ({a},{beta}): {reason}")]
    InvalidPair { a: i64, beta: i64, reason: &'static str },

    #[error("invalid Seifert invariant: {0}")]
    InvalidInvariant(String),

    #[error("not a Nil manifold: {0}")]
    NotNil(String),

    #[error("Euler number {e} is negative; apply reverse_orientation first")]
    NegativeOrientation { e: String },

    #[error("invalid Nil manifold parameters: {0}")]
    InvalidManifold(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("character does not vanish on relator {0}")]
    NotAHomomorphism(usize),

    #[error("character is identically zero")]
    NotSurjective,

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("invalid character for this manifold: {0}")]
    InvalidCharacter(String),

    #[error("integer overflow")]
    Overflow,
}

pub(crate) fn checked(x: Option<i64>) -> Result<i64> {
    x.ok_or(Error::Overflow)
}
