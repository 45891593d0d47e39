//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong when building or combining values.
///
/// Verification routines never return these for a failed law; failures are
/// recorded in a [`crate::report::LawReport`] or [`crate::report::VerdictReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("invalid semiring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("ground-set mismatch: {0}")]
    GroundSetMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map value outside the target ground set: {0}")]
    MapOutOfRange(String),
    #[error("morphisms are not composable: {0}")]
    NonComposable(String),
    #[error("not a morphism of the category: {0}")]
    NotInCategory(String),
    #[error("factorization enumeration is unsupported on rule-form categories")]
    UnsupportedEnumeration,
    #[error("invalid monoid table: {0}")]
    InvalidMonoid(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("category or descriptor mismatch between convolution elements")]
    ContextMismatch,
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("field is not defined on the bordism: {0}")]
    FieldNotOnBordism(String),
    #[error("the state vector is zero")]
    ZeroVector,
    #[error("invalid homeomorphism: {0}")]
    InvalidHomeomorphism(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid bordism: {0}")]
    InvalidBordism(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
