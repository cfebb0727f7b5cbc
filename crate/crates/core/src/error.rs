use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no such semistable bundle: rank {rank} does not divide degree {degree} over genus 0")]
    NoSuchSemistable { rank: u32, degree: i64 },

    #[error("operation needs line-bundle summands; a semistable bundle is opaque")]
    SemiStableOpaque,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("classes live on different projective bundles")]
    ContextMismatch,

    #[error("sub-convention class given where the quotient convention is required; convert first")]
    WrongConvention,

    #[error("class is not in the forward cone")]
    NotInForwardCone,

    #[error("ratio is undefined for a class with vanishing fiber degree")]
    DegenerateClass,

    #[error("no Kähler class with ratio {requested}: the infimum {bound} is not attained")]
    NoSuchClass { requested: Box<Rational>, bound: Box<Rational> },

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
}
