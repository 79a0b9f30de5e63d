use thiserror::Error;

use crate::Mask;

/// Errors raised by algebra construction, parsing and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("mask {mask:#x} does not fit an algebra with {generators} generators")]
    MaskOutOfRange { mask: Mask, generators: usize },

    #[error("the unit has no pure square sign")]
    UnitBlade,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Domain(String),

    #[error("invalid triad: {0}")]
    InvalidTriad(String),

    /// The three blades multiply to a scalar, so they span a quaternion ring
    /// rather than a seven-blade subalgebra.
    #[error("degenerate triad {0:?}: product of the three blades is a scalar")]
    Degenerate([Mask; 3]),

    #[error("blade set is not closed under multiplication")]
    NotClosed,

    /// A structural theorem was contradicted by the computation. Seeing this
    /// means there is a bug in the sign convention or in the enumeration.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
