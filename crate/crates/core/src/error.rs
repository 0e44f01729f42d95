use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("constant term is not a unit in {0}")]
    NonUnit(Ring),

    #[error("index {index} out of range for series of order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("invalid ring width {0}; expected 1..=64")]
    InvalidRing(u32),

    #[error("modulus {modulus} is not compatible with ring {ring}")]
    UnsupportedModulus { modulus: String, ring: Ring },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Failures of the congruence checks that are not verdicts.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("order too small: need coefficient {needed}, series has order {order}")]
    OrderTooSmall { needed: u64, order: usize },

    #[error(transparent)]
    Series(#[from] SeriesError),
}
