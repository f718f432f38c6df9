//! Exact scalars and interval sets.
//!
//! Every endpoint is a [`RatPi`]: the rational `q` standing for `qπ`. Sets are
//! finite unions of half-open intervals kept in normal form, so equality of
//! values is equality modulo null sets. Coefficients live in ℚ(√2) as
//! [`QuadReal`].

mod interval;
mod quad;
mod ratpi;

pub use interval::{Interval, IntervalSet};
pub use quad::QuadReal;
pub use ratpi::RatPi;

pub(crate) use ratpi::{big_to_i64, pow2};

/// A text parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}
