//! Exact calculus for wavelet sets and piecewise-constant wavelet spectra
//! whose supports are finite unions of intervals with endpoints in `ℚπ`.
//!
//! - [`sets`]: rational multiples of π, `ℚ(√2)` scalars, interval sets.
//! - [`congruence`]: τ-reduction, 2π-translation congruence, wavelet-set test,
//!   representative sets.
//! - [`classify`]: partial self-similarity and the `M_n` / `M_∞` classes.
//! - [`interpolate`]: σ maps, dilation-periodic coefficients, the unitarity
//!   check and interpolated spectra.
//! - [`numeric`]: closed-form floating-point oracle (Gram matrices,
//!   translation-invariance residuals).
//! - [`fixture`] and [`pipeline`]: example cases and the end-to-end run used by
//!   the `wavset` binary.

pub mod classify;
pub mod congruence;
pub mod dyadic;
pub mod error;
pub mod fixture;
pub mod interpolate;
pub mod numeric;
pub mod pipeline;
pub mod report;
pub mod sets;

pub use error::{Error, Result};
