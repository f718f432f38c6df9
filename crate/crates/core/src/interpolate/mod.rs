//! Operator interpolation between two wavelet sets.
//!
//! Given wavelet sets `W1`, `W2`, the congruence of both to `[0, 2π)` yields a
//! bijection `σ: W1 → W2` by translations in `2πℤ`, extended 2-homogeneously
//! to the line. For 2-dilation periodic `h1`, `h2` with
//! `[[h1, h2], [h2∘σ⁻¹, h1∘σ⁻¹]]` unitary a.e., the spectrum
//! `h1·ψ̂_{W1} + h2·ψ̂_{W2}` is again a wavelet spectrum.

mod dpf;
mod sigma;
mod spectrum;
mod unitary;

pub use dpf::DilationPeriodicFn;
pub use sigma::{build_sigma, check_involutive, sigma_extend_apply, Extension, ExtensionPiece, InvolutionReport};
pub use spectrum::{build_spectrum, is_msf, periodization, Periodization, PiecewiseSpectrum, SpectrumPiece};
pub use unitary::{check_matrix_unitary, MatrixFragment, UnitaryReport};

use crate::sets::{IntervalSet, QuadReal};

/// Disjoint `(set, value)` pairs.
pub type Piecewise = Vec<(IntervalSet, QuadReal)>;

/// Merges pieces with equal values and sorts by left endpoint.
pub(crate) fn group_by_value(items: Piecewise) -> Piecewise {
    let mut out: Piecewise = Vec::new();
    for (s, v) in items {
        if s.is_empty() {
            continue;
        }
        match out.iter_mut().find(|(_, w)| *w == v) {
            Some((t, _)) => *t = t.union(&s),
            None => out.push((s, v)),
        }
    }
    out.sort_by(|a, b| a.0.inf().cmp(&b.0.inf()));
    out
}

/// Pointwise sum of two piecewise functions (each zero off its pieces).
pub(crate) fn overlay_sum(a: &[(IntervalSet, QuadReal)], b: &[(IntervalSet, QuadReal)]) -> Piecewise {
    let mut out = Vec::new();
    let b_support = b.iter().fold(IntervalSet::empty(), |acc, (s, _)| acc.union(s));
    let a_support = a.iter().fold(IntervalSet::empty(), |acc, (s, _)| acc.union(s));
    for (sa, va) in a {
        for (sb, vb) in b {
            out.push((sa.intersect(sb), va + vb));
        }
        out.push((sa.subtract(&b_support), va.clone()));
    }
    for (sb, vb) in b {
        out.push((sb.subtract(&a_support), vb.clone()));
    }
    group_by_value(out)
}
