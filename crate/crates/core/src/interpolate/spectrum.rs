use std::fmt;

use crate::congruence::{is_wavelet_set, period_pieces};
use crate::error::{Error, Result};
use crate::sets::{IntervalSet, QuadReal, RatPi};

use super::{overlay_sum, DilationPeriodicFn, Piecewise};

/// `ψ̂(ξ) = coeff / √(2π)` on `support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPiece {
    pub support: IntervalSet,
    pub coeff: QuadReal,
}

/// A piecewise-constant spectrum with disjoint supports and nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseSpectrum {
    pieces: Vec<SpectrumPiece>,
}

impl PiecewiseSpectrum {
    /// Zero coefficients are dropped; equal coefficients are merged.
    /// Overlapping supports are rejected.
    pub fn new(pieces: Vec<(IntervalSet, QuadReal)>) -> Result<Self> {
        let mut seen = IntervalSet::empty();
        for (s, _) in &pieces {
            let clash = seen.intersect(s);
            if !clash.is_empty() {
                return Err(Error::Ambiguous { location: clash });
            }
            seen = seen.union(s);
        }
        let merged = super::group_by_value(pieces.into_iter().filter(|(s, v)| !v.is_zero() && !s.is_empty()).collect());
        Ok(PiecewiseSpectrum {
            pieces: merged.into_iter().map(|(support, coeff)| SpectrumPiece { support, coeff }).collect(),
        })
    }

    /// MSF spectrum `χ_W / √(2π)`.
    pub fn msf(w: &IntervalSet) -> Self {
        PiecewiseSpectrum::new(vec![(w.clone(), QuadReal::one())]).expect("single piece")
    }

    pub fn pieces(&self) -> &[SpectrumPiece] {
        &self.pieces
    }

    pub fn support(&self) -> IntervalSet {
        self.pieces.iter().fold(IntervalSet::empty(), |acc, p| acc.union(&p.support))
    }

    /// Coefficient at a point, zero off the support.
    pub fn coeff_at(&self, x: &RatPi) -> QuadReal {
        self.pieces.iter().find(|p| p.support.contains(x)).map_or_else(QuadReal::zero, |p| p.coeff.clone())
    }

    /// Spectrum restricted to `s`.
    pub fn restrict(&self, s: &IntervalSet) -> Vec<(IntervalSet, QuadReal)> {
        self.pieces.iter().map(|p| (p.support.intersect(s), p.coeff.clone())).filter(|(s, _)| !s.is_empty()).collect()
    }
}

impl fmt::Display for PiecewiseSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} | {}", p.support, p.coeff)?;
        }
        Ok(())
    }
}

/// `ψ̂ = h1·ψ̂_{W1} + h2·ψ̂_{W2}`.
pub fn build_spectrum(
    h1: &DilationPeriodicFn,
    h2: &DilationPeriodicFn,
    w1: &IntervalSet,
    w2: &IntervalSet,
) -> Result<PiecewiseSpectrum> {
    let a = h1.eval(w1)?;
    let b = h2.eval(w2)?;
    PiecewiseSpectrum::new(overlay_sum(&a, &b))
}

/// Unimodular coefficients on a wavelet set.
pub fn is_msf(spec: &PiecewiseSpectrum) -> bool {
    spec.pieces().iter().all(|p| p.coeff.square().is_one()) && is_wavelet_set(&spec.support()).verdict
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodization {
    /// `Σ_k coeff(ξ + 2kπ)²` on a partition of `[0, 2π)`.
    pub sums: Piecewise,
    /// The sum is identically 1.
    pub flag: bool,
}

/// Exact periodization of `|ψ̂|²` (normalized so that orthonormal integer
/// translates give the constant 1).
pub fn periodization(spec: &PiecewiseSpectrum) -> Periodization {
    let mut acc: Piecewise = Vec::new();
    for p in spec.pieces() {
        let sq = p.coeff.square();
        let residues: Piecewise = period_pieces(&p.support).iter().map(|piece| (piece.image(), sq.clone())).collect();
        for r in residues {
            acc = overlay_sum(&acc, &[r]);
        }
    }
    let covered = acc.iter().fold(IntervalSet::empty(), |a, (s, _)| a.union(s));
    let rest = IntervalSet::base().subtract(&covered);
    if !rest.is_empty() {
        acc.push((rest, QuadReal::zero()));
    }
    let sums = super::group_by_value(acc);
    let flag = sums.iter().all(|(_, v)| v.is_one());
    Periodization { sums, flag }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    #[test]
    fn shannon_is_msf_with_either_sign() {
        assert!(is_msf(&PiecewiseSpectrum::msf(&IntervalSet::shannon())));
        let neg = PiecewiseSpectrum::new(vec![(IntervalSet::shannon(), QuadReal::int(-1))]).unwrap();
        assert!(is_msf(&neg));
    }

    #[test]
    fn periodization_cases() {
        let p = periodization(&PiecewiseSpectrum::msf(&IntervalSet::shannon()));
        assert!(p.flag);
        assert_eq!(p.sums, vec![(IntervalSet::base(), QuadReal::one())]);

        let half = periodization(&PiecewiseSpectrum::msf(&set("[0,1)")));
        assert!(!half.flag);
        assert_eq!(half.sums, vec![(set("[0,1)"), QuadReal::one()), (set("[1,2)"), QuadReal::zero())]);
    }

    #[test]
    fn sqrt_half_pair_periodizes_to_one() {
        let r = QuadReal::inv_sqrt2();
        let spec = PiecewiseSpectrum::new(vec![
            (set("[1/2,1)"), r.clone()),
            (set("[5/2,3)"), -r),
            (set("[0,1/2) [1,2)"), QuadReal::one()),
        ])
        .unwrap();
        assert!(periodization(&spec).flag);
        assert!(!is_msf(&spec));
    }

    #[test]
    fn overlapping_pieces_rejected() {
        assert!(
            PiecewiseSpectrum::new(vec![(set("[0,2)"), QuadReal::one()), (set("[1,3)"), QuadReal::one()),]).is_err()
        );
    }

    #[test]
    fn identity_interpolation_is_w1_msf() {
        let w1: IntervalSet = "[-8/7,-4/7) [4/7,6/7) [24/7,32/7)".parse().unwrap();
        let w2: IntervalSet = "[-8/7,-4/7) [2/7,3/7) [24/7,30/7) [31/7,32/7) [60/7,62/7)".parse().unwrap();
        let spec = build_spectrum(
            &DilationPeriodicFn::constant(QuadReal::one()),
            &DilationPeriodicFn::constant(QuadReal::zero()),
            &w1,
            &w2,
        )
        .unwrap();
        assert_eq!(spec, PiecewiseSpectrum::msf(&w1));
    }
}
