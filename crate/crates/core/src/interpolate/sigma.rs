use num_rational::BigRational;
use num_traits::Zero;

use crate::congruence::{congruence_map, ShiftMap};
use crate::dyadic::{self, ChartPiece};
use crate::error::{Error, Result};
use crate::sets::{pow2, IntervalSet, RatPi};

/// The bijection `W1 → W2` induced by both sets' congruence to `[0, 2π)`.
pub fn build_sigma(w1: &IntervalSet, w2: &IntervalSet) -> Result<ShiftMap> {
    let to_base = congruence_map(w1)?;
    let from_base = congruence_map(w2)?.inverse();
    Ok(to_base.then(&from_base))
}

/// A fragment on which the extended map is a single affine rule
/// `x ↦ 2^{-n}(2^n x + 2kπ) = x + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPiece {
    pub sub: IntervalSet,
    pub image: IntervalSet,
    /// `2^n · sub` lies in the base piece.
    pub n: i32,
    /// Shift of the base piece, in multiples of 2π.
    pub k: i64,
    /// `2k / 2^n` in π units.
    pub shift: RatPi,
}

/// A shift map over a wavelet set, extended to the line by
/// `σ(x) = 2^{-n} σ(2^n x)`.
///
/// The base set meets each dyadic orbit exactly once (a.e.), so the `n` for a
/// point is found by reducing both the point and the base pieces into `D`.
#[derive(Clone, Debug)]
pub struct Extension {
    layers: Vec<(ChartPiece, i64)>,
}

impl Extension {
    pub fn new(map: &ShiftMap) -> Result<Self> {
        let mut layers = Vec::new();
        for piece in map.pieces() {
            for layer in dyadic::chart(&piece.domain)? {
                layers.push((layer, piece.k));
            }
        }
        Ok(Extension { layers })
    }

    /// Splits `s` into maximal fragments sharing one affine rule.
    pub fn apply(&self, s: &IntervalSet) -> Result<Vec<ExtensionPiece>> {
        let mut out: Vec<ExtensionPiece> = Vec::new();
        let mut reached = IntervalSet::empty();
        for target in dyadic::chart(s)? {
            for (base, k) in &self.layers {
                let hit = target.part.intersect(&base.part);
                if hit.is_empty() {
                    continue;
                }
                let sub = hit.dilate(target.scale);
                reached = reached.union(&sub);
                let n = base.scale - target.scale;
                match out.iter_mut().find(|p| p.n == n && p.k == *k) {
                    Some(p) => p.sub = p.sub.union(&sub),
                    None => out.push(ExtensionPiece {
                        sub,
                        image: IntervalSet::empty(),
                        n,
                        k: *k,
                        shift: RatPi::from_ratio(BigRational::from_integer((2 * k).into()) * pow2(-i64::from(n))),
                    }),
                }
            }
        }
        let residual = s.subtract(&reached);
        if !residual.is_empty() {
            return Err(Error::Undefined { residual });
        }
        for p in &mut out {
            p.image = p.sub.translate(&p.shift);
        }
        out.sort_by(|a, b| a.sub.inf().cmp(&b.sub.inf()));
        Ok(out)
    }
}

/// Applies the 2-homogeneous extension of `sigma` to `s`.
pub fn sigma_extend_apply(sigma: &ShiftMap, s: &IntervalSet) -> Result<Vec<ExtensionPiece>> {
    Extension::new(sigma)?.apply(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub involutive: bool,
    /// Fragments of the base set where `σ²` is `x ↦ x + shift`, `shift ≠ 0`.
    pub failures: Vec<(IntervalSet, RatPi)>,
}

/// Checks `σ² = id` on the base set by composing each piece with the
/// extension applied to its image.
pub fn check_involutive(sigma: &ShiftMap) -> Result<InvolutionReport> {
    let ext = Extension::new(sigma)?;
    let mut failures = Vec::new();
    for piece in sigma.pieces() {
        let first = RatPi::int(2 * piece.k);
        for second in ext.apply(&piece.image())? {
            let total = &first + &second.shift;
            if !total.ratio().is_zero() {
                failures.push((second.sub.translate(&-&first), total));
            }
        }
    }
    Ok(InvolutionReport { involutive: failures.is_empty(), failures })
}
