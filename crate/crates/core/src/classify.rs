//! Translation-invariance classes from the support of a wavelet spectrum.
//!
//! A wavelet lies in `L_n` exactly when its spectral support `E` is not
//! partially self-similar with respect to any odd multiple of `2^j π`,
//! `1 ≤ j ≤ n`. The class `M_n = L_n − L_{n+1}` is then read off from the
//! smallest `j` at which such a self-similarity appears; if none appears the
//! wavelet is in `M_∞`, the MSF case.
//!
//! Only finitely many shifts matter: a translate of `E` by `α ≥ diam(E)`
//! misses `E`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::sets::{pow2, IntervalSet, ParseError, RatPi};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WaveletClass {
    M(u32),
    MInfinity,
}

impl WaveletClass {
    /// Level to probe up to: `n` for `M(n)`; `cap` for `MInfinity`.
    pub fn index_or(&self, cap: u32) -> u32 {
        match self {
            WaveletClass::M(n) => *n,
            WaveletClass::MInfinity => cap,
        }
    }
}

impl fmt::Display for WaveletClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaveletClass::M(n) => write!(f, "M{n}"),
            WaveletClass::MInfinity => write!(f, "Minf"),
        }
    }
}

impl FromStr for WaveletClass {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        if t == "Minf" {
            return Ok(WaveletClass::MInfinity);
        }
        t.strip_prefix('M')
            .and_then(|n| n.parse().ok())
            .map(WaveletClass::M)
            .ok_or_else(|| ParseError::new(0, format!("expected M<n> or Minf, found `{t}`")))
    }
}

/// `λ(E ∩ (E − α))` in π units.
pub fn overlap_measure(e: &IntervalSet, alpha: &RatPi) -> BigRational {
    e.intersect(&e.translate(&-alpha)).measure()
}

/// Whether `E` is partially self-similar with respect to some odd multiple of
/// `2^j π`; returns the smallest such odd multiplier.
pub fn self_similar_at_level(e: &IntervalSet, j: u32) -> Option<u64> {
    let step = pow2(i64::from(j));
    let span = e.diameter();
    let mut m: u64 = 1;
    loop {
        let alpha = &step * BigRational::from_integer(BigInt::from(m));
        if alpha >= span {
            return None;
        }
        if !overlap_measure(e, &RatPi::from_ratio(alpha)).is_zero() {
            return Some(m);
        }
        m += 2;
    }
}

/// Levels `j ≥ 1` with `2^j < diam(E)`; higher levels cannot meet `E`.
fn relevant_levels(e: &IntervalSet) -> impl Iterator<Item = u32> {
    let span = e.diameter();
    (1u32..).take_while(move |&j| pow2(i64::from(j)) < span)
}

pub fn in_l(e: &IntervalSet, n: u32) -> bool {
    relevant_levels(e).take_while(|&j| j <= n).all(|j| self_similar_at_level(e, j).is_none())
}

pub fn classify(e: &IntervalSet) -> WaveletClass {
    relevant_levels(e)
        .find(|&j| self_similar_at_level(e, j).is_some())
        .map_or(WaveletClass::MInfinity, |j| WaveletClass::M(j - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    const EM1_SUPPORT: &str = "[-8/7,-4/7) [2/7,3/7) [4/7,6/7) [24/7,32/7) [60/7,62/7)";

    #[test]
    fn overlap_examples() {
        let e = set(EM1_SUPPORT);
        assert_eq!(overlap_measure(&e, &RatPi::int(4)), BigRational::new(1.into(), 7.into()));
        assert_eq!(overlap_measure(&e, &RatPi::zero()), e.measure());
        assert!(overlap_measure(&IntervalSet::shannon(), &RatPi::int(2)).is_zero());
        assert_eq!(overlap_measure(&e, &RatPi::int(-4)), overlap_measure(&e, &RatPi::int(4)));
    }

    #[test]
    fn em1_membership() {
        let e = set(EM1_SUPPORT);
        assert!(in_l(&e, 1));
        assert!(!in_l(&e, 2));
        assert_eq!(classify(&e), WaveletClass::M(1));
        assert_eq!(self_similar_at_level(&e, 2), Some(1));
    }

    #[test]
    fn shannon_is_minf() {
        for n in 0..8 {
            assert!(in_l(&IntervalSet::shannon(), n));
        }
        assert_eq!(classify(&IntervalSet::shannon()), WaveletClass::MInfinity);
    }

    #[test]
    fn empty_set_is_minf() {
        assert_eq!(classify(&IntervalSet::empty()), WaveletClass::MInfinity);
    }

    #[test]
    fn class_text() {
        for c in [WaveletClass::M(0), WaveletClass::M(3), WaveletClass::MInfinity] {
            assert_eq!(c.to_string().parse::<WaveletClass>().unwrap(), c);
        }
        assert!("M".parse::<WaveletClass>().is_err());
        assert!("inf".parse::<WaveletClass>().is_err());
    }
}
