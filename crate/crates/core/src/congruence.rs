//! τ-reduction, 2π-translation congruence and the wavelet-set test.
//!
//! A wavelet set `W` is characterized by two exact conditions: `W` is
//! 2π-translation congruent to `[0, 2π)`, and the dyadic dilates of `W` cover
//! the line. The first is checked by splitting `W` at multiples of 2π and
//! tiling the residues; the second by reducing `W` into the fundamental
//! dilation domain `D` (see [`crate::dyadic`]). Disjointness of the dilates
//! is not enforced separately: for a congruent set it follows from measure
//! counting (`λ(W) = 2π = λ(D)`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dyadic;
use crate::error::{Error, Result};
use crate::sets::{big_to_i64, IntervalSet, RatPi};

/// Returns `(τ(x), k)` with `τ(x) = x + 2kπ ∈ [0, 2π)`.
pub fn tau_reduce(x: &RatPi) -> (RatPi, i64) {
    let m = (x.ratio() / BigRational::from_integer(BigInt::from(2))).floor().to_integer();
    let k = -big_to_i64(&m);
    (x + &RatPi::int(2 * k), k)
}

/// One piece of a [`ShiftMap`]: `x ↦ x + 2kπ` on `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPiece {
    pub domain: IntervalSet,
    pub k: i64,
}

impl ShiftPiece {
    pub fn image(&self) -> IntervalSet {
        self.domain.translate(&RatPi::int(2 * self.k))
    }
}

/// A piecewise translation by integer multiples of 2π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMap {
    pieces: Vec<ShiftPiece>,
    bijective: bool,
}

impl ShiftMap {
    /// Builds a map from pieces with disjoint domains. Empty pieces are
    /// dropped; pieces sharing a shift are merged.
    pub fn new(pieces: Vec<ShiftPiece>, bijective: bool) -> Self {
        let mut merged: Vec<ShiftPiece> = Vec::new();
        for p in pieces.into_iter().filter(|p| !p.domain.is_empty()) {
            match merged.iter_mut().find(|m| m.k == p.k) {
                Some(m) => m.domain = m.domain.union(&p.domain),
                None => merged.push(p),
            }
        }
        merged.sort_by(|a, b| a.domain.inf().cmp(&b.domain.inf()));
        debug_assert!(pairwise_disjoint(merged.iter().map(|p| &p.domain)));
        ShiftMap { pieces: merged, bijective }
    }

    pub fn identity(domain: IntervalSet) -> Self {
        ShiftMap::new(vec![ShiftPiece { domain, k: 0 }], true)
    }

    pub fn pieces(&self) -> &[ShiftPiece] {
        &self.pieces
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn source(&self) -> IntervalSet {
        self.pieces.iter().fold(IntervalSet::empty(), |acc, p| acc.union(&p.domain))
    }

    pub fn image(&self) -> IntervalSet {
        self.pieces.iter().fold(IntervalSet::empty(), |acc, p| acc.union(&p.image()))
    }

    /// The inverse map on the image. Only meaningful for bijective maps.
    pub fn inverse(&self) -> ShiftMap {
        ShiftMap::new(self.pieces.iter().map(|p| ShiftPiece { domain: p.image(), k: -p.k }).collect(), self.bijective)
    }

    /// `other ∘ self`, defined where the image of `self` meets `other`'s domain.
    pub fn then(&self, other: &ShiftMap) -> ShiftMap {
        let mut out = Vec::new();
        for a in &self.pieces {
            let img = a.image();
            for b in &other.pieces {
                let hit = img.intersect(&b.domain);
                if !hit.is_empty() {
                    out.push(ShiftPiece { domain: hit.translate(&RatPi::int(-2 * a.k)), k: a.k + b.k });
                }
            }
        }
        ShiftMap::new(out, self.bijective && other.bijective)
    }

    /// The shift on `set`, split by piece; parts of `set` outside the source
    /// are omitted.
    pub fn restrict(&self, set: &IntervalSet) -> Vec<ShiftPiece> {
        self.pieces
            .iter()
            .map(|p| ShiftPiece { domain: p.domain.intersect(set), k: p.k })
            .filter(|p| !p.domain.is_empty())
            .collect()
    }
}

impl fmt::Display for ShiftMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} k={}", p.domain, p.k)?;
        }
        Ok(())
    }
}

fn pairwise_disjoint<'a>(sets: impl Iterator<Item = &'a IntervalSet>) -> bool {
    let mut acc = IntervalSet::empty();
    for s in sets {
        if !acc.is_disjoint(s) {
            return false;
        }
        acc = acc.union(s);
    }
    true
}

/// Splits `set` at multiples of 2π. Each returned piece carries the `k`
/// sending its domain into `[0, 2π)`.
pub fn period_pieces(set: &IntervalSet) -> Vec<ShiftPiece> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out: Vec<ShiftPiece> = Vec::new();
    for iv in set.parts() {
        let first = big_to_i64(&(iv.lo().ratio() / &two).floor().to_integer());
        let last = big_to_i64(&(iv.hi().ratio() / &two).ceil().to_integer()) - 1;
        for m in first..=last {
            let cell = IntervalSet::span(2 * m, 1, 2 * m + 2, 1);
            let frag = IntervalSet::from(iv.clone()).intersect(&cell);
            if frag.is_empty() {
                continue;
            }
            match out.iter_mut().find(|p| p.k == -m) {
                Some(p) => p.domain = p.domain.union(&frag),
                None => out.push(ShiftPiece { domain: frag, k: -m }),
            }
        }
    }
    out
}

/// Residues hit twice and residues missed when `pieces` are pushed into
/// `[0, 2π)`.
fn tiling_defects(pieces: &[ShiftPiece]) -> (IntervalSet, IntervalSet) {
    let mut covered = IntervalSet::empty();
    let mut overlaps = IntervalSet::empty();
    for p in pieces {
        let img = p.image();
        overlaps = overlaps.union(&covered.intersect(&img));
        covered = covered.union(&img);
    }
    (IntervalSet::base().subtract(&covered), overlaps)
}

/// The congruence `W → [0, 2π)`, if `W` tiles the base interval exactly.
pub fn congruence_map(w: &IntervalSet) -> Result<ShiftMap> {
    let pieces = period_pieces(w);
    let (gaps, overlaps) = tiling_defects(&pieces);
    if gaps.is_empty() && overlaps.is_empty() {
        Ok(ShiftMap::new(pieces, true))
    } else {
        Err(Error::NotCongruent { gaps, overlaps })
    }
}

/// The part of `D` covered by `∪_j 2^j W`. `∪_j 2^j W = ℝ` (mod null sets)
/// iff the result is `D` itself.
pub fn dilation_reduce(w: &IntervalSet) -> Result<IntervalSet> {
    Ok(dyadic::cover(&dyadic::chart(w)?))
}

/// Outcome of the exact wavelet-set test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletSetReport {
    pub congruent_to_base: bool,
    /// In π units.
    pub measure: BigRational,
    /// Residues in `[0, 2π)` not reached.
    pub gaps: IntervalSet,
    /// Residues in `[0, 2π)` reached more than once.
    pub overfull_residues: IntervalSet,
    pub dilation_cover: bool,
    /// `D` minus the dilation cover.
    pub uncovered: IntervalSet,
    pub contains_origin: bool,
    pub verdict: bool,
}

pub fn is_wavelet_set(w: &IntervalSet) -> WaveletSetReport {
    let (gaps, overfull_residues) = tiling_defects(&period_pieces(w));
    let congruent_to_base = gaps.is_empty() && overfull_residues.is_empty();
    let (cover, contains_origin) = match dilation_reduce(w) {
        Ok(c) => (c, false),
        Err(_) => (IntervalSet::empty(), true),
    };
    let uncovered = IntervalSet::dilation_domain().subtract(&cover);
    let dilation_cover = !contains_origin && uncovered.is_empty();
    WaveletSetReport {
        congruent_to_base,
        measure: w.measure(),
        gaps,
        overfull_residues,
        dilation_cover,
        uncovered,
        contains_origin,
        verdict: congruent_to_base && dilation_cover,
    }
}

/// A subset `F ⊆ E` on which τ is a bijection onto `[0, 2π)`, chosen per
/// residue by preferring shift 0, then the smallest positive period offset,
/// then the largest negative one. Returns `F` and its congruence map.
pub fn construct_representative(e: &IntervalSet) -> Result<(IntervalSet, ShiftMap)> {
    let pieces = period_pieces(e);
    let (missing, _) = tiling_defects(&pieces);
    if !missing.is_empty() {
        return Err(Error::NotSurjective { missing });
    }
    // Piece with map shift k lies in [2m, 2m+2) with m = -k.
    let mut order: Vec<&ShiftPiece> = pieces.iter().collect();
    order.sort_by_key(|p| {
        let m = -p.k;
        match m {
            0 => (0, 0),
            m if m > 0 => (1, m),
            m => (2, -m),
        }
    });
    let mut claimed = IntervalSet::empty();
    let mut chosen = Vec::new();
    for p in order {
        let residues = p.image().subtract(&claimed);
        if residues.is_empty() {
            continue;
        }
        claimed = claimed.union(&residues);
        chosen.push(ShiftPiece { domain: residues.translate(&RatPi::int(-2 * p.k)), k: p.k });
    }
    let map = ShiftMap::new(chosen, true);
    Ok((map.source(), map))
}

/// `λ(W) = 2` in π units.
pub fn has_base_measure(w: &IntervalSet) -> bool {
    w.measure() == BigRational::from_integer(BigInt::from(2))
}
