//! Strategies and property bodies shared by the property suite and the
//! acceptance runner.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use wavset::classify::{classify, in_l, WaveletClass};
use wavset::congruence::{congruence_map, construct_representative};
use wavset::sets::{Interval, IntervalSet, RatPi};

const DENOMS: &[i64] = &[1, 2, 3, 4, 5, 7, 8, 15];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn interval(lo: RatPi, hi: RatPi) -> Interval {
    Interval::new(lo, hi).expect("lo < hi")
}

/// Up to six intervals with endpoints `a/d`, `|a/d| ≤ 12`.
pub fn arb_set() -> impl Strategy<Value = IntervalSet> {
    let one = (prop::sample::select(DENOMS), -12i64..12, 1i64..48).prop_map(|(d, a, len)| {
        let lo = a * d;
        let hi = (lo + len).min(12 * d);
        if hi <= lo {
            None
        } else {
            Some(interval(RatPi::new(lo, d), RatPi::new(hi, d)))
        }
    });
    prop::collection::vec(one, 0..6).prop_map(|v| IntervalSet::from_intervals(v.into_iter().flatten()))
}

/// Sets whose closure avoids 0.
pub fn arb_set_off_origin() -> impl Strategy<Value = IntervalSet> {
    let one = (prop::sample::select(DENOMS), 1i64..40, 1i64..40, any::<bool>()).prop_map(|(d, a, len, neg)| {
        let iv = IntervalSet::interval(RatPi::new(a, d), RatPi::new(a + len, d));
        if neg {
            iv.reflect()
        } else {
            iv
        }
    });
    prop::collection::vec(one, 1..6).prop_map(|v| v.iter().fold(IntervalSet::empty(), |acc, s| acc.union(s)))
}

/// Subsets of `∪_m [2mπ, (2m+1)π)`: never self-similar at an odd multiple of π.
pub fn arb_even_cell_set() -> impl Strategy<Value = IntervalSet> {
    let one = (prop::sample::select(DENOMS), -6i64..6, 0i64..15, 1i64..16).prop_map(|(d, m, a, len)| {
        let a = a % d;
        let b = (a + len).min(d);
        let base = RatPi::int(2 * m);
        IntervalSet::interval(&base + &RatPi::new(a, d), &base + &RatPi::new(b, d))
    });
    prop::collection::vec(one, 1..6).prop_map(|v| v.iter().fold(IntervalSet::empty(), |acc, s| acc.union(s)))
}

/// A random set 2π-translation congruent to `[0, 2π)`: cut `[0,2)` into
/// cells and move each by its own multiple of 2.
pub fn arb_congruent() -> impl Strategy<Value = (IntervalSet, Vec<(IntervalSet, i64)>)> {
    (prop::sample::select(DENOMS), prop::collection::vec((1i64..30, -5i64..5), 1..8)).prop_map(|(d, cuts)| {
        let d2 = 2 * d;
        let mut points: Vec<i64> = cuts.iter().map(|(c, _)| c % d2).filter(|&c| c > 0).collect();
        points.push(0);
        points.push(d2);
        points.sort_unstable();
        points.dedup();
        let mut cells = Vec::new();
        for (i, w) in points.windows(2).enumerate() {
            let k = cuts[i % cuts.len()].1;
            cells.push((IntervalSet::interval(RatPi::new(w[0], d), RatPi::new(w[1], d)), k));
        }
        let w = cells.iter().fold(IntervalSet::empty(), |acc, (c, k)| acc.union(&c.translate(&RatPi::int(2 * k))));
        (w, cells)
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn set_algebra(a: &IntervalSet, b: &IntervalSet, t: &RatPi, p: i32) -> Result<(), TestCaseError> {
    let (ma, mb) = (a.measure(), b.measure());
    ensure(a.union(b).measure() + a.intersect(b).measure() == &ma + &mb, || format!("additivity {a} / {b}"))?;
    let diff = a.subtract(b);
    ensure(diff.is_disjoint(&a.intersect(b)) && diff.union(&a.intersect(b)) == *a, || format!("split {a} / {b}"))?;
    ensure(a.translate(t).measure() == ma, || format!("translate measure {a} by {t}"))?;
    ensure(a.union(b).translate(t) == a.translate(t).union(&b.translate(t)), || format!("translate union {a}"))?;
    ensure(a.translate(t).translate(&-t) == *a, || format!("translate inverse {a}"))?;
    let scaled = RatPi::from_ratio(ma.clone()).scale_pow2(p);
    ensure(a.dilate(p).measure() == *scaled.ratio(), || format!("dilate measure {a} by 2^{p}"))?;
    ensure(a.intersect(b).dilate(p) == a.dilate(p).intersect(&b.dilate(p)), || format!("dilate meet {a}"))?;
    ensure(a.dilate(p).dilate(-p) == *a, || format!("dilate inverse {a}"))?;
    let round: IntervalSet = a.to_string().parse().map_err(|e| TestCaseError::fail(format!("{e}")))?;
    ensure(round == *a, || format!("round trip {a}"))
}

pub fn congruence_round_trip(w: &IntervalSet, cells: &[(IntervalSet, i64)]) -> Result<(), TestCaseError> {
    let map = congruence_map(w).map_err(|e| TestCaseError::fail(format!("{w}: {e}")))?;
    ensure(map.source() == *w, || format!("source of {w}"))?;
    ensure(map.image() == IntervalSet::base(), || format!("image of {w}"))?;
    // Reassemble [0,2) piece by piece: images are pairwise disjoint.
    let mut acc = IntervalSet::empty();
    let mut total = BigRational::zero();
    for piece in map.pieces() {
        let img = piece.image();
        ensure(acc.is_disjoint(&img), || format!("overlapping images in {w}"))?;
        total += img.measure();
        acc = acc.union(&img);
    }
    ensure(acc == IntervalSet::base() && total == rat(2, 1), || format!("reassembly of {w}"))?;
    // Each generating cell comes back to where it was cut.
    for (cell, k) in cells {
        let moved = cell.translate(&RatPi::int(2 * k));
        let back: IntervalSet = map.restrict(&moved).iter().fold(IntervalSet::empty(), |acc, p| acc.union(&p.image()));
        ensure(back == *cell, || format!("cell {cell} shifted by {k} returns as {back}"))?;
    }
    let inv = map.inverse();
    ensure(inv.source() == IntervalSet::base() && inv.image() == *w, || format!("inverse of {w}"))
}

pub fn representative_tiles(w: &IntervalSet, extra: &IntervalSet) -> Result<(), TestCaseError> {
    let e = w.union(extra);
    let (f, map) = construct_representative(&e).map_err(|err| TestCaseError::fail(format!("{e}: {err}")))?;
    ensure(f.is_subset(&e), || format!("F ⊄ E for {e}"))?;
    ensure(f.measure() == rat(2, 1), || format!("measure of F for {e}"))?;
    let again = congruence_map(&f).map_err(|err| TestCaseError::fail(format!("{f}: {err}")))?;
    ensure(again.image() == IntervalSet::base() && map.image() == IntervalSet::base(), || format!("F tiling {f}"))
}

pub fn nesting(e: &IntervalSet) -> Result<(), TestCaseError> {
    for n in 0..7 {
        if in_l(e, n + 1) {
            ensure(in_l(e, n), || format!("{e} in L{} but not L{n}", n + 1))?;
        }
    }
    Ok(())
}

/// Brute force: does `E` meet `E + m·2^j` in positive measure for some odd `m`?
pub fn self_similar_odd(e: &IntervalSet, j: i32) -> bool {
    let step = RatPi::int(1).scale_pow2(j);
    let diam = match (e.inf(), e.sup()) {
        (Some(a), Some(b)) => b - a,
        _ => return false,
    };
    let mut m = 1i64;
    loop {
        let shift = &step * &rat(m, 1);
        if shift >= diam {
            return false;
        }
        if !e.intersect(&e.translate(&shift)).measure().is_zero() {
            return true;
        }
        m += 2;
    }
}

/// The class by direct search over levels `j = 1, 2, ...` until `2^j`
/// exceeds the diameter.
pub fn brute_class(e: &IntervalSet) -> WaveletClass {
    let diam = match (e.inf(), e.sup()) {
        (Some(a), Some(b)) => b - a,
        _ => return WaveletClass::MInfinity,
    };
    let mut j = 1;
    while RatPi::int(1).scale_pow2(j) < diam {
        if self_similar_odd(e, j) {
            return WaveletClass::M(j as u32 - 1);
        }
        j += 1;
    }
    WaveletClass::MInfinity
}

/// `classify(2E)` is `M(n+1)` (`Minf` stays `Minf`) unless `E` meets itself
/// at an odd multiple of π, in which case it is `M0`.
pub fn dilation_covariance(e: &IntervalSet) -> Result<(), TestCaseError> {
    let before = classify(e);
    let after = classify(&e.dilate(1));
    let expected = if self_similar_odd(e, 0) {
        WaveletClass::M(0)
    } else {
        match before {
            WaveletClass::M(n) => WaveletClass::M(n + 1),
            WaveletClass::MInfinity => WaveletClass::MInfinity,
        }
    };
    ensure(after == expected, || format!("classify(2E) = {after}, expected {expected} for E = {e} ({before})"))
}

/// Same as [`dilation_covariance`] but additionally requires the hypothesis
/// branch (`M(n) ↦ M(n+1)`).
pub fn dilation_shift_up(e: &IntervalSet) -> Result<(), TestCaseError> {
    ensure(!self_similar_odd(e, 0), || format!("generator broke hypothesis: {e}"))?;
    dilation_covariance(e)
}
