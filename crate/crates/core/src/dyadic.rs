//! Reduction of sets into the fundamental dilation domain
//! `D = [−2π, −π) ∪ [π, 2π)`.
//!
//! Every `x ≠ 0` has exactly one dyadic dilate `2^{-m} x` in `D`. A set away
//! from the origin is therefore a finite union `∪ 2^m · P_m` with `P_m ⊆ D`;
//! that decomposition is its chart.

use crate::error::{Error, Result};
use crate::sets::{pow2, Interval, IntervalSet, RatPi};

/// `2^scale · part` is one dyadic layer of the charted set; `part ⊆ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPiece {
    pub scale: i32,
    pub part: IntervalSet,
}

impl ChartPiece {
    /// The layer in the original coordinates.
    pub fn original(&self) -> IntervalSet {
        self.part.dilate(self.scale)
    }
}

/// Chart of `set`, sorted by scale, one entry per occupied scale.
pub fn chart(set: &IntervalSet) -> Result<Vec<ChartPiece>> {
    let mut layers: Vec<(i32, Vec<Interval>)> = Vec::new();
    let mut push = |scale: i32, frag: IntervalSet| {
        if frag.is_empty() {
            return;
        }
        let reduced = frag.dilate(-scale);
        match layers.iter_mut().find(|(s, _)| *s == scale) {
            Some((_, v)) => v.extend(reduced.parts().iter().cloned()),
            None => layers.push((scale, reduced.parts().to_vec())),
        }
    };
    for iv in set.parts() {
        let (lo, hi) = (iv.lo(), iv.hi());
        if !lo.is_positive() && !hi.is_negative() {
            return Err(Error::ContainsOrigin { interval: Box::new(iv.clone()) });
        }
        let single = IntervalSet::from(iv.clone());
        let (small, large) = if lo.is_positive() { (lo, hi) } else { (hi, lo) };
        let e0 = small.floor_log2_abs();
        let e1 = large.floor_log2_abs();
        for m in e0..=e1 {
            let a = RatPi::from_ratio(pow2(m));
            let b = RatPi::from_ratio(pow2(m + 1));
            let band = if lo.is_positive() { IntervalSet::interval(a, b) } else { IntervalSet::interval(-b, -a) };
            let scale = i32::try_from(m).expect("dyadic scale exceeds i32");
            push(scale, single.intersect(&band));
        }
    }
    let mut out: Vec<ChartPiece> =
        layers.into_iter().map(|(scale, v)| ChartPiece { scale, part: IntervalSet::from_intervals(v) }).collect();
    out.sort_by_key(|c| c.scale);
    Ok(out)
}

/// Union of all chart parts: the subset of `D` covered by `∪_j 2^j · set`.
pub fn cover(chart: &[ChartPiece]) -> IntervalSet {
    chart.iter().fold(IntervalSet::empty(), |acc, c| acc.union(&c.part))
}

/// Points of `D` reached from two or more layers.
pub fn overfull(chart: &[ChartPiece]) -> IntervalSet {
    let mut seen = IntervalSet::empty();
    let mut twice = IntervalSet::empty();
    for c in chart {
        twice = twice.union(&seen.intersect(&c.part));
        seen = seen.union(&c.part);
    }
    twice
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    #[test]
    fn shannon_is_its_own_chart() {
        let c = chart(&IntervalSet::shannon()).unwrap();
        assert_eq!(c, vec![ChartPiece { scale: 0, part: IntervalSet::shannon() }]);
    }

    #[test]
    fn em1_w1_layers() {
        let c = chart(&set("[-8/7,-4/7) [4/7,6/7) [24/7,32/7)")).unwrap();
        let scales: Vec<i32> = c.iter().map(|p| p.scale).collect();
        assert_eq!(scales, vec![-1, 0, 1, 2]);
        assert_eq!(c[0].part, set("[-2,-8/7) [8/7,12/7)"));
        assert_eq!(c[1].part, set("[-8/7,-1)"));
        assert_eq!(c[2].part, set("[12/7,2)"));
        assert_eq!(c[3].part, set("[1,8/7)"));
        assert_eq!(cover(&c), IntervalSet::dilation_domain());
        assert!(overfull(&c).is_empty());
    }

    #[test]
    fn exact_power_endpoints() {
        let c = chart(&set("[1,4)")).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|p| p.part == set("[1,2)")));
        assert_eq!(overfull(&c), set("[1,2)"));
    }

    #[test]
    fn origin_rejected() {
        assert!(matches!(chart(&set("[-1,1)")), Err(Error::ContainsOrigin { .. })));
        assert!(matches!(chart(&set("[0,2)")), Err(Error::ContainsOrigin { .. })));
        assert!(matches!(chart(&set("[-1,0)")), Err(Error::ContainsOrigin { .. })));
    }

    #[test]
    fn originals_reassemble() {
        let s = set("[-31,-1/3) [5/31,17/3)");
        let back = chart(&s).unwrap().iter().fold(IntervalSet::empty(), |acc, c| acc.union(&c.original()));
        assert_eq!(back, s);
    }
}
