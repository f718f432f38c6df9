use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::ratpi::RatPi;
use super::ParseError;

/// Half-open interval `[lo, hi)` with `lo < hi`, endpoints in π units.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: RatPi,
    hi: RatPi,
}

impl Interval {
    /// Returns `None` for empty (`lo >= hi`) input.
    pub fn new(lo: RatPi, hi: RatPi) -> Option<Self> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn lo(&self) -> &RatPi {
        &self.lo
    }

    pub fn hi(&self) -> &RatPi {
        &self.hi
    }

    pub fn length(&self) -> RatPi {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &RatPi) -> bool {
        &self.lo <= x && x < &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.lo, self.hi)
    }
}

/// A finite union of half-open intervals in normal form: sorted, pairwise
/// disjoint and non-adjacent. Two sets are equal modulo null sets exactly
/// when their normal forms are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn interval(lo: RatPi, hi: RatPi) -> Self {
        IntervalSet::from_intervals(Interval::new(lo, hi))
    }

    /// `[p/q, r/s)` from machine integers.
    pub fn span(p: i64, q: i64, r: i64, s: i64) -> Self {
        IntervalSet::interval(RatPi::new(p, q), RatPi::new(r, s))
    }

    /// The base interval `[0, 2π)`.
    pub fn base() -> Self {
        IntervalSet::span(0, 1, 2, 1)
    }

    /// Fundamental dilation domain `D = [−2π, −π) ∪ [π, 2π)`.
    pub fn dilation_domain() -> Self {
        IntervalSet::span(-2, 1, -1, 1).union(&IntervalSet::span(1, 1, 2, 1))
    }

    /// The Shannon wavelet set `[−2π, −π) ∪ [π, 2π)`.
    pub fn shannon() -> Self {
        IntervalSet::dilation_domain()
    }

    /// Normalizes an arbitrary collection of intervals.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(items: I) -> Self {
        let mut v: Vec<Interval> = items.into_iter().collect();
        v.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut parts: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match parts.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => parts.push(iv),
            }
        }
        IntervalSet { parts }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn inf(&self) -> Option<&RatPi> {
        self.parts.first().map(|p| &p.lo)
    }

    pub fn sup(&self) -> Option<&RatPi> {
        self.parts.last().map(|p| &p.hi)
    }

    pub fn contains(&self, x: &RatPi) -> bool {
        let idx = self.parts.partition_point(|p| &p.hi <= x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = (&a[i].lo).max(&b[j].lo);
            let hi = (&a[i].hi).min(&b[j].hi);
            if lo < hi {
                out.push(Interval { lo: lo.clone(), hi: hi.clone() });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pieces of two normal forms intersect into a normal form.
        IntervalSet { parts: out }
    }

    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let b = &other.parts;
        let mut j = 0;
        for iv in &self.parts {
            let mut cur = iv.lo.clone();
            while j < b.len() && b[j].hi <= iv.lo {
                j += 1;
            }
            let mut k = j;
            while k < b.len() && b[k].lo < iv.hi {
                if b[k].lo > cur {
                    out.push(Interval { lo: cur.clone(), hi: b[k].lo.clone() });
                }
                if b[k].hi > cur {
                    cur = b[k].hi.clone();
                }
                k += 1;
            }
            if cur < iv.hi {
                out.push(Interval { lo: cur, hi: iv.hi.clone() });
            }
        }
        IntervalSet { parts: out }
    }

    pub fn translate(&self, t: &RatPi) -> IntervalSet {
        IntervalSet { parts: self.parts.iter().map(|p| Interval { lo: &p.lo + t, hi: &p.hi + t }).collect() }
    }

    /// Maps `S` to `2^p · S`.
    pub fn dilate(&self, p: i32) -> IntervalSet {
        IntervalSet {
            parts: self.parts.iter().map(|iv| Interval { lo: iv.lo.scale_pow2(p), hi: iv.hi.scale_pow2(p) }).collect(),
        }
    }

    /// Multiplication by −1. Half-open orientation is restored modulo endpoints.
    pub fn reflect(&self) -> IntervalSet {
        IntervalSet { parts: self.parts.iter().rev().map(|iv| Interval { lo: -&iv.hi, hi: -&iv.lo }).collect() }
    }

    /// Lebesgue measure in π units.
    pub fn measure(&self) -> BigRational {
        self.parts.iter().fold(BigRational::zero(), |acc, p| acc + p.length().ratio())
    }

    /// `sup − inf`, zero for the empty set.
    pub fn diameter(&self) -> BigRational {
        match (self.inf(), self.sup()) {
            (Some(lo), Some(hi)) => (hi - lo).ratio().clone(),
            _ => BigRational::zero(),
        }
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.subtract(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersect(other).is_empty()
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet { parts: vec![iv] }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::from_intervals(iter)
    }
}

/// Canonical text: whitespace-separated `[lo,hi)` in π units; `{}` when empty.
impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalSet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut items = Vec::new();
        let mut rest = s;
        let mut pos = 0;
        loop {
            let trimmed = rest.trim_start();
            pos += rest.len() - trimmed.len();
            rest = trimmed;
            if rest.is_empty() {
                break;
            }
            if let Some(r) = rest.strip_prefix("{}") {
                pos += 2;
                rest = r;
                continue;
            }
            if !rest.starts_with('[') {
                return Err(ParseError::new(pos, format!("expected `[`, found `{}`", first_char(rest))));
            }
            let close = rest.find(')').ok_or_else(|| ParseError::new(pos, "unterminated interval, expected `)`"))?;
            let body = &rest[1..close];
            let comma = body.find(',').ok_or_else(|| ParseError::new(pos + 1, "expected `lo,hi` inside interval"))?;
            let lo = super::ratpi::parse_rational(&body[..comma], pos + 1)?;
            let hi = super::ratpi::parse_rational(&body[comma + 1..], pos + 2 + comma)?;
            let (lo, hi) = (RatPi::from_ratio(lo), RatPi::from_ratio(hi));
            let iv = Interval::new(lo.clone(), hi.clone())
                .ok_or_else(|| ParseError::new(pos, format!("empty interval [{lo},{hi}): need lo < hi")))?;
            items.push(iv);
            pos += close + 1;
            rest = &rest[close + 1..];
        }
        Ok(IntervalSet::from_intervals(items))
    }
}

fn first_char(s: &str) -> char {
    s.chars().next().unwrap_or(' ')
}
