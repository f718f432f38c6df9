use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ratpi::parse_rational;
use super::ParseError;

/// An exact element `a + b√2` of the real quadratic field ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: BigRational,
    b: BigRational,
}

impl QuadReal {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadReal { a, b }
    }

    /// `p/q + r/s·√2` from machine integers.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        QuadReal::new(BigRational::new(p.into(), q.into()), BigRational::new(r.into(), s.into()))
    }

    pub fn zero() -> Self {
        QuadReal::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        QuadReal::int(1)
    }

    pub fn int(n: i64) -> Self {
        QuadReal::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `1/√2 = (0, 1/2)`.
    pub fn inv_sqrt2() -> Self {
        QuadReal::from_parts(0, 1, 1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Opposite signs: compare a² with 2b².
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(2));
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        QuadReal::new(self.a.clone(), -&self.b)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Add for &QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: &QuadReal) -> QuadReal {
        QuadReal::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: QuadReal) -> QuadReal {
        &self + &rhs
    }
}

impl Sub for &QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: &QuadReal) -> QuadReal {
        QuadReal::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: QuadReal) -> QuadReal {
        &self - &rhs
    }
}

impl Mul for &QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: &QuadReal) -> QuadReal {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = BigRational::from_integer(BigInt::from(2));
        QuadReal::new(&self.a * &rhs.a + two * &self.b * &rhs.b, &self.a * &rhs.b + &self.b * &rhs.a)
    }
}

impl Mul for QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: QuadReal) -> QuadReal {
        &self * &rhs
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal::new(-self.a, -self.b)
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal::new(-&self.a, -&self.b)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints in the fixture grammar: `1`, `-1/2*sqrt2`, `1/3 + 1/2*sqrt2`.
impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.a)),
            (true, false) => write!(f, "{}*sqrt2", fmt_ratio(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*sqrt2", fmt_ratio(&self.a), sign, fmt_ratio(&self.b.abs()))
            }
        }
    }
}

impl FromStr for QuadReal {
    type Err = ParseError;

    /// Grammar: a sum of terms `r` or `r*sqrt2` (or bare `sqrt2`), where `r`
    /// is an integer or `p/q`, joined by `+` / `-`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut sign = BigRational::one();
        let mut seen_term = false;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '+' || c == '-' {
                if c == '-' {
                    sign = -sign;
                }
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !matches!(bytes[i] as char, '+' | '-') {
                i += 1;
            }
            let term = s[start..i].trim();
            let (coef, irr) = match term.strip_suffix("sqrt2") {
                Some(rest) => {
                    let rest = rest.trim_end();
                    let rest = rest.strip_suffix('*').unwrap_or(rest).trim();
                    if rest.is_empty() {
                        (BigRational::one(), true)
                    } else {
                        (parse_rational(rest, start)?, true)
                    }
                }
                None => (parse_rational(term, start)?, false),
            };
            let v = &sign * coef;
            if irr {
                b += v;
            } else {
                a += v;
            }
            sign = BigRational::one();
            seen_term = true;
        }
        if !seen_term {
            return Err(ParseError::new(0, format!("empty value `{s}`")));
        }
        Ok(QuadReal::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inv_sqrt2_squares_to_half() {
        let h = QuadReal::inv_sqrt2();
        assert_eq!(h.square(), QuadReal::from_parts(1, 2, 0, 1));
        assert_eq!((&h.square() + &h.square()), QuadReal::one());
    }

    #[test]
    fn sign_analysis() {
        assert_eq!(QuadReal::from_parts(3, 2, -1, 1).signum(), Ordering::Greater); // 1.5 - 1.414
        assert_eq!(QuadReal::from_parts(7, 5, -1, 1).signum(), Ordering::Less); // 1.4 - 1.414
        assert_eq!(QuadReal::from_parts(-3, 2, 1, 1).signum(), Ordering::Less);
        assert_eq!(QuadReal::zero().signum(), Ordering::Equal);
        assert!(QuadReal::int(1) > QuadReal::inv_sqrt2());
    }

    #[test]
    fn parse_and_print() {
        let cases = ["1", "-1/2*sqrt2", "1/3 + 1/2*sqrt2", "1/3 - 1/2*sqrt2", "0"];
        for c in cases {
            let q: QuadReal = c.parse().unwrap();
            assert_eq!(q.to_string(), c);
        }
        assert_eq!("sqrt2".parse::<QuadReal>().unwrap(), QuadReal::from_parts(0, 1, 1, 1));
        assert!("-sqrt2/1".parse::<QuadReal>().is_err());
        assert_eq!("0 + 1/2*sqrt2".parse::<QuadReal>().unwrap(), QuadReal::inv_sqrt2());
        assert!("".parse::<QuadReal>().is_err());
    }

    #[test]
    fn square_is_nonnegative() {
        for (p, r) in [(1, -1), (0, 3), (-5, 2), (0, 0), (7, -5)] {
            let x = QuadReal::from_parts(p, 1, r, 1);
            let sq = x.square();
            assert_ne!(sq.signum(), Ordering::Less);
            assert_eq!(sq.is_zero(), x.is_zero());
        }
    }
}
