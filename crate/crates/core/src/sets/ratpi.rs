use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ParseError;

/// An exact rational multiple of π, stored as the rational coefficient.
///
/// `RatPi::new(8, 7)` is the real number 8π/7. Ordering is the ordering of
/// the coefficients, which agrees with the ordering of the reals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPi(BigRational);

impl RatPi {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        RatPi(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Self {
        RatPi(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        RatPi(BigRational::zero())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        RatPi(r)
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        RatPi(self.0.abs())
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Multiply by `2^p` (p may be negative).
    pub fn scale_pow2(&self, p: i32) -> Self {
        if p >= 0 {
            RatPi(&self.0 * BigRational::from_integer(BigInt::one() << p as usize))
        } else {
            RatPi(&self.0 / BigRational::from_integer(BigInt::one() << (-p) as usize))
        }
    }

    /// The coefficient as a float (π units).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The represented real value `q·π` as a float.
    pub fn radians(&self) -> f64 {
        self.to_f64() * std::f64::consts::PI
    }

    /// `floor(log2 |x|)` for nonzero x, computed exactly.
    pub fn floor_log2_abs(&self) -> i64 {
        assert!(!self.is_zero(), "log2 of zero");
        let num = self.0.numer().abs();
        let den = self.0.denom().clone();
        let mut e = num.bits() as i64 - den.bits() as i64;
        // 2^e <= |x| < 2^(e+1) after at most one correction step.
        let two_e = pow2(e);
        if self.0.abs() < two_e {
            e -= 1;
        }
        e
    }
}

pub(crate) fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

impl From<i64> for RatPi {
    fn from(n: i64) -> Self {
        RatPi::int(n)
    }
}

impl Add for &RatPi {
    type Output = RatPi;
    fn add(self, rhs: &RatPi) -> RatPi {
        RatPi(&self.0 + &rhs.0)
    }
}

impl Add for RatPi {
    type Output = RatPi;
    fn add(self, rhs: RatPi) -> RatPi {
        RatPi(self.0 + rhs.0)
    }
}

impl Sub for &RatPi {
    type Output = RatPi;
    fn sub(self, rhs: &RatPi) -> RatPi {
        RatPi(&self.0 - &rhs.0)
    }
}

impl Sub for RatPi {
    type Output = RatPi;
    fn sub(self, rhs: RatPi) -> RatPi {
        RatPi(self.0 - rhs.0)
    }
}

impl Neg for RatPi {
    type Output = RatPi;
    fn neg(self) -> RatPi {
        RatPi(-self.0)
    }
}

impl Neg for &RatPi {
    type Output = RatPi;
    fn neg(self) -> RatPi {
        RatPi(-&self.0)
    }
}

impl Mul<&BigRational> for &RatPi {
    type Output = RatPi;
    fn mul(self, rhs: &BigRational) -> RatPi {
        RatPi(&self.0 * rhs)
    }
}

impl fmt::Display for RatPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for RatPi {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_rational(s, 0).map(RatPi)
    }
}

/// Parse `n` or `p/q` (optional sign, integer parts only).
pub(crate) fn parse_rational(s: &str, offset: usize) -> Result<BigRational, ParseError> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let err = |msg: &str| ParseError::new(offset + lead, format!("{msg}: `{t}`"));
    if t.is_empty() {
        return Err(err("expected a number"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn big_to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("shift index exceeds i64 range")
}
