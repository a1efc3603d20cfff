//! Exact rational scalars.
//!
//! Coordinates enter the system as strings (`"3"`, `"-0.25"`, `"7/3"`) and
//! never pass through floating point. Canonical text form is the reduced
//! fraction `p/q`, or just `p` when the denominator is one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty coordinate string")]
    Empty,
    #[error("`{0}` is not an integer, decimal or fraction")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

/// Arbitrary-precision rational, always in reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Integer power with a non-negative exponent.
    pub fn pow(&self, exp: u32) -> Rat {
        let mut acc = BigRational::one();
        for _ in 0..exp {
            acc *= &self.0;
        }
        Rat(acc)
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Lossy conversion for advisory output only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded to `digits` fractional digits, trailing
    /// zeros trimmed. `3/2` renders as `1.5`; `1/3` as `0.333333333333`.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let neg = self.0.is_negative();
        let abs = self.0.abs();
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (abs * BigRational::from_integer(scale.clone()))
            .round()
            .to_integer();
        let int_part = &scaled / &scale;
        let frac_part = &scaled % &scale;
        let mut out = String::new();
        if neg && !scaled.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 && !frac_part.is_zero() {
            let frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
            out.push('.');
            out.push_str(frac.trim_end_matches('0'));
        }
        out
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, original: &str) -> Result<BigInt, RatParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RatParseError::Malformed(original.to_string()));
    }
    s.trim_start_matches('+')
        .parse::<BigInt>()
        .map_err(|_| RatParseError::Malformed(original.to_string()))
}

impl FromStr for Rat {
    type Err = RatParseError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        if s.is_empty() {
            return Err(RatParseError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_int(num, raw)?;
            let den = parse_int(den, raw)?;
            if den.is_zero() {
                return Err(RatParseError::ZeroDenominator(raw.to_string()));
            }
            return Ok(Rat(BigRational::new(num, den)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(RatParseError::Malformed(raw.to_string()));
            }
            let negative = int.starts_with('-');
            let int_digits = int.strip_prefix(['-', '+']).unwrap_or(int);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(RatParseError::Malformed(raw.to_string()));
            }
            let whole: BigInt = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                int_digits
                    .parse()
                    .map_err(|_| RatParseError::Malformed(raw.to_string()))?
            };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac_val: BigInt = frac
                .parse()
                .map_err(|_| RatParseError::Malformed(raw.to_string()))?;
            let mut value = BigRational::new(whole * &scale + frac_val, scale);
            if negative {
                value = -value;
            }
            return Ok(Rat(value));
        }
        Ok(Rat(BigRational::from_integer(parse_int(s, raw)?)))
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_decimal_and_fraction() {
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from_int(3));
        assert_eq!("-0.25".parse::<Rat>().unwrap(), Rat::new(-1, 4));
        assert_eq!("6/4".parse::<Rat>().unwrap(), Rat::new(3, 2));
        assert_eq!(".5".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert_eq!("-.5".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert_eq!("+7".parse::<Rat>().unwrap(), Rat::from_int(7));
    }

    #[test]
    fn rejects_float_syntax() {
        for bad in ["1e3", "1.", "nan", "inf", "1.5.2", "", "1/0", "--1", "0x10"] {
            assert!(bad.parse::<Rat>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn canonical_display() {
        assert_eq!(Rat::new(3, 2).to_string(), "3/2");
        assert_eq!(Rat::new(4, 2).to_string(), "2");
        assert_eq!(Rat::new(-2, 6).to_string(), "-1/3");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rat::new(3, 2).to_decimal_string(12), "1.5");
        assert_eq!(Rat::new(1, 3).to_decimal_string(4), "0.3333");
        assert_eq!(Rat::new(-1, 4).to_decimal_string(12), "-0.25");
        assert_eq!(Rat::from_int(5).to_decimal_string(12), "5");
    }

    #[test]
    fn power_and_ceil() {
        assert_eq!(Rat::new(1, 2).pow(3), Rat::new(1, 8));
        assert_eq!(Rat::new(7, 2).ceil_int(), BigInt::from(4));
        assert_eq!(Rat::from_int(3).ceil_int(), BigInt::from(3));
    }
}
