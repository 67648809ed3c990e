//! Exact rationals in canonical reduced form.
//!
//! `Ratio` wraps an arbitrary-precision rational so products over horizons and
//! cubed cardinalities never overflow. Text form is `p/q` (or `p` when the
//! denominator is one); decimal input is rejected.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseRatioError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ratio(BigRational);

impl Ratio {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Ratio(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(v: i64) -> Self {
        Ratio(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_u64(v: u64) -> Self {
        Ratio(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Ratio(BigRational::from_integer(v))
    }

    pub fn zero() -> Self {
        Ratio(BigRational::zero())
    }

    pub fn one() -> Self {
        Ratio(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Ratio::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Ratio(self.0.recip())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Largest integer not above the value.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Lossy conversion, used only for human-facing decimal renderings.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn max_of<'a, I: IntoIterator<Item = &'a Ratio>>(items: I) -> Option<Ratio> {
        items.into_iter().max().cloned()
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseRatioError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRatioError(whole.to_string()));
    }
    s.parse::<BigInt>().map_err(|_| ParseRatioError(whole.to_string()))
}

impl FromStr for Ratio {
    type Err = ParseRatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p = parse_int(p.trim(), s)?;
                let q = parse_int(q.trim(), s)?;
                if q.is_zero() {
                    return Err(ParseRatioError(s.to_string()));
                }
                Ok(Ratio(BigRational::new(p, q)))
            }
            None => Ok(Ratio(BigRational::from_integer(parse_int(t, s)?))),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Ratio> for &Ratio {
            type Output = Ratio;
            fn $m(self, rhs: &Ratio) -> Ratio {
                Ratio((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Ratio> for Ratio {
            type Output = Ratio;
            fn $m(self, rhs: Ratio) -> Ratio {
                Ratio(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Ratio> for Ratio {
            type Output = Ratio;
            fn $m(self, rhs: &Ratio) -> Ratio {
                Ratio(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Ratio> for &Ratio {
            type Output = Ratio;
            fn $m(self, rhs: Ratio) -> Ratio {
                Ratio((&self.0).$m(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-self.0)
    }
}

impl std::iter::Sum for Ratio {
    fn sum<I: Iterator<Item = Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Ratio {
    fn product<I: Iterator<Item = Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::one(), |a, b| a * b)
    }
}

/// Shorthand for literals in code and tests.
pub fn r(numer: i64, denom: i64) -> Ratio {
    Ratio::new(numer, denom)
}
