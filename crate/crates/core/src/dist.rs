//! Exact rationals and exact distances.
//!
//! Every distance handled by the crate has the form `sqrt(q)` for a
//! nonnegative rational `q`: explicit matrices give rational distances
//! (`q` is a perfect square), integer 2D coordinates give Euclidean
//! distances whose squares are integers. Storing the square keeps every
//! comparison `d(i, j) <= c * rho` exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"2.5"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let frac = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let p: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

fn exact_sqrt(value: &BigInt) -> Option<BigInt> {
    if value.is_negative() {
        return None;
    }
    let root = value.sqrt();
    (&root * &root == *value).then_some(root)
}

/// A nonnegative real of the form `sqrt(q)`, `q` rational, compared exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dist {
    sq: Rational,
}

impl Dist {
    pub fn zero() -> Self {
        Dist { sq: Rational::zero() }
    }

    pub fn from_rational(value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "negative distance {value}"
            )));
        }
        Ok(Dist { sq: &value * &value })
    }

    pub fn from_integer(value: u64) -> Self {
        let v = Rational::from_integer(BigInt::from(value));
        Dist { sq: &v * &v }
    }

    pub fn from_squared(sq: Rational) -> Result<Self> {
        if sq.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "negative squared distance {sq}"
            )));
        }
        Ok(Dist { sq })
    }

    pub fn squared(&self) -> &Rational {
        &self.sq
    }

    pub fn is_zero(&self) -> bool {
        self.sq.is_zero()
    }

    /// `factor * self`.
    pub fn scaled(&self, factor: u32) -> Dist {
        let f = Rational::from_integer(BigInt::from(factor) * BigInt::from(factor));
        Dist { sq: &self.sq * f }
    }

    /// The exact value when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        let p = exact_sqrt(self.sq.numer())?;
        let q = exact_sqrt(self.sq.denom())?;
        Some(Rational::new(p, q))
    }

    /// `self <= a + b`, exactly.
    pub fn le_sum(&self, a: &Dist, b: &Dist) -> bool {
        // sqrt(s) <= sqrt(a) + sqrt(b)  <=>  s - a - b <= 2 sqrt(ab)
        let lhs = &self.sq - &a.sq - &b.sq;
        if !lhs.is_positive() {
            return true;
        }
        let four = Rational::from_integer(BigInt::from(4));
        &lhs * &lhs <= four * &a.sq * &b.sq
    }

    /// `self / other` as a distance (`other` must be nonzero).
    pub fn ratio(&self, other: &Dist) -> Option<Dist> {
        if other.is_zero() {
            return None;
        }
        Some(Dist { sq: &self.sq / &other.sq })
    }

    /// Floating-point approximation, for human-readable summaries only.
    pub fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.sq.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sq.cmp(&other.sq)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "sqrt({})", self.sq),
        }
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dist({self})")
    }
}

impl FromStr for Dist {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix("sqrt(").and_then(|s| s.strip_suffix(')')) {
            return Dist::from_squared(parse_rational(inner)?);
        }
        Dist::from_rational(parse_rational(t)?)
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
