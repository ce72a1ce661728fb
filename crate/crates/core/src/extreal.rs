//! Extended reals `ℝ ∪ {−∞, +∞}` with exact finite parts.
//!
//! Addition is partial: `(+∞) + (−∞)` has no value, and the checked
//! operations return `None` for it instead of failing. Scaling by zero is
//! rejected because `0 · ±∞` is undefined.
//!
//! Finite values are generic over a [`Scalar`] so that the same ordering and
//! infinity conventions serve both plain rationals ([`ExtReal`]) and the
//! `a + bπ` numbers used on sampled circles.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used for all finite values.
pub type Rational = BigRational;

/// Extended real over exact rationals.
pub type ExtReal = Extended<Rational>;

/// An ordered field element that can sit inside [`Extended`].
pub trait Scalar: Clone + Ord + fmt::Debug {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, by: &Rational) -> Self;
    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, by: &Rational) -> Self {
        self * by
    }
}

/// Value in `T ∪ {−∞, +∞}`.
///
/// Variant order gives the total order `−∞ < finite < +∞` through the
/// derived `Ord`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    NegInf,
    Finite(T),
    PosInf,
}

/// Selects supremum or infimum in [`Extended::extremum`] and friends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Sup,
    Inf,
}

impl<T: Scalar> Extended<T> {
    pub fn zero() -> Self {
        Extended::Finite(T::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, Extended::PosInf)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, Extended::NegInf)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `self + other`, or `None` for `±∞ + ∓∞`.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        use Extended::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a.add(b))),
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
        }
    }

    /// `self + (−1)·other`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.neg())
    }

    /// Adding a real number is always defined.
    pub fn add_real(&self, c: &T) -> Self {
        match self {
            Extended::Finite(v) => Extended::Finite(v.add(c)),
            other => other.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Extended::NegInf => Extended::PosInf,
            Extended::PosInf => Extended::NegInf,
            Extended::Finite(v) => Extended::Finite(v.neg()),
        }
    }

    /// `α · self` for a nonzero rational `α`.
    pub fn scale(&self, alpha: &Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroScale);
        }
        let flip = Signed::is_negative(alpha);
        Ok(match self {
            Extended::Finite(v) => Extended::Finite(v.scale(alpha)),
            Extended::PosInf if flip => Extended::NegInf,
            Extended::NegInf if flip => Extended::PosInf,
            inf => inf.clone(),
        })
    }

    pub fn abs(&self) -> Self {
        match self {
            Extended::Finite(v) if v.is_negative() => Extended::Finite(v.neg()),
            Extended::NegInf => Extended::PosInf,
            other => other.clone(),
        }
    }

    /// Supremum of a finite multiset; the empty supremum is `−∞`.
    pub fn sup<I: IntoIterator<Item = Self>>(values: I) -> Self {
        values.into_iter().max().unwrap_or(Extended::NegInf)
    }

    /// Infimum of a finite multiset; the empty infimum is `+∞`.
    pub fn inf<I: IntoIterator<Item = Self>>(values: I) -> Self {
        values.into_iter().min().unwrap_or(Extended::PosInf)
    }

    pub fn extremum<I: IntoIterator<Item = Self>>(values: I, mode: Extremum) -> Self {
        match mode {
            Extremum::Sup => Self::sup(values),
            Extremum::Inf => Self::inf(values),
        }
    }
}

impl ExtReal {
    pub fn from_int(v: i64) -> Self {
        Extended::Finite(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Extended::Finite(ratio(num, den))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInf => f64::NEG_INFINITY,
            Extended::PosInf => f64::INFINITY,
            Extended::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// `num / den` as an exact rational. Panics on `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses a finite exact value: `-12`, `3.25`, `1e-3`, `2.5E2` or `7/3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    if negative {
        numer = -numer;
    }
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rational::from_integer(numer * num::pow(ten, shift as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-shift) as usize))
    })
}

/// Formats a rational as a terminating decimal when one exists, else `p/q`.
pub fn format_rational(v: &Rational) -> String {
    let mut den = v.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", v.numer(), v.denom());
    }
    let places = twos.max(fives);
    if places == 0 {
        return v.numer().to_string();
    }
    let scaled = v * Rational::from_integer(num::pow(BigInt::from(10), places));
    let n = scaled.to_integer();
    let negative = n.is_negative();
    let mut digits = n.abs().to_string();
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let (head, tail) = digits.split_at(digits.len() - places);
    let tail = tail.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}")
    } else {
        format!("{sign}{head}.{tail}")
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("inf"),
            Extended::Finite(v) => f.write_str(&format_rational(v)),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(Extended::PosInf),
            "-inf" | "-infinity" => Ok(Extended::NegInf),
            _ => parse_rational(s).map(Extended::Finite),
        }
    }
}

/// Text form of a checked result: the value, or `undef`.
pub fn format_checked(v: &Option<ExtReal>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "undef".to_string(),
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal string, \"inf\", \"-inf\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtReal, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
                Ok(Extended::Finite(Rational::from_integer(BigInt::from(v))))
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
