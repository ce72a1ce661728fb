//! Exact arithmetic in `{a + bπ : a, b ∈ ℚ}`.
//!
//! Since π is irrational, `a + bπ = 0` only when `a = b = 0`, and the sign of
//! any other element is settled by bracketing π between rationals tightly
//! enough that `−a/b` falls outside the bracket.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::extreal::{format_rational, Extended, Rational, Scalar};

/// `a + bπ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiRational {
    pub a: Rational,
    pub b: Rational,
}

impl PiRational {
    pub fn new(a: Rational, b: Rational) -> Self {
        PiRational { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        PiRational { a, b: <Rational as Zero>::zero() }
    }

    pub fn pi_multiple(b: Rational) -> Self {
        PiRational { a: <Rational as Zero>::zero(), b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        PiRational { a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
    }
}

impl Ord for PiRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

impl PartialOrd for PiRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Scalar for PiRational {
    fn zero() -> Self {
        PiRational::rational(<Rational as Zero>::zero())
    }
    fn add(&self, other: &Self) -> Self {
        PiRational { a: &self.a + &other.a, b: &self.b + &other.b }
    }
    fn neg(&self) -> Self {
        PiRational { a: -&self.a, b: -&self.b }
    }
    fn scale(&self, by: &Rational) -> Self {
        PiRational { a: &self.a * by, b: &self.b * by }
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi_part = |b: &Rational| {
            if b.is_one() {
                "pi".to_string()
            } else {
                format!("{}*pi", format_rational(b))
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => f.write_str(&format_rational(&self.a)),
            (true, false) if self.b == -Rational::one() => f.write_str("-pi"),
            (true, false) => f.write_str(&pi_part(&self.b)),
            (false, false) if Signed::is_negative(&self.b) => {
                write!(f, "{}-{}", format_rational(&self.a), pi_part(&-&self.b))
            }
            (false, false) => write!(f, "{}+{}", format_rational(&self.a), pi_part(&self.b)),
        }
    }
}

impl fmt::Display for Extended<PiRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("inf"),
            Extended::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Extended<PiRational> {
    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInf => f64::NEG_INFINITY,
            Extended::PosInf => f64::INFINITY,
            Extended::Finite(v) => v.to_f64(),
        }
    }
}

/// Sign of `a + bπ`.
fn sign_of(a: &Rational, b: &Rational) -> Ordering {
    if Zero::is_zero(b) {
        return a.cmp(&<Rational as Zero>::zero());
    }
    // a + bπ > 0  ⇔  π > −a/b (b > 0)  or  π < −a/b (b < 0).
    let t = -a / b;
    let mut digits = 40;
    loop {
        let (lo, hi) = pi_bracket(digits);
        let above = if t < lo {
            Some(true)
        } else if t > hi {
            Some(false)
        } else {
            None
        };
        if let Some(pi_above_t) = above {
            let positive = pi_above_t == b.is_positive();
            return if positive { Ordering::Greater } else { Ordering::Less };
        }
        digits *= 2;
    }
}

/// Rationals `lo < π < hi` with `hi − lo` around `10^-digits`.
pub fn pi_bracket(digits: u32) -> (Rational, Rational) {
    static CACHE: OnceLock<Mutex<Vec<(u32, Rational, Rational)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some((_, lo, hi)) = cache.lock().expect("pi cache").iter().find(|(d, _, _)| *d >= digits) {
        return (lo.clone(), hi.clone());
    }
    let bracket = machin(digits);
    let mut guard = cache.lock().expect("pi cache");
    guard.push((digits, bracket.0.clone(), bracket.1.clone()));
    guard.sort_by_key(|(d, _, _)| *d);
    bracket
}

/// `π = 16·atan(1/5) − 4·atan(1/239)` in fixed point with explicit error bounds.
fn machin(digits: u32) -> (Rational, Rational) {
    let guard = 10u32;
    let scale = num::pow(BigInt::from(10), (digits + guard) as usize);
    let (s5, e5) = atan_inv(5, &scale);
    let (s239, e239) = atan_inv(239, &scale);
    let centre = BigInt::from(16) * s5 - BigInt::from(4) * s239;
    let err = BigInt::from(16) * e5 + BigInt::from(4) * e239;
    let lo = Rational::new(&centre - &err, scale.clone());
    let hi = Rational::new(&centre + &err, scale);
    (lo, hi)
}

/// `atan(1/x)·scale` truncated, plus a bound on the absolute error in units of `1/scale`.
fn atan_inv(x: u64, scale: &BigInt) -> (BigInt, BigInt) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x; // scale / x^(2k+1), truncated
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        power /= &x2;
        k += 1;
        terms += 1;
    }
    // Each truncated division loses less than one unit, twice per term, and
    // the omitted tail is below one unit.
    (sum, BigInt::from(2 * terms + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::ratio;

    #[test]
    fn bracket_contains_pi() {
        let (lo, hi) = pi_bracket(30);
        assert!(lo < hi);
        assert!(lo.to_f64().unwrap() <= std::f64::consts::PI);
        assert!(hi.to_f64().unwrap() >= std::f64::consts::PI);
        assert!(&hi - &lo < ratio(1, 1_000_000_000_000_000));
        // Known digits.
        let known = Rational::new(BigInt::from(314_159_265_358_979_323u64), num::pow(BigInt::from(10), 17));
        assert!(lo < &known + ratio(1, 100_000_000_000_000) && known < hi);
    }

    #[test]
    fn signs() {
        let p = |a: Rational, b: Rational| PiRational::new(a, b).signum();
        assert_eq!(p(ratio(-3, 1), ratio(1, 1)), Ordering::Greater);
        assert_eq!(p(ratio(-22, 7), ratio(1, 1)), Ordering::Less);
        assert_eq!(p(ratio(-355, 113), ratio(1, 1)), Ordering::Less);
        assert_eq!(p(ratio(-333, 106), ratio(1, 1)), Ordering::Greater);
        assert_eq!(p(ratio(0, 1), ratio(0, 1)), Ordering::Equal);
        assert_eq!(p(ratio(7, 1), ratio(-2, 1)), Ordering::Greater);
        assert_eq!(p(ratio(6, 1), ratio(-2, 1)), Ordering::Less);
    }

    #[test]
    fn near_misses_need_refinement() {
        // 104348/33215 agrees with π to about 9 digits.
        let t = ratio(104_348, 33_215);
        assert_eq!(PiRational::new(-t.clone(), ratio(1, 1)).signum(), Ordering::Less);
        let t = Rational::new(BigInt::from(428_224_593_349_304u64), BigInt::from(136_308_121_570_117u64));
        assert_eq!(PiRational::new(-t, ratio(1, 1)).signum(), Ordering::Greater);
    }

    #[test]
    fn display() {
        assert_eq!(PiRational::new(ratio(1, 2), ratio(-1, 3)).to_string(), "0.5-1/3*pi");
        assert_eq!(PiRational::pi_multiple(ratio(1, 1)).to_string(), "pi");
        assert_eq!(PiRational::pi_multiple(ratio(-1, 1)).to_string(), "-pi");
        assert_eq!(PiRational::rational(ratio(2, 1)).to_string(), "2");
        assert_eq!(Extended::Finite(PiRational::new(ratio(1, 1), ratio(1, 4))).to_string(), "1+0.25*pi");
    }
}
