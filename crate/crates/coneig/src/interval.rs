//! Closed real intervals with machine-representable endpoints and
//! outward-rounded arithmetic.
//!
//! The enclosure contract: for every operation and all `x in a`, `y in b`,
//! the exact real result of `x op y` lies in `a op b`. Lower endpoints are
//! rounded toward −∞ and upper endpoints toward +∞ (see [`crate::round`]);
//! no process-global rounding mode is ever changed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::round;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    /// Division by an interval that contains zero.
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    /// The input string is not a finite decimal number.
    #[error("cannot parse {0:?} as a finite decimal number")]
    ParseError(String),
}

/// A closed interval `[lo, hi]` with `lo <= hi` and no NaN endpoints.
/// Infinite endpoints are allowed (they arise from overflow).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Builds `[lo, hi]`. Panics if the endpoints are NaN or out of order.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN interval endpoint");
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        // Normalize -0.0 so endpoint comparisons and formatting are stable.
        Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
        }
    }

    /// The tightest interval containing one floating-point number.
    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    /// Interval hull of an exact decimal string such as `"0.4"` or `"-1.25e-3"`.
    ///
    /// The string is treated as an exact rational; the result is the tightest
    /// representable interval containing it (width one ulp when the decimal is
    /// not a binary dyadic, zero otherwise). Values beyond the finite range
    /// come back as `[MAX, +inf]` or `[-inf, MIN]`.
    pub fn from_decimal_str(s: &str) -> Result<Self, IntervalError> {
        parse_decimal(s)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// The magnitude `max(|x| : x in self)`.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// The mignitude `min(|x| : x in self)`; 0 when the interval contains 0.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn width(&self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    pub fn midpoint(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        if m.is_finite() {
            m
        } else if self.lo.is_finite() {
            self.lo
        } else if self.hi.is_finite() {
            self.hi
        } else {
            0.0
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval::new(lo, hi))
        } else {
            None
        }
    }

    /// Smallest interval containing both operands.
    pub fn hull_with(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Enclosure of `{x*x : x in self}`, tighter than `self * self`.
    pub fn sqr(&self) -> Interval {
        let mig = self.mig();
        let mag = self.mag();
        Interval::new(round::mul_down(mig, mig), round::mul_up(mag, mag))
    }

    /// Enclosure of the square root; requires `lo >= 0`.
    pub fn sqrt(&self) -> Interval {
        assert!(self.lo >= 0.0, "sqrt of interval with negative lower bound");
        Interval::new(round::sqrt_down(self.lo), round::sqrt_up(self.hi))
    }

    #[allow(clippy::should_implement_trait)] // fallible, unlike ops::Div
    pub fn div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains(0.0) {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let (a, b) = (self.lo, self.hi);
        let (c, d) = (rhs.lo, rhs.hi);
        let lo = round::div_down(a, c)
            .min(round::div_down(a, d))
            .min(round::div_down(b, c))
            .min(round::div_down(b, d));
        let hi = round::div_up(a, c)
            .max(round::div_up(a, d))
            .max(round::div_up(b, c))
            .max(round::div_up(b, d));
        Ok(Interval::new(lo, hi))
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::new(
            round::add_down(self.lo, rhs.lo),
            round::add_up(self.hi, rhs.hi),
        )
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::new(
            round::sub_down(self.lo, rhs.hi),
            round::sub_up(self.hi, rhs.lo),
        )
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self.lo, self.hi);
        let (c, d) = (rhs.lo, rhs.hi);
        let lo = round::mul_down(a, c)
            .min(round::mul_down(a, d))
            .min(round::mul_down(b, c))
            .min(round::mul_down(b, d));
        let hi = round::mul_up(a, c)
            .max(round::mul_up(a, d))
            .max(round::mul_up(b, c))
            .max(round::mul_up(b, d));
        Interval::new(lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl FromStr for Interval {
    type Err = IntervalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Interval::from_decimal_str(s)
    }
}

/// Decomposes a finite f64 into `mant * 2^exp` with integer mant.
fn decode_f64(x: f64) -> (i64, i32) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1i64 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if exp_bits == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1i64 << 52)), exp_bits - 1075)
    }
}

fn parse_decimal(s: &str) -> Result<Interval, IntervalError> {
    let err = || IntervalError::ParseError(s.to_string());
    let t = s.trim();
    // Split off an exponent part.
    let (num_part, exp10_part) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i64>().map_err(|_| err())?),
        None => (t, 0i64),
    };
    let (sign, digits_part) = match num_part.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, num_part.strip_prefix('+').unwrap_or(num_part)),
    };
    let (int_digits, frac_digits) = match digits_part.find('.') {
        Some(pos) => (&digits_part[..pos], &digits_part[pos + 1..]),
        None => (digits_part, ""),
    };
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(err());
    }
    if !int_digits.bytes().all(|b| b.is_ascii_digit())
        || !frac_digits.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let mut all_digits = String::with_capacity(int_digits.len() + frac_digits.len());
    all_digits.push_str(int_digits);
    all_digits.push_str(frac_digits);
    let mantissa = BigInt::parse_bytes(all_digits.as_bytes(), 10).ok_or_else(err)?;
    let mantissa = if sign < 0 { -mantissa } else { mantissa };
    let exp10 = exp10_part - frac_digits.len() as i64;

    // Correctly rounded nearest value; the exact rational is within one ulp.
    let v: f64 = t.parse().map_err(|_| err())?;
    if v.is_nan() {
        return Err(err());
    }
    if v == f64::INFINITY {
        return Ok(Interval::new(f64::MAX, f64::INFINITY));
    }
    if v == f64::NEG_INFINITY {
        return Ok(Interval::new(f64::NEG_INFINITY, f64::MIN));
    }

    // Exact three-way comparison of mantissa*10^exp10 against v.
    let (m2, e2) = decode_f64(v);
    let mut lhs = mantissa; // decimal side
    let mut rhs = BigInt::from(m2); // binary side
    if exp10 > 0 {
        lhs *= BigInt::from(10u32).pow(exp10 as u32);
    } else if exp10 < 0 {
        rhs *= BigInt::from(10u32).pow((-exp10) as u32);
    }
    if e2 > 0 {
        rhs *= BigInt::from(2u32).pow(e2 as u32);
    } else if e2 < 0 {
        lhs *= BigInt::from(2u32).pow((-e2) as u32);
    }
    use std::cmp::Ordering;
    Ok(match lhs.cmp(&rhs) {
        Ordering::Equal => Interval::point(v),
        Ordering::Less => Interval::new(v.next_down(), v),
        Ordering::Greater => Interval::new(v, v.next_up()),
    })
}
