//! Exact rational helpers shared by every module.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};

/// Exact rational number used for every distance and threshold.
pub type Rational = num_rational::Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.15`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = |reason| ParseRationalError {
        input: text.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if s.contains('/') {
        let r = Rational::from_str(s).map_err(|_| err("expected p/q"))?;
        return Ok(r);
    }
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(err("not a number"));
    }
    if frac_part.len() > 15 {
        return Err(err("too many decimal places"));
    }
    let den = 10i64.pow(frac_part.len() as u32);
    let whole: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| err("integer part out of range"))?
    };
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| err("fraction out of range"))?
    };
    let num = whole
        .checked_mul(den)
        .and_then(|w| w.checked_add(frac))
        .ok_or_else(|| err("out of range"))?;
    Ok(Rational::new(if neg { -num } else { num }, den))
}

/// `⌊count · r⌋` for a non-negative rational.
pub fn floor_mul(count: usize, r: Rational) -> usize {
    let v = Rational::from_integer(count as i64) * r;
    v.floor().to_integer().max(0) as usize
}

/// `⌊r⌋` clamped at zero.
pub fn floor_nonneg(r: Rational) -> usize {
    r.floor().to_integer().max(0) as usize
}

/// `⌈r⌉` clamped at zero.
pub fn ceil_nonneg(r: Rational) -> usize {
    r.ceil().to_integer().max(0) as usize
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: Rational) -> Option<Rational> {
    if *r.numer() < 0 {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (n * n == *r.numer() && d * d == *r.denom()).then(|| Rational::new(n, d))
}

/// Square root of `r`: exact when possible, otherwise the largest multiple
/// of `1/1000` not exceeding it (never zero for positive input).
pub fn sqrt_or_floor(r: Rational) -> Rational {
    if let Some(s) = exact_sqrt(r) {
        return s;
    }
    let scaled = r * Rational::from_integer(1_000_000);
    let root = scaled.floor().to_integer().max(0).sqrt().max(1);
    Rational::new(root, 1000)
}

/// `true` when `0 < r < 1`.
pub fn is_open_unit(r: Rational) -> bool {
    r > Rational::zero() && r < Rational::from_integer(1)
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Displays a rational as `p/q` even when the denominator is one.
pub struct Fraction(pub Rational);

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}
