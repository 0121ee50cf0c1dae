//! Exact rational helpers: parsing decimal text, exact formatting, scaling
//! rows of rationals to integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The exact number type used for all positions and margins.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `|x|^p`.
pub fn abs_pow(x: &Rational, p: u32) -> Rational {
    let a = x.abs();
    let mut out = Rational::one();
    for _ in 0..p {
        out *= &a;
    }
    out
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite double.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Usage(format!("non-finite value {x}")))
}

/// Parses `-12`, `3.25`, `1.5e-3` or `7/3` into an exact rational.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all = format!("{whole}{frac}");
    let mut num: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    if neg {
        num = -num;
    }
    let shift = exp - frac.len() as i64;
    if shift.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let pow = BigInt::from(10u32).pow(shift.unsigned_abs() as u32);
    Ok(if shift >= 0 {
        Rational::from_integer(num * pow)
    } else {
        Rational::new(num, pow)
    })
}

/// How a rational is written to an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Repr {
    Integer(BigInt),
    /// Terminating decimal expansion, written out in full.
    Decimal(String),
    /// `num/den` for everything else.
    Fraction(String),
}

pub fn repr(x: &Rational) -> Repr {
    if x.is_integer() {
        return Repr::Integer(x.to_integer());
    }
    let mut den = x.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return Repr::Fraction(format!("{}/{}", x.numer(), x.denom()));
    }
    let digits = twos.max(fives);
    let scaled = x * Rational::from_integer(BigInt::from(10u32).pow(digits));
    let n = scaled.to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let s = n.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits as usize + 1);
    let (w, f) = s.split_at(s.len() - digits as usize);
    Repr::Decimal(format!("{sign}{w}.{f}"))
}

/// Text form that [`parse`] reads back to the same value.
pub fn to_exact_string(x: &Rational) -> String {
    match repr(x) {
        Repr::Integer(n) => n.to_string(),
        Repr::Decimal(s) | Repr::Fraction(s) => s,
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Multiplies every value by `scale` and returns the integer numerators.
/// `scale` must clear all denominators.
pub fn scale_to_integers<'a>(
    values: impl IntoIterator<Item = &'a Rational>,
    scale: &BigInt,
) -> Vec<BigInt> {
    values
        .into_iter()
        .map(|v| {
            let (q, r) = (v.numer() * scale).div_rem(v.denom());
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}
