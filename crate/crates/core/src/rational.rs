//! Exact rational helpers on top of [`num_rational::BigRational`].
//!
//! `BigRational` already keeps every value in lowest terms with a positive
//! denominator; this module adds the pieces the rest of the crate needs:
//! exact factorials, decimal rendering with correct rounding, significant
//! digit rounding for the approximate mode, and a small parser.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` by running product.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// Integer power with a signed exponent.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

/// Returns `e` such that `10^e <= |r| < 10^(e+1)`. Panics on zero.
pub fn floor_log10(r: &Rational) -> i64 {
    assert!(!r.is_zero(), "floor_log10 of zero");
    let a = r.abs();
    let num_len = a.numer().to_string().len() as i64;
    let den_len = a.denom().to_string().len() as i64;
    let mut e = num_len - den_len;
    // the digit-count estimate is off by at most one
    while scale10(&a, -e) < Rational::one() {
        e -= 1;
    }
    while scale10(&a, -e) >= int(10) {
        e += 1;
    }
    e
}

/// `r * 10^e`.
pub fn scale10(r: &Rational, e: i64) -> Rational {
    let p = Rational::from_integer(pow10(e.unsigned_abs() as u32));
    if e >= 0 {
        r * p
    } else {
        r / p
    }
}

/// Nearest integer, ties to even.
pub fn round_half_even(r: &Rational) -> BigInt {
    let fl = r.floor();
    let diff = r - &fl;
    let half = frac(1, 2);
    let base = fl.to_integer();
    if diff > half || (diff == half && base.is_odd()) {
        base + 1
    } else {
        base
    }
}

/// Rounds `r` to `digits` significant decimal digits.
pub fn round_significant(r: &Rational, digits: u32) -> Rational {
    if r.is_zero() {
        return Rational::zero();
    }
    let e = floor_log10(r);
    let shift = digits as i64 - 1 - e;
    let m = round_half_even(&scale10(r, shift));
    scale10(&Rational::from_integer(m), -shift)
}

/// Renders `r` with exactly `digits` significant digits, correctly rounded.
///
/// Plain positional notation is used for exponents in `-7..21`, scientific
/// notation (`1.25e-30`) outside that range.
pub fn render_decimal(r: &Rational, digits: u32) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let mut e = floor_log10(&a);
    let mut m = round_half_even(&scale10(&a, digits as i64 - 1 - e));
    if m == pow10(digits) {
        m /= 10;
        e += 1;
    }
    let ds = m.to_string();
    debug_assert_eq!(ds.len(), digits as usize);
    let body = if (-7..21).contains(&e) {
        if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
        } else {
            let int_len = e as usize + 1;
            if int_len >= ds.len() {
                format!("{}{}", ds, "0".repeat(int_len - ds.len()))
            } else {
                format!("{}.{}", &ds[..int_len], &ds[int_len..])
            }
        }
    } else if ds.len() == 1 {
        format!("{}e{}", ds, e)
    } else {
        format!("{}.{}e{}", &ds[..1], &ds[1..], e)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"7"`, `"-3/2"`, `"1.5"`, `"2.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("malformed number `{s}`"));
    let s = s.trim();
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
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if (ip.is_empty() && fp.is_empty())
        || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let v = scale10(&Rational::from_integer(digits), exp - fp.len() as i64);
    Ok(if neg { -v } else { v })
}
