//! Fixed-point `ln`/`exp` used by the approximate numeric mode.
//!
//! Values are `BigInt`s scaled by `10^scale`. Only positive real powers of
//! rationals are needed (`x^-n` for non-integer `n`), so that is all this
//! module offers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{pow10, round_half_even, round_significant, Rational};

const GUARD_DIGITS: u32 = 20;

struct Fixed {
    one: BigInt,
}

impl Fixed {
    fn new(scale: u32) -> Self {
        Self { one: pow10(scale) }
    }

    fn to_fixed(&self, r: &Rational) -> BigInt {
        round_half_even(&(r * Rational::from_integer(self.one.clone())))
    }

    fn to_rational(&self, v: &BigInt) -> Rational {
        Rational::new(v.clone(), self.one.clone())
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) / &self.one
    }

    /// `atanh(s)` for `|s| <= 1/3`.
    fn atanh(&self, s: &BigInt) -> BigInt {
        let s2 = self.mul(s, s);
        let mut power = s.clone();
        let mut sum = s.clone();
        let mut j = 1u64;
        loop {
            power = self.mul(&power, &s2);
            if power.is_zero() {
                break;
            }
            sum += &power / BigInt::from(2 * j + 1);
            j += 1;
        }
        sum
    }

    fn ln2(&self) -> BigInt {
        let third = self.to_fixed(&Rational::new(BigInt::one(), BigInt::from(3)));
        self.atanh(&third) * 2
    }

    /// Natural log of a positive rational.
    fn ln(&self, x: &Rational) -> BigInt {
        let k = x.numer().bits() as i64 - x.denom().bits() as i64;
        let two_k = Rational::from_integer(BigInt::one() << k.unsigned_abs());
        let y = if k >= 0 { x / two_k } else { x * two_k };
        let s = (&y - Rational::one()) / (&y + Rational::one());
        self.atanh(&self.to_fixed(&s)) * 2 + self.ln2() * k
    }

    /// `exp(a)` as an exact rational built from `2^m * exp(r)`, `|r| <= ln 2`.
    fn exp(&self, a: &BigInt) -> Rational {
        let ln2 = self.ln2();
        let m = a.div_floor(&ln2);
        let r = a - &m * &ln2;
        let mut term = self.one.clone();
        let mut sum = self.one.clone();
        let mut j = 1u64;
        loop {
            term = self.mul(&term, &r) / BigInt::from(j);
            if term.is_zero() {
                break;
            }
            sum += &term;
            j += 1;
        }
        let m = m.to_i64().expect("exponent out of range");
        let pow2 = Rational::from_integer(BigInt::one() << m.unsigned_abs());
        let base = self.to_rational(&sum);
        if m < 0 {
            base / pow2
        } else {
            base * pow2
        }
    }
}

/// `x^(-n)` for `x > 0`, rounded to `digits` significant digits.
pub fn pow_neg(x: &Rational, n: &Rational, digits: u32) -> Rational {
    assert!(x.is_positive(), "pow_neg requires a positive base");
    // the exponent magnitude eats into absolute precision of the argument
    let mag = (n.abs() * Rational::from_integer(BigInt::from(x.numer().bits().max(x.denom().bits()))))
        .ceil()
        .to_integer()
        .to_string()
        .len() as u32;
    let fx = Fixed::new(digits + GUARD_DIGITS + mag);
    let ln_x = fx.ln(x);
    let a = -(ln_x * n.numer()).div_floor(n.denom());
    round_significant(&fx.exp(&a), digits)
}
