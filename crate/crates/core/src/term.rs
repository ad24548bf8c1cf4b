//! Term functions `X(x)`: value, derivatives of any order, and the tail
//! integral `∫_x^∞ X dx`, plus the numeric [`Value`] they produce.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::approx;
use crate::error::{Error, Result};
use crate::rational::{frac, int, pow_i, render_decimal, round_significant, to_f64, Rational};

pub const DEFAULT_DIGITS: u32 = 60;

/// How a summation run does arithmetic. Fixed for the whole run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericMode {
    Exact,
    /// Decimal arithmetic rounded to this many significant digits.
    Approx { digits: u32 },
}

impl NumericMode {
    pub fn name(self) -> &'static str {
        match self {
            NumericMode::Exact => "exact",
            NumericMode::Approx { .. } => "approx",
        }
    }
}

/// A number produced by a term function. Approximate values are stored as
/// rationals already rounded to their digit budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Rational),
    Approx { value: Rational, digits: u32 },
}

impl Value {
    pub fn zero(mode: NumericMode) -> Self {
        Self::from_rational(Rational::zero(), mode)
    }

    /// Wraps `r` in `mode`, rounding when the mode is approximate.
    pub fn from_rational(r: Rational, mode: NumericMode) -> Self {
        match mode {
            NumericMode::Exact => Value::Exact(r),
            NumericMode::Approx { digits } => Value::Approx { value: round_significant(&r, digits), digits },
        }
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            Value::Exact(_) => NumericMode::Exact,
            Value::Approx { digits, .. } => NumericMode::Approx { digits: *digits },
        }
    }

    pub fn as_rational(&self) -> &Rational {
        match self {
            Value::Exact(r) | Value::Approx { value: r, .. } => r,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_zero()
    }

    pub fn abs(&self) -> Value {
        self.map(|r| r.abs())
    }

    pub fn neg(&self) -> Value {
        self.map(|r| -r)
    }

    pub fn scale(&self, c: &Rational) -> Value {
        self.map(|r| r * c)
    }

    fn map(&self, f: impl FnOnce(&Rational) -> Rational) -> Value {
        Value::from_rational(f(self.as_rational()), self.mode())
    }

    fn check_same(&self, other: &Value) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::MixedModes { expected: self.mode().name(), got: other.mode().name() })
        }
    }

    pub fn add(&self, other: &Value) -> Result<Value> {
        self.check_same(other)?;
        Ok(self.map(|r| r + other.as_rational()))
    }

    pub fn sub(&self, other: &Value) -> Result<Value> {
        self.check_same(other)?;
        Ok(self.map(|r| r - other.as_rational()))
    }

    pub fn cmp_abs(&self, other: &Value) -> Ordering {
        self.as_rational().abs().cmp(&other.as_rational().abs())
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(self.as_rational())
    }

    pub fn render(&self, digits: u32) -> String {
        render_decimal(self.as_rational(), digits)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Approx { value, digits } => f.write_str(&render_decimal(value, *digits)),
        }
    }
}

/// The function `X(x)` whose values at `x, x+1, x+2, ...` are summed.
pub trait TermFunction: Send + Sync {
    /// Numeric mode of every value this provider returns.
    fn mode(&self) -> NumericMode;

    fn eval(&self, x: &Rational) -> Result<Value> {
        self.derivative(0, x)
    }

    /// `d^k X / dx^k` at `x`.
    fn derivative(&self, k: usize, x: &Rational) -> Result<Value>;

    /// `∫_x^∞ X dx`, with the constant chosen so it vanishes at infinity.
    fn tail_integral(&self, x: &Rational) -> Result<Value>;

    fn supports_tail_integral(&self) -> bool;

    fn description(&self) -> String;
}

/// `X(x) = 1 / x^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversePower {
    exponent: Rational,
    digits: u32,
}

pub fn inverse_power(n: Rational) -> Result<InversePower> {
    InversePower::new(n)
}

impl InversePower {
    pub fn new(exponent: Rational) -> Result<Self> {
        if !exponent.is_positive() {
            return Err(Error::InvalidArgument(format!("exponent must be positive, got {exponent}")));
        }
        Ok(Self { exponent, digits: DEFAULT_DIGITS })
    }

    /// Digit budget for the approximate mode (non-integer exponents).
    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits.max(1);
        self
    }

    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }

    fn check_domain(&self, x: &Rational) -> Result<()> {
        if x.is_positive() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("1/x^n needs x > 0, got {x}")))
        }
    }

    /// `x^-n` in this provider's mode.
    fn inverse_pow(&self, x: &Rational) -> Value {
        match self.mode() {
            NumericMode::Exact => Value::Exact(pow_i(x, -int_exponent(&self.exponent))),
            NumericMode::Approx { digits } => {
                Value::Approx { value: approx::pow_neg(x, &self.exponent, digits), digits }
            }
        }
    }
}

fn int_exponent(n: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    n.to_integer().to_i64().expect("exponent out of range")
}

impl TermFunction for InversePower {
    fn mode(&self) -> NumericMode {
        if self.exponent.is_integer() {
            NumericMode::Exact
        } else {
            NumericMode::Approx { digits: self.digits }
        }
    }

    /// `(-1)^k n(n+1)...(n+k-1) / x^(n+k)`.
    fn derivative(&self, k: usize, x: &Rational) -> Result<Value> {
        self.check_domain(x)?;
        let rising = (0..k).fold(Rational::one(), |acc, j| acc * (&self.exponent + int(j as i64)));
        let signed = if k.is_multiple_of(2) { rising } else { -rising };
        let factor = signed * pow_i(x, -(k as i64));
        Ok(self.inverse_pow(x).scale(&factor))
    }

    /// `1 / ((n-1) x^(n-1))`, defined for `n > 1`.
    fn tail_integral(&self, x: &Rational) -> Result<Value> {
        if !self.supports_tail_integral() {
            return Err(Error::DivergentTail(format!(
                "the sum of 1/x^n diverges for n = {} <= 1 (n = 1 is the harmonic series)",
                self.exponent
            )));
        }
        self.check_domain(x)?;
        let factor = x / (&self.exponent - int(1));
        Ok(self.inverse_pow(x).scale(&factor))
    }

    fn supports_tail_integral(&self) -> bool {
        self.exponent > Rational::one()
    }

    fn description(&self) -> String {
        format!("1/x^{}", self.exponent)
    }
}

/// `X(x) = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroFunction;

impl TermFunction for ZeroFunction {
    fn mode(&self) -> NumericMode {
        NumericMode::Exact
    }

    fn derivative(&self, _k: usize, _x: &Rational) -> Result<Value> {
        Ok(Value::Exact(Rational::zero()))
    }

    fn tail_integral(&self, _x: &Rational) -> Result<Value> {
        Ok(Value::Exact(Rational::zero()))
    }

    fn supports_tail_integral(&self) -> bool {
        true
    }

    fn description(&self) -> String {
        "0".into()
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * frac((n - j) as i64, (j + 1) as i64))
}

/// `|f^(k)(x) - δ_h^k f(x) / h^k|`, where `δ_h^k` is the k-th central
/// difference with nodes `x + (k/2 - j) h`.
pub fn fd_derivative_check(f: &dyn TermFunction, k: usize, x: &Rational, h: &Rational) -> Result<Value> {
    if !h.is_positive() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("finite-difference check needs k >= 1".into()));
    }
    let mode = f.mode();
    let half_k = frac(k as i64, 2);
    let mut diff = Value::zero(mode);
    for j in 0..=k {
        let node = x + (&half_k - int(j as i64)) * h;
        let mut c = binomial(k, j);
        if j % 2 == 1 {
            c = -c;
        }
        diff = diff.add(&f.eval(&node)?.scale(&c))?;
    }
    let fd = diff.scale(&pow_i(h, -(k as i64)));
    Ok(f.derivative(k, x)?.sub(&fd)?.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> InversePower {
        inverse_power(int(v)).unwrap()
    }

    #[test]
    fn inverse_square_values() {
        let f = n(2);
        assert_eq!(f.derivative(1, &int(10)).unwrap(), Value::Exact(frac(-1, 500)));
        assert_eq!(f.tail_integral(&int(10)).unwrap(), Value::Exact(frac(1, 10)));
        assert_eq!(f.eval(&int(3)).unwrap(), Value::Exact(frac(1, 9)));
        assert_eq!(f.derivative(3, &int(2)).unwrap(), Value::Exact(frac(-24, 32)));
    }

    #[test]
    fn harmonic_tail_diverges() {
        let f = n(1);
        assert!(!f.supports_tail_integral());
        assert!(matches!(f.tail_integral(&int(10)), Err(Error::DivergentTail(_))));
    }

    #[test]
    fn rejects_bad_exponent_and_abscissa() {
        assert!(inverse_power(int(0)).is_err());
        assert!(inverse_power(int(-2)).is_err());
        assert!(n(2).eval(&int(0)).is_err());
        assert!(n(2).derivative(2, &int(-3)).is_err());
    }

    #[test]
    fn fractional_exponent_is_approx() {
        let f = inverse_power(frac(3, 2)).unwrap().with_digits(30);
        assert_eq!(f.mode(), NumericMode::Approx { digits: 30 });
        let v = f.eval(&int(4)).unwrap();
        assert_eq!(v.as_rational(), &frac(1, 8));
        // ∫_4^∞ x^{-3/2} = 2/sqrt(4) = 1
        assert_eq!(f.tail_integral(&int(4)).unwrap().as_rational(), &int(1));
    }

    #[test]
    fn fd_check_first_derivative() {
        let r = fd_derivative_check(&n(2), 1, &int(10), &frac(1, 1000)).unwrap();
        assert!(r.as_rational() < &frac(1, 100_000));
        assert!(r.exact().is_some());
    }

    #[test]
    fn fd_check_zero_provider() {
        let r = fd_derivative_check(&ZeroFunction, 3, &int(1), &frac(1, 10)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn fd_check_second_order_accuracy() {
        let f = n(3);
        let h = frac(1, 100);
        let r1 = fd_derivative_check(&f, 2, &int(5), &h).unwrap();
        let r2 = fd_derivative_check(&f, 2, &int(5), &(h / int(2))).unwrap();
        let ratio = r1.to_f64() / r2.to_f64();
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn fd_check_rejects_bad_step() {
        assert!(fd_derivative_check(&n(2), 1, &int(10), &int(0)).is_err());
        assert!(fd_derivative_check(&n(2), 0, &int(10), &int(1)).is_err());
    }

    #[test]
    fn mixed_modes_refused() {
        let a = Value::Exact(int(1));
        let b = Value::from_rational(int(1), NumericMode::Approx { digits: 10 });
        assert!(matches!(a.add(&b), Err(Error::MixedModes { .. })));
    }
}
