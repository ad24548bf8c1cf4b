//! Tail engines for `X(x) + X(x+1) + ...` (Euler-Maclaurin) and
//! `X(x) - X(x+1) + ...` (Boole), and the split-sum assembly
//! `Σ_{start <= m < split} X(m) + tail(split)`.
//!
//! Both tails are asymptotic series in the odd derivatives of `X`. Under
//! [`TruncationPolicy::SmallestTerm`] the scan stops once the term
//! magnitudes have grown twice in a row and keeps everything up to the
//! smallest term seen. The reported error estimate is the magnitude of the
//! first omitted term: a heuristic, not a bound.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coefficients::{boole_weights_via, em_weights, BooleWeightPath};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::term::{NumericMode, TermFunction, Value};

/// Stopping rule for the derivative series. Orders count derivatives, so
/// `FixedOrder(2)` keeps the `X`, `∂X` and `∂²X` slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationPolicy {
    FixedOrder(usize),
    SmallestTerm { max_order: usize },
}

impl TruncationPolicy {
    pub fn max_order(self) -> usize {
        match self {
            TruncationPolicy::FixedOrder(k) | TruncationPolicy::SmallestTerm { max_order: k } => k,
        }
    }

    fn validate(self) -> Result<usize> {
        let k = self.max_order();
        if k == 0 {
            Err(Error::InvalidPolicy("truncation order must be at least 1".into()))
        } else {
            Ok(k)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermRecord {
    /// Derivative order.
    pub order: usize,
    pub weight: Rational,
    /// `weight * X^(order)(x0)`.
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummationReport {
    pub value: Value,
    pub mode: NumericMode,
    /// Finite head `Σ ±X(m)` before the split point; zero for a bare tail.
    pub head: Value,
    /// `∫_split^∞ X dx`, present for the direct engine only.
    pub integral: Option<Value>,
    /// `+1`, or `-1` when an alternating tail starts on an odd offset.
    pub tail_sign: i8,
    /// Included nonzero-weight terms, in derivative order.
    pub terms: Vec<TermRecord>,
    /// Derivative order of the last included term.
    pub k_star: usize,
    pub error_estimate: Value,
    /// The term magnitudes turned upward before the scan ended.
    pub diverged_before_converging: bool,
    pub split_point: Rational,
    pub alternating: bool,
}

impl SummationReport {
    /// `integral + Σ terms`.
    pub fn tail_value(&self) -> Result<Value> {
        let mut acc = self.integral.clone().unwrap_or_else(|| Value::zero(self.mode));
        for t in &self.terms {
            acc = acc.add(&t.value)?;
        }
        Ok(acc)
    }

    /// Rebuilds `value` from the trace, in the same operation order the
    /// engine used.
    pub fn recompute_value(&self) -> Result<Value> {
        let tail = self.tail_value()?;
        let signed = if self.tail_sign < 0 { tail.neg() } else { tail };
        self.head.add(&signed)
    }

    pub fn terms_used(&self) -> usize {
        self.terms.len()
    }

    pub fn term_magnitudes(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.value.abs().to_f64()).collect()
    }
}

fn expect_mode(v: Value, mode: NumericMode) -> Result<Value> {
    if v.mode() == mode {
        Ok(v)
    } else {
        Err(Error::MixedModes { expected: mode.name(), got: v.mode().name() })
    }
}

struct Scan {
    terms: Vec<TermRecord>,
    k_star: usize,
    error_estimate: Value,
    diverged: bool,
}

/// Walks `weights[k] * X^(k)(x0)` for `k = 0..=K` under `policy`.
fn scan_terms(
    f: &dyn TermFunction,
    x0: &Rational,
    policy: TruncationPolicy,
    weights: &[Rational],
) -> Result<Scan> {
    let max_k = policy.validate()?;
    if weights.is_empty() {
        return Err(Error::InvalidPolicy("empty weight table".into()));
    }
    let mode = f.mode();
    let term_at = |k: usize| -> Result<Value> {
        Ok(expect_mode(f.derivative(k, x0)?, mode)?.scale(&weights[k]))
    };
    let limit = max_k.min(weights.len() - 1);

    let mut scanned: Vec<TermRecord> = Vec::new();
    let mut rises = 0usize;
    let mut diverged = false;
    for k in 0..=limit {
        if weights[k].is_zero() {
            continue;
        }
        let value = term_at(k)?;
        if let Some(prev) = scanned.last() {
            if value.cmp_abs(&prev.value).is_gt() {
                rises += 1;
            } else {
                rises = 0;
            }
        }
        scanned.push(TermRecord { order: k, weight: weights[k].clone(), value });
        if rises >= 2 {
            diverged = true;
            if matches!(policy, TruncationPolicy::SmallestTerm { .. }) {
                break;
            }
        }
    }

    let keep = match policy {
        TruncationPolicy::FixedOrder(_) => scanned.len(),
        TruncationPolicy::SmallestTerm { .. } => {
            // earliest global minimum
            let mut best = 0;
            for (i, t) in scanned.iter().enumerate() {
                if t.value.cmp_abs(&scanned[best].value).is_lt() {
                    best = i;
                }
            }
            best + 1
        }
    };
    let omitted = scanned.split_off(keep);
    let error_estimate = match omitted.first() {
        Some(t) => t.value.abs(),
        None => {
            let last = scanned.last().map(|t| t.order).unwrap_or(0);
            match (last + 1..weights.len()).find(|&k| !weights[k].is_zero()) {
                Some(k) => term_at(k)?.abs(),
                None => Value::zero(mode),
            }
        }
    };
    let k_star = scanned.last().map(|t| t.order).unwrap_or(0);
    Ok(Scan { terms: scanned, k_star, error_estimate, diverged })
}

fn assemble(
    f: &dyn TermFunction,
    x0: &Rational,
    scan: Scan,
    integral: Option<Value>,
    alternating: bool,
) -> Result<SummationReport> {
    let mode = f.mode();
    let mut value = integral.clone().unwrap_or_else(|| Value::zero(mode));
    for t in &scan.terms {
        value = value.add(&t.value)?;
    }
    Ok(SummationReport {
        value,
        mode,
        head: Value::zero(mode),
        integral,
        tail_sign: 1,
        terms: scan.terms,
        k_star: scan.k_star,
        error_estimate: scan.error_estimate,
        diverged_before_converging: scan.diverged,
        split_point: x0.clone(),
        alternating,
    })
}

fn weight_count(policy: TruncationPolicy) -> usize {
    // room for the first omitted nonzero term after the bound
    policy.max_order() + 3
}

/// `X(x0) + X(x0+1) + ... ≈ ∫_x0^∞ X + X/2 - A/2 ∂X + B/8 ∂³X - ...`.
pub fn em_tail(f: &dyn TermFunction, x0: &Rational, policy: TruncationPolicy) -> Result<SummationReport> {
    if !f.supports_tail_integral() {
        return Err(Error::DivergentTail(format!(
            "{} has no convergent tail integral",
            f.description()
        )));
    }
    policy.validate()?;
    let integral = expect_mode(f.tail_integral(x0)?, f.mode())?;
    let weights = em_weights(weight_count(policy))?;
    let scan = scan_terms(f, x0, policy, &weights.values)?;
    assemble(f, x0, scan, Some(integral), false)
}

/// `X(x0) - X(x0+1) + X(x0+2) - ... ≈ X/2 - ∂X/4 + 𝔄/16 ∂³X - ...`.
pub fn boole_tail(f: &dyn TermFunction, x0: &Rational, policy: TruncationPolicy) -> Result<SummationReport> {
    boole_tail_with(f, x0, policy, BooleWeightPath::Tangent)
}

/// [`boole_tail`] with an explicit choice of weight construction.
pub fn boole_tail_with(
    f: &dyn TermFunction,
    x0: &Rational,
    policy: TruncationPolicy,
    path: BooleWeightPath,
) -> Result<SummationReport> {
    policy.validate()?;
    let weights = boole_weights_via(path, weight_count(policy))?;
    let scan = scan_terms(f, x0, policy, &weights.values)?;
    assemble(f, x0, scan, None, true)
}

/// `Σ_{m=start}^{split-1} (±)X(m)` plus the matching tail at `split`.
///
/// In alternating mode the head signs start at `+` on `start`, so the tail
/// enters with sign `(-1)^(split - start)`.
pub fn split_sum(
    f: &dyn TermFunction,
    start: &Rational,
    split: &Rational,
    policy: TruncationPolicy,
    alternating: bool,
) -> Result<SummationReport> {
    let gap = split - start;
    if gap.is_negative() || !gap.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "split {split} must lie a whole number of unit steps at or after start {start}"
        )));
    }
    let mode = f.mode();
    let mut tail = if alternating {
        boole_tail(f, split, policy)?
    } else {
        em_tail(f, split, policy)?
    };

    let mut head = Value::zero(mode);
    let mut m = start.clone();
    let mut positive = true;
    while &m < split {
        let v = expect_mode(f.eval(&m)?, mode)?;
        head = if positive || !alternating { head.add(&v)? } else { head.sub(&v)? };
        positive = !positive;
        m += Rational::one();
    }
    let odd_gap = gap.to_integer().is_odd();
    let tail_sign: i8 = if alternating && odd_gap { -1 } else { 1 };
    let signed_tail = if tail_sign < 0 { tail.value.neg() } else { tail.value.clone() };
    tail.value = head.add(&signed_tail)?;
    tail.head = head;
    tail.tail_sign = tail_sign;
    Ok(tail)
}

/// Shorthand for `split_sum` starting at 1 with an integer split.
pub fn split_sum_from_one(
    f: &dyn TermFunction,
    split: i64,
    policy: TruncationPolicy,
    alternating: bool,
) -> Result<SummationReport> {
    split_sum(f, &int(1), &int(split), policy, alternating)
}
