//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! Every export returns a JSON string; the plain `*_json` functions hold the
//! logic so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tailsum::coefficients::{self, CoefficientKind};
use tailsum::rational::{int, parse_rational, render_decimal, to_f64};
use tailsum::summation::{split_sum, SummationReport, TruncationPolicy};
use tailsum::term::inverse_power;

#[derive(Serialize)]
struct TableRow {
    index: usize,
    num: String,
    den: String,
    approx: f64,
}

#[derive(Serialize)]
struct TermPoint {
    order: usize,
    log10_magnitude: f64,
    included: bool,
}

#[derive(Serialize)]
struct Trace {
    value: String,
    head: String,
    k_star: usize,
    error_estimate: f64,
    mode: String,
    diverged: bool,
    points: Vec<TermPoint>,
}

#[derive(Serialize)]
struct SplitPoint {
    split: i64,
    value: String,
    error_estimate: f64,
    k_star: usize,
}

fn log10_abs(v: &tailsum::Rational) -> f64 {
    if v == &tailsum::Rational::default() {
        f64::NEG_INFINITY
    } else {
        let e = tailsum::rational::floor_log10(v) as f64;
        let mantissa = to_f64(&tailsum::rational::scale10(v, -(e as i64))).abs();
        e + mantissa.log10()
    }
}

fn run(exponent: &str, split: i64, alternating: bool, policy: TruncationPolicy) -> Result<SummationReport, String> {
    let n = parse_rational(exponent).map_err(|e| e.to_string())?;
    let f = inverse_power(n).map_err(|e| e.to_string())?.with_digits(40);
    split_sum(&f, &int(1), &int(split), policy, alternating).map_err(|e| e.to_string())
}

/// Coefficient table as JSON rows.
pub fn coefficients_json(kind: &str, count: usize) -> Result<String, String> {
    let kind: CoefficientKind = kind.parse().map_err(|e: tailsum::Error| e.to_string())?;
    if count > 200 {
        return Err("count is capped at 200 in the demo".into());
    }
    let table = coefficients::table(kind, count).map_err(|e| e.to_string())?;
    let rows: Vec<TableRow> = table
        .values
        .iter()
        .enumerate()
        .map(|(index, v)| TableRow {
            index,
            num: v.numer().to_string(),
            den: v.denom().to_string(),
            approx: to_f64(v),
        })
        .collect();
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// Sum of `±1/m^n` from `m = 1` with the full term-magnitude trace up to
/// `max_order`, marking which terms the smallest-term rule keeps.
pub fn trace_json(exponent: &str, split: i64, alternating: bool, max_order: usize, digits: u32) -> Result<String, String> {
    let kept = run(exponent, split, alternating, TruncationPolicy::SmallestTerm { max_order })?;
    let full = run(exponent, split, alternating, TruncationPolicy::FixedOrder(max_order))?;
    let points = full
        .terms
        .iter()
        .map(|t| TermPoint {
            order: t.order,
            log10_magnitude: log10_abs(t.value.as_rational()),
            included: t.order <= kept.k_star,
        })
        .collect();
    let trace = Trace {
        value: kept.value.render(digits),
        head: kept.head.render(digits),
        k_star: kept.k_star,
        error_estimate: kept.error_estimate.to_f64(),
        mode: kept.mode.name().into(),
        diverged: kept.diverged_before_converging,
        points,
    };
    serde_json::to_string(&trace).map_err(|e| e.to_string())
}

/// The same sum at every split point in `from..=to`.
pub fn split_scan_json(exponent: &str, alternating: bool, from: i64, to: i64, digits: u32) -> Result<String, String> {
    if from < 1 || to < from || to - from > 60 {
        return Err("split range must satisfy 1 <= from <= to <= from + 60".into());
    }
    let rows = (from..=to)
        .map(|split| {
            let r = run(exponent, split, alternating, TruncationPolicy::SmallestTerm { max_order: 200 })?;
            Ok(SplitPoint {
                split,
                value: render_decimal(r.value.as_rational(), digits),
                error_estimate: r.error_estimate.to_f64(),
                k_star: r.k_star,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn coefficients(kind: &str, count: usize) -> Result<String, JsValue> {
    coefficients_json(kind, count).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn trace(exponent: &str, split: i32, alternating: bool, max_order: usize, digits: u32) -> Result<String, JsValue> {
    trace_json(exponent, split as i64, alternating, max_order, digits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn split_scan(exponent: &str, alternating: bool, from: i32, to: i32, digits: u32) -> Result<String, JsValue> {
    split_scan_json(exponent, alternating, from as i64, to as i64, digits).map_err(|e| JsValue::from_str(&e))
}
