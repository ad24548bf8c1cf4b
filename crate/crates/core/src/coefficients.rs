//! Coefficient families and the summation weights derived from them.
//!
//! The production path is the pair of quadratic recurrences obtained by
//! matching powers of `t` in `du/dt + u*u - 1 = 0`:
//!
//! * bernoulli-like `A, B, C, ...` from `u = 1/t + 2At - 2Bt^3 + 2Ct^5 - ...`,
//!   giving `6A = 1` and `(4k+2) T_k = 4 * sum_{i+j=k} T_i T_j`;
//! * tangent-like `𝔄, 𝔅, ℭ, ...` from `u = t - 𝔄t^3 + 𝔅t^5 - ...`, giving
//!   `(2m+1) T_m = sum_{a+b=m-1} T_a T_b` with `T_0 = 1`.
//!
//! The power-series reciprocals in [`crate::power_series`] are kept as the
//! independent verification path; [`cross_check`] compares the two.
//!
//! Values printed with a typo in the historical tables (`D = 1/9540`,
//! `𝔄 = 1/2`) are not reproduced: the recurrences give `D = 1/9450` and
//! `𝔄 = 1/3`, and both agree with the series path.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::power_series::{boole_aux, em_aux, ode_residual, ps_reciprocal, LaurentLike, PowerSeries};
use crate::rational::{frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientKind {
    BernoulliLike,
    TangentLike,
    EmWeight,
    BooleWeight,
}

impl CoefficientKind {
    pub const ALL: [CoefficientKind; 4] = [
        CoefficientKind::BernoulliLike,
        CoefficientKind::TangentLike,
        CoefficientKind::EmWeight,
        CoefficientKind::BooleWeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoefficientKind::BernoulliLike => "bernoulli-like",
            CoefficientKind::TangentLike => "tangent-like",
            CoefficientKind::EmWeight => "em-weights",
            CoefficientKind::BooleWeight => "boole-weights",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CoefficientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoefficientKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown coefficient kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub kind: CoefficientKind,
    pub values: Vec<Rational>,
}

impl CoefficientTable {
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

/// Which construction to use for the alternating weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BooleWeightPath {
    /// `(-1)^k T_{k-1} / 4^k` from the tangent-like table.
    #[default]
    Tangent,
    /// `(2^{2k} - 1)` times the matching Euler-Maclaurin weight.
    RatioFactors,
}

// ---------------------------------------------------------------------------
// recurrences

fn extend_bernoulli_like(values: &mut Vec<Rational>, count: usize) {
    let four = int(4);
    while values.len() < count {
        let k = values.len() + 1;
        let next = if k == 1 {
            frac(1, 6)
        } else {
            let conv = (1..k).fold(Rational::zero(), |acc, i| acc + &values[i - 1] * &values[k - i - 1]);
            &four * conv / int(4 * k as i64 + 2)
        };
        values.push(next);
    }
}

fn extend_tangent_like(values: &mut Vec<Rational>, count: usize) {
    // values[m - 1] holds T_m; T_0 = 1 is implicit
    let t = |vals: &[Rational], m: usize| if m == 0 { Rational::one() } else { vals[m - 1].clone() };
    while values.len() < count {
        let m = values.len() + 1;
        let conv = (0..m).fold(Rational::zero(), |acc, a| acc + t(values, a) * t(values, m - 1 - a));
        values.push(conv / int(2 * m as i64 + 1));
    }
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// Euler-Maclaurin weight at derivative order `index`.
fn em_weight_at(index: usize, bernoulli: &[Rational]) -> Rational {
    match index {
        0 => frac(1, 2),
        i if i % 2 == 0 => Rational::zero(),
        i => {
            let k = i.div_ceil(2);
            sign(k) * &bernoulli[k - 1] / pow2(2 * k - 1)
        }
    }
}

/// Boole weight at derivative order `index`.
fn boole_weight_at(index: usize, tangent: &[Rational]) -> Rational {
    match index {
        0 => frac(1, 2),
        i if i % 2 == 0 => Rational::zero(),
        i => {
            let k = i.div_ceil(2);
            let t = if k == 1 { Rational::one() } else { tangent[k - 2].clone() };
            sign(k) * t / pow2(2 * k)
        }
    }
}

fn ratio_factor(k: usize) -> Rational {
    pow2(2 * k) - int(1)
}

// ---------------------------------------------------------------------------
// cache

struct TableCache {
    slots: [RwLock<Vec<Rational>>; 4],
}

static CACHE: TableCache = TableCache {
    slots: [
        RwLock::new(Vec::new()),
        RwLock::new(Vec::new()),
        RwLock::new(Vec::new()),
        RwLock::new(Vec::new()),
    ],
};

fn extend(kind: CoefficientKind, values: &mut Vec<Rational>, count: usize) {
    match kind {
        CoefficientKind::BernoulliLike => extend_bernoulli_like(values, count),
        CoefficientKind::TangentLike => extend_tangent_like(values, count),
        CoefficientKind::EmWeight => {
            let bern = cached(CoefficientKind::BernoulliLike, count.div_ceil(2));
            values.extend((values.len()..count).map(|i| em_weight_at(i, &bern)));
        }
        CoefficientKind::BooleWeight => {
            let tan = cached(CoefficientKind::TangentLike, count.div_ceil(2));
            values.extend((values.len()..count).map(|i| boole_weight_at(i, &tan)));
        }
    }
}

/// Prefix of length `count` from the process-wide cache, extending it first
/// when needed. Published prefixes are never recomputed; racing extenders
/// compute identical values and the longer result wins.
fn cached(kind: CoefficientKind, count: usize) -> Vec<Rational> {
    let slot = &CACHE.slots[kind.slot()];
    let mut prefix = {
        let guard = slot.read().unwrap_or_else(|e| e.into_inner());
        if guard.len() >= count {
            return guard[..count].to_vec();
        }
        guard.clone()
    };
    extend(kind, &mut prefix, count);
    let mut guard = slot.write().unwrap_or_else(|e| e.into_inner());
    if guard.len() < prefix.len() {
        *guard = prefix.clone();
    }
    prefix.truncate(count);
    prefix
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        Err(Error::InvalidArgument("count must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn table(kind: CoefficientKind, count: usize) -> Result<CoefficientTable> {
    check_count(count)?;
    Ok(CoefficientTable { kind, values: cached(kind, count) })
}

/// `(A, B, C, D, E, ...)`.
pub fn bernoulli_like(count: usize) -> Result<CoefficientTable> {
    table(CoefficientKind::BernoulliLike, count)
}

/// `(𝔄, 𝔅, ℭ, 𝔇, ...)`.
pub fn tangent_like(count: usize) -> Result<CoefficientTable> {
    table(CoefficientKind::TangentLike, count)
}

/// Signed Euler-Maclaurin weights indexed by derivative order:
/// `1/2, -A/2, 0, B/8, 0, -C/32, ...`.
pub fn em_weights(count: usize) -> Result<CoefficientTable> {
    table(CoefficientKind::EmWeight, count)
}

/// Signed Boole weights indexed by derivative order:
/// `1/2, -1/4, 0, 𝔄/16, 0, -𝔅/64, ...`.
pub fn boole_weights(count: usize) -> Result<CoefficientTable> {
    table(CoefficientKind::BooleWeight, count)
}

pub fn boole_weights_via(path: BooleWeightPath, count: usize) -> Result<CoefficientTable> {
    match path {
        BooleWeightPath::Tangent => boole_weights(count),
        BooleWeightPath::RatioFactors => {
            let em = em_weights(count)?;
            Ok(CoefficientTable {
                kind: CoefficientKind::BooleWeight,
                values: boole_from_em(&em.values),
            })
        }
    }
}

/// Alternating weights rebuilt from direct ones through the `2^{2k} - 1`
/// factors.
pub fn boole_from_em(em: &[Rational]) -> Vec<Rational> {
    em.iter()
        .enumerate()
        .map(|(i, w)| match i {
            0 => w.clone(),
            i if i % 2 == 0 => Rational::zero(),
            i => ratio_factor(i.div_ceil(2)) * w,
        })
        .collect()
}

/// Entry `k - 1` is `boole[2k-1] / em[2k-1]` for `k = 1..=count`.
pub fn weight_ratio_table(count: usize) -> Result<Vec<Rational>> {
    check_count(count)?;
    let em = em_weights(2 * count)?;
    let boole = boole_weights(2 * count)?;
    weight_ratios(&em.values, &boole.values, count)
}

pub fn weight_ratios(em: &[Rational], boole: &[Rational], count: usize) -> Result<Vec<Rational>> {
    (1..=count)
        .map(|k| {
            let i = 2 * k - 1;
            let (e, b) = match (em.get(i), boole.get(i)) {
                (Some(e), Some(b)) => (e, b),
                _ => return Err(Error::InvalidArgument(format!("weight tables shorter than {}", i + 1))),
            };
            if e.is_zero() {
                return Err(Error::InternalInconsistency(format!("zero direct weight at derivative order {i}")));
            }
            Ok(b / e)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// series built from the tables

/// `u = 1/t + 2At - 2Bt^3 + 2Ct^5 - ...` with `regular_order` regular
/// coefficients.
pub fn case1_u(bernoulli: &[Rational], regular_order: usize) -> Result<LaurentLike> {
    let needed = regular_order / 2;
    if bernoulli.len() < needed {
        return Err(Error::InvalidArgument(format!("need {needed} bernoulli-like entries")));
    }
    let coeffs = (0..regular_order)
        .map(|i| {
            if i % 2 == 0 {
                Rational::zero()
            } else {
                let k = i.div_ceil(2);
                sign(k + 1) * int(2) * &bernoulli[k - 1]
            }
        })
        .collect();
    Ok(LaurentLike::new(Rational::one(), PowerSeries::new(coeffs)))
}

/// `u = t - 𝔄t^3 + 𝔅t^5 - ...` with `regular_order` coefficients.
pub fn case2_u(tangent: &[Rational], regular_order: usize) -> Result<LaurentLike> {
    let needed = regular_order.saturating_sub(2) / 2;
    if tangent.len() < needed {
        return Err(Error::InvalidArgument(format!("need {needed} tangent-like entries")));
    }
    let coeffs = (0..regular_order)
        .map(|i| match i {
            1 => Rational::one(),
            i if i % 2 == 0 => Rational::zero(),
            i => {
                let k = i.div_ceil(2);
                sign(k + 1) * &tangent[k - 2]
            }
        })
        .collect();
    Ok(LaurentLike::new(Rational::zero(), PowerSeries::new(coeffs)))
}

// ---------------------------------------------------------------------------
// cross check

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.outcomes.push(CheckOutcome { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.outcomes.extend(other.outcomes);
    }
}

/// The four coefficient families a cross check runs against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSet {
    pub bernoulli: Vec<Rational>,
    pub tangent: Vec<Rational>,
    pub em: Vec<Rational>,
    pub boole: Vec<Rational>,
}

impl TableSet {
    /// Tables sized for a cross check at series order `order`.
    pub fn for_order(order: usize) -> Result<Self> {
        let half = order.div_ceil(2).max(1);
        Ok(Self {
            bernoulli: bernoulli_like(half)?.values,
            tangent: tangent_like(half)?.values,
            em: em_weights(order.max(1))?.values,
            boole: boole_weights(order.max(1))?.values,
        })
    }
}

fn first_mismatch(a: &[Rational], b: &[Rational]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// Compares the recurrence tables against the power-series construction at
/// series order `order`. Failures are reported, never raised.
pub fn cross_check(order: usize) -> CheckReport {
    match TableSet::for_order(order) {
        Ok(tables) => cross_check_tables(order, &tables),
        Err(e) => {
            let mut report = CheckReport::default();
            report.push("tables", false, e.to_string());
            report
        }
    }
}

pub fn cross_check_tables(order: usize, tables: &TableSet) -> CheckReport {
    let mut report = CheckReport::default();
    if order < 2 {
        report.push("order", false, format!("order {order} < 2"));
        return report;
    }
    if let Err(e) = run_checks(order, tables, &mut report) {
        report.push("cross-check", false, e.to_string());
    }
    report
}

fn run_checks(order: usize, tables: &TableSet, report: &mut CheckReport) -> Result<()> {
    // (a) EM weights against z/(e^z - 1): weight[k] = -[z^{k+1}] V
    let v_em = ps_reciprocal(&em_aux(order)?)?;
    let from_series: Vec<Rational> = v_em.coeffs()[1..].iter().map(|c| -c).collect();
    let n = (order - 1).min(tables.em.len());
    let mismatch = first_mismatch(&tables.em[..n], &from_series[..n]);
    report.push(
        "em-weights vs 1/((e^z-1)/z)",
        mismatch.is_none(),
        match mismatch {
            None => format!("{n} weights agree"),
            Some(i) => format!("index {i}: table {} != series {}", tables.em[i], from_series[i]),
        },
    );

    // (b) Boole weights against 1/(1 + e^z)
    let v_alt = ps_reciprocal(&boole_aux(order)?)?;
    let n = order.min(tables.boole.len());
    let mismatch = first_mismatch(&tables.boole[..n], &v_alt.coeffs()[..n]);
    report.push(
        "boole-weights vs 1/(1+e^z)",
        mismatch.is_none(),
        match mismatch {
            None => format!("{n} weights agree"),
            Some(i) => format!("index {i}: table {} != series {}", tables.boole[i], v_alt.coeffs()[i]),
        },
    );

    // (c) ratio law and the ratio-factor construction of the Boole weights
    let pairs = tables.em.len().min(tables.boole.len()) / 2;
    let ratio_result = weight_ratios(&tables.em, &tables.boole, pairs);
    let (ok, detail) = match &ratio_result {
        Ok(r) => match r.iter().enumerate().find(|(j, q)| **q != ratio_factor(j + 1)) {
            None => (true, format!("{pairs} ratios equal 2^(2k)-1")),
            Some((j, q)) => (false, format!("k={}: ratio {} != {}", j + 1, q, ratio_factor(j + 1))),
        },
        Err(e) => (false, e.to_string()),
    };
    report.push("weight ratio law", ok, detail);
    let n = tables.em.len().min(tables.boole.len());
    let rebuilt = boole_from_em(&tables.em[..n]);
    let mismatch = first_mismatch(&rebuilt, &tables.boole[..n]);
    report.push(
        "boole weights via 2^(2k)-1 factors",
        mismatch.is_none(),
        match mismatch {
            None => format!("{n} weights identical"),
            Some(i) => format!("index {i}: {} != {}", rebuilt[i], tables.boole[i]),
        },
    );

    // (d) both tables solve du/dt + uu - 1 = 0
    let reg1 = order.min(2 * tables.bernoulli.len() + 1);
    let res1 = ode_residual(&case1_u(&tables.bernoulli, reg1)?)?;
    report.push(
        "ode residual, pole case",
        res1.is_zero(),
        format!("residual zero through t^{}", res1.regular.order() as i64 - 1),
    );
    let reg2 = order.min(2 * tables.tangent.len() + 3);
    let res2 = ode_residual(&case2_u(&tables.tangent, reg2)?)?;
    report.push(
        "ode residual, regular case",
        res2.is_zero(),
        format!("residual zero through t^{}", res2.regular.order() as i64 - 1),
    );

    // generating-function identities and bridges back from u to V
    let unit_em = crate::power_series::ps_mul(&v_em, &em_aux(order)?)?.is_unit();
    let unit_alt = crate::power_series::ps_mul(&v_alt, &boole_aux(order)?)?.is_unit();
    report.push("V (e^z-1)/z = 1", unit_em, format!("order {order}"));
    report.push("V (1+e^z) = 1", unit_alt, format!("order {order}"));

    let half = frac(1, 2);
    let reg = order.saturating_sub(1).min(2 * tables.bernoulli.len() + 1).max(1);
    let u1 = case1_u(&tables.bernoulli, reg)?;
    let tu_minus_t = u1.times_t().sub(&PowerSeries::from_ints(&[0, 1]).extend_to(reg + 1));
    let bridged = tu_minus_t.rescale_variable(&half);
    let n = bridged.order().min(v_em.order());
    report.push(
        "V = t u - t with t = z/2",
        first_mismatch(&bridged.coeffs()[..n], &v_em.coeffs()[..n]).is_none(),
        format!("{n} coefficients"),
    );
    let reg = order.min(2 * tables.tangent.len() + 3).max(2);
    let u2 = case2_u(&tables.tangent, reg)?.regular.rescale_variable(&half);
    let v2 = PowerSeries::unit(reg).scale(&half).sub(&u2.scale(&half));
    let n = v2.order().min(v_alt.order());
    report.push(
        "V = 1/2 - u/2 with t = z/2",
        first_mismatch(&v2.coeffs()[..n], &v_alt.coeffs()[..n]).is_none(),
        format!("{n} coefficients"),
    );
    Ok(())
}
