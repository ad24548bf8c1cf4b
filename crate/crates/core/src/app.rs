//! ζ(n) and η(n) by split sums, ζ(2k) from π, output records, and the
//! self-verification suite behind `tailsum verify`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{bernoulli_like, cross_check_tables, CheckReport, TableSet};
use crate::error::{Error, Result};
use crate::rational::{frac, int, pow10, render_decimal, to_f64, Rational};
use crate::summation::{split_sum_from_one, SummationReport, TruncationPolicy};
use crate::term::inverse_power;

/// π to 201 significant digits, truncated (not rounded) after the 200th
/// decimal. Taken from the standard published expansion; the test suite
/// re-derives it with Machin's formula.
pub const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196";

const PI_DECIMALS: u32 = 200;

pub const DEFAULT_SPLIT: i64 = 10;
/// Default derivative-order bound for the smallest-term scan.
pub const DEFAULT_MAX_ORDER: usize = 80;
pub const DEFAULT_OUTPUT_DIGITS: u32 = 20;
pub const VERIFY_ORDER: usize = 40;

/// Lower end of the enclosure `pi_lower() <= π < pi_lower() + 10^-200`.
pub fn pi_lower() -> Rational {
    let digits: BigInt = PI_DIGITS.replace('.', "").parse().expect("pi digits");
    Rational::new(digits, pow10(PI_DECIMALS))
}

pub fn pi_upper() -> Rational {
    pi_lower() + Rational::new(BigInt::one(), pow10(PI_DECIMALS))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
}

impl ExactRational {
    pub fn from_rational(r: &Rational) -> Self {
        Self { num: r.numer().to_string(), den: r.denom().to_string() }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        let bad = || Error::InvalidArgument(format!("malformed rational {}/{}", self.num, self.den));
        let n: BigInt = self.num.parse().map_err(|_| bad())?;
        let d: BigInt = self.den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

/// One computed result, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub value_decimal: String,
    pub exact: Option<ExactRational>,
    pub terms_used: usize,
    pub k_star: usize,
    pub error_estimate: f64,
    pub split: Option<String>,
    pub mode: String,
}

const CSV_HEADER: &str = "value_decimal,exact_num,exact_den,terms_used,k_star,error_estimate,split,mode";

impl OutputRecord {
    pub fn from_report(report: &SummationReport, digits: u32) -> Self {
        Self {
            value_decimal: report.value.render(digits),
            exact: report.value.exact().map(ExactRational::from_rational),
            terms_used: report.terms_used(),
            k_star: report.k_star,
            error_estimate: report.error_estimate.to_f64(),
            split: Some(report.split_point.to_string()),
            mode: report.mode.name().to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Header line plus one data row.
    pub fn to_csv(&self) -> String {
        let (num, den) = match &self.exact {
            Some(e) => (e.num.as_str(), e.den.as_str()),
            None => ("", ""),
        };
        format!(
            "{CSV_HEADER}\n{},{},{},{},{},{:e},{},{}\n",
            self.value_decimal,
            num,
            den,
            self.terms_used,
            self.k_star,
            self.error_estimate,
            self.split.as_deref().unwrap_or(""),
            self.mode
        )
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("malformed record csv: {what}"));
        let mut lines = s.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err(bad("header"));
        }
        let row = lines.next().ok_or_else(|| bad("missing row"))?;
        let f: Vec<&str> = row.split(',').collect();
        if f.len() != 8 {
            return Err(bad("field count"));
        }
        let exact = match (f[1], f[2]) {
            ("", "") => None,
            (n, d) => Some(ExactRational { num: n.to_string(), den: d.to_string() }),
        };
        Ok(Self {
            value_decimal: f[0].to_string(),
            exact,
            terms_used: f[3].parse().map_err(|_| bad("terms_used"))?,
            k_star: f[4].parse().map_err(|_| bad("k_star"))?,
            error_estimate: f[5].parse().map_err(|_| bad("error_estimate"))?,
            split: (!f[6].is_empty()).then(|| f[6].to_string()),
            mode: f[7].to_string(),
        })
    }

    pub fn to_plain(&self) -> String {
        let mut out = format!("{}\n", self.value_decimal);
        if let Some(e) = &self.exact {
            out.push_str(&format!("exact: {}/{}\n", e.num, e.den));
        }
        out.push_str(&format!(
            "terms used: {}  k*: {}  error estimate: {:e}  mode: {}\n",
            self.terms_used, self.k_star, self.error_estimate, self.mode
        ));
        out
    }
}

fn check_split(split: i64) -> Result<()> {
    if split < 1 {
        Err(Error::InvalidArgument(format!("split must be at least 1, got {split}")))
    } else {
        Ok(())
    }
}

/// `ζ(n) = Σ_{m<split} 1/m^n + tail(split)`.
pub fn zeta_report(n: i64, split: i64, policy: TruncationPolicy) -> Result<SummationReport> {
    if n <= 1 {
        return Err(Error::DivergentTail(format!(
            "zeta({n}) diverges: 1 + 1/2^n + 1/3^n + ... is infinite for n <= 1 (n = 1 is the harmonic series)"
        )));
    }
    check_split(split)?;
    split_sum_from_one(&inverse_power(int(n))?, split, policy, false)
}

pub fn zeta(n: i64, split: i64, policy: TruncationPolicy, digits: u32) -> Result<OutputRecord> {
    Ok(OutputRecord::from_report(&zeta_report(n, split, policy)?, digits))
}

/// `η(n) = 1 - 1/2^n + 1/3^n - ...`, converging for every `n >= 1`.
pub fn eta_report(n: i64, split: i64, policy: TruncationPolicy) -> Result<SummationReport> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("eta needs n >= 1, got {n}")));
    }
    check_split(split)?;
    split_sum_from_one(&inverse_power(int(n))?, split, policy, true)
}

pub fn eta(n: i64, split: i64, policy: TruncationPolicy, digits: u32) -> Result<OutputRecord> {
    Ok(OutputRecord::from_report(&eta_report(n, split, policy)?, digits))
}

/// Bernoulli-like coefficient `T_{n/2}` times `π^n`, with an enclosure
/// width from the π truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiIdentity {
    pub coefficient: Rational,
    pub value: Rational,
    pub width: Rational,
}

pub fn zeta_via_pi_value(n: i64) -> Result<PiIdentity> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "zeta({n}) has a pi identity only for even n >= 2"
        )));
    }
    let k = (n / 2) as usize;
    let coefficient = bernoulli_like(k)?.values[k - 1].clone();
    let lo = &coefficient * num_traits::pow(pi_lower(), n as usize);
    let hi = &coefficient * num_traits::pow(pi_upper(), n as usize);
    Ok(PiIdentity { coefficient, width: &hi - &lo, value: lo })
}

pub fn zeta_via_pi(n: i64, digits: u32) -> Result<OutputRecord> {
    let id = zeta_via_pi_value(n)?;
    Ok(OutputRecord {
        value_decimal: render_decimal(&id.value, digits),
        exact: None,
        terms_used: 0,
        k_star: 0,
        error_estimate: to_f64(&id.width),
        split: None,
        mode: "pi-identity".into(),
    })
}

pub fn relative_error(approx: &Rational, reference: &Rational) -> Rational {
    ((approx - reference) / reference).abs()
}

/// Alternating sum `Σ (-1)^m a_m` estimated by repeatedly averaging
/// neighbouring partial sums.
pub fn averaged_alternating_sum(terms: &[Rational], rounds: usize) -> Rational {
    let mut partial: Vec<Rational> = terms
        .iter()
        .enumerate()
        .scan(Rational::zero(), |acc, (m, a)| {
            if m % 2 == 0 {
                *acc += a;
            } else {
                *acc -= a;
            }
            Some(acc.clone())
        })
        .collect();
    for _ in 0..rounds.min(partial.len().saturating_sub(1)) {
        partial = partial.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    }
    partial.pop().unwrap_or_default()
}

/// Fault to inject into the verification tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Perturbs the Boole weight at derivative order 3.
    TamperBooleWeight,
}

pub fn verify_suite() -> CheckReport {
    verify_suite_with(VERIFY_ORDER, Fault::None)
}

pub fn verify_suite_with(order: usize, fault: Fault) -> CheckReport {
    let mut report = CheckReport::default();
    let mut tables = match TableSet::for_order(order) {
        Ok(t) => t,
        Err(e) => {
            report.push("tables", false, e.to_string());
            return report;
        }
    };
    if fault == Fault::TamperBooleWeight {
        if let Some(w) = tables.boole.get_mut(3) {
            *w += frac(1, 1000);
        } else if let Some(w) = tables.boole.last_mut() {
            *w += frac(1, 1000);
        }
    }

    report.extend(cross_check_tables(order, &tables));
    check_printed_values(&tables, &mut report);
    check_recurrence(&tables, &mut report);
    if let Err(e) = check_desk_scale(&mut report) {
        report.push("desk-scale sums", false, e.to_string());
    }
    report
}

fn check_printed_values(tables: &TableSet, report: &mut CheckReport) {
    let printed_b = [frac(1, 6), frac(1, 90), frac(1, 945), frac(1, 9450), frac(1, 93555)];
    let n = printed_b.len().min(tables.bernoulli.len());
    report.push(
        "bernoulli-like A..E",
        tables.bernoulli[..n] == printed_b[..n],
        format!("{n} entries compared"),
    );
    let printed_t = [frac(1, 3), frac(2, 15), frac(17, 315), frac(62, 2835)];
    let n = printed_t.len().min(tables.tangent.len());
    report.push(
        "tangent-like 𝔄..𝔇",
        tables.tangent[..n] == printed_t[..n],
        format!("{n} entries compared"),
    );
}

fn check_recurrence(tables: &TableSet, report: &mut CheckReport) {
    let t = &tables.bernoulli;
    let bad = (2..=t.len()).find(|&k| {
        let conv = (1..k).fold(Rational::zero(), |acc, i| acc + &t[i - 1] * &t[k - i - 1]);
        int(4 * k as i64 + 2) * &t[k - 1] != int(4) * conv
    });
    report.push(
        "(4k+2) T_k = 4 Σ T_i T_j",
        bad.is_none() && t.first() == Some(&frac(1, 6)),
        match bad {
            None => format!("{} entries", t.len()),
            Some(k) => format!("fails at k={k}"),
        },
    );
    let tt = &tables.tangent;
    let at = |m: usize| if m == 0 { Rational::one() } else { tt[m - 1].clone() };
    let bad = (1..=tt.len()).find(|&m| {
        let conv = (0..m).fold(Rational::zero(), |acc, a| acc + at(a) * at(m - 1 - a));
        int(2 * m as i64 + 1) * at(m) != conv
    });
    report.push(
        "(2m+1) T_m = Σ T_a T_b",
        bad.is_none(),
        match bad {
            None => format!("{} entries", tt.len()),
            Some(m) => format!("fails at m={m}"),
        },
    );
}

fn check_desk_scale(report: &mut CheckReport) -> Result<()> {
    let policy = TruncationPolicy::SmallestTerm { max_order: DEFAULT_MAX_ORDER };
    let tol = Rational::new(BigInt::one(), pow10(18));
    for n in [2, 4, 6, 8, 10] {
        let got = zeta_report(n, DEFAULT_SPLIT, policy)?;
        let reference = zeta_via_pi_value(n)?.value;
        let rel = relative_error(got.value.as_rational(), &reference);
        report.push(
            format!("zeta({n}) split sum vs pi identity"),
            rel <= tol,
            format!("relative error {:e}", to_f64(&rel)),
        );
    }
    for k in 1..=17 {
        let id = zeta_via_pi_value(2 * k)?;
        report.push(
            format!("zeta({}) pi identity enclosure", 2 * k),
            id.value.is_positive() && id.width < Rational::new(BigInt::one(), pow10(150)),
            format!("coefficient {}", id.coefficient),
        );
    }

    let tol = Rational::new(BigInt::one(), pow10(12));
    let harmonic: Vec<Rational> = (1..=80).map(|m| frac(1, m)).collect();
    let ln2 = averaged_alternating_sum(&harmonic, 79);
    let eta1 = eta_report(1, DEFAULT_SPLIT, policy)?;
    let err = (eta1.value.as_rational() - &ln2).abs();
    report.push("eta(1) vs averaged partial sums", err <= tol, format!("abs error {:e}", to_f64(&err)));
    let eta2 = eta_report(2, DEFAULT_SPLIT, policy)?;
    let half_zeta2 = zeta_via_pi_value(2)?.value / int(2);
    let err = (eta2.value.as_rational() - &half_zeta2).abs();
    report.push("eta(2) vs pi^2/12", err <= tol, format!("abs error {:e}", to_f64(&err)));
    Ok(())
}
