use std::thread;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use tailsum::app::{eta_report, zeta_report, zeta_via_pi_value, OutputRecord};
use tailsum::coefficients::{
    bernoulli_like, boole_from_em, boole_weights, boole_weights_via, case1_u, em_weights, tangent_like,
    weight_ratio_table, BooleWeightPath,
};
use tailsum::power_series::{boole_aux, em_aux, ps_mul, ps_reciprocal, PowerSeries};
use tailsum::rational::{floor_log10, frac, int, parse_rational, render_decimal, scale10};
use tailsum::summation::{boole_tail_with, split_sum, TruncationPolicy};
use tailsum::term::{inverse_power, NumericMode, TermFunction};
use tailsum::Rational;

const SMALLEST: TruncationPolicy = TruncationPolicy::SmallestTerm { max_order: 80 };

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| frac(n, d))
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(rational(), order).prop_map(PowerSeries::new)
}

fn lowest_terms(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

proptest! {
    #[test]
    fn mul_commutes(a in series(16), b in series(16)) {
        prop_assert_eq!(ps_mul(&a, &b).unwrap(), ps_mul(&b, &a).unwrap());
    }

    #[test]
    fn mul_associates(a in series(12), b in series(16), c in series(14)) {
        let left = ps_mul(&ps_mul(&a, &b).unwrap(), &c).unwrap();
        let right = ps_mul(&a, &ps_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.order(), 12);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reciprocal_round_trips(mut a in series(10), c0 in 1i64..9) {
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = int(c0);
        a = PowerSeries::new(coeffs);
        prop_assert!(ps_mul(&a, &ps_reciprocal(&a).unwrap()).unwrap().is_unit());
    }

    #[test]
    fn construction_normalizes(n in -10_000i64..10_000, d in prop::num::i64::ANY.prop_filter("nonzero", |d| *d != 0)) {
        let r = frac(n, d);
        prop_assert!(lowest_terms(&r));
        prop_assert_eq!(Rational::new(r.numer().clone(), r.denom().clone()), r);
    }

    #[test]
    fn inverse_power_derivative_recurrence(n in 1i64..12, k in 0usize..20, x in 1i64..50, xd in 1i64..5) {
        let f = inverse_power(int(n)).unwrap();
        let x = frac(x, xd);
        let dk = f.derivative(k, &x).unwrap();
        let dk1 = f.derivative(k + 1, &x).unwrap();
        prop_assert!(dk.exact().is_some());
        let lhs = dk1.as_rational() * &x;
        let rhs = -(int(n) + int(k as i64)) * dk.as_rational();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rendering_is_correctly_rounded(n in -1_000_000_000i64..1_000_000_000, d in 1i64..1_000_000_000, e in -40i64..40, digits in 1u32..30) {
        prop_assume!(n != 0);
        let r = scale10(&frac(n, d), e);
        let s = render_decimal(&r, digits);
        let back = parse_rational(&s).unwrap();
        let half_ulp = scale10(&frac(1, 2), floor_log10(&r) - digits as i64 + 1);
        prop_assert!((&back - &r).abs() <= half_ulp, "{} rendered as {}", r, s);
        let sig: String = s.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
        let sig = sig.trim_start_matches('0');
        if s.contains('.') || s.contains('e') {
            prop_assert_eq!(sig.len(), digits as usize);
        } else {
            // integers are padded with zeros out to the units place
            prop_assert_eq!(sig.len() as i64, (floor_log10(&back) + 1).max(digits as i64));
        }
    }
}

#[test]
fn aux_reciprocals_are_exact_through_order_40() {
    for n in 1..=40 {
        let e = em_aux(n).unwrap();
        assert!(ps_mul(&e, &ps_reciprocal(&e).unwrap()).unwrap().is_unit(), "em order {n}");
        let b = boole_aux(n).unwrap();
        assert!(ps_mul(&b, &ps_reciprocal(&b).unwrap()).unwrap().is_unit(), "boole order {n}");
    }
}

#[test]
fn generating_functions_are_sparse() {
    let v = ps_reciprocal(&em_aux(40).unwrap()).unwrap();
    assert!(v.coeffs().iter().enumerate().skip(2).filter(|(k, _)| k % 2 == 1).all(|(_, c)| c.is_zero()));
    let w = ps_reciprocal(&boole_aux(40).unwrap()).unwrap();
    assert!(w.coeffs().iter().enumerate().skip(2).filter(|(k, _)| k % 2 == 0).all(|(_, c)| c.is_zero()));
    for table in [em_weights(40).unwrap(), boole_weights(40).unwrap()] {
        assert!(table.values.iter().enumerate().skip(2).filter(|(k, _)| k % 2 == 0).all(|(_, c)| c.is_zero()));
    }
}

#[test]
fn every_table_entry_in_lowest_terms_and_signed_as_expected() {
    let b = bernoulli_like(40).unwrap();
    let t = tangent_like(40).unwrap();
    assert!(b.values.iter().chain(&t.values).all(|r| lowest_terms(r) && r.is_positive()));
    let em = em_weights(80).unwrap();
    let bo = boole_weights(80).unwrap();
    assert!(em.values.iter().chain(&bo.values).all(lowest_terms));
}

#[test]
fn bernoulli_recurrence_rebuilt_independently() {
    let t = bernoulli_like(40).unwrap().values;
    assert_eq!(int(6) * &t[0], int(1));
    for k in 2..=40 {
        let conv: Rational = (1..k).map(|i| &t[i - 1] * &t[k - i - 1]).sum();
        assert_eq!(int(4 * k as i64 + 2) * &t[k - 1], int(4) * conv, "k = {k}");
    }
}

#[test]
fn pole_case_bridge_reproduces_v() {
    // t u - t with t = z/2 equals z/(e^z - 1)
    let order = 40;
    let b = bernoulli_like(20).unwrap().values;
    let u = case1_u(&b, order - 1).unwrap();
    let tu_minus_t = u.times_t().sub(&PowerSeries::from_ints(&[0, 1]).extend_to(order));
    let bridged = tu_minus_t.rescale_variable(&frac(1, 2));
    let v = ps_reciprocal(&em_aux(order).unwrap()).unwrap();
    assert_eq!(bridged, v);
}

#[test]
fn ratio_law_and_factor_path() {
    let ratios = weight_ratio_table(16).unwrap();
    for (k, r) in ratios.iter().enumerate() {
        let expected = Rational::from_integer((BigInt::one() << (2 * (k + 1))) - 1);
        assert_eq!(*r, expected);
    }
    let em = em_weights(41).unwrap().values;
    assert_eq!(boole_from_em(&em), boole_weights(41).unwrap().values);
}

#[test]
fn tables_are_deterministic_under_concurrency() {
    let first = bernoulli_like(60).unwrap();
    let handles: Vec<_> = (0..8)
        .map(|i| thread::spawn(move || (bernoulli_like(30 + i * 3).unwrap(), tangent_like(50 - i).unwrap())))
        .collect();
    for h in handles {
        let (b, t) = h.join().unwrap();
        assert_eq!(b.values[..], first.values[..b.count()]);
        assert_eq!(t.values[..], tangent_like(t.count()).unwrap().values[..]);
    }
    assert_eq!(bernoulli_like(60).unwrap(), first);
}

#[test]
fn tail_integral_vanishes_and_differentiates_back() {
    let f = inverse_power(int(3)).unwrap();
    let big = int(1_000_000);
    assert!(f.tail_integral(&big).unwrap().as_rational() < &frac(1, 1_000_000_000_000));
    let x = int(5);
    let err = |h: Rational| {
        let up = f.tail_integral(&(&x + &h)).unwrap();
        let down = f.tail_integral(&(&x - &h)).unwrap();
        let d = (up.as_rational() - down.as_rational()) / (int(2) * &h);
        (d + f.eval(&x).unwrap().as_rational()).abs()
    };
    let e1 = err(frac(1, 100));
    let e2 = err(frac(1, 200));
    let ratio = tailsum::rational::to_f64(&(e1 / e2));
    assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
}

#[test]
fn reports_recompute_exactly() {
    for (n, alt) in [(2, false), (5, false), (1, true), (4, true)] {
        let r = split_sum(&inverse_power(int(n)).unwrap(), &int(1), &int(10), SMALLEST, alt).unwrap();
        assert_eq!(r.recompute_value().unwrap(), r.value);
        assert!(!r.error_estimate.as_rational().is_negative());
        assert!(r.k_star <= 80);
    }
}

#[test]
fn approx_mode_reports_recompute_and_hit_reference() {
    let f = inverse_power(frac(3, 2)).unwrap().with_digits(50);
    assert_eq!(f.mode(), NumericMode::Approx { digits: 50 });
    let r = split_sum(&f, &int(1), &int(10), SMALLEST, false).unwrap();
    assert_eq!(r.recompute_value().unwrap(), r.value);
    // ζ(3/2)
    let reference = parse_rational("2.6123753486854883433485675679240716305708006524001").unwrap();
    let err = (r.value.as_rational() - reference).abs();
    assert!(err < frac(1, 1_000_000_000_000_000_000), "{}", r.value.render(40));
    // η(1/2) converges even though ζ(1/2) does not
    let g = inverse_power(frac(1, 2)).unwrap().with_digits(40);
    let r = split_sum(&g, &int(1), &int(10), SMALLEST, true).unwrap();
    let reference = parse_rational("0.60489864342163037024726591423595549975976254513025").unwrap();
    assert!((r.value.as_rational() - reference).abs() <= r.error_estimate.as_rational() * int(10));
}

#[test]
fn split_invariance() {
    for n in 2..=6 {
        let a = zeta_report(n, 10, SMALLEST).unwrap();
        let b = zeta_report(n, 20, SMALLEST).unwrap();
        let diff = (a.value.as_rational() - b.value.as_rational()).abs();
        assert!(diff <= a.error_estimate.as_rational() + b.error_estimate.as_rational(), "zeta {n}");
    }
    for n in 1..=4 {
        let a = eta_report(n, 10, SMALLEST).unwrap();
        let b = eta_report(n, 20, SMALLEST).unwrap();
        let diff = (a.value.as_rational() - b.value.as_rational()).abs();
        assert!(diff <= a.error_estimate.as_rational() + b.error_estimate.as_rational(), "eta {n}");
    }
}

#[test]
fn asymptotic_signature_for_inverse_square() {
    let r = zeta_report(2, 10, SMALLEST).unwrap();
    assert!(r.diverged_before_converging);
    let mags: Vec<Rational> = r.terms.iter().map(|t| t.value.as_rational().abs()).collect();
    assert!(mags.windows(2).all(|w| w[1] < w[0]), "included terms must shrink");
    assert_eq!(r.terms.last().unwrap().order, r.k_star);
    assert!(r.error_estimate.as_rational() > mags.last().unwrap());
}

#[test]
fn smallest_term_error_envelope() {
    for n in 2..=10 {
        let r = zeta_report(n, 10, SMALLEST).unwrap();
        let reference_err = if n % 2 == 0 {
            (r.value.as_rational() - zeta_via_pi_value(n).unwrap().value).abs()
        } else {
            // against a split far enough out that its own error is negligible
            let far = zeta_report(n, 40, TruncationPolicy::SmallestTerm { max_order: 160 }).unwrap();
            (r.value.as_rational() - far.value.as_rational()).abs()
        };
        assert!(reference_err <= r.error_estimate.as_rational() * int(10), "n = {n}");
    }
}

#[test]
fn boole_paths_give_identical_reports() {
    for n in [1, 2, 7] {
        let f = inverse_power(int(n)).unwrap();
        for policy in [SMALLEST, TruncationPolicy::FixedOrder(9)] {
            let a = boole_tail_with(&f, &int(10), policy, BooleWeightPath::Tangent).unwrap();
            let b = boole_tail_with(&f, &int(10), policy, BooleWeightPath::RatioFactors).unwrap();
            assert_eq!(a, b);
        }
    }
    assert_eq!(
        boole_weights_via(BooleWeightPath::Tangent, 33).unwrap(),
        boole_weights_via(BooleWeightPath::RatioFactors, 33).unwrap()
    );
}

#[test]
fn records_round_trip_exact_values() {
    let report = zeta_report(3, 10, SMALLEST).unwrap();
    let record = OutputRecord::from_report(&report, 25);
    for back in [OutputRecord::from_json(&record.to_json()).unwrap(), OutputRecord::from_csv(&record.to_csv()).unwrap()] {
        let exact = back.exact.expect("exact mode carries the rational").to_rational().unwrap();
        assert_eq!(&exact, report.value.as_rational());
    }
    let approx = split_sum(&inverse_power(frac(5, 2)).unwrap(), &int(1), &int(10), SMALLEST, false).unwrap();
    let rec = OutputRecord::from_report(&approx, 20);
    assert!(rec.exact.is_none());
    assert_eq!(rec.mode, "approx");
}
