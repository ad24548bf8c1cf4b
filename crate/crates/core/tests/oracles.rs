//! Expected values checked against constructions that share no code with
//! the library's recurrences or engines.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use tailsum::app::{pi_lower, PI_DIGITS};
use tailsum::coefficients::{bernoulli_like, boole_weights, em_weights, tangent_like};
use tailsum::power_series::{em_aux, ps_reciprocal};
use tailsum::rational::{factorial, frac, int};
use tailsum::summation::{em_tail, split_sum, TruncationPolicy};
use tailsum::term::{inverse_power, Value};
use tailsum::Rational;

/// Bernoulli numbers B_0..B_n (B_1 = +1/2) by the Akiyama-Tanigawa
/// transform.
fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

/// Euler zigzag numbers E_0..E_n by the Seidel boustrophedon; the odd ones
/// are the tangent numbers.
fn zigzag(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); k + 1];
        for j in 1..=k {
            next[j] = &next[j - 1] + &row[k - j];
        }
        out.push(next[k].clone());
        row = next;
    }
    out
}

fn tan_coefficient(m: usize) -> Rational {
    // [t^{2m+1}] tan t = E_{2m+1} / (2m+1)!
    let e = zigzag(2 * m + 1);
    Rational::new(e[2 * m + 1].clone(), factorial(2 * m + 1))
}

#[test]
fn bernoulli_like_matches_classical_bernoulli() {
    let b = akiyama_tanigawa(60);
    let table = bernoulli_like(30).unwrap().values;
    for k in 1..=30 {
        // T_k = |B_2k| 2^(2k-1) / (2k)!
        let expected = b[2 * k].abs() * Rational::from_integer(BigInt::one() << (2 * k - 1))
            / Rational::from_integer(factorial(2 * k));
        assert_eq!(table[k - 1], expected, "k = {k}");
    }
}

#[test]
fn d_from_its_own_recurrence() {
    let (a, b, c) = (frac(1, 6), frac(1, 90), frac(1, 945));
    let d = frac(2, 9) * (int(2) * &a * &c + &b * &b);
    assert_eq!(d, frac(1, 9450));
    assert_eq!(bernoulli_like(4).unwrap().values[3], d);
}

#[test]
fn tangent_like_matches_zigzag() {
    let table = tangent_like(25).unwrap().values;
    for m in 1..=25 {
        assert_eq!(table[m - 1], tan_coefficient(m), "m = {m}");
    }
}

#[test]
fn em_reciprocal_matches_bernoulli_over_factorial() {
    let b = akiyama_tanigawa(40);
    let v = ps_reciprocal(&em_aux(40).unwrap()).unwrap();
    for k in 0..40 {
        let bk = if k == 1 { -b[1].clone() } else { b[k].clone() };
        assert_eq!(v.coeffs()[k], bk / Rational::from_integer(factorial(k)), "k = {k}");
    }
}

#[test]
fn weights_match_oracles() {
    let b = akiyama_tanigawa(62);
    let em = em_weights(61).unwrap().values;
    for k in 1..=30 {
        // -B_2k / (2k)!
        let expected = -&b[2 * k] / Rational::from_integer(factorial(2 * k));
        assert_eq!(em[2 * k - 1], expected);
    }
    let boole = boole_weights(41).unwrap().values;
    // 1/(1+e^z) = 1/2 - tanh(z/2)/2 and tanh t = -i tan(i t)
    for m in 0..=19 {
        let sign = if m % 2 == 0 { int(-1) } else { int(1) };
        let expected = sign * tan_coefficient(m) / Rational::from_integer(BigInt::one() << (2 * m + 2));
        assert_eq!(boole[2 * m + 1], expected, "m = {m}");
    }
    assert_eq!(boole[5], frac(-1, 480));
}

/// π to `digits` decimals with Machin's formula in fixed point.
fn machin_pi(digits: u32) -> Rational {
    let guard = 10;
    let one = num_traits::pow(BigInt::from(10), (digits + guard) as usize);
    let atan_inv = |x: i64| {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = &one / &x;
        let mut sum = power.clone();
        let mut k = 1i64;
        while !power.is_zero() {
            power = &power / &x2;
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    Rational::new(pi, one)
}

#[test]
fn embedded_pi_agrees_with_machin() {
    let machin = machin_pi(205);
    let lower = pi_lower();
    let ulp = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 200));
    assert!(lower <= machin && machin < &lower + &ulp, "embedded digits disagree");
    assert!(PI_DIGITS.starts_with("3.1415926535897932384"));
}

#[test]
fn em_tail_hand_evaluation() {
    let f = inverse_power(int(2)).unwrap();
    let r = em_tail(&f, &int(10), TruncationPolicy::FixedOrder(2)).unwrap();
    let hand = frac(1, 10) + frac(1, 200) + frac(1, 12) * frac(2, 1000);
    assert_eq!(r.value, Value::Exact(hand.clone()));
    assert!(r.value.render(10).starts_with("0.1051666"));
}

#[test]
fn zeta_two_within_estimate_of_pi_squared_over_six() {
    let f = inverse_power(int(2)).unwrap();
    let tail = em_tail(&f, &int(10), TruncationPolicy::SmallestTerm { max_order: 80 }).unwrap();
    let partial = (1..10).fold(Rational::zero(), |acc, k| acc + frac(1, k * k));
    let reference_tail = machin_pi(60).pow(2) / int(6) - partial;
    let err = (tail.value.as_rational() - reference_tail).abs();
    assert!(&err <= tail.error_estimate.as_rational(), "err {err}");
}

/// Alternating sum by repeated averaging of partial sums, test-side copy.
fn averaged(terms: impl Iterator<Item = Rational>, rounds: usize) -> Rational {
    let mut s = Rational::zero();
    let mut partial = Vec::new();
    for (m, a) in terms.enumerate() {
        if m % 2 == 0 {
            s += a;
        } else {
            s -= a;
        }
        partial.push(s.clone());
    }
    for _ in 0..rounds {
        partial = partial.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    }
    partial.pop().unwrap()
}

#[test]
fn averaging_oracle_reaches_ln2() {
    // ln 2 = 0.693147180559945309417232121458...
    let ln2 = averaged((1..=90).map(|m| frac(1, m)), 89);
    let reference = tailsum::rational::parse_rational("0.693147180559945309417232121458").unwrap();
    assert!((ln2 - reference).abs() < frac(1, 1_000_000_000_000_000_000));
}

#[test]
fn boole_split_sums_match_averaged_oracle() {
    let policy = TruncationPolicy::SmallestTerm { max_order: 80 };
    for n in [1, 2, 3] {
        let f = inverse_power(int(n)).unwrap();
        let r = split_sum(&f, &int(1), &int(10), policy, true).unwrap();
        let oracle = averaged((1..=90).map(|m| Rational::new(BigInt::one(), BigInt::from(m).pow(n as u32))), 89);
        let err = (r.value.as_rational() - oracle).abs();
        assert!(&err <= r.error_estimate.as_rational(), "n = {n}: err {err}");
    }
}
