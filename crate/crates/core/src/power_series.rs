//! Truncated formal power series over exact rationals.
//!
//! Every series carries an explicit order (the number of retained
//! coefficients). Binary operations truncate to the smaller order; nothing is
//! ever silently extended.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    /// `1 + 0z + ... ` with `order` coefficients.
    pub fn unit(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        if let Some(c) = coeffs.first_mut() {
            *c = Rational::one();
        }
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs.is_empty()
            && self.coeffs[0].is_one()
            && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Substitutes `z -> c z`, i.e. multiplies coefficient `k` by `c^k`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut p = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &p;
                p *= c;
                v
            })
            .collect();
        Self { coeffs }
    }

    /// Formal derivative. The result has one coefficient fewer.
    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer(k.into()))
                .collect(),
        }
    }

    /// Pads with zeros up to `order`; longer series are returned unchanged.
    pub fn extend_to(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < order {
            coeffs.resize(order, Rational::zero());
        }
        Self { coeffs }
    }

    /// Multiplies by `z`, keeping the order (the top coefficient drops off).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order());
        if self.order() > 0 {
            coeffs.push(Rational::zero());
            coeffs.extend(self.coeffs[..self.order() - 1].iter().cloned());
        }
        Self { coeffs }
    }
}

/// Truncated Cauchy product of order `min(order(a), order(b))`.
pub fn ps_mul(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries> {
    if a.order() == 0 || b.order() == 0 {
        return Err(Error::InvalidArgument("empty power series".into()));
    }
    let n = a.order().min(b.order());
    let coeffs = (0..n)
        .map(|k| {
            (0..=k)
                .filter(|&j| !a.coeffs[j].is_zero() && !b.coeffs[k - j].is_zero())
                .fold(Rational::zero(), |acc, j| acc + &a.coeffs[j] * &b.coeffs[k - j])
        })
        .collect();
    Ok(PowerSeries { coeffs })
}

/// Multiplicative inverse to the full retained order.
pub fn ps_reciprocal(a: &PowerSeries) -> Result<PowerSeries> {
    if a.order() == 0 {
        return Err(Error::InvalidArgument("empty power series".into()));
    }
    if a.coeffs[0].is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let inv0 = a.coeffs[0].recip();
    let mut r: Vec<Rational> = Vec::with_capacity(a.order());
    r.push(inv0.clone());
    for n in 1..a.order() {
        let s = (1..=n)
            .filter(|&j| !a.coeffs[j].is_zero())
            .fold(Rational::zero(), |acc, j| acc + &a.coeffs[j] * &r[n - j]);
        r.push(-(s * &inv0));
    }
    Ok(PowerSeries { coeffs: r })
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(Error::InvalidArgument("series order must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `(e^z - 1)/z`: coefficient `k` is `1/(k+1)!`.
pub fn em_aux(order: usize) -> Result<PowerSeries> {
    check_order(order)?;
    Ok(PowerSeries {
        coeffs: (0..order)
            .map(|k| Rational::from_integer(factorial(k + 1)).recip())
            .collect(),
    })
}

/// `1 + e^z`: `2, 1, 1/2, 1/6, ...`.
pub fn boole_aux(order: usize) -> Result<PowerSeries> {
    check_order(order)?;
    Ok(PowerSeries {
        coeffs: (0..order)
            .map(|k| {
                let c = Rational::from_integer(factorial(k)).recip();
                if k == 0 {
                    c + Rational::one()
                } else {
                    c
                }
            })
            .collect(),
    })
}

/// A series with an optional simple pole: `principal / t + regular(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentLike {
    pub principal: Rational,
    pub regular: PowerSeries,
}

impl LaurentLike {
    pub fn new(principal: Rational, regular: PowerSeries) -> Self {
        Self { principal, regular }
    }

    pub fn is_zero(&self) -> bool {
        self.principal.is_zero() && self.regular.coeffs().iter().all(Zero::is_zero)
    }

    /// `t * u`, an ordinary power series of order `regular.order() + 1`.
    pub fn times_t(&self) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.regular.order() + 1);
        coeffs.push(self.principal.clone());
        coeffs.extend(self.regular.coeffs().iter().cloned());
        PowerSeries::new(coeffs)
    }
}

/// `du/dt + u*u - 1` for `u = p/t + r(t)`.
///
/// Expanding gives `(p^2 - p)/t^2 + 2p r(t)/t + r'(t) + r(t)^2 - 1`. The
/// `1/t^2` part cancels only for `p` in `{0, 1}`; any other pole strength is
/// rejected. The result keeps `order(r) - 1` regular coefficients, which is
/// as far as `r'` is known.
pub fn ode_residual(u: &LaurentLike) -> Result<LaurentLike> {
    let p = &u.principal;
    if !(p.is_zero() || p.is_one()) {
        return Err(Error::InvalidArgument(
            "pole coefficient must be 0 or 1 for the 1/t^2 terms to cancel".into(),
        ));
    }
    let r = &u.regular;
    if r.order() < 2 {
        return Err(Error::InvalidArgument("regular part needs order >= 2".into()));
    }
    let n = r.order() - 1;
    let two_p = p * Rational::from_integer(2.into());
    let r_sq = ps_mul(r, r)?;
    let dr = r.derivative();
    // 2p r(t)/t contributes 2p r[0] to the 1/t slot and 2p r[k+1] to t^k
    let coeffs = (0..n)
        .map(|k| {
            let mut c = &dr.coeffs()[k] + &r_sq.coeffs()[k] + &two_p * &r.coeffs()[k + 1];
            if k == 0 {
                c -= Rational::one();
            }
            c
        })
        .collect();
    Ok(LaurentLike {
        principal: two_p * &r.coeffs()[0],
        regular: PowerSeries::new(coeffs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn rs(v: &[(i64, i64)]) -> PowerSeries {
        PowerSeries::new(v.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    #[test]
    fn mul_identity_and_truncation() {
        let c = rs(&[(3, 1), (-1, 2), (5, 7)]);
        assert_eq!(ps_mul(&PowerSeries::unit(3), &c).unwrap(), c);
        let one_plus_z = PowerSeries::from_ints(&[1, 1]);
        assert_eq!(ps_mul(&one_plus_z, &one_plus_z).unwrap(), PowerSeries::from_ints(&[1, 2]));
        let long = PowerSeries::from_ints(&[1, 1, 1, 1]);
        assert_eq!(ps_mul(&long, &one_plus_z).unwrap().order(), 2);
    }

    #[test]
    fn mul_rejects_empty() {
        let e = PowerSeries::new(vec![]);
        assert!(matches!(ps_mul(&e, &PowerSeries::unit(2)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn reciprocal_small_cases() {
        assert_eq!(ps_reciprocal(&PowerSeries::unit(1)).unwrap(), PowerSeries::unit(1));
        let a = rs(&[(1, 1), (1, 1), (1, 2)]);
        let r = ps_reciprocal(&a).unwrap();
        assert_eq!(r, rs(&[(1, 1), (-1, 1), (1, 2)]));
        assert!(ps_mul(&a, &r).unwrap().is_unit());
    }

    #[test]
    fn reciprocal_rejects_zero_constant() {
        let a = PowerSeries::from_ints(&[0, 1]);
        assert_eq!(ps_reciprocal(&a), Err(Error::NonInvertibleSeries));
    }

    #[test]
    fn em_aux_values() {
        assert_eq!(em_aux(1).unwrap(), PowerSeries::unit(1));
        assert_eq!(em_aux(4).unwrap(), rs(&[(1, 1), (1, 2), (1, 6), (1, 24)]));
        assert_eq!(*em_aux(6).unwrap().coeff(5), frac(1, 720));
        assert!(em_aux(0).is_err());
    }

    #[test]
    fn em_reciprocal_is_bernoulli_generating_function() {
        let v = ps_reciprocal(&em_aux(8).unwrap()).unwrap();
        let expected = rs(&[(1, 1), (-1, 2), (1, 12), (0, 1), (-1, 720), (0, 1), (1, 30240), (0, 1)]);
        assert_eq!(v, expected);
        assert!(ps_mul(&v, &em_aux(8).unwrap()).unwrap().is_unit());
    }

    #[test]
    fn boole_aux_values() {
        assert_eq!(boole_aux(1).unwrap(), PowerSeries::from_ints(&[2]));
        assert_eq!(boole_aux(5).unwrap(), rs(&[(2, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
        let v = ps_reciprocal(&boole_aux(6).unwrap()).unwrap();
        assert!(ps_mul(&boole_aux(6).unwrap(), &v).unwrap().is_unit());
        assert_eq!(*v.coeff(0), frac(1, 2));
        assert_eq!(*v.coeff(1), frac(-1, 4));
        assert_eq!(*v.coeff(3), frac(1, 48));
    }

    #[test]
    fn residual_of_zero_is_minus_one() {
        let u = LaurentLike::new(int(0), PowerSeries::zero(2));
        let res = ode_residual(&u).unwrap();
        assert_eq!(res.principal, int(0));
        assert_eq!(*res.regular.coeff(0), int(-1));
    }

    #[test]
    fn residual_of_coth_prefix() {
        // coth t = 1/t + t/3 - t^3/45 + ...
        let u = LaurentLike::new(int(1), rs(&[(0, 1), (1, 3), (0, 1), (-1, 45), (0, 1)]));
        assert!(ode_residual(&u).unwrap().is_zero());
    }

    #[test]
    fn residual_rejects_bad_pole() {
        let u = LaurentLike::new(int(2), PowerSeries::zero(3));
        assert!(ode_residual(&u).is_err());
    }

    #[test]
    fn variable_rescale_and_derivative() {
        let a = PowerSeries::from_ints(&[1, 1, 1]);
        assert_eq!(a.rescale_variable(&frac(1, 2)), rs(&[(1, 1), (1, 2), (1, 4)]));
        assert_eq!(a.derivative(), PowerSeries::from_ints(&[1, 2]));
        assert_eq!(a.shift_up(), PowerSeries::from_ints(&[0, 1, 1]));
    }
}
