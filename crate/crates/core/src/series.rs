//! Truncated Taylor series `Σ_{k=0}^{N} c_k z^k` with arithmetic mod `z^{N+1}`.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::ComplexValue;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<ComplexValue>,
}

fn zero() -> ComplexValue {
    ComplexValue::new(0.0, 0.0)
}

impl TruncatedSeries {
    /// Series from coefficients `c_0..=c_N`. Needs at least one coefficient.
    pub fn new(coeffs: Vec<ComplexValue>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a constant term");
        TruncatedSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ComplexValue::new(c, 0.0)).collect())
    }

    /// `coeffs` padded with zeros up to `order`.
    pub fn padded(coeffs: &[ComplexValue], order: usize) -> Self {
        let mut v = vec![zero(); order + 1];
        for (slot, c) in v.iter_mut().zip(coeffs) {
            *slot = *c;
        }
        Self::new(v)
    }

    pub fn constant(c: ComplexValue, order: usize) -> Self {
        Self::padded(&[c], order)
    }

    /// The identity function z.
    pub fn z(order: usize) -> Self {
        let mut v = vec![zero(); order + 1];
        if order >= 1 {
            v[1] = ComplexValue::new(1.0, 0.0);
        }
        Self::new(v)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ComplexValue {
        self.coeffs.get(k).copied().unwrap_or_else(zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::padded(&self.coeffs[..=order.min(self.order())], order)
    }

    fn same_order(&self, other: &Self) -> Result<usize> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(self.order())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, k: ComplexValue) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Cauchy product truncated at N.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        let mut out = vec![zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(out))
    }

    /// Power-series long division.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        let b0 = other.coeffs[0];
        if b0.re == 0.0 && b0.im == 0.0 {
            return Err(Error::NotInvertible);
        }
        let mut q = vec![zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Ok(Self::new(q))
    }

    pub fn powi(&self, exp: u32) -> Result<Self> {
        let mut out = Self::constant(ComplexValue::new(1.0, 0.0), self.order());
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// d/dz, order drops to N − 1 (stays 0 for a constant).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::new(vec![zero()]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// `z·f'(z)`, same order.
    pub fn z_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// `z²·f''(z)`, same order.
    pub fn z2_second_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * (k as f64 * (k as f64 - 1.0)))
                .collect(),
        )
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn evaluate(&self, z: ComplexValue) -> ComplexValue {
        self.coeffs.iter().rev().fold(zero(), |acc, c| acc * z + c)
    }

    /// Tail estimate `|c_N|·ρ^{N+1}/(1 − ρ)` at radius `ρ < 1`.
    ///
    /// A bound on the discarded terms when coefficient magnitudes are
    /// non-increasing past N; zero for polynomials that fit in the order.
    pub fn tail_estimate(&self, radius: f64) -> f64 {
        let n = self.order();
        let last = self.coeffs[n].norm();
        if last == 0.0 {
            return 0.0;
        }
        last * radius.powi(n as i32 + 1) / (1.0 - radius)
    }

    /// Index of the first non-zero coefficient beyond the constant term.
    pub fn leading_power(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(k, _)| k)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs).expect("series orders differ")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs).expect("series orders differ")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs).expect("series orders differ")
    }
}

/// `z·f'(z)/f(z)` for `f ∈ 𝒜` (`f(0) = 0`, `f'(0) = 1`); order drops by one.
pub fn p_of_f(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let one = ComplexValue::new(1.0, 0.0);
    if f.order() < 1 || f.coeff(0).norm() > 1e-14 || (f.coeff(1) - one).norm() > 1e-14 {
        return Err(Error::Normalization(
            "f must satisfy f(0) = 0 and f'(0) = 1".into(),
        ));
    }
    // z f'/f = f' / (f/z)
    let f_over_z = TruncatedSeries::new(f.coeffs()[1..].to_vec());
    f.derivative().div(&f_over_z)
}

/// Binomial series of `(1 + z)^{1/2}` through `z^N`.
pub fn sqrt_one_plus_z_series(order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = 1.0;
    coeffs.push(ComplexValue::new(c, 0.0));
    for k in 1..=order {
        c *= (0.5 - (k as f64 - 1.0)) / k as f64;
        coeffs.push(ComplexValue::new(c, 0.0));
    }
    TruncatedSeries::new(coeffs)
}

/// Smallest order at which the binomial tail of `√(1+z)` at `radius` is below `tol`.
pub fn sqrt_order_for(radius: f64, tol: f64) -> usize {
    let mut c: f64 = 1.0;
    let mut k = 0usize;
    loop {
        k += 1;
        c *= (0.5 - (k as f64 - 1.0)) / k as f64;
        // |c_k| is non-increasing for k ≥ 1
        if c.abs() * radius.powi(k as i32 + 1) / (1.0 - radius) < tol || k > 10_000_000 {
            return k;
        }
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        if pairs.is_empty() {
            return Err(serde::de::Error::custom("series needs at least one coefficient"));
        }
        Ok(TruncatedSeries::new(
            pairs.into_iter().map(|[re, im]| ComplexValue::new(re, im)).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(v)
    }

    #[test]
    fn derivative_and_product() {
        assert_eq!(s(&[1.0, 1.0, 1.0]).derivative(), s(&[1.0, 2.0]));
        assert_eq!(s(&[1.0, 1.0, 0.0]).mul(&s(&[1.0, -1.0, 0.0])).unwrap(), s(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn geometric_division() {
        let q = s(&[1.0, 0.0, 0.0, 0.0, 0.0]).div(&s(&[1.0, -1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(q, s(&[1.0; 5]));
        assert!(matches!(
            s(&[1.0, 0.0]).div(&s(&[0.0, 1.0])),
            Err(Error::NotInvertible)
        ));
        assert!(matches!(s(&[1.0]).add(&s(&[1.0, 2.0])), Err(Error::OrderMismatch(0, 1))));
    }

    #[test]
    fn euler_operators() {
        let p = s(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.z_derivative(), s(&[0.0, 2.0, 6.0, 12.0]));
        assert_eq!(p.z2_second_derivative(), s(&[0.0, 0.0, 6.0, 24.0]));
        // z²p'' = E(Ep) − Ep
        let e = p.z_derivative();
        assert_eq!(&e.z_derivative() - &e, p.z2_second_derivative());
    }

    #[test]
    fn p_of_f_examples() {
        let n = 8;
        let p = p_of_f(&TruncatedSeries::z(n)).unwrap();
        assert_eq!(p, TruncatedSeries::constant(ComplexValue::new(1.0, 0.0), n - 1));

        // z/(1−z) = z + z² + ...
        let mut koebe = vec![0.0];
        koebe.extend(std::iter::repeat_n(1.0, n));
        let p = p_of_f(&s(&koebe)).unwrap();
        assert!(p.max_abs_diff(&s(&[1.0; 8])).unwrap() < 1e-14);

        // (1+z)/(1+z/2) by explicit long division: 1, 1/2, −1/4, 1/8, …
        let mut f = vec![0.0, 1.0, 0.5];
        f.resize(n + 1, 0.0);
        let p = p_of_f(&s(&f)).unwrap();
        let mut oracle = vec![1.0, 0.5];
        for k in 2..n {
            oracle.push(-oracle[k - 1] / 2.0);
        }
        assert!(p.max_abs_diff(&s(&oracle)).unwrap() < 1e-15);

        assert!(matches!(p_of_f(&s(&[0.0, 2.0, 1.0])), Err(Error::Normalization(_))));
        assert!(matches!(p_of_f(&s(&[0.1, 1.0, 1.0])), Err(Error::Normalization(_))));
    }

    #[test]
    fn sqrt_series() {
        assert_eq!(sqrt_one_plus_z_series(2), s(&[1.0, 0.5, -0.125]));
        // recurrence oracle: c_k = c_{k-1}(1/2 − k + 1)/k
        assert_eq!(sqrt_one_plus_z_series(4).coeff(4).re, -5.0 / 128.0);
        let q = sqrt_one_plus_z_series(10);
        let sq = q.mul(&q).unwrap();
        let mut one_plus_z = vec![1.0, 1.0];
        one_plus_z.resize(11, 0.0);
        assert!(sq.max_abs_diff(&s(&one_plus_z)).unwrap() < 1e-15);
    }

    #[test]
    fn evaluation() {
        let one = TruncatedSeries::constant(ComplexValue::new(1.0, 0.0), 5);
        assert_eq!(one.evaluate(ComplexValue::new(0.3, -0.8)), ComplexValue::new(1.0, 0.0));
        let geo = s(&[1.0; 51]);
        assert!((geo.evaluate(ComplexValue::new(0.5, 0.0)).re - 2.0).abs() < 1e-12);
        let q = sqrt_one_plus_z_series(50);
        assert!((q.evaluate(ComplexValue::new(0.21, 0.0)).re - 1.1).abs() < 1e-10);
    }

    #[test]
    fn tail_and_order_selection() {
        assert_eq!(s(&[1.0, 0.5, 0.0]).tail_estimate(0.999), 0.0);
        let n = sqrt_order_for(0.999, 1e-8);
        assert!(sqrt_one_plus_z_series(n).tail_estimate(0.999) < 1e-8);
        assert!(sqrt_one_plus_z_series(n - 1).tail_estimate(0.999) >= 1e-8);
    }

    #[test]
    fn json_pairs() {
        let p = TruncatedSeries::new(vec![ComplexValue::new(1.0, 0.0), ComplexValue::new(0.25, -0.5)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[[1.0,0.0],[0.25,-0.5]]");
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<TruncatedSeries>("[]").is_err());
    }
}
