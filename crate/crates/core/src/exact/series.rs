//! Truncated univariate power series with rational coefficients.
//!
//! A `TruncSeries` is known modulo `t^order`; coefficients past the order are
//! unknown, not zero.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 64;
pub const MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
    order: usize,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.truncate(order);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c·t^k`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.push(c);
        Self::new(v, order)
    }

    pub fn t(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` if zero to the known order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(), order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Known coefficients of a product: up to min(o1 + v2, o2 + v1).
        let v1 = self.valuation().unwrap_or(self.order);
        let v2 = other.valuation().unwrap_or(other.order);
        let order = (self.order + v2).min(other.order + v1);
        let n = (self.coeffs.len() + other.coeffs.len()).min(order);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::new(out, order)
    }

    pub fn powu(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rational::one(), self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self · t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.order + k)
    }

    /// `self / t^k`; errors if a low coefficient is nonzero.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::BranchNotInvariant);
        }
        if k > self.order {
            return Err(Error::InsufficientTruncation(self.order));
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect(), self.order - k))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
            self.order.saturating_sub(1),
        )
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return None;
        }
        let n = self.order;
        let inv0 = Rational::one() / &c0;
        let mut out = vec![Rational::zero(); n];
        if n > 0 {
            out[0] = inv0.clone();
        }
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                let a = self.coeff(j);
                if !a.is_zero() {
                    s += a * &out[k - j];
                }
            }
            out[k] = -s * &inv0;
        }
        Some(Self::new(out, n))
    }

    /// Exact quotient `self / other` using valuations on both sides.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let v = other.valuation().ok_or(Error::InsufficientTruncation(other.order))?;
        let unit = other.unshift(v)?;
        let num = self.unshift(v)?;
        Ok(num.mul(&unit.inverse().expect("unit")))
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out, self.order)
    }

    /// Substitutes `t ↦ t^k`.
    pub fn ramify(&self, k: usize) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a.clone();
        }
        Self::new(out, self.order.saturating_sub(1) * k + 1)
    }
}

/// Evaluates a polynomial at a tuple of series.
pub fn eval_poly<const N: usize>(p: &Poly<N>, at: &[TruncSeries; N], order: usize) -> TruncSeries {
    let mut cache: Vec<Vec<TruncSeries>> = (0..N)
        .map(|_| vec![TruncSeries::constant(Rational::one(), order)])
        .collect();
    let mut acc = TruncSeries::zero(order);
    for (e, c) in p.terms() {
        let mut term = TruncSeries::constant(c.clone(), order);
        for i in 0..N {
            let k = e[i] as usize;
            while cache[i].len() <= k {
                let next = cache[i].last().unwrap().mul(&at[i]);
                cache[i].push(next);
            }
            if k > 0 {
                term = term.mul(&cache[i][k]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn s(v: &[i64], order: usize) -> TruncSeries {
        TruncSeries::new(v.iter().map(|&c| int(c)).collect(), order)
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_t = s(&[1, -1], 10);
        let inv = one_minus_t.inverse().unwrap();
        assert_eq!(inv, s(&[1; 10], 10));
        assert_eq!(inv.mul(&one_minus_t), s(&[1], 10));
    }

    #[test]
    fn valuation_and_shift() {
        let a = s(&[0, 0, 3, 1], 8);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.unshift(2).unwrap(), s(&[3, 1], 6));
        assert!(a.unshift(3).is_err());
    }

    #[test]
    fn division_with_valuation() {
        let a = s(&[0, 2, 2], 10);
        let b = s(&[0, 1], 10);
        assert_eq!(a.div(&b).unwrap(), s(&[2, 2], 9));
    }

    #[test]
    fn rescale_and_ramify() {
        let a = s(&[1, 1, 1], 5);
        assert_eq!(a.rescale(&rat(2, 1)), s(&[1, 2, 4], 5));
        assert_eq!(a.ramify(2), s(&[1, 0, 1, 0, 1], 9));
    }

    #[test]
    fn poly_eval_on_series() {
        let p = Poly::<2>::parse_uv("u^2 - v").unwrap();
        let t = TruncSeries::t(10);
        let r = eval_poly(&p, &[t.clone(), t.mul(&t)], 10);
        assert!(r.is_zero());
    }
}
