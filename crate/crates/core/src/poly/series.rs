//! Exponential generating functions truncated at a fixed order.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..c_N` where
//! `f(z) = Σ c_n z^n / n!`. Products are binomial convolutions, so every
//! series with integral EGF coefficients stays integral.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{IntPoly, Ring};
use crate::combin::{binomial_row, factorial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> TruncatedSeries<C> {
    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// `e^{a z}`, whose `n`-th EGF coefficient is `a^n`.
    pub fn exp(a: &C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = C::one();
        for _ in 0..=order {
            coeffs.push(acc.clone());
            acc = acc * a.clone();
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `n!·[z^n] f`.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn map<D: Ring>(&self, f: impl FnMut(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k].clone() + other.coeffs[k].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k].clone() - other.coeffs[k].clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Multiplies every coefficient by the constant `c`.
    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// Product of EGFs: `c_n = Σ_k C(n,k) a_k b_{n-k}`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |m| {
            let row = binomial_row(m);
            (0..=m).fold(C::zero(), |acc, k| {
                let a = &self.coeffs[k];
                let b = &other.coeffs[m - k];
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + (a.clone() * b.clone()).scale(&row[k])
                }
            })
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `self / divisor`; the divisor's constant term must be a unit of `C`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let n = self.order().min(divisor.order());
        let inv = divisor.coeffs[0]
            .unit_inverse()
            .ok_or(Error::NonInvertible)?;
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let row = binomial_row(m);
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                let g = &divisor.coeffs[k];
                if !g.is_zero() {
                    acc = acc - (g.clone() * out[m - k].clone()).scale(&row[k]);
                }
            }
            out.push(acc * inv.clone());
        }
        Ok(Self { coeffs: out })
    }

    /// `∂/∂z`: shifts coefficients down, so the order drops by one.
    pub fn derivative_z(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Multiplication by `z`: `c_n ↦ n·c_{n-1}`.
    pub fn mul_z(&self) -> Self {
        Self::from_fn(self.order(), |n| {
            if n == 0 {
                C::zero()
            } else {
                self.coeffs[n - 1].scale(&BigInt::from(n))
            }
        })
    }

    /// First index where the two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

impl TruncatedSeries<BigRational> {
    /// Builds from ordinary power-series coefficients `a_n = [z^n] f`.
    pub fn from_plain(plain: Vec<BigRational>, order: usize) -> Self {
        let mut s = Self::new(plain, order);
        for (n, c) in s.coeffs.iter_mut().enumerate() {
            *c = c.clone() * BigRational::from_integer(factorial(n));
        }
        s
    }

    /// Ordinary power-series coefficients `[z^n] f = c_n / n!`.
    pub fn plain_coefficients(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c / BigRational::from_integer(factorial(n)))
            .collect()
    }
}

impl TruncatedSeries<IntPoly> {
    /// `(1 - z)^{-q}` in the variable `q`: the `n`-th EGF coefficient is the
    /// rising factorial `q(q+1)...(q+n-1)`.
    pub fn pochhammer_pow(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = IntPoly::constant(1);
        for n in 0..=order {
            coeffs.push(acc.clone());
            acc = acc * IntPoly::linear(n as i64);
        }
        Self { coeffs }
    }

    /// `(1 + z)^x` in the variable `x`: the `n`-th EGF coefficient is the
    /// falling factorial `x(x-1)...(x-n+1)`.
    pub fn binomial_pow(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = IntPoly::constant(1);
        for n in 0..=order {
            coeffs.push(acc.clone());
            acc = acc * IntPoly::linear(-(n as i64));
        }
        Self { coeffs }
    }

    /// `∂/∂x` applied coefficientwise.
    pub fn derivative_x(&self) -> Self {
        self.map(IntPoly::derivative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exp_plain_coefficients() {
        let e = TruncatedSeries::exp(&BigRational::one(), 3);
        assert_eq!(
            e.plain_coefficients(),
            vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6)]
        );
        let back = TruncatedSeries::from_plain(e.plain_coefficients(), 3);
        assert_eq!(back, e);
    }

    #[test]
    fn chain_number_egf() {
        // e^{2z} / (2 - e^z)
        let n = 6;
        let num = TruncatedSeries::exp(&BigInt::from(2), n);
        let den = TruncatedSeries::constant(BigInt::from(2), n)
            .sub(&TruncatedSeries::exp(&BigInt::one(), n));
        let a = num.div(&den).unwrap();
        assert_eq!(&a.coeffs()[..4], &[1, 3, 11, 51].map(BigInt::from));
    }

    #[test]
    fn division_requires_unit_constant() {
        let two = TruncatedSeries::constant(BigInt::from(2), 3);
        assert_eq!(
            TruncatedSeries::<BigInt>::one(3).div(&two),
            Err(Error::NonInvertible)
        );
        let r = TruncatedSeries::<BigRational>::one(3)
            .div(&TruncatedSeries::constant(q(2, 1), 3))
            .unwrap();
        assert_eq!(r.coeff(0), &q(1, 2));
        let x = TruncatedSeries::constant(IntPoly::x(), 2);
        assert!(TruncatedSeries::<IntPoly>::one(2).div(&x).is_err());
    }

    /// Signless Stirling numbers of the first kind by their own recurrence.
    fn stirling1_oracle(n: usize) -> Vec<Vec<i64>> {
        let mut t = vec![vec![1i64]];
        for m in 1..=n {
            let prev = &t[m - 1];
            let row = (0..=m)
                .map(|k| {
                    let a = if k >= 1 {
                        prev.get(k - 1).copied().unwrap_or(0)
                    } else {
                        0
                    };
                    let b = prev.get(k).copied().unwrap_or(0) * (m as i64 - 1);
                    a + b
                })
                .collect();
            t.push(row);
        }
        t
    }

    #[test]
    fn pochhammer_matches_stirling_triangle() {
        let s = TruncatedSeries::pochhammer_pow(8);
        assert_eq!(s.coeff(2), &IntPoly::from_i64s(&[0, 1, 1]));
        let oracle = stirling1_oracle(8);
        for (n, row) in oracle.iter().enumerate() {
            assert_eq!(s.coeff(n), &IntPoly::from_i64s(row), "n={n}");
        }
    }

    #[test]
    fn exp_addition_law() {
        let n = 7;
        let a = IntPoly::from_i64s(&[2, 1]);
        let b = IntPoly::from_i64s(&[-3, 0, 1]);
        let lhs = TruncatedSeries::exp(&a, n).mul(&TruncatedSeries::exp(&b, n));
        assert_eq!(lhs, TruncatedSeries::exp(&(&a + &b), n));
        let r = TruncatedSeries::exp(&q(1, 3), n).mul(&TruncatedSeries::exp(&q(-5, 2), n));
        assert_eq!(r, TruncatedSeries::exp(&(q(1, 3) + q(-5, 2)), n));
    }

    #[test]
    fn calculus_on_series() {
        let e = TruncatedSeries::exp(&BigInt::from(3), 4);
        assert_eq!(
            e.derivative_z(),
            TruncatedSeries::exp(&BigInt::from(3), 3).scale(&BigInt::from(3))
        );
        // z·e^z has EGF coefficients n.
        let ze = TruncatedSeries::exp(&BigInt::one(), 4).mul_z();
        assert_eq!(ze.coeffs(), &[0, 1, 2, 3, 4].map(BigInt::from));
        let bp = TruncatedSeries::binomial_pow(3);
        assert_eq!(bp.coeff(3), &IntPoly::from_i64s(&[0, 2, -3, 1]));
        assert!(TruncatedSeries::<BigInt>::zero(3)
            .coeffs()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn division_inverts_multiplication() {
        let n = 6;
        let f = TruncatedSeries::exp(&IntPoly::x(), n);
        let g = TruncatedSeries::exp(&IntPoly::from_i64s(&[1, -1]), n);
        let h = f.mul(&g).div(&g).unwrap();
        assert_eq!(h, f);
    }
}
