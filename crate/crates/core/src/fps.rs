//! Truncated formal power series with exact coefficient arithmetic.
//!
//! A series carries its truncation order `N` and exactly `N+1` coefficients.
//! Equality and every identity in this crate mean "coefficients 0..=N agree";
//! two series interoperate only at equal order, and mixing orders is an
//! error rather than an implicit coercion.

use std::fmt;

use thiserror::Error;

use crate::scalar::{int, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpsError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is zero; series is not invertible")]
    ZeroConstantTerm,
    #[error("division by the zero series")]
    DivideByZero,
    #[error("valuation of divisor ({den}) exceeds valuation of dividend ({num})")]
    ValuationMismatch { num: usize, den: usize },
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series to revert must have zero constant term")]
    RevertConstantTerm,
    #[error("series to revert must have nonzero linear term")]
    RevertLinearTerm,
    #[error("root radicand must have constant term 1")]
    RootConstantTerm,
    #[error("root index must be positive")]
    ZeroRootIndex,
}

/// A formal power series truncated at a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct Fps<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Fps<T> {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least a constant term");
        Fps { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Fps { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        Fps { coeffs }
    }

    /// The indeterminate `t` (truncates to 0 at order 0).
    pub fn t(order: usize) -> Self {
        Self::monomial(T::one(), 1, order)
    }

    /// `c * t^k`, zero if `k` exceeds the order.
    pub fn monomial(c: T, k: usize, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Fps { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Keeps coefficients 0..=`order`; requires `order <= self.order()`.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncation cannot raise the order");
        Fps { coeffs: self.coeffs[..=order].to_vec() }
    }

    fn same_order(&self, rhs: &Self) -> Result<(), FpsError> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(FpsError::OrderMismatch { left: self.order(), right: rhs.order() })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, FpsError> {
        self.same_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Fps { coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, FpsError> {
        self.same_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Fps { coeffs })
    }

    pub fn neg(&self) -> Self {
        Fps { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Fps { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self, FpsError> {
        self.same_order(rhs)?;
        let n = self.order();
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Fps { coeffs })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self, FpsError> {
        if self.coeffs[0].is_zero() {
            return Err(FpsError::ZeroConstantTerm);
        }
        let n = self.order();
        let c0 = self.coeffs[0].clone();
        let mut r = vec![T::zero(); n + 1];
        r[0] = T::one() / c0.clone();
        for m in 1..=n {
            let mut s = T::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s = s + self.coeffs[k].clone() * r[m - k].clone();
                }
            }
            r[m] = -s / c0.clone();
        }
        Ok(Fps { coeffs: r })
    }

    /// Division with valuation cancellation: requires
    /// `valuation(rhs) <= valuation(self)`. After cancelling
    /// `t^valuation(rhs)` from both sides the numerator and denominator are
    /// treated as exact polynomials, so the result satisfies
    /// `rhs * result == self` through degree `N - valuation(rhs)` and is
    /// exact at all degrees whenever the inputs are polynomials of degree
    /// at most `N`.
    pub fn divide(&self, rhs: &Self) -> Result<Self, FpsError> {
        self.same_order(rhs)?;
        let vb = rhs.valuation().ok_or(FpsError::DivideByZero)?;
        if self.is_zero() {
            return Ok(Self::zero(self.order()));
        }
        let va = self.valuation().expect("nonzero");
        if vb > va {
            return Err(FpsError::ValuationMismatch { num: va, den: vb });
        }
        let shift = |s: &Self| {
            let mut coeffs: Vec<T> = s.coeffs[vb..].to_vec();
            coeffs.resize(s.order() + 1, T::zero());
            Fps { coeffs }
        };
        shift(self).mul(&shift(rhs).recip()?)
    }

    /// Composition `self(rhs)`; the inner series needs zero constant term.
    pub fn compose(&self, rhs: &Self) -> Result<Self, FpsError> {
        self.same_order(rhs)?;
        if !rhs.coeffs[0].is_zero() {
            return Err(FpsError::NonzeroInnerConstant);
        }
        let n = self.order();
        // Horner from the top coefficient down.
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(rhs)?;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `revert(f)_n = (1/n) [t^{n-1}] (t/f)^n`. Requires `f(0) = 0`,
    /// `f'(0) != 0`; both round trips with `compose` hold exactly at order N.
    #[allow(clippy::needless_range_loop)] // index arithmetic mirrors the recurrence
    pub fn revert(&self) -> Result<Self, FpsError> {
        if !self.coeffs[0].is_zero() {
            return Err(FpsError::RevertConstantTerm);
        }
        if self.coeffs[1].is_zero() {
            return Err(FpsError::RevertLinearTerm);
        }
        let n = self.order();
        // u = t/f; its top coefficient depends on data beyond the truncation,
        // but degree n of u never reaches the degrees n-1 and below read off
        // the powers u^k, so the result is exact.
        let mut shifted: Vec<T> = self.coeffs[1..].to_vec();
        shifted.resize(n + 1, T::zero());
        let u = Fps { coeffs: shifted }.recip()?;
        let mut out = vec![T::zero(); n + 1];
        let mut p = u.clone();
        for m in 1..=n {
            out[m] = p.coeffs[m - 1].clone() / int::<T>(m as i64);
            if m < n {
                p = p.mul(&u)?;
            }
        }
        Ok(Fps { coeffs: out })
    }

    /// Termwise derivative. The top coefficient of the result is not
    /// determined by a truncated input and is set to zero: the result is
    /// reliable through degree `N-1`. Callers needing degree `N` must
    /// supply the input at order `N+1`.
    #[allow(clippy::needless_range_loop)] // index arithmetic mirrors the recurrence
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![T::zero(); n + 1];
        for k in 0..n {
            coeffs[k] = self.coeffs[k + 1].clone() * int::<T>((k + 1) as i64);
        }
        Fps { coeffs }
    }

    /// The operator `t d/dt`: coefficient `k` becomes `k * a_k`. Unlike
    /// `derivative`, exact through the full order.
    pub fn xdx(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.clone() * int::<T>(k as i64))
            .collect();
        Fps { coeffs }
    }

    /// The unique `n`-th root with constant term 1 of a series with
    /// constant term 1, by the quotient-rule recurrence
    /// `m r_m = (1/n) Σ_{j=1..m} j a_j r_{m-j} - Σ_{j=1..m-1} j r_j a_{m-j}`.
    #[allow(clippy::needless_range_loop)] // index arithmetic mirrors the recurrence
    pub fn nth_root(&self, n: u32) -> Result<Self, FpsError> {
        if n == 0 {
            return Err(FpsError::ZeroRootIndex);
        }
        if !self.coeffs[0].is_one() {
            return Err(FpsError::RootConstantTerm);
        }
        let ord = self.order();
        let alpha = T::one() / int::<T>(n as i64);
        let mut r = vec![T::zero(); ord + 1];
        r[0] = T::one();
        for m in 1..=ord {
            let mut s1 = T::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    s1 = s1 + int::<T>(j as i64) * self.coeffs[j].clone() * r[m - j].clone();
                }
            }
            let mut s2 = T::zero();
            for j in 1..m {
                if !r[j].is_zero() {
                    s2 = s2 + int::<T>(j as i64) * r[j].clone() * self.coeffs[m - j].clone();
                }
            }
            r[m] = (alpha.clone() * s1 - s2) / int::<T>(m as i64);
        }
        Ok(Fps { coeffs: r })
    }

    /// Integer power by repeated squaring; negative exponents require a
    /// nonzero constant term.
    pub fn pow(&self, exp: i64) -> Result<Self, FpsError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Canonical coefficient strings (exact for rational scalars).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Renders as a sum of monomials, e.g. `1 - 1/2*t^2 + t^5`; the output is
/// accepted back by the expression parser.
impl<T: Scalar> fmt::Display for Fps<T> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(out, "{mag}")?,
                (1, true) => write!(out, "t")?,
                (1, false) => write!(out, "{mag}*t")?,
                (_, true) => write!(out, "t^{k}")?,
                (_, false) => write!(out, "{mag}*t^{k}")?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}
