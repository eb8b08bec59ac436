//! Riordan pairs: validated `(g, f)` with the group operations.
//!
//! A pair `(g, f)` requires `g(0) != 0`, `f(0) = 0`, `f'(0) != 0` and
//! represents the lower-triangular array whose k-th column generating
//! function is `g*f^k`. The product follows the fundamental theorem:
//! `(g, f)(u, v) = (g * u(f), v(f))`, so the group inverse is
//! `(1/g(fbar), fbar)` with `fbar` the compositional inverse of `f`.

use std::fmt;

use thiserror::Error;

use crate::fps::{Fps, FpsError};
use crate::scalar::{int, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RiordanError {
    #[error("g(0) must be nonzero")]
    G0Zero,
    #[error("f(0) must be zero")]
    F0Nonzero,
    #[error("f'(0) must be nonzero")]
    F1Zero,
    #[error("matrix size {size} exceeds order+1 = {limit}")]
    MatrixTooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Fps(#[from] FpsError),
}

/// A sign, used both for `±M` targets and for witness signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    /// Classifies a scalar that is known to be `+1` or `-1`.
    pub fn of_unit<T: Scalar>(c: &T) -> Option<Sign> {
        if c.is_one() {
            Some(Sign::Plus)
        } else if (-c.clone()).is_one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(out, "+1"),
            Sign::Minus => write!(out, "-1"),
        }
    }
}

/// Main-diagonal classification; the n-th diagonal entry is `g(0)*f'(0)^n`,
/// so the pattern is determined by that pair of scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalPattern {
    AllOnes,
    AllMinusOnes,
    AlternatingPlusFirst,
    AlternatingMinusFirst,
    Other,
}

impl fmt::Display for DiagonalPattern {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagonalPattern::AllOnes => "all-ones",
            DiagonalPattern::AllMinusOnes => "all-minus-ones",
            DiagonalPattern::AlternatingPlusFirst => "alternating-plus-first",
            DiagonalPattern::AlternatingMinusFirst => "alternating-minus-first",
            DiagonalPattern::Other => "other",
        };
        write!(out, "{s}")
    }
}

/// A validated Riordan pair at a fixed truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct RiordanPair<T> {
    g: Fps<T>,
    f: Fps<T>,
}

impl<T: Scalar> RiordanPair<T> {
    pub fn new(g: Fps<T>, f: Fps<T>) -> Result<Self, RiordanError> {
        if g.order() != f.order() {
            return Err(FpsError::OrderMismatch { left: g.order(), right: f.order() }.into());
        }
        if g.coeff(0).is_zero() {
            return Err(RiordanError::G0Zero);
        }
        if !f.coeff(0).is_zero() {
            return Err(RiordanError::F0Nonzero);
        }
        if f.coeff(1).is_zero() {
            return Err(RiordanError::F1Zero);
        }
        Ok(RiordanPair { g, f })
    }

    pub fn g(&self) -> &Fps<T> {
        &self.g
    }

    pub fn f(&self) -> &Fps<T> {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// The identity `(1, t)`.
    pub fn identity(order: usize) -> Self {
        RiordanPair { g: Fps::one(order), f: Fps::t(order) }
    }

    /// The diagonal involution `(1, -t)` with alternating diagonal.
    pub fn m(order: usize) -> Self {
        RiordanPair { g: Fps::one(order), f: Fps::t(order).neg() }
    }

    /// `(1/(1-t), t/(1-t))`, the Pascal triangle pair.
    pub fn pascal(order: usize) -> Self {
        let geom = Fps::from_coeffs(vec![T::one(); order + 1]);
        let f = Fps::t(order).mul(&geom).expect("same order");
        RiordanPair { g: geom, f }
    }

    /// FTRA product: `(g, f)(u, v) = (g * u(f), v(f))`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, RiordanError> {
        let g = self.g.mul(&rhs.g.compose(&self.f)?)?;
        let f = rhs.f.compose(&self.f)?;
        Self::new(g, f)
    }

    /// Group inverse `(1/g(fbar), fbar)`; exact at the truncation order.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.recip()?;
        Self::new(g, fbar)
    }

    /// Conjugation `P^X = X^{-1} P X`.
    pub fn conjugate(&self, x: &Self) -> Result<Self, RiordanError> {
        x.inverse()?.multiply(self)?.multiply(x)
    }

    /// Commutator `[P, Q] = P^{-1} Q^{-1} P Q`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, RiordanError> {
        self.inverse()?
            .multiply(&rhs.inverse()?)?
            .multiply(self)?
            .multiply(rhs)
    }

    /// `(-g, f)`; composing with `negated` flips the diagonal sign.
    pub fn negated(&self) -> Self {
        RiordanPair { g: self.g.neg(), f: self.f.clone() }
    }

    pub fn truncated(&self, order: usize) -> Self {
        RiordanPair { g: self.g.truncated(order), f: self.f.truncated(order) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.order())
    }

    /// True for `(1, t)` and `(-1, t)`, the central scalar arrays.
    pub fn is_scalar(&self) -> bool {
        self.is_identity() || *self == Self::identity(self.order()).negated()
    }

    /// n-th main-diagonal entry `g(0) * f'(0)^n`.
    pub fn diagonal_entry(&self, n: usize) -> T {
        let mut d = self.g.coeff(0);
        for _ in 0..n {
            d = d * self.f.coeff(1);
        }
        d
    }

    pub fn diagonal_pattern(&self) -> DiagonalPattern {
        let g0 = Sign::of_unit(&self.g.coeff(0));
        let f1 = Sign::of_unit(&self.f.coeff(1));
        match (g0, f1) {
            (Some(Sign::Plus), Some(Sign::Plus)) => DiagonalPattern::AllOnes,
            (Some(Sign::Minus), Some(Sign::Plus)) => DiagonalPattern::AllMinusOnes,
            (Some(Sign::Plus), Some(Sign::Minus)) => DiagonalPattern::AlternatingPlusFirst,
            (Some(Sign::Minus), Some(Sign::Minus)) => DiagonalPattern::AlternatingMinusFirst,
            _ => DiagonalPattern::Other,
        }
    }

    /// Membership in the commutator subgroup: unit main diagonal,
    /// i.e. `g(0) = 1` and `f'(0) = 1`.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.g.coeff(0).is_one() && self.f.coeff(1).is_one()
    }

    /// Materializes the leading `size x size` block; needs `size <= order+1`
    /// so every requested coefficient is inside the truncation.
    pub fn to_matrix(&self, size: usize) -> Result<RiordanMatrix<T>, RiordanError> {
        let limit = self.order() + 1;
        if size > limit {
            return Err(RiordanError::MatrixTooLarge { size, limit });
        }
        let mut entries = vec![vec![T::zero(); size]; size];
        let mut col = self.g.clone();
        for k in 0..size {
            for (n, row) in entries.iter_mut().enumerate().take(size).skip(k) {
                row[k] = col.coeff(n);
            }
            if k + 1 < size {
                col = col.mul(&self.f)?;
            }
        }
        Ok(RiordanMatrix { entries })
    }
}

impl<T: Scalar> fmt::Display for RiordanPair<T> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({}, {})", self.g, self.f)
    }
}

/// A materialized lower-triangular block of a Riordan array.
#[derive(Debug, Clone, PartialEq)]
pub struct RiordanMatrix<T> {
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> RiordanMatrix<T> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, n: usize, k: usize) -> &T {
        &self.entries[n][k]
    }

    /// Plain matrix product; sizes must agree.
    #[allow(clippy::needless_range_loop)] // index arithmetic mirrors the recurrence
    pub fn matmul(&self, rhs: &Self) -> Self {
        let k = self.size();
        assert_eq!(k, rhs.size(), "matrix sizes must agree");
        let mut entries = vec![vec![T::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut s = T::zero();
                for l in 0..k {
                    s = s + self.entries[i][l].clone() * rhs.entries[l][j].clone();
                }
                entries[i][j] = s;
            }
        }
        RiordanMatrix { entries }
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect()
    }

    /// Column-aligned text table (full square, zeros included).
    pub fn render_text(&self) -> String {
        let rows = self.rows_as_strings();
        let k = self.size();
        let mut widths = vec![0usize; k];
        for row in &rows {
            for (j, cell) in row.iter().enumerate() {
                widths[j] = widths[j].max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, cell)| format!("{cell:>width$}", width = widths[j]))
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows_as_strings() {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Binomial coefficient as a scalar, for cross-checking Pascal blocks.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let mut c = T::one();
    for j in 0..k {
        c = c * int::<T>((n - j) as i64) / int::<T>((j + 1) as i64);
    }
    c
}
