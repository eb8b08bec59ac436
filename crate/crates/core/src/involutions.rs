//! Involutions in the Riordan group: predicates, classification of nonscalar
//! involutions to the diagonal targets `(±1, -t)` with explicit conjugators,
//! and the signed-commutator witness for a product of two involutions.
//!
//! The two closed forms used throughout:
//! - for a compositional involution `h` (with `h != t`), the average
//!   `x = (t - h)/2` satisfies `x(h) = -x` identically and has `x'(0) = 1`;
//! - for a pair involution `P = (a, h)`, the conjugator `U = (1 + e*a, x)`
//!   with `e = a(0)` sends `P` to `(e, -t)`, using `a * a(h) = 1`.

use thiserror::Error;

use crate::fps::Fps;
use crate::riordan::{RiordanError, RiordanPair, Sign};
use crate::scalar::{int_recip, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvolutionError {
    #[error("series is not a compositional involution at this order")]
    SeriesNotInvolution,
    #[error("series t has no sign-reversing conjugator")]
    IdentitySeries,
    #[error("pair is not an involution at this order")]
    NotInvolution,
    #[error("pair is scalar; classification to (±1, -t) needs a nonscalar involution")]
    ScalarPair,
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

/// A conjugator together with the diagonal target it reaches.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyWitness<T> {
    pub conjugator: RiordanPair<T>,
    pub target: RiordanPair<T>,
    pub sign: Sign,
}

impl<T: Scalar> ConjugacyWitness<T> {
    /// Exact check of `conjugate(source, conjugator) == target`.
    pub fn verify(&self, source: &RiordanPair<T>) -> bool {
        source
            .conjugate(&self.conjugator)
            .map(|c| c == self.target)
            .unwrap_or(false)
    }
}

/// A series conjugator: `conjugator(source) == target(conjugator)`, i.e.
/// under composition the conjugator carries `source` to `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesConjugacyWitness<T> {
    pub conjugator: Fps<T>,
    pub target: Fps<T>,
}

impl<T: Scalar> SeriesConjugacyWitness<T> {
    pub fn verify(&self, source: &Fps<T>) -> bool {
        let lhs = self.conjugator.compose(source);
        let rhs = self.target.compose(&self.conjugator);
        matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
    }
}

/// Expresses `I1 * I2` as `sign * [A, B]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoInvolutionWitness<T> {
    pub sign: Sign,
    pub a: RiordanPair<T>,
    pub b: RiordanPair<T>,
    /// The product of two involutions may itself be an involution; that is
    /// allowed and simply flagged.
    pub product_is_involution: bool,
}

impl<T: Scalar> TwoInvolutionWitness<T> {
    pub fn verify(&self, i1: &RiordanPair<T>, i2: &RiordanPair<T>) -> bool {
        let product = match i1.multiply(i2) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let comm = match self.a.commutator(&self.b) {
            Ok(c) => c,
            Err(_) => return false,
        };
        let rhs = match self.sign {
            Sign::Plus => comm,
            Sign::Minus => comm.negated(),
        };
        product == rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionClass {
    Identity,
    MinusIdentity,
    ConjugateToM,
    ConjugateToMinusM,
    NotInvolution,
}

impl InvolutionClass {
    /// The sign `e` of the diagonal target `(e, -t)` for nonscalar classes.
    pub fn sign(self) -> Option<Sign> {
        match self {
            InvolutionClass::ConjugateToM => Some(Sign::Plus),
            InvolutionClass::ConjugateToMinusM => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// `P^2 == (1, t)` exactly at the common order.
pub fn is_involution<T: Scalar>(p: &RiordanPair<T>) -> bool {
    p.multiply(p).map(|sq| sq.is_identity()).unwrap_or(false)
}

/// `P*(1,-t)` is an involution.
pub fn is_pseudo_involution<T: Scalar>(p: &RiordanPair<T>) -> bool {
    p.multiply(&RiordanPair::m(p.order()))
        .map(|pm| is_involution(&pm))
        .unwrap_or(false)
}

/// `h(h) == t` exactly (requires `h(0) = 0`; anything else is not one).
pub fn is_series_involution<T: Scalar>(h: &Fps<T>) -> bool {
    h.compose(h).map(|hh| hh == Fps::t(h.order())).unwrap_or(false)
}

/// For a compositional involution `h != t`, returns `x = (t - h)/2` with
/// `x(h) = -x` and `x'(0) = 1`; the identity is re-verified exactly.
pub fn series_involution_conjugator<T: Scalar>(
    h: &Fps<T>,
) -> Result<SeriesConjugacyWitness<T>, InvolutionError> {
    let n = h.order();
    if !is_series_involution(h) {
        return Err(InvolutionError::SeriesNotInvolution);
    }
    if *h == Fps::t(n) {
        return Err(InvolutionError::IdentitySeries);
    }
    let x = Fps::t(n)
        .sub(h)
        .expect("same order")
        .scale(&int_recip::<T>(2));
    let witness = SeriesConjugacyWitness { conjugator: x, target: Fps::t(n).neg() };
    assert!(witness.verify(h), "averaging conjugator must verify for an involution");
    Ok(witness)
}

/// For a nonscalar pair involution `P = (a, h)`, returns `U = (1 + e*a, x)`
/// with `e = a(0)` and `x = (t - h)/2`, so that `U^{-1} P U = (e, -t)`.
/// The conjugation is re-verified exactly before returning.
pub fn riordan_involution_conjugator<T: Scalar>(
    p: &RiordanPair<T>,
) -> Result<ConjugacyWitness<T>, InvolutionError> {
    if p.is_scalar() {
        return Err(InvolutionError::ScalarPair);
    }
    if !is_involution(p) {
        return Err(InvolutionError::NotInvolution);
    }
    let n = p.order();
    let sign = Sign::of_unit(&p.g().coeff(0)).expect("involution has g(0) = ±1");
    let eps: T = sign.value();
    let u = Fps::one(n).add(&p.g().scale(&eps)).expect("same order");
    let x = Fps::t(n)
        .sub(p.f())
        .expect("same order")
        .scale(&int_recip::<T>(2));
    let conjugator = RiordanPair::new(u, x)?;
    let target = match sign {
        Sign::Plus => RiordanPair::m(n),
        Sign::Minus => RiordanPair::m(n).negated(),
    };
    let witness = ConjugacyWitness { conjugator, target, sign };
    assert!(witness.verify(p), "closed-form conjugator must verify for an involution");
    Ok(witness)
}

pub fn classify_involution<T: Scalar>(p: &RiordanPair<T>) -> InvolutionClass {
    let n = p.order();
    if *p == RiordanPair::identity(n) {
        return InvolutionClass::Identity;
    }
    if *p == RiordanPair::identity(n).negated() {
        return InvolutionClass::MinusIdentity;
    }
    if !is_involution(p) {
        return InvolutionClass::NotInvolution;
    }
    match Sign::of_unit(&p.g().coeff(0)) {
        Some(Sign::Plus) => InvolutionClass::ConjugateToM,
        Some(Sign::Minus) => InvolutionClass::ConjugateToMinusM,
        None => unreachable!("involution has g(0)^2 = 1"),
    }
}

/// Writes `I1 * I2` as a signed commutator. With `R_k` the inverse of the
/// conjugator taking `I_k` to `(e_k, -t)`, the factors are `A = (1,-t)^{R_1}`
/// and `B = R_1^{-1} R_2`, and the sign is `e_1 * e_2`; then
/// `I1 * I2 = sign * [A, B]` exactly, which is re-verified before returning.
pub fn two_involution_product_witness<T: Scalar>(
    i1: &RiordanPair<T>,
    i2: &RiordanPair<T>,
) -> Result<TwoInvolutionWitness<T>, InvolutionError> {
    let w1 = riordan_involution_conjugator(i1)?;
    let w2 = riordan_involution_conjugator(i2)?;
    let r1 = w1.conjugator.inverse()?;
    let r2 = w2.conjugator.inverse()?;
    let n = i1.order();
    let a = RiordanPair::m(n).conjugate(&r1)?;
    let b = r1.inverse()?.multiply(&r2)?;
    let sign = if w1.sign == w2.sign { Sign::Plus } else { Sign::Minus };
    let product = i1.multiply(i2)?;
    let witness = TwoInvolutionWitness {
        sign,
        a,
        b,
        product_is_involution: is_involution(&product),
    };
    assert!(witness.verify(i1, i2), "signed-commutator identity must hold");
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riordan::DiagonalPattern;
    use crate::{QFps, QPair, Rat};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn fps(coeffs: &[(i64, i64)], order: usize) -> QFps {
        let mut v: Vec<Rat> = coeffs.iter().map(|&(n, d)| q(n, d)).collect();
        v.resize(order + 1, q(0, 1));
        QFps::from_coeffs(v)
    }

    /// h = -t/(1+t), the basic nonlinear compositional involution.
    fn h_basic(order: usize) -> QFps {
        QFps::t(order)
            .neg()
            .mul(&fps(&[(1, 1), (1, 1)], order).recip().unwrap())
            .unwrap()
    }

    #[test]
    fn involution_predicates() {
        let n = 10;
        assert!(is_involution(&QPair::m(n)));
        let p = QPair::new(QFps::one(n), h_basic(n)).unwrap();
        assert!(is_involution(&p));
        assert!(!is_involution(&QPair::pascal(n)));
        assert!(is_series_involution(&h_basic(n)));
        assert!(is_series_involution(&QFps::t(n).neg()));
        assert!(!is_series_involution(&QFps::t(n).mul(&fps(&[(1, 1), (-1, 1)], n).recip().unwrap()).unwrap()));
    }

    #[test]
    fn pseudo_involution_examples() {
        let n = 10;
        assert!(is_pseudo_involution(&QPair::pascal(n)));
        assert!(is_pseudo_involution(&QPair::identity(n)));
        let two = QPair::new(QFps::constant(q(2, 1), n), QFps::t(n)).unwrap();
        assert!(!is_pseudo_involution(&two));
        // tautology: P pseudo-involution iff P*M is an involution
        let pm = QPair::pascal(n).multiply(&QPair::m(n)).unwrap();
        assert!(is_involution(&pm));
    }

    #[test]
    fn series_conjugator_closed_form() {
        let n = 12;
        let w = series_involution_conjugator(&QFps::t(n).neg()).unwrap();
        assert_eq!(w.conjugator, QFps::t(n));
        let h = h_basic(n);
        let w = series_involution_conjugator(&h).unwrap();
        // x = t(t+2) / (2(t+1)) = t - t^2/2 + t^3/2 - t^4/2 + ...
        let num = QFps::t(n)
            .mul(&fps(&[(2, 1), (1, 1)], n))
            .unwrap();
        let den = fps(&[(2, 1), (2, 1)], n);
        assert_eq!(w.conjugator, num.divide(&den).unwrap());
        assert_eq!(
            w.conjugator.truncated(4),
            fps(&[(0, 1), (1, 1), (-1, 2), (1, 2), (-1, 2)], 4)
        );
        assert!(w.verify(&h));
        // x(h) = -x directly
        assert_eq!(w.conjugator.compose(&h).unwrap(), w.conjugator.neg());
        assert_eq!(
            series_involution_conjugator(&QFps::t(n)).unwrap_err(),
            InvolutionError::IdentitySeries
        );
        assert_eq!(
            series_involution_conjugator(&QFps::t(n).scale(&q(2, 1))).unwrap_err(),
            InvolutionError::SeriesNotInvolution
        );
    }

    #[test]
    fn riordan_conjugator_reaches_diagonal_target() {
        let n = 12;
        let w = riordan_involution_conjugator(&QPair::m(n)).unwrap();
        assert_eq!(w.sign, Sign::Plus);
        assert_eq!(w.conjugator, QPair::new(QFps::constant(q(2, 1), n), QFps::t(n)).unwrap());
        assert!(w.verify(&QPair::m(n)));

        // P = (1/(1-t), -t/(1-t)): u = 1 + 1/(1-t), x = t(2-t)/(2(1-t))
        let geom = fps(&[(1, 1), (-1, 1)], n).recip().unwrap();
        let p = QPair::new(geom.clone(), QFps::t(n).neg().mul(&geom).unwrap()).unwrap();
        assert!(is_involution(&p));
        let w = riordan_involution_conjugator(&p).unwrap();
        assert_eq!(w.sign, Sign::Plus);
        assert_eq!(w.target, QPair::m(n));
        assert_eq!(w.conjugator.g(), &QFps::one(n).add(&geom).unwrap());
        let x_expect = QFps::t(n)
            .mul(&fps(&[(2, 1), (-1, 1)], n))
            .unwrap()
            .divide(&fps(&[(2, 1), (-2, 1)], n))
            .unwrap();
        assert_eq!(w.conjugator.f(), &x_expect);
        assert!(w.verify(&p));

        let pneg = QPair::new(QFps::one(n).neg(), h_basic(n)).unwrap();
        let w = riordan_involution_conjugator(&pneg).unwrap();
        assert_eq!(w.sign, Sign::Minus);
        assert_eq!(w.target, QPair::m(n).negated());
        assert!(w.verify(&pneg));

        assert_eq!(
            riordan_involution_conjugator(&QPair::identity(n)).unwrap_err(),
            InvolutionError::ScalarPair
        );
        assert_eq!(
            riordan_involution_conjugator(&QPair::pascal(n)).unwrap_err(),
            InvolutionError::NotInvolution
        );
    }

    #[test]
    fn classification_matches_sign() {
        let n = 10;
        assert_eq!(classify_involution(&QPair::identity(n)), InvolutionClass::Identity);
        assert_eq!(
            classify_involution(&QPair::identity(n).negated()),
            InvolutionClass::MinusIdentity
        );
        let geom = fps(&[(1, 1), (-1, 1)], n).recip().unwrap();
        let p = QPair::new(geom.clone(), QFps::t(n).neg().mul(&geom).unwrap()).unwrap();
        assert_eq!(classify_involution(&p), InvolutionClass::ConjugateToM);
        assert_eq!(classify_involution(&p).sign(), Some(Sign::Plus));
        let pneg = QPair::new(QFps::one(n).neg(), h_basic(n)).unwrap();
        assert_eq!(classify_involution(&pneg), InvolutionClass::ConjugateToMinusM);
        assert_eq!(classify_involution(&QPair::pascal(n)), InvolutionClass::NotInvolution);
        assert_eq!(classify_involution(&QPair::m(n)), InvolutionClass::ConjugateToM);
    }

    #[test]
    fn two_involution_product_as_signed_commutator() {
        let n = 10;
        let m = QPair::m(n);
        let w = two_involution_product_witness(&m, &m).unwrap();
        assert_eq!(w.sign, Sign::Plus);
        assert!(w.product_is_involution);
        assert!(w.verify(&m, &m));

        let geom = fps(&[(1, 1), (-1, 1)], n).recip().unwrap();
        let i2 = QPair::new(geom.clone(), QFps::t(n).neg().mul(&geom).unwrap()).unwrap();
        let w = two_involution_product_witness(&m, &i2).unwrap();
        assert_eq!(w.sign, Sign::Plus);
        assert!(w.verify(&m, &i2));
        let product = m.multiply(&i2).unwrap();
        assert_eq!(product.diagonal_pattern(), DiagonalPattern::AllOnes);
        assert!(product.in_commutator_subgroup());

        let i3 = QPair::new(QFps::one(n).neg(), h_basic(n)).unwrap();
        let w = two_involution_product_witness(&m, &i3).unwrap();
        assert_eq!(w.sign, Sign::Minus);
        assert!(w.verify(&m, &i3));
        assert_eq!(
            m.multiply(&i3).unwrap().diagonal_pattern(),
            DiagonalPattern::AllMinusOnes
        );

        assert_eq!(
            two_involution_product_witness(&QPair::identity(n), &m).unwrap_err(),
            InvolutionError::ScalarPair
        );
    }
}
