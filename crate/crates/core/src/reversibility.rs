//! Reversibility: normal forms -t/(1+λt^p)^(1/p), a series-level decision
//! procedure for conjugacy to the inverse, a necessary-condition screen for
//! pairs, and the equivalence between strong reversibility (a product of
//! two involutions) and conjugacy to a pseudo-involution.
//!
//! Everything is decided up to the truncation order; a reversibility
//! verdict means "reversible to order N", never an unconditional claim.
//! Over the rationals the multiplier of any conjugator is rational, which
//! forces a genuine asymmetry: a series with linear coefficient -1 whose
//! square is t + γt^(p+1) + ... can only be reversed by a witness whose
//! multiplier μ satisfies μ^p = -1, impossible for even p. Even-p normal
//! forms with λ != 0 are therefore honestly reported as obstructed here,
//! although they are reversible over larger coefficient fields.

use thiserror::Error;

use crate::fps::{Fps, FpsError};
use crate::involutions::{is_involution, is_pseudo_involution, riordan_involution_conjugator, InvolutionError};
use crate::riordan::{DiagonalPattern, RiordanError, RiordanPair};
use crate::scalar::{int, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReversibilityError {
    #[error("series must have zero constant term and nonzero linear term")]
    CompositionSeriesRequired,
    #[error("series must have linear coefficient -1")]
    MultiplierNotMinusOne,
    #[error("p must be positive")]
    ZeroP,
    #[error("no truncated normal form is conjugate to the input: inconsistent at degree {degree}")]
    NormalFormObstruction { degree: usize },
    #[error("supplied witness does not conjugate the pair to a pseudo-involution")]
    WitnessNotPseudoInvolution,
    #[error("supplied reverser is not an involution")]
    ReverserNotInvolution,
    #[error("supplied involution does not conjugate the pair to its inverse")]
    ReverserDoesNotReverse,
    #[error(transparent)]
    Fps(#[from] FpsError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
}

/// A representative -t*(1+λt^p)^(-1/p) together with the conjugator
/// reaching it, when one was computed. `verify` checks the defining
/// relation f∘s = s∘series, i.e. s̄∘f∘s = series.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormDescriptor<T> {
    pub p: u32,
    pub lambda: T,
    pub series: Fps<T>,
    pub conjugator: Option<Fps<T>>,
}

impl<T: Scalar> NormalFormDescriptor<T> {
    pub fn verify(&self, f: &Fps<T>) -> bool {
        match &self.conjugator {
            Some(s) => match (f.compose(s), s.compose(&self.series)) {
                (Ok(lhs), Ok(rhs)) => lhs == rhs,
                _ => false,
            },
            None => *f == self.series,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReversibilityVerdict<T> {
    Reversible { witness: Fps<T> },
    ObstructedAtDegree(usize),
    MultiplierObstruction,
}

/// Outcome of the degree-by-degree solve of f∘u = u∘f̄, plus a per-degree
/// log of what the solver did. A `Reversible` witness satisfies the
/// conjugacy exactly through the truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReversibilityReport<T> {
    pub verdict: ReversibilityVerdict<T>,
    pub log: Vec<String>,
}

/// The expansion of -t*(1+λt^p)^(-1/p).
pub fn normal_form_series<T: Scalar>(
    p: u32,
    lambda: T,
    order: usize,
) -> Result<NormalFormDescriptor<T>, ReversibilityError> {
    if p == 0 {
        return Err(ReversibilityError::ZeroP);
    }
    let radicand = Fps::one(order).add(&Fps::monomial(lambda.clone(), p as usize, order))?;
    let series = Fps::t(order).mul(&radicand.nth_root(p)?.recip()?)?.neg();
    Ok(NormalFormDescriptor { p, lambda, series, conjugator: None })
}

/// One attempt at f∘u = u∘f̄ with the leading coefficient of u fixed.
/// The unknown u_d has coefficient f_1 - f̄_1^d at degree d; degrees where
/// it vanishes are resonant: the free coefficient is set to 0 and the
/// residual must vanish. Returns the witness or the first bad degree.
fn solve_reverser<T: Scalar>(
    f: &Fps<T>,
    fbar: &Fps<T>,
    u1: T,
    log: &mut Vec<String>,
) -> Result<Fps<T>, usize> {
    let n = f.order();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[1] = u1.clone();
    log.push(format!("attempt with u_1 = {u1}"));
    for d in 2..=n {
        let u = Fps::from_coeffs(coeffs.clone());
        let residual = f.compose(&u).expect("composition seed")
            .coeff(d)
            - u.compose(fbar).expect("composition seed").coeff(d);
        // f̄'(0) = 1/f'(0) = ±1 here, so its d-th power is decided by parity
        let fbar1_pow = if d % 2 == 0 { T::one() } else { fbar.coeff(1) };
        let cd = f.coeff(1) - fbar1_pow;
        if cd.is_zero() {
            if !residual.is_zero() {
                log.push(format!("degree {d}: resonant residual {residual} is nonzero"));
                return Err(d);
            }
            log.push(format!("degree {d}: resonant, u_{d} fixed to 0"));
        } else {
            let value = -(residual / cd);
            log.push(format!("degree {d}: u_{d} = {value}"));
            coeffs[d] = value;
        }
    }
    let u = Fps::from_coeffs(coeffs);
    let verified = f.compose(&u).expect("composition seed") == u.compose(fbar).expect("composition seed");
    assert!(verified, "per-degree solution must satisfy the full relation");
    log.push("witness verified to the truncation order".into());
    Ok(u)
}

/// Decides conjugacy of f to its compositional inverse up to the
/// truncation order. Multipliers other than ±1 are obstructed outright
/// (conjugation preserves f'(0) and inversion sends it to its
/// reciprocal). Otherwise the solve is run with u_1 = 1 and, failing
/// that, u_1 = -1; the reported obstruction degree is the canonical
/// (u_1 = 1) attempt's.
pub fn is_series_reversible<T: Scalar>(
    f: &Fps<T>,
) -> Result<ReversibilityReport<T>, ReversibilityError> {
    if !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
        return Err(ReversibilityError::CompositionSeriesRequired);
    }
    let m = f.coeff(1);
    let mut log = Vec::new();
    if m != T::one() && m != -T::one() {
        log.push(format!(
            "multiplier {m} is not ±1: the inverse has multiplier 1/({m}) and \
             conjugation cannot change it"
        ));
        return Ok(ReversibilityReport { verdict: ReversibilityVerdict::MultiplierObstruction, log });
    }
    let fbar = f.revert()?;
    let first = solve_reverser(f, &fbar, T::one(), &mut log);
    let verdict = match first {
        Ok(witness) => ReversibilityVerdict::Reversible { witness },
        Err(first_degree) => match solve_reverser(f, &fbar, -T::one(), &mut log) {
            Ok(witness) => ReversibilityVerdict::Reversible { witness },
            Err(_) => ReversibilityVerdict::ObstructedAtDegree(first_degree),
        },
    };
    Ok(ReversibilityReport { verdict, log })
}

/// exp(v) for a vector field v = v(t)·d/dt of valuation >= 2, as the
/// series t + Σ_{k>=1} v^[k]/k! with v^[1] = v and v^[k+1] = v·(v^[k])'.
/// Valuations grow by at least one per iterate, so the sum is finite at
/// any truncation order.
fn exp_of_field<T: Scalar>(v: &Fps<T>) -> Fps<T> {
    let n = v.order();
    let mut ex = Fps::t(n);
    let mut term = v.clone();
    let mut k: i64 = 1;
    let mut factorial = T::one();
    while k as usize <= n && !term.is_zero() {
        ex = ex.add(&term.scale(&(T::one() / factorial.clone()))).expect("same order");
        term = v.mul(&term.derivative()).expect("same order");
        k += 1;
        factorial = factorial * int::<T>(k);
    }
    ex
}

/// The formal infinitesimal generator of a parabolic g = t + O(t^2):
/// the unique v with exp(v) = g through the truncation order. Triangular
/// because v_d enters exp(v) at degree d only through the k = 1 term.
fn iterative_log<T: Scalar>(g: &Fps<T>) -> Fps<T> {
    let n = g.order();
    let mut v = Fps::zero(n);
    for d in 2..=n {
        let delta = g.coeff(d) - exp_of_field(&v).coeff(d);
        if !delta.is_zero() {
            v = v.add(&Fps::monomial(delta, d, n)).expect("same order");
        }
    }
    debug_assert!(exp_of_field(&v) == *g, "generator must exponentiate back to g");
    v
}

/// Finds (p, λ, s) with s̄∘f∘s = -t*(1+λt^p)^(-1/p), s_1 = 1, exactly to
/// the truncation order, for any f with f'(0) = -1.
///
/// If f∘f = t the involution branch returns the p = 1, λ = 0
/// representative with s read off the closed-form conjugator. Otherwise
/// p+1 = valuation(f∘f - t) (always odd: f commutes with its own square,
/// and conjugation by f scales the leading coefficient of f∘f - t by
/// (-1)^p). The square g = f∘f is matched to the time-1 flow of
/// W = γt^(p+1) by solving s'·W = v∘s for the generator v = log g: the
/// unknown s_e appears at equation degree e+p with coefficient γ(e-p-1),
/// so every degree is determined except the single resonance e = p+1,
/// where s_{p+1} is fixed to 0 and the residual must vanish. That
/// determines s through degree N-p; the remaining coefficients come from
/// the direct relation f∘s = s∘nf, whose even-degree unknowns have unit
/// coefficient (odd ones are resonant and stay 0). The result is
/// verified in full; any inconsistency is surfaced with its degree.
pub fn conjugate_to_normal_form<T: Scalar>(
    f: &Fps<T>,
) -> Result<NormalFormDescriptor<T>, ReversibilityError> {
    if !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
        return Err(ReversibilityError::CompositionSeriesRequired);
    }
    if f.coeff(1) != -T::one() {
        return Err(ReversibilityError::MultiplierNotMinusOne);
    }
    let n = f.order();
    let square = f.compose(f)?;
    let deviation = square.sub(&Fps::t(n))?;
    let Some(v0) = deviation.valuation() else {
        // involution branch: s̄∘f∘s = -t with s the inverse of x = (t-f)/2
        let x = Fps::t(n).sub(f)?.scale(&(T::one() / int::<T>(2)));
        let s = x.revert()?;
        let descriptor = NormalFormDescriptor {
            p: 1,
            lambda: T::zero(),
            series: Fps::t(n).neg(),
            conjugator: Some(s),
        };
        assert!(descriptor.verify(f), "involution conjugator must verify");
        return Ok(descriptor);
    };
    let p = v0 - 1;
    if p % 2 == 1 {
        // unreachable for genuine inputs (see above); kept as an honest error
        return Err(ReversibilityError::NormalFormObstruction { degree: v0 });
    }
    let gamma = deviation.coeff(v0);
    let lambda = -(int::<T>(p as i64) / int::<T>(2)) * gamma.clone();
    let generator = iterative_log(&square);
    debug_assert!(generator.valuation() == Some(v0) && generator.coeff(v0) == gamma);

    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[1] = T::one();
    for e in 2..=n.saturating_sub(p) {
        let d = e + p;
        let s = Fps::from_coeffs(coeffs.clone());
        let flow_side = gamma.clone() * s.derivative().coeff(d - p - 1);
        let residual = flow_side - generator.compose(&s).expect("composition seed").coeff(d);
        if e == p + 1 {
            if !residual.is_zero() {
                return Err(ReversibilityError::NormalFormObstruction { degree: d });
            }
        } else {
            let cd = gamma.clone() * (int::<T>(e as i64) - int::<T>(p as i64 + 1));
            coeffs[e] = -(residual / cd);
        }
    }
    let nf = normal_form_series(p as u32, lambda.clone(), n)?.series;
    for d in (n - p + 1)..=n {
        if d % 2 == 0 {
            let s = Fps::from_coeffs(coeffs.clone());
            let residual =
                f.compose(&s)?.coeff(d) - s.compose(&nf)?.coeff(d);
            // coefficient of s_d is f_1 - nf_1^d = -2 at even degrees
            coeffs[d] = residual / int::<T>(2);
        }
    }
    let s = Fps::from_coeffs(coeffs);
    let mismatch = f.compose(&s)?.sub(&s.compose(&nf)?)?;
    if let Some(d) = mismatch.valuation() {
        return Err(ReversibilityError::NormalFormObstruction { degree: d });
    }
    Ok(NormalFormDescriptor { p: p as u32, lambda, series: nf, conjugator: Some(s) })
}

/// Necessary-condition screen for the reversibility of a pair: the
/// diagonal must consist of ±1's, and the f-part must pass the series
/// solver. Passing is not a proof of reversibility of the pair; `note`
/// says so in every report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReversibilityScreen<T> {
    pub diagonal_pattern: DiagonalPattern,
    pub diagonal_admissible: bool,
    pub series_report: ReversibilityReport<T>,
    pub note: &'static str,
}

impl<T: Scalar> ReversibilityScreen<T> {
    pub fn series_reversible(&self) -> bool {
        matches!(self.series_report.verdict, ReversibilityVerdict::Reversible { .. })
    }

    pub fn passes(&self) -> bool {
        self.diagonal_admissible && self.series_reversible()
    }
}

pub fn riordan_reversibility_screen<T: Scalar>(p: &RiordanPair<T>) -> ReversibilityScreen<T> {
    let pattern = p.diagonal_pattern();
    let diagonal_admissible = pattern != DiagonalPattern::Other;
    let series_report =
        is_series_reversible(p.f()).expect("pair invariants admit the series solver");
    ReversibilityScreen {
        diagonal_pattern: pattern,
        diagonal_admissible,
        series_report,
        note: "necessary conditions to the truncation order only; \
               passing this screen does not prove the pair reversible",
    }
}

/// Splits P into a product of two involutions, given a witness U whose
/// conjugate U⁻¹PU is a pseudo-involution: with M̃ = U(1,-t)U⁻¹, returns
/// (S, T) = (P·M̃, M̃). Both factors square to the identity and S·T = P,
/// all checked exactly.
pub fn strong_decompose<T: Scalar>(
    p: &RiordanPair<T>,
    u: &RiordanPair<T>,
) -> Result<(RiordanPair<T>, RiordanPair<T>), ReversibilityError> {
    let conjugated = p.conjugate(u)?;
    if !is_pseudo_involution(&conjugated) {
        return Err(ReversibilityError::WitnessNotPseudoInvolution);
    }
    let n = p.order();
    let m_tilde = RiordanPair::m(n).conjugate(&u.inverse()?)?;
    let s = p.multiply(&m_tilde)?;
    assert!(is_involution(&s), "left factor must square to the identity");
    assert!(is_involution(&m_tilde), "right factor must square to the identity");
    assert!(s.multiply(&m_tilde)? == *p, "factors must multiply back to the pair");
    Ok((s, m_tilde))
}

/// Given a nonscalar involution S with S⁻¹PS = P⁻¹, produces U such that
/// U⁻¹PU is a pseudo-involution: the U conjugating S to (±1, -t). The
/// chain is forced: (U⁻¹PU)-conjugation by (±1,-t) inverts it, which is
/// exactly pseudo-involutivity. Verified before returning.
pub fn strong_reversibility_from_involution_pair<T: Scalar>(
    p: &RiordanPair<T>,
    s: &RiordanPair<T>,
) -> Result<RiordanPair<T>, ReversibilityError> {
    if !is_involution(s) {
        return Err(ReversibilityError::ReverserNotInvolution);
    }
    if p.conjugate(s)? != p.inverse()? {
        return Err(ReversibilityError::ReverserDoesNotReverse);
    }
    let witness = riordan_involution_conjugator(s)?;
    let u = witness.conjugator;
    assert!(
        is_pseudo_involution(&p.conjugate(&u)?),
        "conjugate through the involution's diagonalizer must be a pseudo-involution"
    );
    Ok(u)
}

/// Diagonal trichotomy for the two-reversible-factor classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoReversibleClass {
    ConstantDiagonal,
    AlternatingDiagonal,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoReversibleReport {
    pub class: TwoReversibleClass,
    pub diagonal_pattern: DiagonalPattern,
    pub note: &'static str,
}

/// Pure classification by diagonal pattern; no existence claims are
/// verified and no witness is computed.
pub fn two_reversible_classification<T: Scalar>(p: &RiordanPair<T>) -> TwoReversibleReport {
    let pattern = p.diagonal_pattern();
    let (class, note) = match pattern {
        DiagonalPattern::AllOnes | DiagonalPattern::AllMinusOnes => (
            TwoReversibleClass::ConstantDiagonal,
            "constant ±1 diagonal: reversible on diagonal grounds; no witness computed",
        ),
        DiagonalPattern::AlternatingPlusFirst | DiagonalPattern::AlternatingMinusFirst => (
            TwoReversibleClass::AlternatingDiagonal,
            "alternating ±1 diagonal: candidate reversible; involution-type diagonal",
        ),
        DiagonalPattern::Other => (
            TwoReversibleClass::Other,
            "diagonal is not ±1: at best a product of two reversible arrays; outside this \
             classifier's scope",
        ),
    };
    TwoReversibleReport { class, diagonal_pattern: pattern, note }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutions::is_series_involution;
    use crate::{QFps, QPair, Rat};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn fps(coeffs: &[(i64, i64)], order: usize) -> QFps {
        let mut v: Vec<Rat> = coeffs.iter().map(|&(nu, de)| q(nu, de)).collect();
        v.resize(order + 1, q(0, 1));
        QFps::from_coeffs(v)
    }

    #[test]
    fn normal_form_golden_expansions() {
        let n = 9;
        // p=1, λ=1: geometric -t/(1+t)
        let d = normal_form_series(1, q(1, 1), n).unwrap();
        let geo = QFps::t(n).neg().mul(&fps(&[(1, 1), (1, 1)], n).recip().unwrap()).unwrap();
        assert_eq!(d.series, geo);
        // p=2, λ=0 collapses to -t
        let d = normal_form_series(2, q(0, 1), n).unwrap();
        assert_eq!(d.series, QFps::t(n).neg());
        // p=2, λ=1: -t + t³/2 - 3t⁵/8 + 5t⁷/16 - 35t⁹/128
        let d = normal_form_series(2, q(1, 1), n).unwrap();
        let expect = fps(
            &[(0, 1), (-1, 1), (0, 1), (1, 2), (0, 1), (-3, 8), (0, 1), (5, 16), (0, 1), (-35, 128)],
            n,
        );
        assert_eq!(d.series, expect);
        // squaring the radical part recovers 1/(1+t²)
        let radical = d.series.divide(&QFps::t(n).neg()).unwrap();
        let square = radical.mul(&radical).unwrap().truncated(n - 1);
        assert_eq!(
            square,
            fps(&[(1, 1), (0, 1), (1, 1)], n - 1).recip().unwrap()
        );
        assert_eq!(normal_form_series(0, q(1, 1), n).unwrap_err(), ReversibilityError::ZeroP);
    }

    #[test]
    fn odd_p_normal_forms_are_involutions() {
        let n = 16;
        for (p, lam) in [(1, q(1, 1)), (3, q(2, 1)), (5, q(-1, 2)), (7, q(1, 1))] {
            let d = normal_form_series(p, lam, n).unwrap();
            assert!(is_series_involution(&d.series), "p = {p} must give an involution");
        }
        for (p, lam) in [(2, q(1, 1)), (4, q(1, 3)), (6, q(-2, 1))] {
            let d = normal_form_series(p, lam, n).unwrap();
            assert!(!is_series_involution(&d.series), "p = {p}, λ != 0 is not an involution");
        }
    }

    #[test]
    fn reversibility_solver_verdicts() {
        let n = 16;
        // involutions are reversible with witness t
        let report = is_series_reversible(&QFps::t(n).neg()).unwrap();
        assert_eq!(
            report.verdict,
            ReversibilityVerdict::Reversible { witness: QFps::t(n) }
        );
        // multiplier 2 can never work
        let report = is_series_reversible(&QFps::t(n).scale(&q(2, 1))).unwrap();
        assert_eq!(report.verdict, ReversibilityVerdict::MultiplierObstruction);
        // t/(1-t) is reversible through the second candidate u = -t
        let geo = QFps::t(n).mul(&fps(&[(1, 1), (-1, 1)], n).recip().unwrap()).unwrap();
        let report = is_series_reversible(&geo).unwrap();
        assert_eq!(
            report.verdict,
            ReversibilityVerdict::Reversible { witness: QFps::t(n).neg() }
        );
        // even-p normal forms are obstructed over the rationals at p+1:
        // a reverser's multiplier would need μ^p = -1
        for (p, lam) in [(2u32, q(1, 1)), (4, q(1, 1)), (6, q(2, 3)), (2, q(-3, 2))] {
            let d = normal_form_series(p, lam, n).unwrap();
            let report = is_series_reversible(&d.series).unwrap();
            assert_eq!(
                report.verdict,
                ReversibilityVerdict::ObstructedAtDegree(p as usize + 1),
                "normal form p = {p}"
            );
        }
        // errors
        assert_eq!(
            is_series_reversible(&QFps::one(n)).unwrap_err(),
            ReversibilityError::CompositionSeriesRequired
        );
    }

    #[test]
    fn witnesses_satisfy_the_conjugacy() {
        let n = 14;
        let geo = QFps::t(n).mul(&fps(&[(1, 1), (-1, 1)], n).recip().unwrap()).unwrap();
        let report = is_series_reversible(&geo).unwrap();
        if let ReversibilityVerdict::Reversible { witness } = &report.verdict {
            let fbar = geo.revert().unwrap();
            assert_eq!(geo.compose(witness).unwrap(), witness.compose(&fbar).unwrap());
        } else {
            panic!("expected a witness");
        }
        assert!(report.log.iter().any(|line| line.contains("verified")));
    }

    #[test]
    fn normal_form_fit_round_trips() {
        let n = 16;
        // self-fit: the conjugator is t itself
        let nf = normal_form_series(2, q(1, 1), n).unwrap();
        let fit = conjugate_to_normal_form(&nf.series).unwrap();
        assert_eq!((fit.p, fit.lambda.clone()), (2, q(1, 1)));
        assert_eq!(fit.conjugator, Some(QFps::t(n)));
        assert!(fit.verify(&nf.series));
        // conjugate by s = t + t² and recover (p, λ)
        let s = fps(&[(0, 1), (1, 1), (1, 1)], n);
        let f = s.revert().unwrap().compose(&nf.series.compose(&s).unwrap()).unwrap();
        let fit = conjugate_to_normal_form(&f).unwrap();
        assert_eq!((fit.p, fit.lambda.clone()), (2, q(1, 1)));
        assert!(fit.verify(&f));
        // a p = 4 case with nontrivial λ
        let nf = normal_form_series(4, q(-2, 3), n).unwrap();
        let s = fps(&[(0, 1), (1, 1), (0, 1), (-1, 2), (1, 1)], n);
        let f = s.revert().unwrap().compose(&nf.series.compose(&s).unwrap()).unwrap();
        let fit = conjugate_to_normal_form(&f).unwrap();
        assert_eq!((fit.p, fit.lambda.clone()), (4, q(-2, 3)));
        assert!(fit.verify(&f));
    }

    #[test]
    fn normal_form_fit_involution_branch() {
        let n = 16;
        let fit = conjugate_to_normal_form(&QFps::t(n).neg()).unwrap();
        assert_eq!((fit.p, fit.lambda.clone()), (1, q(0, 1)));
        let h = QFps::t(n).neg().mul(&fps(&[(1, 1), (1, 1)], n).recip().unwrap()).unwrap();
        let fit = conjugate_to_normal_form(&h).unwrap();
        assert_eq!((fit.p, fit.lambda.clone()), (1, q(0, 1)));
        assert!(fit.verify(&h));
        // preconditions
        assert_eq!(
            conjugate_to_normal_form(&QFps::t(n)).unwrap_err(),
            ReversibilityError::MultiplierNotMinusOne
        );
    }

    #[test]
    fn screen_reports_both_conditions() {
        let n = 12;
        // (1, nf(2,1)): diagonal alternates, series is honestly obstructed
        // over the rationals, so the screen does not pass here
        let nf = normal_form_series(2, q(1, 1), n).unwrap();
        let p = QPair::new(QFps::one(n), nf.series).unwrap();
        let screen = riordan_reversibility_screen(&p);
        assert_eq!(screen.diagonal_pattern, DiagonalPattern::AlternatingPlusFirst);
        assert!(screen.diagonal_admissible);
        assert!(!screen.series_reversible());
        assert!(!screen.passes());
        assert!(screen.note.contains("does not prove"));
        // (2, t): diagonal fails, series side passes trivially
        let p = QPair::new(fps(&[(2, 1)], n), QFps::t(n)).unwrap();
        let screen = riordan_reversibility_screen(&p);
        assert!(!screen.diagonal_admissible);
        assert!(screen.series_reversible());
        assert!(!screen.passes());
        // (1, 2t): fails both
        let p = QPair::new(QFps::one(n), QFps::t(n).scale(&q(2, 1))).unwrap();
        let screen = riordan_reversibility_screen(&p);
        assert!(!screen.diagonal_admissible);
        assert!(!screen.series_reversible());
        // an involution passes outright
        let screen = riordan_reversibility_screen(&QPair::m(n));
        assert!(screen.passes());
    }

    #[test]
    fn strong_decomposition_of_pascal() {
        let n = 12;
        let pascal = QPair::pascal(n);
        let (s, t) = strong_decompose(&pascal, &QPair::identity(n)).unwrap();
        let one_minus = fps(&[(1, 1), (-1, 1)], n);
        let expect_s = QPair::new(
            one_minus.recip().unwrap(),
            QFps::t(n).neg().mul(&one_minus.recip().unwrap()).unwrap(),
        )
        .unwrap();
        assert_eq!(s, expect_s);
        assert_eq!(t, QPair::m(n));
        // identity = M·M
        let (s, t) = strong_decompose(&QPair::identity(n), &QPair::identity(n)).unwrap();
        assert_eq!(s, QPair::m(n));
        assert_eq!(t, QPair::m(n));
        // invalid witness is rejected
        assert_eq!(
            strong_decompose(&QPair::new(fps(&[(2, 1)], n), QFps::t(n)).unwrap(), &QPair::identity(n))
                .unwrap_err(),
            ReversibilityError::WitnessNotPseudoInvolution
        );
    }

    #[test]
    fn involution_pair_lemma_round_trip() {
        let n = 12;
        let pascal = QPair::pascal(n);
        // S = Pascal·M reverses Pascal
        let s = pascal.multiply(&QPair::m(n)).unwrap();
        assert!(is_involution(&s));
        let u = strong_reversibility_from_involution_pair(&pascal, &s).unwrap();
        assert!(is_pseudo_involution(&pascal.conjugate(&u).unwrap()));
        // decompose, then feed the left factor back through the lemma
        let (left, _right) = strong_decompose(&pascal, &QPair::identity(n)).unwrap();
        let u = strong_reversibility_from_involution_pair(&pascal, &left).unwrap();
        assert!(is_pseudo_involution(&pascal.conjugate(&u).unwrap()));
        // rejections
        assert_eq!(
            strong_reversibility_from_involution_pair(&pascal, &pascal).unwrap_err(),
            ReversibilityError::ReverserNotInvolution
        );
        let unrelated = QPair::new(QFps::one(n), h_unrelated(n)).unwrap();
        assert_eq!(
            strong_reversibility_from_involution_pair(&pascal, &unrelated).unwrap_err(),
            ReversibilityError::ReverserDoesNotReverse
        );
    }

    fn h_unrelated(n: usize) -> QFps {
        QFps::t(n)
            .neg()
            .mul(&fps(&[(1, 1), (1, 1)], n).recip().unwrap())
            .unwrap()
    }

    #[test]
    fn two_reversible_trichotomy() {
        let n = 10;
        let report = two_reversible_classification(&QPair::pascal(n));
        assert_eq!(report.class, TwoReversibleClass::ConstantDiagonal);
        let report = two_reversible_classification(&QPair::m(n));
        assert_eq!(report.class, TwoReversibleClass::AlternatingDiagonal);
        let p = QPair::new(fps(&[(3, 1)], n), QFps::t(n).scale(&q(2, 1))).unwrap();
        let report = two_reversible_classification(&p);
        assert_eq!(report.class, TwoReversibleClass::Other);
        assert!(report.note.contains("outside"));
    }
}
