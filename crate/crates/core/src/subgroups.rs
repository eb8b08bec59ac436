//! Eight classical subgroups: constructors from defining seeds, exact
//! membership relations, involution characterizations, and in-subgroup
//! conjugators to the diagonal targets (or proofs that none exist).
//!
//! Shapes, with `h` a composition seed (`h(0) = 0`, `h'(0) != 0`) and `b`
//! a unit seed (`b(0) != 0`):
//!
//! | tag            | element                  |
//! |----------------|--------------------------|
//! | `derivative`   | `(h', h)`                |
//! | `hitting-time` | `(t*h'/h, h)`            |
//! | `lagrange`     | `(1, h)`                 |
//! | `bell`         | `(b, t*b)`               |
//! | `reciprocal:r` | `(t^r/h^r, h)`           |
//! | `stabilizer:f` | `(f/(f(h)), h)`          |
//! | `appell`       | `(b, t)`                 |
//! | `bcn:c,n`      | `(1/(1-c*t^n), t*(1-c*t^n)^(-1/n))` |
//!
//! Relations involving `h'` cost one truncation degree, so the derivative,
//! hitting-time, and reciprocal constructors return a pair one order below
//! their seed, and membership for the derivative subgroup is checked
//! through order N-1.

use std::fmt;

use thiserror::Error;

use crate::exprparse;
use crate::fps::{Fps, FpsError};
use crate::involutions::{
    is_involution, is_series_involution, riordan_involution_conjugator, ConjugacyWitness,
    InvolutionError,
};
use crate::riordan::{RiordanError, RiordanPair, Sign};
use crate::scalar::{int, FromRational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubgroupError {
    #[error("seed for this subgroup must have zero constant term and nonzero linear term")]
    CompositionSeedRequired,
    #[error("seed for this subgroup must have nonzero constant term")]
    UnitSeedRequired,
    #[error("index parameter must be positive")]
    ZeroIndex,
    #[error("stabilizer series must have nonzero constant term")]
    StabilizerConstantTerm,
    #[error("pair is not a member of subgroup `{tag}`")]
    NotAMember { tag: String },
    #[error("pair is not an involution at this order")]
    NotInvolution,
    #[error("pair is scalar; conjugation to (±1, -t) needs a nonscalar involution")]
    ScalarPair,
    #[error(transparent)]
    Fps(#[from] FpsError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TagParseError {
    #[error("unknown subgroup tag `{0}`")]
    UnknownTag(String),
    #[error("invalid parameter for `{tag}`: {message}")]
    BadParameter { tag: &'static str, message: String },
}

/// Identifies a subgroup, carrying its parameters where the family has any.
#[derive(Debug, Clone, PartialEq)]
pub enum SubgroupTag<T> {
    Derivative,
    HittingTime,
    Lagrange,
    Bell,
    Reciprocal { r: u32 },
    Stabilizer { series: Fps<T> },
    Appell,
    Bcn { c: T, n: u32 },
}

impl<T: Scalar> SubgroupTag<T> {
    pub fn label(&self) -> &'static str {
        match self {
            SubgroupTag::Derivative => "derivative",
            SubgroupTag::HittingTime => "hitting-time",
            SubgroupTag::Lagrange => "lagrange",
            SubgroupTag::Bell => "bell",
            SubgroupTag::Reciprocal { .. } => "reciprocal",
            SubgroupTag::Stabilizer { .. } => "stabilizer",
            SubgroupTag::Appell => "appell",
            SubgroupTag::Bcn { .. } => "bcn",
        }
    }
}

impl<T: FromRational> SubgroupTag<T> {
    /// Parses the command-line form: `derivative`, `hitting-time`,
    /// `lagrange`, `bell`, `appell`, `reciprocal:r=2`, `stabilizer:f=<expr>`,
    /// or `bcn:c=<rational>,n=<int>`. The stabilizer expression is
    /// materialized at `order`.
    pub fn parse(text: &str, order: usize) -> Result<Self, TagParseError> {
        match text {
            "derivative" => return Ok(SubgroupTag::Derivative),
            "hitting-time" => return Ok(SubgroupTag::HittingTime),
            "lagrange" => return Ok(SubgroupTag::Lagrange),
            "bell" => return Ok(SubgroupTag::Bell),
            "appell" => return Ok(SubgroupTag::Appell),
            _ => {}
        }
        if let Some(rest) = text.strip_prefix("reciprocal:") {
            let value = rest.strip_prefix("r=").ok_or_else(|| TagParseError::BadParameter {
                tag: "reciprocal",
                message: format!("expected `r=<int>`, got `{rest}`"),
            })?;
            let r: u32 = value.parse().map_err(|_| TagParseError::BadParameter {
                tag: "reciprocal",
                message: format!("`{value}` is not a positive integer"),
            })?;
            if r == 0 {
                return Err(TagParseError::BadParameter {
                    tag: "reciprocal",
                    message: "exponent must be positive".into(),
                });
            }
            return Ok(SubgroupTag::Reciprocal { r });
        }
        if let Some(rest) = text.strip_prefix("stabilizer:") {
            let expr = rest.strip_prefix("f=").ok_or_else(|| TagParseError::BadParameter {
                tag: "stabilizer",
                message: format!("expected `f=<expr>`, got `{rest}`"),
            })?;
            let series =
                exprparse::evaluate_str::<T>(expr, order).map_err(|e| TagParseError::BadParameter {
                    tag: "stabilizer",
                    message: e.to_string(),
                })?;
            if series.coeff(0).is_zero() {
                return Err(TagParseError::BadParameter {
                    tag: "stabilizer",
                    message: "series must have nonzero constant term".into(),
                });
            }
            return Ok(SubgroupTag::Stabilizer { series });
        }
        if let Some(rest) = text.strip_prefix("bcn:") {
            let (c_part, n_part) =
                rest.split_once(',').ok_or_else(|| TagParseError::BadParameter {
                    tag: "bcn",
                    message: format!("expected `c=<rational>,n=<int>`, got `{rest}`"),
                })?;
            let c_text = c_part.strip_prefix("c=").ok_or_else(|| TagParseError::BadParameter {
                tag: "bcn",
                message: format!("expected `c=<rational>`, got `{c_part}`"),
            })?;
            let n_text = n_part.strip_prefix("n=").ok_or_else(|| TagParseError::BadParameter {
                tag: "bcn",
                message: format!("expected `n=<int>`, got `{n_part}`"),
            })?;
            let c_value = exprparse::parse_rational(c_text).map_err(|e| {
                TagParseError::BadParameter { tag: "bcn", message: e.to_string() }
            })?;
            let c = T::from_rational(&c_value).ok_or_else(|| TagParseError::BadParameter {
                tag: "bcn",
                message: "parameter c is not representable in the coefficient type".into(),
            })?;
            let n: u32 = n_text.parse().map_err(|_| TagParseError::BadParameter {
                tag: "bcn",
                message: format!("`{n_text}` is not a positive integer"),
            })?;
            if n == 0 {
                return Err(TagParseError::BadParameter {
                    tag: "bcn",
                    message: "index must be positive".into(),
                });
            }
            return Ok(SubgroupTag::Bcn { c, n });
        }
        Err(TagParseError::UnknownTag(text.to_string()))
    }
}

impl<T: Scalar> fmt::Display for SubgroupTag<T> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupTag::Reciprocal { r } => write!(out, "reciprocal:r={r}"),
            SubgroupTag::Stabilizer { series } => write!(out, "stabilizer:f={series}"),
            SubgroupTag::Bcn { c, n } => write!(out, "bcn:c={c},n={n}"),
            other => write!(out, "{}", other.label()),
        }
    }
}

/// Proof that the in-subgroup conjugation equations are inconsistent:
/// the degree at which the contradiction appears and a prose derivation.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibilityCertificate {
    pub degree: usize,
    pub detail: String,
}

/// Outcome of an in-subgroup conjugator search. Infeasibility always comes
/// with the unrestricted witness, which exists for every nonscalar
/// involution but lies outside the subgroup.
#[derive(Debug, Clone, PartialEq)]
pub enum ConjugatorResult<T> {
    Found(ConjugacyWitness<T>),
    InfeasibleInSubgroup {
        certificate: InfeasibilityCertificate,
        outside_witness: ConjugacyWitness<T>,
    },
}

fn check_composition_seed<T: Scalar>(seed: &Fps<T>) -> Result<(), SubgroupError> {
    if !seed.coeff(0).is_zero() || seed.coeff(1).is_zero() {
        return Err(SubgroupError::CompositionSeedRequired);
    }
    Ok(())
}

fn check_unit_seed<T: Scalar>(seed: &Fps<T>) -> Result<(), SubgroupError> {
    if seed.coeff(0).is_zero() {
        return Err(SubgroupError::UnitSeedRequired);
    }
    Ok(())
}

/// Truncates `series` to order `n`; orders below `n` cannot be extended.
fn at_order<T: Scalar>(series: &Fps<T>, n: usize) -> Result<Fps<T>, SubgroupError> {
    if series.order() < n {
        return Err(FpsError::OrderMismatch { left: series.order(), right: n }.into());
    }
    Ok(series.truncated(n))
}

/// The `(1/(1-c*t^n), t*(1-c*t^n)^(-1/n))` element.
pub fn bcn_element<T: Scalar>(
    c: T,
    n: u32,
    order: usize,
) -> Result<RiordanPair<T>, SubgroupError> {
    if n == 0 {
        return Err(SubgroupError::ZeroIndex);
    }
    let d = Fps::one(order).sub(&Fps::monomial(c, n as usize, order))?;
    let g = d.recip()?;
    let f = Fps::t(order).mul(&g.nth_root(n)?)?;
    Ok(RiordanPair::new(g, f)?)
}

/// Builds the tagged element from its defining seed. Derivative,
/// hitting-time, and reciprocal shapes involve `h'` or `t/h`, so they
/// return a pair at one order below the seed; the other tags are exact at
/// the seed's order. Bcn ignores the seed apart from its order.
pub fn construct<T: Scalar>(
    tag: &SubgroupTag<T>,
    seed: &Fps<T>,
) -> Result<RiordanPair<T>, SubgroupError> {
    let n = seed.order();
    match tag {
        SubgroupTag::Derivative => {
            check_composition_seed(seed)?;
            let g = seed.derivative().truncated(n - 1);
            let f = seed.truncated(n - 1);
            Ok(RiordanPair::new(g, f)?)
        }
        SubgroupTag::HittingTime => {
            check_composition_seed(seed)?;
            let g = seed.xdx().divide(seed)?.truncated(n - 1);
            let f = seed.truncated(n - 1);
            Ok(RiordanPair::new(g, f)?)
        }
        SubgroupTag::Lagrange => {
            check_composition_seed(seed)?;
            Ok(RiordanPair::new(Fps::one(n), seed.clone())?)
        }
        SubgroupTag::Bell => {
            check_unit_seed(seed)?;
            let f = Fps::t(n).mul(seed)?;
            Ok(RiordanPair::new(seed.clone(), f)?)
        }
        SubgroupTag::Reciprocal { r } => {
            if *r == 0 {
                return Err(SubgroupError::ZeroIndex);
            }
            check_composition_seed(seed)?;
            let ratio = Fps::t(n).divide(seed)?;
            let g = ratio.pow(*r as i64)?.truncated(n - 1);
            let f = seed.truncated(n - 1);
            Ok(RiordanPair::new(g, f)?)
        }
        SubgroupTag::Stabilizer { series } => {
            check_composition_seed(seed)?;
            if series.coeff(0).is_zero() {
                return Err(SubgroupError::StabilizerConstantTerm);
            }
            let q = at_order(series, n)?;
            let g = q.divide(&q.compose(seed)?)?;
            Ok(RiordanPair::new(g, seed.clone())?)
        }
        SubgroupTag::Appell => {
            check_unit_seed(seed)?;
            Ok(RiordanPair::new(seed.clone(), Fps::t(n))?)
        }
        SubgroupTag::Bcn { c, n: index } => bcn_element(c.clone(), *index, n),
    }
}

/// Exact defining relation of the tag, checked at the pair's order (the
/// derivative relation, which consumes one degree, is checked through
/// order N-1; the stabilizer relation is checked through the smaller of
/// the pair's and the tag series' orders).
pub fn is_member<T: Scalar>(tag: &SubgroupTag<T>, p: &RiordanPair<T>) -> bool {
    let n = p.order();
    match tag {
        SubgroupTag::Derivative => {
            p.g().truncated(n - 1) == p.f().derivative().truncated(n - 1)
        }
        SubgroupTag::HittingTime => {
            // g*f = t*f' avoids the division and stays exact at order N.
            p.g().mul(p.f()).expect("same order") == p.f().xdx()
        }
        SubgroupTag::Lagrange => *p.g() == Fps::one(n),
        SubgroupTag::Bell => *p.f() == Fps::t(n).mul(p.g()).expect("same order"),
        SubgroupTag::Reciprocal { r } => {
            if *r == 0 {
                return false;
            }
            let lhs = p.g().mul(&p.f().pow(*r as i64).expect("nonnegative")).expect("same order");
            lhs == Fps::monomial(T::one(), *r as usize, n)
        }
        SubgroupTag::Stabilizer { series } => {
            if series.coeff(0).is_zero() {
                return false;
            }
            let m = n.min(series.order());
            let q = series.truncated(m);
            let pm = p.truncated(m);
            match q.compose(pm.f()) {
                Ok(qf) => pm.g().mul(&qf).expect("same order") == q,
                Err(_) => false,
            }
        }
        SubgroupTag::Appell => *p.f() == Fps::t(n),
        SubgroupTag::Bcn { c, n: index } => match bcn_element(c.clone(), *index, n) {
            Ok(element) => element == *p,
            Err(_) => false,
        },
    }
}

/// The subgroup's own involution criterion: composition-involutivity of
/// the f-part for the six composition-shaped families, `(±1, t)` for
/// Appell, and the identity alone for Bcn. Agrees with `is_involution`
/// on members.
pub fn is_subgroup_involution<T: Scalar>(
    tag: &SubgroupTag<T>,
    p: &RiordanPair<T>,
) -> Result<bool, SubgroupError> {
    if !is_member(tag, p) {
        return Err(SubgroupError::NotAMember { tag: tag.to_string() });
    }
    Ok(match tag {
        SubgroupTag::Appell => p.is_scalar(),
        SubgroupTag::Bcn { .. } => p.is_identity(),
        _ => is_series_involution(p.f()),
    })
}

/// Solves `x(h) = -x` degree by degree for an involution `h`:
/// even-degree coefficients are determined, odd degrees are resonant
/// (free, fixed to 0) except `x_1 = 1`. Returns the first inconsistent
/// degree if a resonant residual fails to vanish.
fn solve_sign_reversing<T: Scalar>(h: &Fps<T>) -> Result<Fps<T>, usize> {
    let n = h.order();
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(Fps::one(n));
    for j in 1..=n {
        let next = powers[j - 1].mul(h).expect("same order");
        powers.push(next);
    }
    let mut x = vec![T::zero(); n + 1];
    for d in 1..=n {
        let mut s = T::zero();
        for (j, xj) in x.iter().enumerate().take(d).skip(1) {
            if !xj.is_zero() {
                s = s + xj.clone() * powers[j].coeff(d);
            }
        }
        if d % 2 == 1 {
            if !s.is_zero() {
                return Err(d);
            }
            x[d] = if d == 1 { T::one() } else { T::zero() };
        } else {
            x[d] = -(s / int::<T>(2));
        }
    }
    Ok(Fps::from_coeffs(x))
}

/// Solves `b * u(w) = -u` degree by degree, where `w = t*b` is the
/// involutive f-part of a Bell involution: odd degrees are determined,
/// even degrees are resonant (u_0 = 1, higher fixed to 0).
fn solve_bell_unit<T: Scalar>(b: &Fps<T>, w: &Fps<T>) -> Result<Fps<T>, usize> {
    let n = b.order();
    let mut table = Vec::with_capacity(n + 1);
    table.push(b.clone());
    for j in 1..=n {
        let next = table[j - 1].mul(w).expect("same order");
        table.push(next);
    }
    let mut u = vec![T::zero(); n + 1];
    for d in 0..=n {
        let mut s = T::zero();
        for (j, uj) in u.iter().enumerate().take(d) {
            if !uj.is_zero() {
                s = s + uj.clone() * table[j].coeff(d);
            }
        }
        if d % 2 == 0 {
            if !s.is_zero() {
                return Err(d);
            }
            u[d] = if d == 0 { T::one() } else { T::zero() };
        } else {
            u[d] = -(s / int::<T>(2));
        }
    }
    Ok(Fps::from_coeffs(u))
}

fn infeasible<T: Scalar>(
    p: &RiordanPair<T>,
    degree: usize,
    detail: String,
) -> Result<ConjugatorResult<T>, SubgroupError> {
    let outside_witness = riordan_involution_conjugator(p)?;
    Ok(ConjugatorResult::InfeasibleInSubgroup {
        certificate: InfeasibilityCertificate { degree, detail },
        outside_witness,
    })
}

/// Searches for a conjugator inside the tagged subgroup taking the
/// nonscalar involution `P` to its diagonal target `(g(0), -t)`.
///
/// Shapes that build their g-part from `h'` or `t/h` (hitting-time and
/// reciprocal) return a witness one order below the input. The derivative
/// subgroup and odd-exponent reciprocal subgroups admit no in-subgroup
/// conjugator at all: the result carries the contradiction certificate
/// together with the unrestricted witness. A stabilizer admits one
/// exactly when its defining series is even.
pub fn subgroup_conjugator<T: Scalar>(
    tag: &SubgroupTag<T>,
    p: &RiordanPair<T>,
) -> Result<ConjugatorResult<T>, SubgroupError> {
    if !is_member(tag, p) {
        return Err(SubgroupError::NotAMember { tag: tag.to_string() });
    }
    if p.is_scalar() {
        return Err(SubgroupError::ScalarPair);
    }
    if !is_involution(p) {
        return Err(SubgroupError::NotInvolution);
    }
    let n = p.order();
    match tag {
        SubgroupTag::Appell | SubgroupTag::Bcn { .. } => {
            unreachable!("these subgroups have only scalar involutions")
        }
        SubgroupTag::Derivative => infeasible(
            p,
            1,
            "an in-subgroup conjugator (x', x) reaching (1, -t) must satisfy both \
             h'(t)*x'(h(t)) = x'(t) and x(h(t)) = -x(t); differentiating the second \
             equation gives h'(t)*x'(h(t)) = -x'(t), so 2*x'(0) = 0, contradicting \
             the requirement x'(0) != 0"
                .into(),
        ),
        SubgroupTag::Reciprocal { r } if r % 2 == 1 => infeasible(
            p,
            1,
            format!(
                "an in-subgroup conjugator (t^{r}/x^{r}, x) sends this element to \
                 ((-1)^{r}, -t) = (-1, -t); reaching (1, -t) forces, at the constant \
                 term, (1/x'(0))^{r} = -(1/x'(0))^{r}, i.e. 2/x'(0)^{r} = 0, which is \
                 impossible"
            ),
        ),
        SubgroupTag::HittingTime => {
            let x = Fps::t(n).sub(p.f())?.scale(&(T::one() / int::<T>(2)));
            let conjugator = construct(tag, &x)?;
            let target = RiordanPair::m(n - 1);
            let witness = ConjugacyWitness { conjugator, target, sign: Sign::Plus };
            assert!(witness.verify(&p.truncated(n - 1)), "hitting-time conjugator must verify");
            Ok(ConjugatorResult::Found(witness))
        }
        SubgroupTag::Lagrange => {
            let x = Fps::t(n).sub(p.f())?.scale(&(T::one() / int::<T>(2)));
            let conjugator = RiordanPair::new(Fps::one(n), x)?;
            let target = RiordanPair::m(n);
            let witness = ConjugacyWitness { conjugator, target, sign: Sign::Plus };
            assert!(witness.verify(p), "associated-subgroup conjugator must verify");
            Ok(ConjugatorResult::Found(witness))
        }
        SubgroupTag::Bell => {
            let u = match solve_bell_unit(p.g(), p.f()) {
                Ok(u) => u,
                Err(d) => {
                    return infeasible(
                        p,
                        d,
                        format!("the constrained solve for (u, t*u) is inconsistent at degree {d}"),
                    )
                }
            };
            let f = Fps::t(n).mul(&u)?;
            let conjugator = RiordanPair::new(u, f)?;
            let target = RiordanPair::m(n).negated();
            let witness = ConjugacyWitness { conjugator, target, sign: Sign::Minus };
            assert!(witness.verify(p), "bell conjugator must verify");
            Ok(ConjugatorResult::Found(witness))
        }
        SubgroupTag::Reciprocal { .. } => {
            let x = match solve_sign_reversing(p.f()) {
                Ok(x) => x,
                Err(d) => {
                    return infeasible(
                        p,
                        d,
                        format!("the constrained solve for the f-part is inconsistent at degree {d}"),
                    )
                }
            };
            let conjugator = construct(tag, &x)?;
            let target = RiordanPair::m(n - 1);
            let witness = ConjugacyWitness { conjugator, target, sign: Sign::Plus };
            assert!(witness.verify(&p.truncated(n - 1)), "reciprocal conjugator must verify");
            Ok(ConjugatorResult::Found(witness))
        }
        SubgroupTag::Stabilizer { series } => {
            let q = at_order(series, n)?;
            let odd_part = q.sub(&q.compose(&Fps::t(n).neg())?)?;
            if let Some(d) = odd_part.valuation() {
                return infeasible(
                    p,
                    d,
                    format!(
                        "a conjugator in this stabilizer sends the element to \
                         (f/(f(-t)), -t), which equals (1, -t) only when the defining \
                         series is even; its odd part is first nonzero at degree {d}"
                    ),
                );
            }
            let ell = match solve_sign_reversing(p.f()) {
                Ok(ell) => ell,
                Err(d) => {
                    return infeasible(
                        p,
                        d,
                        format!("the constrained solve for the f-part is inconsistent at degree {d}"),
                    )
                }
            };
            let conjugator = construct(tag, &ell)?;
            let target = RiordanPair::m(n);
            let witness = ConjugacyWitness { conjugator, target, sign: Sign::Plus };
            assert!(witness.verify(p), "stabilizer conjugator must verify");
            Ok(ConjugatorResult::Found(witness))
        }
    }
}

/// Which of `(1, -t)` and `(-1, -t)` stabilize `f`: the first iff `f` is
/// even through the order, the second iff `f(t) = -f(-t)`, which a series
/// with nonzero constant term can never satisfy (reported literally).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerParityReport {
    pub m_in_stabilizer: bool,
    pub minus_m_in_stabilizer: bool,
}

pub fn stabilizer_parity_involutions<T: Scalar>(
    f: &Fps<T>,
) -> Result<StabilizerParityReport, SubgroupError> {
    if f.coeff(0).is_zero() {
        return Err(SubgroupError::StabilizerConstantTerm);
    }
    let n = f.order();
    let reflected = f.compose(&Fps::t(n).neg())?;
    let ratio = f.divide(&reflected)?;
    Ok(StabilizerParityReport {
        m_in_stabilizer: ratio == Fps::one(n),
        minus_m_in_stabilizer: ratio == Fps::one(n).neg(),
    })
}
