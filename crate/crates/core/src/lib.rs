//! Exact computations in the Riordan group at a fixed truncation order.
//!
//! A Riordan pair `(g, f)` consists of two formal power series with
//! `g(0) != 0`, `f(0) = 0`, `f'(0) != 0`; it represents the infinite
//! lower-triangular matrix whose column `k` has generating function
//! `g * f^k`. Everything here works with series truncated at a caller
//! chosen order `N` over an exact coefficient type, so every stated
//! identity is bit-exact through degree `N`.
//!
//! Modules:
//! - [`fps`]: truncated formal power series arithmetic;
//! - [`riordan`]: validated pairs, the fundamental product rule, inverses,
//!   conjugation, commutators, matrix materialization, diagonal analysis;
//! - [`involutions`]: involution predicates, classification to `(±1, -t)`
//!   with explicit conjugators, and the signed-commutator witness for
//!   products of two involutions;
//! - [`subgroups`]: eight classical subgroups with constructors, membership
//!   and involution tests, and in-subgroup conjugator solvers or
//!   infeasibility certificates;
//! - [`reversibility`]: reversibility normal forms `-t/(1+λt^p)^{1/p}`,
//!   series reversibility solving, and the strong-reversibility ⇔
//!   pseudo-involution correspondence;
//! - [`exprparse`]: a small expression language for entering series;
//! - [`sample`]: deterministic random generators for tests.

pub mod exprparse;
pub mod fps;
pub mod involutions;
pub mod reversibility;
pub mod riordan;
pub mod sample;
pub mod scalar;
pub mod subgroups;

pub use scalar::Scalar;

/// Exact rational coefficient: arbitrary precision, always in lowest terms
/// with a positive denominator (guaranteed by the representation).
pub type Rat = num_rational::BigRational;

/// Truncated series over exact rationals.
pub type QFps = fps::Fps<Rat>;
/// Riordan pair over exact rationals.
pub type QPair = riordan::RiordanPair<Rat>;
/// Materialized matrix over exact rationals.
pub type QMatrix = riordan::RiordanMatrix<Rat>;

/// Truncated series over `f64` (approximate; exact equality semantics do
/// not apply, provided for numeric experimentation only).
pub type Fps64 = fps::Fps<f64>;
/// Truncated series over `f32`.
pub type Fps32 = fps::Fps<f32>;
