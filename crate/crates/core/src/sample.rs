//! Deterministic random generators for tests and demos. Callers supply a
//! seeded `Rng`, so every run is reproducible. Coefficients are kept at
//! small height: exact-rational arithmetic grows quadratically in digit
//! count under composition, and small seeds keep full sweeps fast.

use rand::Rng;

use crate::fps::Fps;
use crate::riordan::RiordanPair;
use crate::scalar::{int, Scalar};

/// A rational with numerator in -3..=3 and denominator in 1..=3.
pub fn small_scalar<T: Scalar>(rng: &mut impl Rng) -> T {
    let num = rng.gen_range(-3i64..=3);
    let den = rng.gen_range(1i64..=3);
    int::<T>(num) / int::<T>(den)
}

/// Like `small_scalar` but never zero.
pub fn nonzero_small_scalar<T: Scalar>(rng: &mut impl Rng) -> T {
    loop {
        let value = small_scalar::<T>(rng);
        if !value.is_zero() {
            return value;
        }
    }
}

/// A series with nonzero constant term.
pub fn unit_series<T: Scalar>(rng: &mut impl Rng, order: usize) -> Fps<T> {
    let mut coeffs = vec![nonzero_small_scalar::<T>(rng)];
    for _ in 1..=order {
        coeffs.push(small_scalar::<T>(rng));
    }
    Fps::from_coeffs(coeffs)
}

/// A series with zero constant term and nonzero linear term.
pub fn composition_series<T: Scalar>(rng: &mut impl Rng, order: usize) -> Fps<T> {
    let mut coeffs = vec![T::zero()];
    if order >= 1 {
        coeffs.push(nonzero_small_scalar::<T>(rng));
    }
    for _ in 2..=order {
        coeffs.push(small_scalar::<T>(rng));
    }
    Fps::from_coeffs(coeffs)
}

/// An arbitrary valid pair.
pub fn random_pair<T: Scalar>(rng: &mut impl Rng, order: usize) -> RiordanPair<T> {
    RiordanPair::new(unit_series(rng, order), composition_series(rng, order))
        .expect("generated parts satisfy the pair invariants")
}

/// A compositional involution h ≠ t, exact at the requested order,
/// built as s̄∘(-t)∘s for a random change of variable s.
pub fn series_involution<T: Scalar>(rng: &mut impl Rng, order: usize) -> Fps<T> {
    loop {
        let s = composition_series::<T>(rng, order);
        let h = s
            .revert()
            .expect("composition series reverts")
            .compose(&s.neg())
            .expect("same order");
        if h != Fps::t(order).neg() || rng.gen_bool(0.2) {
            return h;
        }
    }
}

/// A nonscalar involution (±1, -t) conjugated by a random pair, with the
/// sign chosen at random; exact at the requested order.
pub fn riordan_involution<T: Scalar>(rng: &mut impl Rng, order: usize) -> RiordanPair<T> {
    loop {
        let mut target = RiordanPair::m(order);
        if rng.gen_bool(0.5) {
            target = target.negated();
        }
        let x = random_pair(rng, order);
        let p = target.conjugate(&x).expect("same order");
        if !p.is_scalar() {
            return p;
        }
    }
}

/// A random conjugate X⁻¹PX of the given pair.
pub fn random_conjugate<T: Scalar>(
    rng: &mut impl Rng,
    p: &RiordanPair<T>,
) -> RiordanPair<T> {
    let x = random_pair(rng, p.order());
    p.conjugate(&x).expect("same order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutions::{is_involution, is_series_involution};
    use crate::Rat;
    use num_traits::Zero;
    use rand::SeedableRng;

    #[test]
    fn generators_satisfy_their_contracts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u = unit_series::<Rat>(&mut rng, 8);
            assert!(!u.coeff(0).is_zero());
            let c = composition_series::<Rat>(&mut rng, 8);
            assert!(c.coeff(0).is_zero() && !c.coeff(1).is_zero());
            let h = series_involution::<Rat>(&mut rng, 10);
            assert!(is_series_involution(&h));
            let p = riordan_involution::<Rat>(&mut rng, 8);
            assert!(is_involution(&p) && !p.is_scalar());
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        assert_eq!(random_pair::<Rat>(&mut a, 6), random_pair::<Rat>(&mut b, 6));
    }
}
