//! The coefficient abstraction: any exact or approximate field-like type.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num, Signed};

/// Coefficient type for series and pairs.
///
/// Implemented by every type with ring operations, division, signs, and
/// conversion from machine integers; in particular by `num_rational`
/// rationals (exact) and by `f32`/`f64` (approximate). Blanket-implemented,
/// never implemented by hand.
pub trait Scalar:
    Num + Signed + Neg<Output = Self> + Clone + FromPrimitive + Debug + Display
{
}

impl<T> Scalar for T where
    T: Num + Signed + Neg<Output = T> + Clone + FromPrimitive + Debug + Display
{
}

/// Conversion from an exact rational literal, used when materializing
/// parsed expressions. Exact for rational scalars; rounds for floats.
pub trait FromRational: Scalar {
    fn from_rational(value: &num_rational::BigRational) -> Option<Self>;
}

impl FromRational for num_rational::BigRational {
    fn from_rational(value: &num_rational::BigRational) -> Option<Self> {
        Some(value.clone())
    }
}

impl FromRational for f64 {
    fn from_rational(value: &num_rational::BigRational) -> Option<Self> {
        num_traits::ToPrimitive::to_f64(value)
    }
}

impl FromRational for f32 {
    fn from_rational(value: &num_rational::BigRational) -> Option<Self> {
        num_traits::ToPrimitive::to_f32(value)
    }
}

/// Embeds a small integer into the scalar type.
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("scalar type must embed small integers")
}

/// `1/n` as a scalar; `n` must be nonzero.
pub fn int_recip<T: Scalar>(n: i64) -> T {
    T::one() / int::<T>(n)
}
