//! Scalar abstractions shared by the exact and floating-point halves of the crate.
//!
//! Exact code is written against [`Ring`] (coefficients) or [`IntScalar`]
//! (integers that support Euclidean division); numerical code against
//! [`RealScalar`]. Concrete aliases live at the crate root.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, NumCast, One, ToPrimitive, Zero};

/// Commutative ring with identity, enough for dense polynomial arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Integer type with Euclidean division. Implemented for the primitive
/// integers as well as `BigInt`/`BigUint`.
pub trait IntScalar: Integer + Clone + Debug + FromPrimitive + ToPrimitive {}

impl<T> IntScalar for T where T: Integer + Clone + Debug + FromPrimitive + ToPrimitive {}

/// Floating-point scalar (`f32` or `f64`).
pub trait RealScalar: Float + FloatConst + FromPrimitive + NumCast + Debug + Send + Sync {
    /// Lossy conversion from anything with a primitive representation.
    /// Values outside the float range become infinities.
    fn cast<N: ToPrimitive>(n: &N) -> Self {
        n.to_f64()
            .and_then(Self::from_f64)
            .unwrap_or_else(Self::infinity)
    }
}

impl RealScalar for f32 {}
impl RealScalar for f64 {}
