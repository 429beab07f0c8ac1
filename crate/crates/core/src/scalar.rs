use core::fmt::{Debug, Display};
use core::iter::Sum;
use core::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Scalar type every geometric computation is generic over: `f32` or `f64`.
///
/// The crate root exports `f64` aliases for all public types; `f32` is mainly
/// useful for rendering pipelines that do not care about deep layers.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Default
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert into the scalar type")
}
