//! Exact integer scalars.
//!
//! Everything that touches a determinant or a linear solve is generic over
//! [`ExactInt`]. The public graph-level API is instantiated at [`crate::Int`]
//! (arbitrary precision); fixed-width types are useful in tests and in tight
//! loops where the magnitudes are known to be small.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

/// An exact, signed integer type: `i64`, `i128`, [`num_bigint::BigInt`], ...
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + From<i64> + Send + Sync + 'static
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + Debug + Display + From<i64> + Send + Sync + 'static
{
}

/// Rational numbers over an exact integer type.
pub type Rat<T> = Ratio<T>;

pub(crate) fn rat_from_i64<T: ExactInt>(v: i64) -> Ratio<T> {
    Ratio::from_integer(T::from(v))
}
