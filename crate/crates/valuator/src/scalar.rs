//! Scalar abstraction for the linear-algebra kernel.
//!
//! Everything in [`crate::exactq`] is written against [`Scalar`], an ordered
//! field built from `num-traits` bounds. The intended instantiation is the
//! arbitrary-precision [`Rat`](crate::Rat); `Ratio<i64>` works for small
//! inputs, and `f64` satisfies the bounds but only gives exact answers when
//! every intermediate value is exactly representable.

use num_traits::{FromPrimitive, Num, Signed};
use std::fmt::Debug;

/// An ordered field usable by the elimination and feasibility routines.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// Embeds a machine integer.
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer embeds into the scalar field")
    }

    /// Midpoint of two values, used when picking interior witnesses.
    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::from_int(2)
    }
}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Send + Sync + 'static {}
