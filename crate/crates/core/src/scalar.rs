use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Coefficient ring for [`Element`](crate::Element).
///
/// Structure constants are all `±1`, so any exact ring works. The crate
/// aliases use `BigRational` and `BigInt`; `i64` is handy in tests.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// Multiply by a structure-constant sign.
    #[inline]
    fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}
