//! Scalar abstraction for the linear-algebra kernels.
//!
//! The elimination routines in [`crate::linalg`] only need field arithmetic
//! and an exact zero test, so they are written against this trait and
//! instantiated at [`crate::Rat`] for the exact core and at `f64` for the
//! numerical verification lab.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Field scalar: exact rationals or floating point.
///
/// For `f64` the zero test is bitwise, which is what the float callers want;
/// they are responsible for their own pivoting strategy.
pub trait Field:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}
