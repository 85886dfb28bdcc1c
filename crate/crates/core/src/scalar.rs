//! Scalar abstraction for the numeric parts of the toolkit.
//!
//! Edge weights, thresholds, tally scores and inequality metrics are all
//! plain floating-point math, so the core is generic over the scalar type.
//! `f64` is the default everywhere and the type the concrete aliases at the
//! crate root use; `f32` works for memory-bound sweeps.

use std::fmt;
use std::iter::Sum;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Default
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from a count. Counts in this crate are
    /// desk-scale (well below 2^24), so the unwrap cannot fail.
    fn from_count(n: usize) -> Self {
        num_traits::FromPrimitive::from_usize(n).expect("count fits in scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}
