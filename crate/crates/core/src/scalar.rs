use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive};

/// Scalar type the whole crate is generic over: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Converts an `f64` constant into `Self`.
    ///
    /// Panics if the value has no representation in the scalar type, which
    /// never happens for the finite constants used throughout this crate.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("constant not representable in scalar type")
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
}
