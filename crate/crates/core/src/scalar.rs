use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar type used by the quaternion kernel and the Bézier nets.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal. Panics only for types that cannot hold ordinary finite values.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
