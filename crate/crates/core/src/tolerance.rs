use serde::Serialize;

use crate::Scalar;

/// Absolute-plus-relative tolerance used by every vanishing or realness predicate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance<T> {
    pub abs: T,
    pub rel: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(abs: T, rel: T) -> Self {
        Self { abs, rel }
    }

    /// True when `|value| <= abs + rel * scale`.
    pub fn is_zero(&self, value: T, scale: T) -> bool {
        value.abs() <= self.abs + self.rel * scale.abs()
    }

    pub fn cast<U: Scalar>(&self) -> Tolerance<U> {
        Tolerance {
            abs: U::from_f64(self.abs.to_f64().unwrap_or(0.0)).unwrap_or_else(U::epsilon),
            rel: U::from_f64(self.rel.to_f64().unwrap_or(0.0)).unwrap_or_else(U::epsilon),
        }
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self { abs: T::lit(1e-9), rel: T::lit(1e-9) }
    }
}
