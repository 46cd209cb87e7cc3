use serde::{Deserialize, Serialize};

use super::Quaternion;
use crate::Scalar;

/// Point of ℝ̂³ = Im ℍ ∪ {∞}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum MPoint<T> {
    Finite(Quaternion<T>),
    Infinity,
}

impl<T: Scalar> MPoint<T> {
    /// Finite point from the imaginary part of `q`; the real part is discarded.
    pub fn finite(q: Quaternion<T>) -> Self {
        MPoint::Finite(q.im())
    }

    pub fn xyz(x: T, y: T, z: T) -> Self {
        MPoint::Finite(Quaternion::imag(x, y, z))
    }

    pub fn origin() -> Self {
        MPoint::Finite(Quaternion::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, MPoint::Infinity)
    }

    pub fn as_quaternion(&self) -> Option<Quaternion<T>> {
        match self {
            MPoint::Finite(q) => Some(*q),
            MPoint::Infinity => None,
        }
    }

    pub fn vec3(&self) -> Option<[T; 3]> {
        self.as_quaternion().map(|q| q.vec3())
    }

    /// Inverse stereographic image on the unit 3-sphere S³ ⊂ ℝ⁴; ∞ goes to the north pole.
    pub fn sphere_point(&self) -> [T; 4] {
        match self {
            MPoint::Infinity => [T::zero(), T::zero(), T::zero(), T::one()],
            MPoint::Finite(q) => {
                let n = q.norm_sqr();
                if !n.is_finite() {
                    return [T::zero(), T::zero(), T::zero(), T::one()];
                }
                let d = T::one() + n;
                let two = T::two();
                [two * q.x / d, two * q.y / d, two * q.z / d, (n - T::one()) / d]
            }
        }
    }

    /// Chordal distance on S³, bounded by 2 and continuous through ∞.
    pub fn chordal_distance(&self, other: &Self) -> T {
        let a = self.sphere_point();
        let b = other.sphere_point();
        let mut s = T::zero();
        for i in 0..4 {
            s = s + (a[i] - b[i]) * (a[i] - b[i]);
        }
        s.sqrt()
    }

    pub fn cast<U: Scalar>(&self) -> MPoint<U> {
        match self {
            MPoint::Finite(q) => MPoint::Finite(q.cast()),
            MPoint::Infinity => MPoint::Infinity,
        }
    }
}

/// Inversion in the sphere with center `q` and squared radius `r2`:
/// `p ↦ q − r2 (p − q)⁻¹`. Negative `r2` gives the inversion in an imaginary sphere.
pub fn inversion<T: Scalar>(q: Quaternion<T>, r2: T, p: MPoint<T>) -> MPoint<T> {
    match p {
        MPoint::Infinity => MPoint::finite(q),
        MPoint::Finite(p) => {
            let d = p - q;
            match d.checked_inv() {
                Some(di) => MPoint::finite(q - di.scale(r2)),
                None => MPoint::Infinity,
            }
        }
    }
}
