//! Quaternions, points of the conformal 3-sphere modelled on imaginary quaternions,
//! inversions and Möbius maps.

mod mobius;
mod mpoint;
pub(crate) mod predicates;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::Scalar;

pub use mobius::{Generator, MobiusMap};
pub use mpoint::{inversion, MPoint};
pub use predicates::{cospherical, cospherical_all, cross_ratio, is_concyclic};

/// Quaternion `r + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub r: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(r: T, x: T, y: T, z: T) -> Self {
        Self { r, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn real(r: T) -> Self {
        Self::new(r, T::zero(), T::zero(), T::zero())
    }

    /// Imaginary quaternion `x i + y j + z k`.
    pub fn imag(x: T, y: T, z: T) -> Self {
        Self::new(T::zero(), x, y, z)
    }

    pub fn from_vec3(v: [T; 3]) -> Self {
        Self::imag(v[0], v[1], v[2])
    }

    pub fn vec3(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.r, self.x, self.y, self.z]
    }

    pub fn from_array(a: [T; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Real part.
    pub fn re(&self) -> T {
        self.r
    }

    /// Imaginary part as a quaternion.
    pub fn im(&self) -> Self {
        Self::imag(self.x, self.y, self.z)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.r, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> T {
        self.r * self.r + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product on ℝ⁴, equal to `Re(a b̄)`.
    pub fn dot(&self, other: &Self) -> T {
        self.r * other.r + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `q̄ / |q|²`. Division by zero follows float semantics; see [`Self::checked_inv`].
    pub fn inv(&self) -> Self {
        self.conj().scale(T::one() / self.norm_sqr())
    }

    pub fn checked_inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n > T::zero() && n.is_finite() {
            Some(self.conj().scale(T::one() / n))
        } else {
            None
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.r * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sqr() == T::zero()
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> T {
        self.r.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }

    pub fn cast<U: Scalar>(&self) -> Quaternion<U> {
        let c = |t: T| U::from_f64(t.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(U::nan);
        Quaternion::new(c(self.r), c(self.x), c(self.y), c(self.z))
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.r + o.r, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.r - o.r, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.r, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.r * o.r - self.x * o.x - self.y * o.y - self.z * o.z,
            self.r * o.x + self.x * o.r + self.y * o.z - self.z * o.y,
            self.r * o.y - self.x * o.z + self.y * o.r + self.z * o.x,
            self.r * o.z + self.x * o.y - self.y * o.x + self.z * o.r,
        )
    }
}

impl<T: Scalar> Mul<T> for Quaternion<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Scalar> std::iter::Sum for Quaternion<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<T: Scalar> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.r, self.x, self.y, self.z)
    }
}

/// `a × b` for 3-vectors.
pub fn cross<T: Scalar>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn dot3<T: Scalar>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3<T: Scalar>(a: [T; 3]) -> T {
    dot3(a, a).sqrt()
}
