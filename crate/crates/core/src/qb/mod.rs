//! Homogeneous quaternionic Bézier nets: points on the Study quadric, bilinear patches
//! and trilinear cubes.

mod cube;
mod patch;
mod sigma;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{MPoint, MobiusMap, Quaternion};
use crate::{Scalar, Tolerance};

pub use cube::DcCube;
pub use patch::DcPatch;
pub use sigma::{QuadPoly, RootSet, SphericalPolys};

/// Coordinate direction of a cube: `s`, `t` or `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    S,
    T,
    U,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::S, Direction::T, Direction::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// The two remaining directions in increasing order.
    pub fn others(self) -> [Direction; 2] {
        match self {
            Direction::S => [Direction::T, Direction::U],
            Direction::T => [Direction::S, Direction::U],
            Direction::U => [Direction::S, Direction::T],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::S => "s",
            Direction::T => "t",
            Direction::U => "u",
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Direction::S),
            "t" => Ok(Direction::T),
            "u" => Ok(Direction::U),
            _ => Err(Error::Parse(format!("unknown direction `{s}`"))),
        }
    }
}

/// Point `(num : den)` of the real projective line; ∞ is `(1 : 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjParam<T> {
    pub num: T,
    pub den: T,
}

impl<T: Scalar> ProjParam<T> {
    pub fn new(num: T, den: T) -> Self {
        Self { num, den }
    }

    pub fn affine(s: T) -> Self {
        Self { num: s, den: T::one() }
    }

    pub fn infinity() -> Self {
        Self { num: T::one(), den: T::zero() }
    }

    /// `(sin θ : cos θ)`; θ ∈ [0, π) covers the projective line once.
    pub fn from_angle(theta: T) -> Self {
        Self { num: theta.sin(), den: theta.cos() }
    }

    /// Angle in `[0, π)` with `(num : den) = (sin θ : cos θ)`.
    pub fn angle(&self) -> T {
        let pi = T::lit(std::f64::consts::PI);
        let mut a = self.num.atan2(self.den);
        while a < T::zero() {
            a = a + pi;
        }
        while a >= pi {
            a = a - pi;
        }
        a
    }

    /// Linear Bernstein basis `(B₀, B₁) = (den − num, num)`.
    pub fn bernstein(&self) -> [T; 2] {
        [self.den - self.num, self.num]
    }

    pub fn is_infinite(&self) -> bool {
        self.den == T::zero()
    }

    pub fn to_affine(&self) -> Option<T> {
        if self.den == T::zero() {
            None
        } else {
            Some(self.num / self.den)
        }
    }

    /// Representative scaled to unit length.
    pub fn normalized(&self) -> Self {
        let n = (self.num * self.num + self.den * self.den).sqrt();
        Self { num: self.num / n, den: self.den / n }
    }

    /// Distance between the two points of ℝP¹ measured as |sin| of the angle difference.
    pub fn distance(&self, other: &Self) -> T {
        let a = self.normalized();
        let b = other.normalized();
        (a.num * b.den - a.den * b.num).abs()
    }
}

/// Homogeneous point `(u, w) ∈ ℍ²` representing `u w⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousPoint<T> {
    pub u: Quaternion<T>,
    pub w: Quaternion<T>,
}

impl<T: Scalar> HomogeneousPoint<T> {
    pub fn new(u: Quaternion<T>, w: Quaternion<T>) -> Self {
        Self { u, w }
    }

    /// `(p, 1)` for finite points and `(1, 0)` for ∞.
    pub fn from_point(p: MPoint<T>) -> Self {
        match p {
            MPoint::Finite(q) => Self::new(q, Quaternion::one()),
            MPoint::Infinity => Self::new(Quaternion::one(), Quaternion::zero()),
        }
    }

    /// `(p w, w)`.
    pub fn weighted(p: MPoint<T>, w: Quaternion<T>) -> Self {
        match p {
            MPoint::Finite(q) => Self::new(q * w, w),
            MPoint::Infinity => Self::new(w, Quaternion::zero()),
        }
    }

    /// Study form `S(u, w) = Re(u w̄)`.
    pub fn study(&self) -> T {
        self.u.dot(&self.w)
    }

    pub fn on_study_quadric(&self, tol: &Tolerance<T>) -> bool {
        tol.is_zero(self.study(), self.u.norm() * self.w.norm())
    }

    /// Projective division `π(u, w) = u w⁻¹`, ∞ when `w` vanishes.
    pub fn proj_div(&self) -> Result<MPoint<T>> {
        proj_div(self.u, self.w)
    }

    pub fn right_mul(&self, q: Quaternion<T>) -> Self {
        Self::new(self.u * q, self.w * q)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.u.scale(s), self.w.scale(s))
    }

    pub fn apply(&self, m: &MobiusMap<T>) -> Self {
        let (u, w) = m.apply_pair(self.u, self.w);
        Self::new(u, w)
    }

    pub fn norm(&self) -> T {
        (self.u.norm_sqr() + self.w.norm_sqr()).sqrt()
    }
}

impl<T: Scalar> std::ops::Add for HomogeneousPoint<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.u + o.u, self.w + o.w)
    }
}

/// Polarized Study form `S(a.u, b.w) + S(b.u, a.w)`.
pub fn pair_form<T: Scalar>(a: &HomogeneousPoint<T>, b: &HomogeneousPoint<T>) -> T {
    a.u.dot(&b.w) + b.u.dot(&a.w)
}

/// `u w⁻¹`, or ∞ when `w` is negligible against `u`.
pub fn proj_div<T: Scalar>(u: Quaternion<T>, w: Quaternion<T>) -> Result<MPoint<T>> {
    let nu = u.norm();
    let nw = w.norm();
    if nu == T::zero() && nw == T::zero() {
        return Err(Error::ZeroPair);
    }
    if nw <= nu * T::epsilon() * T::lit(4.0) {
        return Ok(MPoint::Infinity);
    }
    Ok(MPoint::finite(u * w.inv()))
}

/// Farin point `(u₀ + u₁)(w₀ + w₁)⁻¹` of the rational arc with the given end control points.
pub fn farin_point<T: Scalar>(a: &HomogeneousPoint<T>, b: &HomogeneousPoint<T>) -> Result<MPoint<T>> {
    let pa = a.proj_div()?;
    let pb = b.proj_div()?;
    let coincide = match (pa, pb) {
        (MPoint::Infinity, MPoint::Infinity) => true,
        (MPoint::Finite(x), MPoint::Finite(y)) => (x - y).norm() <= T::epsilon() * (x.norm() + y.norm()),
        _ => false,
    };
    if coincide {
        return Err(Error::DegenerateArc);
    }
    (*a + *b).proj_div().map_err(|_| Error::DegenerateArc)
}
