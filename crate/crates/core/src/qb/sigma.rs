use serde::{Deserialize, Serialize};

use super::{Direction, ProjParam};
use crate::{Scalar, Tolerance};

/// Real quadratic `c₀ + c₁ x + c₂ x²`, read as a binary form so that roots may lie at ∞.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadPoly<T> {
    pub c: [T; 3],
}

/// Real root structure of a binary quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RootSet<T> {
    Identically,
    Distinct(ProjParam<T>, ProjParam<T>),
    Double(ProjParam<T>),
    Complex,
}

impl<T: Scalar> RootSet<T> {
    pub fn real_roots(&self) -> Vec<ProjParam<T>> {
        match *self {
            RootSet::Distinct(a, b) => vec![a, b],
            RootSet::Double(a) => vec![a],
            _ => Vec::new(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RootSet::Identically => "identically zero",
            RootSet::Distinct(..) => "two real roots",
            RootSet::Double(_) => "double root",
            RootSet::Complex => "complex roots",
        }
    }
}

impl<T: Scalar> QuadPoly<T> {
    pub fn new(c0: T, c1: T, c2: T) -> Self {
        Self { c: [c0, c1, c2] }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Coefficients from values at `x = −1, 0, 1`.
    pub fn from_samples(fm: T, f0: T, f1: T) -> Self {
        let h = T::half();
        Self::new(f0, (f1 - fm) * h, (f1 + fm) * h - f0)
    }

    pub fn eval(&self, x: T) -> T {
        self.c[0] + x * (self.c[1] + x * self.c[2])
    }

    /// `c₀ den² + c₁ num den + c₂ num²`.
    pub fn eval_h(&self, p: ProjParam<T>) -> T {
        self.c[0] * p.den * p.den + self.c[1] * p.num * p.den + self.c[2] * p.num * p.num
    }

    /// Conjugate of `p` with respect to the roots: the involution of ℝP¹ fixing both roots.
    pub fn polar(&self, p: ProjParam<T>) -> ProjParam<T> {
        let h = T::half();
        ProjParam::new(self.c[1] * h * p.num + self.c[0] * p.den, -(self.c[2] * p.num + self.c[1] * h * p.den))
    }

    pub fn max_abs(&self) -> T {
        self.c.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Scaled so that the coefficient of largest magnitude equals 1.
    pub fn normalized(&self) -> Self {
        let mut big = self.c[0];
        for &v in &self.c {
            if v.abs() > big.abs() {
                big = v;
            }
        }
        if big == T::zero() {
            return *self;
        }
        Self { c: self.c.map(|v| v / big) }
    }

    /// Largest coefficient difference after both sides are normalized.
    pub fn distance_up_to_scale(&self, other: &Self) -> T {
        let a = self.normalized();
        let b = other.normalized();
        (0..3).fold(T::zero(), |m, i| m.max((a.c[i] - b.c[i]).abs()))
    }

    /// Root structure. `zero` is the absolute threshold for the identically-zero test;
    /// `disc_tol` bounds the discriminant of the normalized form treated as a double root.
    pub fn roots(&self, zero: T, disc_tol: T) -> RootSet<T> {
        let m = self.max_abs();
        if m <= zero {
            return RootSet::Identically;
        }
        let [c0, c1, c2] = self.c.map(|v| v / m);
        let disc = c1 * c1 - T::lit(4.0) * c0 * c2;
        if disc < -disc_tol {
            return RootSet::Complex;
        }
        if disc.abs() <= disc_tol {
            let r = if c2.abs() >= c0.abs() {
                ProjParam::new(-c1, T::two() * c2)
            } else {
                ProjParam::new(T::two() * c0, -c1)
            };
            return RootSet::Double(r.normalized());
        }
        let sq = disc.sqrt();
        let sgn = if c1 < T::zero() { -T::one() } else { T::one() };
        let q = -(c1 + sgn * sq) * T::half();
        RootSet::Distinct(ProjParam::new(q, c2).normalized(), ProjParam::new(c0, q).normalized())
    }
}

/// `σ₁(s), σ₂(t), σ₃(u)` from the diagonal pairs `(00, 11)` of each slice, together with the
/// polynomials from the off-diagonal pairs `(10, 01)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalPolys<T> {
    pub sigma: [QuadPoly<T>; 3],
    pub alt: [QuadPoly<T>; 3],
    /// Magnitude of the Study-form values, `max |p|²` over the net.
    pub scale: T,
}

impl<T: Scalar> SphericalPolys<T> {
    pub fn get(&self, dir: Direction) -> &QuadPoly<T> {
        &self.sigma[dir.index()]
    }

    pub fn roots(&self, dir: Direction, tol: &Tolerance<T>) -> RootSet<T> {
        let zero = tol.abs + tol.rel * self.scale;
        self.sigma[dir.index()].roots(zero, T::lit(1e-10))
    }

    pub fn is_spherical(&self, dir: Direction, tol: &Tolerance<T>) -> bool {
        matches!(self.roots(dir, tol), RootSet::Identically)
    }

    /// Both index pairs give the same polynomial up to a factor.
    pub fn pairs_agree(&self, tol: &Tolerance<T>) -> bool {
        let zero = tol.abs + tol.rel * self.scale;
        (0..3).all(|d| {
            let a = &self.sigma[d];
            let b = &self.alt[d];
            match (a.max_abs() <= zero, b.max_abs() <= zero) {
                (true, true) => true,
                (false, false) => a.distance_up_to_scale(b) <= T::lit(1e-8).max(tol.rel * T::lit(10.0)),
                _ => false,
            }
        })
    }
}
