use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{inversion, MPoint, Quaternion};
use crate::Scalar;

/// One generator of the Möbius group of ℝ̂³.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Generator<T> {
    /// `p ↦ p + a`, `a` imaginary.
    Translation(Quaternion<T>),
    /// `p ↦ λ p`, `λ ≠ 0`.
    Homothety(T),
    /// `p ↦ −p⁻¹`.
    UnitInversion,
    /// `p ↦ q − r2 (p − q)⁻¹`.
    SphereInversion { center: Quaternion<T>, r2: T },
}

impl<T: Scalar> Generator<T> {
    pub fn apply(&self, p: MPoint<T>) -> MPoint<T> {
        match (*self, p) {
            (_, MPoint::Infinity) => match *self {
                Generator::Translation(_) | Generator::Homothety(_) => MPoint::Infinity,
                Generator::UnitInversion => MPoint::origin(),
                Generator::SphereInversion { center, .. } => MPoint::finite(center),
            },
            (Generator::Translation(a), MPoint::Finite(q)) => MPoint::finite(q + a),
            (Generator::Homothety(l), MPoint::Finite(q)) => MPoint::finite(q.scale(l)),
            (Generator::UnitInversion, MPoint::Finite(q)) => match q.checked_inv() {
                Some(qi) => MPoint::finite(-qi),
                None => MPoint::Infinity,
            },
            (Generator::SphereInversion { center, r2 }, p) => inversion(center, r2, p),
        }
    }

    /// Action on a homogeneous pair `(u, w)` representing `u w⁻¹`, as left
    /// multiplication by a 2×2 quaternion matrix.
    pub fn apply_pair(&self, u: Quaternion<T>, w: Quaternion<T>) -> (Quaternion<T>, Quaternion<T>) {
        match *self {
            Generator::Translation(a) => (u + a * w, w),
            Generator::Homothety(l) => (u.scale(l), w),
            Generator::UnitInversion => (-w, u),
            Generator::SphereInversion { center: q, r2 } => {
                let q2 = q * q;
                (q * u - (q2 + Quaternion::real(r2)) * w, u - q * w)
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Generator::Translation(a) => Generator::Translation(-a),
            Generator::Homothety(l) => Generator::Homothety(T::one() / l),
            g => g,
        }
    }
}

/// Composition of generators, applied first to last.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap<T> {
    pub generators: Vec<Generator<T>>,
}

impl<T: Scalar> MobiusMap<T> {
    pub fn identity() -> Self {
        Self { generators: Vec::new() }
    }

    pub fn new(generators: Vec<Generator<T>>) -> Self {
        Self { generators }
    }

    pub fn then(mut self, g: Generator<T>) -> Self {
        self.generators.push(g);
        self
    }

    /// `other ∘ self`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().copied());
        Self { generators }
    }

    pub fn inverse(&self) -> Self {
        Self { generators: self.generators.iter().rev().map(Generator::inverse).collect() }
    }

    pub fn apply(&self, p: MPoint<T>) -> MPoint<T> {
        self.generators.iter().fold(p, |p, g| g.apply(p))
    }

    pub fn apply_pair(&self, u: Quaternion<T>, w: Quaternion<T>) -> (Quaternion<T>, Quaternion<T>) {
        self.generators.iter().fold((u, w), |(u, w), g| g.apply_pair(u, w))
    }

    /// Random map with `n` generators: translations and homotheties of moderate size and
    /// inversions in real or imaginary spheres with centers in `[-2, 2]³`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut c = || T::lit(rng.gen_range(-2.0..2.0));
        let mut gens = Vec::with_capacity(n);
        for idx in 0..n {
            let g = match idx % 3 {
                0 => Generator::Translation(Quaternion::imag(c(), c(), c())),
                1 => {
                    let center = Quaternion::imag(c(), c(), c());
                    let mut r2 = c();
                    if r2.abs() < T::lit(0.25) {
                        r2 = T::lit(0.5);
                    }
                    Generator::SphereInversion { center, r2 }
                }
                _ => {
                    let mut l = c();
                    if l.abs() < T::lit(0.3) {
                        l = T::lit(1.5);
                    }
                    Generator::Homothety(l)
                }
            };
            gens.push(g);
        }
        Self { generators: gens }
    }
}
