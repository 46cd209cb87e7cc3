use serde::{Deserialize, Serialize};

use super::sigma::{QuadPoly, SphericalPolys};
use super::{pair_form, proj_div, DcPatch, Direction, HomogeneousPoint, ProjParam};
use crate::error::{Error, Result};
use crate::quat::{cospherical_all, cross, dot3, Generator, MPoint, MobiusMap, Quaternion};
use crate::{Scalar, Tolerance};

/// Trilinear net `F = U W⁻¹`; entry `i + 2j + 4k` holds the control point with
/// `s`-index `i`, `t`-index `j` and `u`-index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcCube<T> {
    pub net: [HomogeneousPoint<T>; 8],
}

pub(crate) fn flat(idx: [usize; 3]) -> usize {
    idx[0] + 2 * idx[1] + 4 * idx[2]
}

impl<T: Scalar> DcCube<T> {
    pub fn new(net: [HomogeneousPoint<T>; 8]) -> Self {
        Self { net }
    }

    /// Cube from `(u_n, w_n)` pairs in flat order.
    pub fn from_pairs(pairs: [(Quaternion<T>, Quaternion<T>); 8]) -> Self {
        Self { net: pairs.map(|(u, w)| HomogeneousPoint::new(u, w)) }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &HomogeneousPoint<T> {
        &self.net[flat([i, j, k])]
    }

    /// Control points `p_n = u_n w_n⁻¹`.
    pub fn control_points(&self) -> Result<[MPoint<T>; 8]> {
        let mut out = [MPoint::Infinity; 8];
        for (o, p) in out.iter_mut().zip(self.net.iter()) {
            *o = p.proj_div()?;
        }
        Ok(out)
    }

    fn combine(&self, basis: [[T; 2]; 3]) -> (Quaternion<T>, Quaternion<T>) {
        let mut u = Quaternion::zero();
        let mut w = Quaternion::zero();
        for n in 0..8 {
            let b = basis[0][n & 1] * basis[1][(n >> 1) & 1] * basis[2][(n >> 2) & 1];
            u += self.net[n].u.scale(b);
            w += self.net[n].w.scale(b);
        }
        (u, w)
    }

    /// `(U, W)` at homogeneous parameters.
    pub fn homogeneous(&self, p: [ProjParam<T>; 3]) -> (Quaternion<T>, Quaternion<T>) {
        self.combine(p.map(|x| x.bernstein()))
    }

    /// Derivative of `(U, W)` with respect to the numerator of direction `dir`.
    pub fn homogeneous_derivative(&self, dir: Direction, p: [ProjParam<T>; 3]) -> (Quaternion<T>, Quaternion<T>) {
        let mut basis = p.map(|x| x.bernstein());
        basis[dir.index()] = [-T::one(), T::one()];
        self.combine(basis)
    }

    pub fn eval(&self, s: ProjParam<T>, t: ProjParam<T>, u: ProjParam<T>) -> Result<MPoint<T>> {
        self.eval_at([s, t, u])
    }

    pub fn eval_at(&self, p: [ProjParam<T>; 3]) -> Result<MPoint<T>> {
        let (u, w) = self.homogeneous(p);
        proj_div(u, w).map_err(|_| Error::IndeterminatePoint)
    }

    pub fn eval_affine(&self, s: T, t: T, u: T) -> Result<MPoint<T>> {
        self.eval_at([ProjParam::affine(s), ProjParam::affine(t), ProjParam::affine(u)])
    }

    /// `∂F` along `dir`, taken with respect to the affine coordinate of that direction.
    /// The other two parameters may be arbitrary points of ℝP¹.
    pub fn partial(&self, dir: Direction, p: [ProjParam<T>; 3]) -> Result<[T; 3]> {
        let mut p = p;
        let x = p[dir.index()];
        if x.den == T::zero() {
            return Err(Error::PoleEncountered);
        }
        p[dir.index()] = ProjParam::affine(x.num / x.den);
        let (u, w) = self.homogeneous(p);
        let winv = w.checked_inv().ok_or(Error::PoleEncountered)?;
        if !winv.is_finite() {
            return Err(Error::PoleEncountered);
        }
        let f = u * winv;
        let (du, dw) = self.homogeneous_derivative(dir, p);
        Ok(((du - f * dw) * winv).vec3())
    }

    /// `(∂_s F, ∂_t F, ∂_u F)` at affine parameters.
    pub fn partials(&self, s: T, t: T, u: T) -> Result<[[T; 3]; 3]> {
        let p = [ProjParam::affine(s), ProjParam::affine(t), ProjParam::affine(u)];
        Ok([self.partial(Direction::S, p)?, self.partial(Direction::T, p)?, self.partial(Direction::U, p)?])
    }

    /// Scalar triple product `∂_s F · (∂_t F × ∂_u F)`.
    pub fn jacobian(&self, s: T, t: T, u: T) -> Result<T> {
        let [a, b, c] = self.partials(s, t, u)?;
        Ok(dot3(a, cross(b, c)))
    }

    /// Bilinear patch obtained by fixing `dir` at `value`; the remaining directions keep
    /// their order.
    pub fn slice(&self, dir: Direction, value: ProjParam<T>) -> DcPatch<T> {
        let b = value.bernstein();
        let d = dir.index();
        let [e0, e1] = dir.others().map(Direction::index);
        let mut net = [HomogeneousPoint::new(Quaternion::zero(), Quaternion::zero()); 4];
        for a in 0..2 {
            for c in 0..2 {
                let mut acc = HomogeneousPoint::new(Quaternion::zero(), Quaternion::zero());
                for i in 0..2 {
                    let mut idx = [0; 3];
                    idx[d] = i;
                    idx[e0] = a;
                    idx[e1] = c;
                    acc = acc + self.net[flat(idx)].scale(b[i]);
                }
                net[a + 2 * c] = acc;
            }
        }
        DcPatch::new(net)
    }

    /// Multiplies the control points by `1, λ₁, λ₂, λ₁λ₂, λ₃, λ₁λ₃, λ₂λ₃, λ₁λ₂λ₃`.
    /// The new cube at `s = (num : den)` equals the old one at `(λ₁ num : den − num + λ₁ num)`,
    /// and likewise for `t`, `u`.
    pub fn reparametrize_interior(&self, l1: T, l2: T, l3: T) -> Result<Self> {
        if l1 == T::zero() || l2 == T::zero() || l3 == T::zero() {
            return Err(Error::ZeroMultiplier);
        }
        let mut net = self.net;
        for (n, p) in net.iter_mut().enumerate() {
            let mut f = T::one();
            if n & 1 != 0 {
                f = f * l1;
            }
            if n & 2 != 0 {
                f = f * l2;
            }
            if n & 4 != 0 {
                f = f * l3;
            }
            *p = p.scale(f);
        }
        Ok(Self { net })
    }

    /// Projective change of parameter in direction `dir`: the new cube at `x'` equals the old
    /// one at `x = m x'` (homogeneous coordinates `(num, den)`).
    pub fn reparametrize_projective(&self, dir: Direction, m: [[T; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == T::zero() {
            return Err(Error::ZeroMultiplier);
        }
        let d = dir.index();
        let c00 = m[1][1] - m[0][1];
        let c01 = m[0][1];
        let c10 = m[1][0] - m[0][0] + m[1][1] - m[0][1];
        let c11 = m[0][0] + m[0][1];
        let mut net = self.net;
        for n in 0..8 {
            if (n >> d) & 1 == 1 {
                continue;
            }
            let n1 = n | (1 << d);
            let p0 = self.net[n];
            let p1 = self.net[n1];
            net[n] = p0.scale(c00) + p1.scale(c01);
            net[n1] = p0.scale(c10) + p1.scale(c11);
        }
        Ok(Self { net })
    }

    /// Net of `Inv_q^r ∘ F`: `u' = q u − (r² + q²) w`, `w' = u − q w`.
    pub fn apply_inversion_to_net(&self, q: Quaternion<T>, r2: T) -> Self {
        self.apply_mobius(&MobiusMap::new(vec![Generator::SphereInversion { center: q, r2 }]))
    }

    pub fn apply_mobius(&self, m: &MobiusMap<T>) -> Self {
        Self { net: self.net.map(|p| p.apply(m)) }
    }

    /// Right multiplication of every control point by `q`; the map `F` is unchanged.
    pub fn right_mul(&self, q: Quaternion<T>) -> Self {
        Self { net: self.net.map(|p| p.right_mul(q)) }
    }

    /// Largest control-point norm, used as a scale for tolerances.
    pub fn scale(&self) -> T {
        self.net.iter().fold(T::zero(), |m, p| m.max(p.norm()))
    }

    /// Spherical-slice polynomials `σ₁, σ₂, σ₃`.
    pub fn spherical_polys(&self) -> SphericalPolys<T> {
        let sc = self.scale();
        let mut sigma = [QuadPoly::zero(); 3];
        let mut alt = [QuadPoly::zero(); 3];
        for dir in Direction::ALL {
            let f = |x: T, diag: bool| {
                let p = self.slice(dir, ProjParam::affine(x));
                if diag {
                    pair_form(&p.net[0], &p.net[3])
                } else {
                    pair_form(&p.net[1], &p.net[2])
                }
            };
            sigma[dir.index()] = QuadPoly::from_samples(f(-T::one(), true), f(T::zero(), true), f(T::one(), true));
            alt[dir.index()] = QuadPoly::from_samples(f(-T::one(), false), f(T::zero(), false), f(T::one(), false));
        }
        SphericalPolys { sigma, alt, scale: sc * sc }
    }

    /// Study quadric membership of all entries and cosphericality of the 8 control points.
    pub fn check_invariants(&self, tol: &Tolerance<T>) -> Result<()> {
        for (n, p) in self.net.iter().enumerate() {
            if p.norm() == T::zero() {
                return Err(Error::InvariantViolation(format!("control point p{n} is (0, 0)")));
            }
            if !p.on_study_quadric(tol) {
                return Err(Error::InvariantViolation(format!(
                    "control point p{n} is off the Study quadric (S = {})",
                    p.study()
                )));
            }
        }
        let pts = self.control_points()?;
        if !cospherical_all(&pts, tol) {
            return Err(Error::InvariantViolation("control points are not cospherical".into()));
        }
        Ok(())
    }

    /// True when the Jacobian is numerically zero at every sample of a fixed interior grid.
    pub fn is_degenerate(&self) -> bool {
        let vals = [0.1234, 0.3817, 0.5521, 0.7333, 0.9012];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let (s, t, u) = (T::lit(a), T::lit(b), T::lit(1.0 - c));
                    if let Ok(p) = self.partials(s, t, u) {
                        let n: Vec<T> = p.iter().map(|v| dot3(*v, *v).sqrt()).collect();
                        let m = n.iter().fold(T::zero(), |m, &x| m.max(x));
                        if m == T::zero() || !m.is_finite() {
                            continue;
                        }
                        let j = dot3(p[0], cross(p[1], p[2]));
                        if j.abs() > T::lit(1e-9) * m * m * m {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
