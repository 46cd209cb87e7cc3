//! Builders: patches from corner data, Miquel points, cube completion, offset and
//! rotational cubes.

mod complete;
mod miquel;

use crate::error::{Error, Result};
use crate::qb::{DcCube, DcPatch, HomogeneousPoint};
use crate::quat::{cross, dot3, is_concyclic, norm3, MPoint, Quaternion};
use crate::{Scalar, Tolerance};

pub use complete::complete_cube;
pub use miquel::{miquel_point, side_points};

fn finite<T: Scalar>(p: MPoint<T>) -> Result<Quaternion<T>> {
    p.as_quaternion().ok_or_else(|| Error::InvalidParameter("point must be finite".into()))
}

fn check_orthogonal<T: Scalar>(v1: Quaternion<T>, v2: Quaternion<T>, tol: &Tolerance<T>) -> Result<()> {
    if v1.norm() == T::zero() || v2.norm() == T::zero() {
        return Err(Error::InvalidParameter("tangent vectors must be nonzero".into()));
    }
    if !tol.is_zero(dot3(v1.vec3(), v2.vec3()), v1.norm() * v2.norm()) {
        return Err(Error::NonOrthogonalTangents);
    }
    Ok(())
}

/// Principal patch with the corner `p₀ = ∞`. The finite corners must be collinear and the
/// tangents `v₁, v₂` orthogonal. Net: `(1,0), (−p₁v₁,−v₁), (−p₂v₂,−v₂), (p₃(p₁−p₂)v₁v₂, (p₁−p₂)v₁v₂)`.
pub fn patch_weights_infinite<T: Scalar>(
    p1: MPoint<T>,
    p2: MPoint<T>,
    p3: MPoint<T>,
    v1: Quaternion<T>,
    v2: Quaternion<T>,
    tol: &Tolerance<T>,
) -> Result<DcPatch<T>> {
    let (p1, p2, p3) = (finite(p1)?, finite(p2)?, finite(p3)?);
    let d12 = p2 - p1;
    if d12.is_zero() {
        return Err(Error::CoincidentPoints);
    }
    let d13 = p3 - p1;
    if !tol.is_zero(norm3(cross(d12.vec3(), d13.vec3())), d12.norm() * d13.norm()) {
        return Err(Error::NonCollinearInput);
    }
    check_orthogonal(v1, v2, tol)?;
    let w3 = (p1 - p2) * v1 * v2;
    Ok(DcPatch::from_pairs([
        (Quaternion::one(), Quaternion::zero()),
        (-(p1 * v1), -v1),
        (-(p2 * v2), -v2),
        (p3 * w3, w3),
    ]))
}

/// Principal patch through four finite concyclic corners with tangents `v₁, v₂` at `p₀`.
/// Weights: `w₀ = 1`, `w₁ = (p₁−p₀)⁻¹v₁`, `w₂ = (p₂−p₀)⁻¹v₂`,
/// `w₃ = (p₃−p₀)⁻¹((p₁−p₀)⁻¹ − (p₂−p₀)⁻¹)v₁v₂`.
pub fn patch_weights_finite<T: Scalar>(
    p: [MPoint<T>; 4],
    v1: Quaternion<T>,
    v2: Quaternion<T>,
    tol: &Tolerance<T>,
) -> Result<DcPatch<T>> {
    let q = [finite(p[0])?, finite(p[1])?, finite(p[2])?, finite(p[3])?];
    if !is_concyclic(p, tol)? {
        return Err(Error::NonConcyclicCorners);
    }
    check_orthogonal(v1, v2, tol)?;
    let i1 = (q[1] - q[0]).inv();
    let i2 = (q[2] - q[0]).inv();
    let w = [Quaternion::one(), i1 * v1, i2 * v2, (q[3] - q[0]).inv() * (i1 - i2) * v1 * v2];
    Ok(DcPatch::from_pairs([(q[0] * w[0], w[0]), (q[1] * w[1], w[1]), (q[2] * w[2], w[2]), (q[3] * w[3], w[3])]))
}

/// Tangents `(v₁, v₂)` at the corner `p₀` of a patch, after right-normalizing the net so that
/// `w₀ = 1` (finite corner) or `u₀ = 1` (corner at ∞). Returns the normalized patch as well.
pub fn corner_tangents<T: Scalar>(patch: &DcPatch<T>) -> Result<(DcPatch<T>, Quaternion<T>, Quaternion<T>)> {
    let h0 = patch.net[0];
    let infinite = h0.w.norm() <= h0.u.norm() * T::epsilon() * T::lit(4.0);
    if infinite {
        let p = patch.right_mul(h0.u.checked_inv().ok_or(Error::ZeroPair)?);
        Ok((p, -p.net[1].w, -p.net[2].w))
    } else {
        let p = patch.right_mul(h0.w.inv());
        let p0 = p.net[0].u;
        let v1 = (p.net[1].u * p.net[1].w.inv() - p0) * p.net[1].w;
        let v2 = (p.net[2].u * p.net[2].w.inv() - p0) * p.net[2].w;
        Ok((p, v1, v2))
    }
}

/// Cube whose `u`-lines are the normals of the patch: the face `u = 1` is the offset of the
/// face `u = 0` at signed distance `−d` along `n₀ = v₁v₂ / |v₁v₂|`.
/// Entries: `(u_{i+4}, w_{i+4}) = (u_i − d w_i n₀, w_i)`, i.e. `p_{i+4} = p_i − d n_i` with
/// `n_i = w_i n₀ w_i⁻¹`.
pub fn offset_cube<T: Scalar>(patch: &DcPatch<T>, d: T) -> Result<DcCube<T>> {
    if d == T::zero() {
        return Err(Error::InvalidParameter("offset distance d must be nonzero".into()));
    }
    let (p, v1, v2) = corner_tangents(patch)?;
    let n = v1 * v2;
    if n.norm() == T::zero() {
        return Err(Error::InvalidParameter("corner tangents vanish".into()));
    }
    let n0 = n.scale(T::one() / n.norm());
    let mut net = [p.net[0]; 8];
    for i in 0..4 {
        let h = p.net[i];
        net[i] = h;
        net[i + 4] = HomogeneousPoint::new(h.u - (h.w * n0).scale(d), h.w);
    }
    Ok(DcCube::new(net))
}

/// Rotational cube `(u_{i+4}, w_{i+4}) = (n u_i, n w_i)`: the `u`-direction rotates the planar
/// patch about the axis through the origin with unit direction `n`.
pub fn axial_cube<T: Scalar>(patch: &DcPatch<T>, n: Quaternion<T>) -> Result<DcCube<T>> {
    let n = n.im();
    if n.norm() == T::zero() {
        return Err(Error::InvalidParameter("axis direction must be nonzero".into()));
    }
    let n = n.scale(T::one() / n.norm());
    let mut net = [patch.net[0]; 8];
    for i in 0..4 {
        let h = patch.net[i];
        net[i] = h;
        net[i + 4] = HomogeneousPoint::new(n * h.u, n * h.w);
    }
    Ok(DcCube::new(net))
}
