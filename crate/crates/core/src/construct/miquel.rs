use crate::error::{Error, Result};
use crate::quat::{cross, norm3, MPoint, Quaternion};
use crate::Scalar;

/// Miquel point of the triangle `p₁p₂p₃` with side points
/// `q₁ = λ₁′p₂ + λ₁p₃`, `q₂ = λ₂′p₃ + λ₂p₁`, `q₃ = λ₃′p₁ + λ₃p₂` (`λ′ = 1 − λ`),
/// as the barycentric combination `Σ pᵢαᵢ / Σ αᵢ`.
pub fn miquel_point<T: Scalar>(p: [MPoint<T>; 3], lambda: [T; 3]) -> Result<MPoint<T>> {
    if lambda.iter().any(|&l| l == T::zero() || l == T::one()) {
        return Err(Error::InvalidParameter("side point coincides with a vertex (lambda in {0, 1})".into()));
    }
    miquel_limit(p, lambda)
}

/// The barycentric formula without the vertex check; at `λ ∈ {0, 1}` it gives the limit
/// position, which cube completion needs when two control points coincide.
pub(crate) fn miquel_limit<T: Scalar>(p: [MPoint<T>; 3], lambda: [T; 3]) -> Result<MPoint<T>> {
    let mut q = [Quaternion::zero(); 3];
    for (dst, src) in q.iter_mut().zip(p.iter()) {
        *dst = src.as_quaternion().ok_or(Error::DegenerateTriangle)?;
    }
    let area = norm3(cross((q[1] - q[0]).vec3(), (q[2] - q[0]).vec3()));
    let size = (q[1] - q[0]).norm_sqr() + (q[2] - q[0]).norm_sqr() + (q[2] - q[1]).norm_sqr();
    if area <= T::lit(1e-12) * size {
        return Err(Error::DegenerateTriangle);
    }
    let d1 = (q[1] - q[2]).norm_sqr();
    let d2 = (q[2] - q[0]).norm_sqr();
    let d3 = (q[0] - q[1]).norm_sqr();
    let [l1, l2, l3] = lambda;
    let (m1, m2, m3) = (T::one() - l1, T::one() - l2, T::one() - l3);
    let a1 = -l1 * m1 * d1 * d1 + l1 * l2 * d1 * d2 + m1 * m3 * d1 * d3;
    let a2 = m1 * m2 * d1 * d2 - l2 * m2 * d2 * d2 + l2 * l3 * d2 * d3;
    let a3 = l1 * l3 * d1 * d3 + m2 * m3 * d2 * d3 - l3 * m3 * d3 * d3;
    let sum = a1 + a2 + a3;
    let mag = a1.abs() + a2.abs() + a3.abs();
    if mag == T::zero() {
        return Err(Error::DegenerateTriangle);
    }
    if sum.abs() <= T::lit(1e-14) * mag {
        return Ok(MPoint::Infinity);
    }
    Ok(MPoint::finite((q[0].scale(a1) + q[1].scale(a2) + q[2].scale(a3)).scale(T::one() / sum)))
}

/// Side points `(q₁, q₂, q₃)` for the convention used by [`miquel_point`].
pub fn side_points<T: Scalar>(p: [Quaternion<T>; 3], lambda: [T; 3]) -> [Quaternion<T>; 3] {
    let lerp = |a: Quaternion<T>, b: Quaternion<T>, l: T| a.scale(T::one() - l) + b.scale(l);
    [lerp(p[1], p[2], lambda[0]), lerp(p[2], p[0], lambda[1]), lerp(p[0], p[1], lambda[2])]
}
