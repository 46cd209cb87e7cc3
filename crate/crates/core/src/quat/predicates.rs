use super::{MPoint, Quaternion};
use crate::error::{Error, Result};
use crate::{Scalar, Tolerance};

/// `cr(p0,p1,p2,p3) = (p0−p1)(p1−p2)⁻¹(p2−p3)(p3−p0)⁻¹`.
///
/// With one point at ∞ the two factors containing it are dropped and replaced by `−1`,
/// which is the limit up to a conjugation; realness is unaffected.
pub fn cross_ratio<T: Scalar>(p: [MPoint<T>; 4]) -> Result<Quaternion<T>> {
    for a in 0..4 {
        for b in a + 1..4 {
            let same = match (p[a], p[b]) {
                (MPoint::Infinity, MPoint::Infinity) => true,
                (MPoint::Finite(x), MPoint::Finite(y)) => (x - y).is_zero(),
                _ => false,
            };
            if same {
                return Err(Error::CoincidentPoints);
            }
        }
    }
    let inf = p.iter().position(MPoint::is_infinite);
    let q: Vec<Quaternion<T>> = p.iter().map(|x| x.as_quaternion().unwrap_or_default()).collect();
    let d = |a: usize, b: usize| q[a] - q[b];
    let cr = match inf {
        None => d(0, 1) * d(1, 2).inv() * d(2, 3) * d(3, 0).inv(),
        Some(0) => -(d(1, 2).inv() * d(2, 3)),
        Some(1) => -(d(2, 3) * d(3, 0).inv()),
        Some(2) => -(d(0, 1) * d(3, 0).inv()),
        Some(_) => -(d(0, 1) * d(1, 2).inv()),
    };
    Ok(cr)
}

/// Four points lie on one M-circle iff their cross-ratio is real.
pub fn is_concyclic<T: Scalar>(p: [MPoint<T>; 4], tol: &Tolerance<T>) -> Result<bool> {
    let cr = cross_ratio(p)?;
    Ok(tol.is_zero(cr.im().norm(), cr.norm()))
}

/// Five points lie on one M-sphere. The test is the 5×5 determinant with rows
/// `(|p|², x, y, z, 1)` on normalized coordinates, compared against its Hadamard bound.
/// A point at ∞ contributes the row `(1, 0, 0, 0, 0)`, which reduces the test to coplanarity.
pub fn cospherical<T: Scalar>(p: [MPoint<T>; 5], tol: &Tolerance<T>) -> bool {
    let rows = sphere_rows(&p);
    let mut m = [[T::zero(); 5]; 5];
    let mut bound = T::one();
    for (i, r) in rows.iter().enumerate() {
        m[i] = *r;
        bound = bound * r.iter().fold(T::zero(), |s, &v| s + v * v).sqrt();
    }
    let d = det(m);
    tol.is_zero(d, bound)
}

/// All points lie on one M-sphere: every 5-subset passes [`cospherical`].
/// Intended for small sets such as the 8 corners of a cube.
pub fn cospherical_all<T: Scalar>(points: &[MPoint<T>], tol: &Tolerance<T>) -> bool {
    let n = points.len();
    assert!(n <= 20, "cospherical_all enumerates subsets; keep the point set small");
    (0u32..1 << n).filter(|m| m.count_ones() == 5).all(|mask| {
        let mut sub = [MPoint::Infinity; 5];
        let mut k = 0;
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sub[k] = *p;
                k += 1;
            }
        }
        cospherical(sub, tol)
    })
}

fn sphere_rows<T: Scalar>(p: &[MPoint<T>]) -> Vec<[T; 5]> {
    let finite: Vec<[T; 3]> = p.iter().filter_map(MPoint::vec3).collect();
    let n = T::from_usize(finite.len().max(1)).unwrap();
    let mut c = [T::zero(); 3];
    for v in &finite {
        for a in 0..3 {
            c[a] = c[a] + v[a] / n;
        }
    }
    let mut scale = T::zero();
    for v in &finite {
        let d = ((v[0] - c[0]).powi(2) + (v[1] - c[1]).powi(2) + (v[2] - c[2]).powi(2)).sqrt();
        scale = scale.max(d);
    }
    if scale == T::zero() {
        scale = T::one();
    }
    p.iter()
        .map(|pt| match pt.vec3() {
            None => [T::one(), T::zero(), T::zero(), T::zero(), T::zero()],
            Some(v) => {
                let q = [(v[0] - c[0]) / scale, (v[1] - c[1]) / scale, (v[2] - c[2]) / scale];
                [q[0] * q[0] + q[1] * q[1] + q[2] * q[2], q[0], q[1], q[2], T::one()]
            }
        })
        .collect()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn det<T: Scalar, const N: usize>(mut m: [[T; N]; N]) -> T {
    let mut d = T::one();
    for col in 0..N {
        let mut piv = col;
        for r in col + 1..N {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col] == T::zero() {
            return T::zero();
        }
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        d = d * m[col][col];
        for r in col + 1..N {
            let f = m[r][col] / m[col][col];
            for c in col..N {
                m[r][c] = m[r][c] - f * m[col][c];
            }
        }
    }
    d
}
