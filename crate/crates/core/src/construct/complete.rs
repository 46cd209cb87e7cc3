use super::miquel::miquel_limit;
use crate::error::{Error, Result};
use crate::qb::{farin_point, DcCube, DcPatch, HomogeneousPoint};
use crate::quat::{cross, dot3, inversion, norm3, Generator, MPoint, MobiusMap, Quaternion};
use crate::{Scalar, Tolerance};

/// Cube determined by its three faces through `p₀`: `faces[0]` is the `(s,t)` face `u = 0`,
/// `faces[1]` the `(s,u)` face `t = 0` and `faces[2]` the `(t,u)` face `s = 0`.
///
/// The faces are aligned by a right factor at `p₀`, checked for agreement of corners and
/// Farin points on the shared edges, and `p₇` is the image of the Miquel point of the
/// triangle `q₁q₂q₄` under the inversion at `p₀`.
pub fn complete_cube<T: Scalar>(faces: [DcPatch<T>; 3], tol: &Tolerance<T>) -> Result<DcCube<T>> {
    let r = faces[0].net[0];
    let mut f = faces;
    for face in f.iter_mut().skip(1) {
        let h = face.net[0];
        let q = if h.w.norm() >= h.u.norm() { h.w.inv() * r.w } else { h.u.inv() * r.u };
        *face = face.right_mul(q);
        let d = (face.net[0].u - r.u).norm() + (face.net[0].w - r.w).norm();
        if !(d <= T::lit(1e-9) * r.norm()) {
            return Err(Error::IncompatibleFaces("faces disagree at p0".into()));
        }
    }
    let e = [r, f[0].net[1], f[0].net[2], f[0].net[3], f[1].net[2], f[1].net[3], f[2].net[3]];
    let diag = bbox_diagonal(&e)?;
    let shared = [(e[1], f[1].net[1], "p0p1"), (e[2], f[2].net[1], "p0p2"), (e[4], f[2].net[2], "p0p4")];
    for (a, b, name) in shared {
        let fa = farin_point(&r, &a)?;
        let fb = farin_point(&r, &b)?;
        let ca = a.proj_div()?;
        let cb = b.proj_div()?;
        if !close(&fa, &fb, diag) || !close(&ca, &cb, diag) {
            return Err(Error::IncompatibleFaces(format!("edge {name}: Farin points differ")));
        }
    }

    let all_finite = e.iter().all(|h| !h.proj_div().map(|p| p.is_infinite()).unwrap_or(true));
    let h7 = if all_finite {
        match complete_finite(&e, tol) {
            Err(Error::PoleEncountered) => complete_in_frame(&e, tol)?,
            other => other?,
        }
    } else {
        complete_in_frame(&e, tol)?
    };
    Ok(DcCube::new([e[0], e[1], e[2], e[3], e[4], e[5], e[6], h7]))
}

fn close<T: Scalar>(a: &MPoint<T>, b: &MPoint<T>, diag: T) -> bool {
    match (a, b) {
        (MPoint::Infinity, MPoint::Infinity) => true,
        (MPoint::Finite(x), MPoint::Finite(y)) => (*x - *y).norm() <= T::lit(1e-8) * diag,
        _ => false,
    }
}

fn bbox_diagonal<T: Scalar>(e: &[HomogeneousPoint<T>]) -> Result<T> {
    let mut lo = [T::infinity(); 3];
    let mut hi = [T::neg_infinity(); 3];
    let mut any = false;
    for h in e {
        if let Some(v) = h.proj_div()?.vec3() {
            any = true;
            for a in 0..3 {
                lo[a] = lo[a].min(v[a]);
                hi[a] = hi[a].max(v[a]);
            }
        }
    }
    if !any {
        return Ok(T::one());
    }
    let d = norm3([hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]]);
    Ok(if d > T::zero() { d } else { T::one() })
}

/// Runs the completion after an inversion that moves every point to a finite position,
/// then maps the new entry back. The net-level inversion squared is `−r²` times the identity.
fn complete_in_frame<T: Scalar>(e: &[HomogeneousPoint<T>; 7], tol: &Tolerance<T>) -> Result<HomogeneousPoint<T>> {
    let mut radius = T::one();
    for h in e {
        if let Some(q) = h.proj_div()?.as_quaternion() {
            radius = radius.max(q.norm());
        }
    }
    let dirs = [[0.31, 0.47, 0.83], [-0.62, 0.21, 0.55], [0.17, -0.73, 0.29]];
    for d in dirs {
        let c = Quaternion::imag(T::lit(d[0]), T::lit(d[1]), T::lit(d[2])).scale(radius);
        let m = MobiusMap::new(vec![Generator::SphereInversion { center: c, r2: T::one() }]);
        let moved = e.map(|h| h.apply(&m));
        if moved.iter().any(|h| h.w.norm() <= T::lit(1e-9) * h.u.norm()) {
            continue;
        }
        match complete_finite(&moved, tol) {
            Ok(h7) => return Ok(h7.apply(&m).scale(-T::one())),
            Err(Error::PoleEncountered) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::PoleEncountered)
}

fn complete_finite<T: Scalar>(e: &[HomogeneousPoint<T>; 7], tol: &Tolerance<T>) -> Result<HomogeneousPoint<T>> {
    let mut p = [Quaternion::zero(); 7];
    for (dst, h) in p.iter_mut().zip(e.iter()) {
        let w = h.w.checked_inv().ok_or(Error::PoleEncountered)?;
        *dst = (h.u * w).im();
    }
    let q: Vec<Quaternion<T>> =
        p.iter().map(|&x| inversion(p[0], T::one(), MPoint::Finite(x)).as_quaternion().unwrap_or_default()).collect();
    let tri = [q[1], q[2], q[4]];
    let param = |x: Quaternion<T>, a: Quaternion<T>, b: Quaternion<T>| -> Result<T> {
        let ab = (b - a).vec3();
        let ax = (x - a).vec3();
        let l2 = dot3(ab, ab);
        if l2 == T::zero() {
            return Err(Error::DegenerateTriangle);
        }
        let off = norm3(cross(ab, ax)) / l2.sqrt();
        if off > T::lit(1e-7) * l2.sqrt().max(norm3(ax)) {
            return Err(Error::IncompatibleFaces("faces are not principal patches".into()));
        }
        Ok(dot3(ax, ab) / l2)
    };
    let lambda = [param(q[6], tri[1], tri[2])?, param(q[5], tri[2], tri[0])?, param(q[3], tri[0], tri[1])?];
    let m = miquel_limit(tri.map(MPoint::Finite), lambda)?;
    let p7 = match inversion(p[0], T::one(), m) {
        MPoint::Finite(x) => x,
        MPoint::Infinity => return Err(Error::PoleEncountered),
    };
    if p.iter().any(|&x| (x - p7).is_zero()) {
        return Err(Error::PoleEncountered);
    }
    // A face whose three known corners coincide does not fix the weight.
    let mut ws = Vec::with_capacity(3);
    for (a, b, c) in [(4, 5, 6), (2, 3, 6), (1, 3, 5)] {
        match face_weight(&e[a], &e[b], &e[c], p7, tol) {
            Err(Error::CoincidentPoints) => {}
            w => ws.push(w?),
        }
    }
    if ws.is_empty() {
        return Err(Error::CoincidentPoints);
    }
    let scale = ws[0].norm();
    for w in &ws[1..] {
        if (*w - ws[0]).norm() > T::lit(1e-7) * scale {
            return Err(Error::IncompatibleFaces("faces at p7 disagree on its weight".into()));
        }
    }
    Ok(HomogeneousPoint::new(p7 * ws[0], ws[0]))
}

/// Weight of the fourth corner `p3` of the principal patch with entries `a` (corner), `b`, `c`.
fn face_weight<T: Scalar>(
    a: &HomogeneousPoint<T>,
    b: &HomogeneousPoint<T>,
    c: &HomogeneousPoint<T>,
    p3: Quaternion<T>,
    tol: &Tolerance<T>,
) -> Result<Quaternion<T>> {
    let w0 = a.w;
    let n = w0.checked_inv().ok_or(Error::PoleEncountered)?;
    let pa = a.u * n;
    let wb = b.w * n;
    let wc = c.w * n;
    let pb = b.u * b.w.inv();
    let pc = c.u * c.w.inv();
    let v1 = (pb - pa) * wb;
    let v2 = (pc - pa) * wc;
    if !tol.is_zero(dot3(v1.vec3(), v2.vec3()), v1.norm() * v2.norm() * T::lit(1e3)) {
        return Err(Error::IncompatibleFaces("edges at a new corner are not orthogonal".into()));
    }
    let scale = T::one() + pa.norm() + pb.norm() + pc.norm();
    let tiny = |x: Quaternion<T>| x.norm() <= T::lit(1e-12) * scale;
    if tiny(pc - pa) {
        if tiny(pb - pa) {
            return Err(Error::CoincidentPoints);
        }
        // Transposed patch: same weight with the edges swapped.
        return face_weight(a, c, b, p3, tol);
    }
    // (pb − pa)⁻¹v₁ = wb keeps the formula finite when pb = pa.
    let v1 = if tiny(pb - pa) { Quaternion::zero() } else { v1 };
    let w3 = (p3 - pa).inv() * (wb * v2 - (pc - pa).inv() * v1 * v2);
    Ok(w3 * w0)
}
