//! Implicit equations of bilinear patches from the determinant `det[X wᵢ − uᵢ]`.

use serde::Serialize;

use super::linalg::null_fit;
use super::poly::{det4, Poly3};
use super::sphere::MSphere;
use crate::error::{Error, Result};
use crate::qb::{Direction, ProjParam};
use crate::{Cube, Patch, Quat};

/// How the returned polynomial was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ImplicitSource {
    /// The determinant itself.
    Determinant,
    /// A lower-degree factor of the determinant found from samples.
    Reduced,
    /// The determinant vanishes identically; an M-sphere fitted to samples.
    SphereFit,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplicitSurface {
    pub poly: Poly3,
    pub source: ImplicitSource,
    /// Degree of the determinant (0 when it vanishes identically).
    pub det_degree: usize,
}

impl ImplicitSurface {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.poly.eval(p)
    }

    /// `|f(p)| / (‖f‖ · max(1, |p|)^deg)`.
    pub fn relative_residual(&self, p: [f64; 3]) -> f64 {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt().max(1.0);
        self.poly.eval(p).abs() / (self.poly.max_abs() * r.powi(self.degree() as i32))
    }
}

/// Columns `X wᵢ − uᵢ` as four polynomial components each.
fn column(u: Quat, w: Quat) -> [Poly3; 4] {
    // (xi + yj + zk)(w.r + w.x i + w.y j + w.z k) − u
    [
        Poly3::affine([-w.x, -w.y, -w.z], -u.r),
        Poly3::affine([w.r, w.z, -w.y], -u.x),
        Poly3::affine([-w.z, w.r, w.x], -u.y),
        Poly3::affine([w.y, -w.x, w.r], -u.z),
    ]
}

/// `det[X wᵢ − uᵢ]` for the four control points of a patch.
pub fn determinant(patch: &Patch) -> Poly3 {
    let cols: Vec<[Poly3; 4]> = patch.net.iter().map(|h| column(h.u, h.w)).collect();
    let m: [[Poly3; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
    det4(&m)
}

/// Finite sample points of the patch on a 20×20 grid over `[−0.5, 1.5]²`.
pub fn patch_samples(patch: &Patch) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for a in 0..20 {
        for b in 0..20 {
            let s = -0.5 + 2.0 * (a as f64 + 0.37) / 20.0;
            let t = -0.5 + 2.0 * (b as f64 + 0.61) / 20.0;
            if let Ok(p) = patch.eval_affine(s, t) {
                if let Some(v) = p.vec3() {
                    if v.iter().all(|x| x.is_finite() && x.abs() < 1e6) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// Lowest-degree polynomial (up to `max_deg`) vanishing on the samples, if unique.
pub fn fit_minimal(samples: &[[f64; 3]], max_deg: usize) -> Option<Poly3> {
    if samples.is_empty() {
        return None;
    }
    let n = samples.len() as f64;
    let mut c = [0.0; 3];
    for p in samples {
        for i in 0..3 {
            c[i] += p[i] / n;
        }
    }
    let sigma = samples
        .iter()
        .map(|p| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)).sqrt())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let q: Vec<[f64; 3]> =
        samples.iter().map(|p| [(p[0] - c[0]) / sigma, (p[1] - c[1]) / sigma, (p[2] - c[2]) / sigma]).collect();
    for deg in 1..=max_deg {
        let mons = Poly3::monomials(deg);
        if q.len() < mons.len() + 5 {
            return None;
        }
        let rows: Vec<Vec<f64>> = q
            .iter()
            .map(|p| {
                mons.iter().map(|e| p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)).collect()
            })
            .collect();
        let f = null_fit(&rows, mons.len());
        if f.ratio < 1e-9 && f.gap > 1e-6 {
            let g = Poly3::from_coeffs(&mons, &f.vector);
            return Some(g.substitute_affine(c, sigma).pruned(1e-12).normalized());
        }
    }
    None
}

/// Implicit equation of a patch: the determinant, reduced to a lower-degree factor when the
/// samples admit one, or an M-sphere fit when the determinant vanishes identically.
pub fn implicitize_patch(patch: &Patch) -> Result<ImplicitSurface> {
    let det = determinant(patch);
    let scale: f64 = patch.net.iter().map(|h| 1.0 + h.norm()).product();
    let samples = patch_samples(patch);
    if det.max_abs() <= 1e-12 * scale {
        let pts: Vec<crate::Point> = samples.iter().map(|v| crate::Point::xyz(v[0], v[1], v[2])).collect();
        let s = MSphere::fit(&pts, 1e-9, 1e-6).ok_or(Error::IdenticallyZero)?;
        let mut poly = Poly3::zero();
        poly.add_term([2, 0, 0], s.a);
        poly.add_term([0, 2, 0], s.a);
        poly.add_term([0, 0, 2], s.a);
        poly.add_term([1, 0, 0], s.b[0]);
        poly.add_term([0, 1, 0], s.b[1]);
        poly.add_term([0, 0, 1], s.b[2]);
        poly.add_term([0, 0, 0], s.c);
        return Ok(ImplicitSurface {
            poly: poly.pruned(1e-12).normalized(),
            source: ImplicitSource::SphereFit,
            det_degree: 0,
        });
    }
    let det = det.pruned(1e-14).normalized();
    let deg = det.degree();
    if deg > 1 {
        if let Some(g) = fit_minimal(&samples, deg - 1) {
            return Ok(ImplicitSurface { poly: g, source: ImplicitSource::Reduced, det_degree: deg });
        }
    }
    Ok(ImplicitSurface { poly: det, source: ImplicitSource::Determinant, det_degree: deg })
}

/// Implicit equation of the coordinate surface `dir = value`.
pub fn implicitize_slice(cube: &Cube, dir: Direction, value: ProjParam<f64>) -> Result<ImplicitSurface> {
    implicitize_patch(&cube.slice(dir, value))
}
