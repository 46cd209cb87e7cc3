//! Degree of a DC system: the number of preimages of a regular point.
//!
//! `U − pW` is trilinear in the Bernstein coordinates. Fixing `s`, the four quaternion
//! coefficients of `(t, u)` form a 4×4 real matrix whose determinant is a binary quartic in
//! `s`; at each of its real roots the kernel must contain a rank-one tensor `b(t) ⊗ b(u)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::svd;
use super::poly::real_roots;
use super::singular::{fold_measure, SingularLocus};
use crate::error::{Error, Result};
use crate::qb::{Direction, ProjParam};
use crate::quat::predicates::det;
use crate::{Cube, Point, Quat};

/// A preimage in homogeneous parameters.
pub type Preimage = [ProjParam<f64>; 3];

/// Degree together with the points at which it was evaluated.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: u32,
    pub points: Vec<Point>,
    pub counts: Vec<u32>,
}

/// Options for the automatic choice of regular points.
#[derive(Clone, Copy, Debug)]
pub struct DegreeOptions {
    pub seed: u64,
    pub points: usize,
    /// Minimal chordal distance of a test point from the sampled singular locus.
    pub clearance: f64,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        Self { seed: 7, points: 3, clearance: 2e-2 }
    }
}

fn to_param(b: [f64; 2]) -> ProjParam<f64> {
    // (B₀, B₁) = (den − num, num)
    ProjParam::new(b[1], b[0] + b[1]).normalized()
}

/// Coefficient quaternions `g_{ijk}` of `U − pW` (or of `W` when `p = ∞`).
fn coefficients(cube: &Cube, p: &Point) -> [Quat; 8] {
    let mut g = [Quat::zero(); 8];
    for (n, hp) in cube.net.iter().enumerate() {
        g[n] = match p.as_quaternion() {
            Some(q) => hp.u - q * hp.w,
            None => hp.w,
        };
    }
    g
}

/// Columns `c_{jk}(s)` as functions of the Bernstein pair of `s`.
fn columns(g: &[Quat; 8], b: [f64; 2]) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for (col, jk) in [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().enumerate() {
        let q = g[2 * jk.0 + 4 * jk.1].scale(b[0]) + g[1 + 2 * jk.0 + 4 * jk.1].scale(b[1]);
        for (r, v) in q.to_array().into_iter().enumerate() {
            m[r][col] = v;
        }
    }
    m
}

/// Binary quartic `Σ D_m B₀^{4−m} B₁^m` by multilinear expansion over the columns.
fn det_quartic(g: &[Quat; 8]) -> [f64; 5] {
    let mut d = [0.0; 5];
    for mask in 0u32..16 {
        let mut m = [[0.0; 4]; 4];
        for (col, jk) in [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().enumerate() {
            let i = ((mask >> col) & 1) as usize;
            let q = g[i + 2 * jk.0 + 4 * jk.1];
            for (r, v) in q.to_array().into_iter().enumerate() {
                m[r][col] = v;
            }
        }
        d[mask.count_ones() as usize] += det(m);
    }
    d
}

fn quad_roots(c: [f64; 3]) -> Vec<[f64; 2]> {
    // c₀ x² + c₁ x y + c₂ y² = 0 over (x : y)
    let s = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if s == 0.0 {
        return Vec::new();
    }
    let [a, b, e] = c.map(|v| v / s);
    let disc = b * b - 4.0 * a * e;
    if disc < -1e-12 {
        return Vec::new();
    }
    let sq = disc.max(0.0).sqrt();
    let sgn = if b < 0.0 { -1.0 } else { 1.0 };
    let q = -(b + sgn * sq) / 2.0;
    // roots (x : y) = (q : a) and (e : q)
    let mut out = Vec::new();
    if q.abs() > 0.0 || a.abs() > 0.0 {
        out.push([q, a]);
    }
    if q.abs() > 0.0 || e.abs() > 0.0 {
        out.push([e, q]);
    }
    out
}

fn rank_one(v: &[f64]) -> Option<([f64; 2], [f64; 2])> {
    // v = (t₀u₀, t₁u₀, t₀u₁, t₁u₁)
    let n2: f64 = v.iter().map(|x| x * x).sum();
    if (v[0] * v[3] - v[1] * v[2]).abs() > 1e-6 * n2 {
        return None;
    }
    let t = if v[0].hypot(v[1]) >= v[2].hypot(v[3]) { [v[0], v[1]] } else { [v[2], v[3]] };
    let u = if v[0].hypot(v[2]) >= v[1].hypot(v[3]) { [v[0], v[2]] } else { [v[1], v[3]] };
    Some((t, u))
}

fn residual(cube: &Cube, p: &Point, x: &Preimage) -> f64 {
    let (u, w) = cube.homogeneous(*x);
    let scale = u.norm_sqr() + w.norm_sqr();
    let g = match p.as_quaternion() {
        Some(q) => u - q * w,
        None => w,
    };
    g.norm() / (scale.sqrt() * (1.0 + p.as_quaternion().map_or(0.0, |q| q.norm())))
}

fn is_base_point(cube: &Cube, x: &Preimage) -> bool {
    let (u, w) = cube.homogeneous(*x);
    let scale: f64 = cube.net.iter().map(|h| h.u.norm_sqr() + h.w.norm_sqr()).sum();
    u.norm_sqr() + w.norm_sqr() <= 1e-16 * scale
}

fn angles(x: &Preimage) -> [f64; 3] {
    x.map(|p| p.angle())
}

fn from_angles(a: [f64; 3]) -> Preimage {
    a.map(ProjParam::from_angle)
}

/// Levenberg–Marquardt for four residuals in `N` unknowns with central-difference Jacobians.
fn levenberg_marquardt<const N: usize>(f: impl Fn([f64; N]) -> [f64; 4], x0: [f64; N]) -> ([f64; N], f64) {
    let norm2 = |r: [f64; 4]| r.iter().map(|v| v * v).sum::<f64>();
    let mut x = x0;
    let mut r = f(x);
    let mut mu = 1e-3;
    for _ in 0..100 {
        let h = 1e-7;
        let mut jac = nalgebra::DMatrix::<f64>::zeros(4, N);
        for k in 0..N {
            let (mut xp, mut xm) = (x, x);
            xp[k] += h;
            xm[k] -= h;
            let (rp, rm) = (f(xp), f(xm));
            for i in 0..4 {
                jac[(i, k)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * nalgebra::DVector::<f64>::from_column_slice(&r);
        let mut improved = false;
        for _ in 0..20 {
            let mut m = jtj.clone();
            for a in 0..N {
                m[(a, a)] += mu * (1.0 + jtj[(a, a)]);
            }
            let Some(step) = m.lu().solve(&(-&jtr)) else { break };
            let mut xn = x;
            for a in 0..N {
                xn[a] += step[a];
            }
            let rn = f(xn);
            if norm2(rn) < norm2(r) {
                x = xn;
                r = rn;
                mu = (mu * 0.3).max(1e-12);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if !improved || norm2(r) < 1e-30 {
            break;
        }
    }
    (x.map(|v| v.rem_euclid(PI)), norm2(r).sqrt())
}

/// Normalized residual `(U − pW)/|(U, W)|` (or `W/|(U, W)|` for `p = ∞`).
fn target_residual(u: Quat, w: Quat, p: &Point) -> [f64; 4] {
    let s = (u.norm_sqr() + w.norm_sqr()).sqrt().max(1e-300);
    let g = match p.as_quaternion() {
        Some(q) => u - q * w,
        None => w,
    };
    g.to_array().map(|v| v / s)
}

fn refine(cube: &Cube, p: &Point, x0: [f64; 3]) -> ([f64; 3], f64) {
    levenberg_marquardt(
        |a| {
            let (u, w) = cube.homogeneous(from_angles(a));
            target_residual(u, w, p)
        },
        x0,
    )
}

fn same(a: &Preimage, b: &Preimage, tol: f64) -> bool {
    (0..3).all(|i| a[i].distance(&b[i]) <= tol)
}

fn push_unique(out: &mut Vec<Preimage>, x: Preimage) {
    if !out.iter().any(|y| same(y, &x, 1e-6)) {
        out.push(x);
    }
}

fn sort_preimages(v: &mut [Preimage]) {
    v.sort_by(|a, b| angles(a).partial_cmp(&angles(b)).unwrap());
}

/// Preimages of `p` by elimination of `(t, u)`. `None` when the eliminant vanishes
/// identically or a kernel is too degenerate to resolve.
pub fn preimages_elimination(cube: &Cube, p: &Point) -> Option<Vec<Preimage>> {
    let g = coefficients(cube, p);
    let d = det_quartic(&g);
    let big = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gscale: f64 = g.iter().map(|q| q.norm()).fold(0.0, f64::max);
    if big <= 1e-12 * gscale.powi(4) {
        return None;
    }
    // Roots as B₁/B₀ = r, plus B₀ = 0 when the top coefficient vanishes.
    let mut svals: Vec<[f64; 2]> = real_roots(&d).into_iter().map(|r| [1.0, r]).collect();
    if d[4].abs() <= 1e-10 * big {
        svals.push([0.0, 1.0]);
    }
    let mut out = Vec::new();
    for b in svals {
        let m = columns(&g, b);
        let rows: Vec<Vec<f64>> = m.iter().map(|r| r.to_vec()).collect();
        let s = svd(&rows, 4);
        let top = s.values[0].max(f64::MIN_POSITIVE);
        let mut cands: Vec<([f64; 2], [f64; 2])> = Vec::new();
        if s.values[2] / top > 1e-6 {
            if let Some(tu) = rank_one(&s.vectors[3]) {
                cands.push(tu);
            }
        } else if s.values[1] / top > 1e-6 {
            let (v1, v2) = (&s.vectors[2], &s.vectors[3]);
            // det of (α v1 + β v2) reshaped as 2×2: quadratic in (α : β)
            let c2 = v1[0] * v1[3] - v1[1] * v1[2];
            let c0 = v2[0] * v2[3] - v2[1] * v2[2];
            let c1 = v1[0] * v2[3] + v2[0] * v1[3] - v1[1] * v2[2] - v2[1] * v1[2];
            for [al, be] in quad_roots([c2, c1, c0]) {
                let v: Vec<f64> = (0..4).map(|i| al * v1[i] + be * v2[i]).collect();
                if let Some(tu) = rank_one(&v) {
                    cands.push(tu);
                }
            }
        } else {
            return None;
        }
        for (t, u) in cands {
            let x = [to_param(b), to_param(t), to_param(u)];
            if is_base_point(cube, &x) {
                continue;
            }
            let (a, res) = refine(cube, p, angles(&x));
            let y = from_angles(a);
            if res < 1e-9 && !is_base_point(cube, &y) {
                push_unique(&mut out, y);
            }
        }
    }
    sort_preimages(&mut out);
    Some(out)
}

/// Preimages of `p` from Levenberg–Marquardt started on a 6³ angle grid.
pub fn preimages_multistart(cube: &Cube, p: &Point) -> Vec<Preimage> {
    let n = 6;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = [i, j, k].map(|v| (v as f64 + 0.5) * PI / n as f64);
                let (x, res) = refine(cube, p, a);
                let y = from_angles(x);
                if res < 1e-10 && !is_base_point(cube, &y) && residual(cube, p, &y) < 1e-9 {
                    push_unique(&mut out, y);
                }
            }
        }
    }
    sort_preimages(&mut out);
    out
}

/// Smallest normalized Study determinant over the three directions at `x`.
fn regularity(cube: &Cube, x: &Preimage) -> f64 {
    Direction::ALL.iter().map(|d| fold_measure(cube, *d, *x).unwrap_or(0.0)).fold(f64::INFINITY, f64::min)
}

/// Number of preimages of `p`; fails if a preimage is close to a singular point.
pub fn degree_at(cube: &Cube, p: &Point) -> Result<u32> {
    let pre = preimages_elimination(cube, p).unwrap_or_else(|| preimages_multistart(cube, p));
    if pre.iter().any(|x| regularity(cube, x) < 1e-8) {
        return Err(Error::PointNearSingularity);
    }
    Ok(pre.len() as u32)
}

fn random_point(rng: &mut ChaCha8Rng, center: [f64; 3], radius: f64) -> Point {
    let v = [0, 1, 2].map(|i| center[i] + radius * rng.gen_range(-1.0..1.0));
    Point::xyz(v[0], v[1], v[2])
}

/// Degree at `opts.points` random regular points (or at `p` alone when given); all counts
/// must agree.
pub fn degree(
    cube: &Cube,
    p: Option<Point>,
    locus: Option<&SingularLocus>,
    opts: &DegreeOptions,
) -> Result<DegreeReport> {
    if let Some(p) = p {
        if let Some(l) = locus {
            if l.points().any(|q| q.chordal_distance(&p) < opts.clearance) {
                return Err(Error::PointNearSingularity);
            }
        }
        let d = degree_at(cube, &p)?;
        return Ok(DegreeReport { degree: d, points: vec![p], counts: vec![d] });
    }
    let finite: Vec<[f64; 3]> = cube.control_points()?.iter().filter_map(|q| q.vec3()).collect();
    let (center, radius) = if finite.is_empty() {
        ([0.0; 3], 1.0)
    } else {
        let c = [0, 1, 2].map(|i| finite.iter().map(|v| v[i]).sum::<f64>() / finite.len() as f64);
        let r = finite
            .iter()
            .map(|v| ((v[0] - c[0]).powi(2) + (v[1] - c[1]).powi(2) + (v[2] - c[2]).powi(2)).sqrt())
            .fold(0.0, f64::max);
        (c, r.max(0.5))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points = Vec::new();
    let mut counts = Vec::new();
    let mut attempts = 0;
    while points.len() < opts.points {
        attempts += 1;
        if attempts > 40 * opts.points {
            return Err(Error::SolverInconclusive("no regular test points found".into()));
        }
        let q = random_point(&mut rng, center, radius);
        if let Some(l) = locus {
            if l.points().any(|s| s.chordal_distance(&q) < opts.clearance) {
                continue;
            }
        }
        match degree_at(cube, &q) {
            Ok(d) => {
                points.push(q);
                counts.push(d);
            }
            Err(Error::PointNearSingularity) => continue,
            Err(e) => return Err(e),
        }
    }
    if counts.iter().any(|c| *c != counts[0]) {
        return Err(Error::SolverInconclusive(format!("preimage counts disagree: {counts:?}")));
    }
    Ok(DegreeReport { degree: counts[0], points, counts })
}

/// Number of preimages of `F(s₀, t₀)` under a patch, for a generic parameter point;
/// found by multistart least squares in angle coordinates.
pub fn patch_degree(patch: &crate::Patch, seed: u64) -> Result<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 12;
    let mut counts = Vec::new();
    for _ in 0..3 {
        let a0 = [rng.gen_range(0.0..PI), rng.gen_range(0.0..PI)];
        let (u0, w0) = patch.homogeneous(ProjParam::from_angle(a0[0]), ProjParam::from_angle(a0[1]));
        let target = crate::qb::proj_div(u0, w0)?;
        let f = |a: [f64; 2]| {
            let (u, w) = patch.homogeneous(ProjParam::from_angle(a[0]), ProjParam::from_angle(a[1]));
            target_residual(u, w, &target)
        };
        let mut found: Vec<[f64; 2]> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x0 = [(i as f64 + 0.5) * PI / n as f64, (j as f64 + 0.5) * PI / n as f64];
                let (y, res) = levenberg_marquardt(f, x0);
                if res < 1e-10 {
                    let p = y.map(ProjParam::from_angle);
                    let dup = found.iter().any(|z| {
                        let q = z.map(ProjParam::from_angle);
                        p[0].distance(&q[0]) < 1e-6 && p[1].distance(&q[1]) < 1e-6
                    });
                    if !dup {
                        found.push(y);
                    }
                }
            }
        }
        counts.push(found.len() as u32);
    }
    if counts.iter().any(|c| *c != counts[0]) {
        return Err(Error::SolverInconclusive(format!("patch preimage counts disagree: {counts:?}")));
    }
    Ok(counts[0])
}
