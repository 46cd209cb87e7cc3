//! Singular locus: per direction, the fold curves of the spherical slices at the real roots
//! of the spherical-condition polynomial.

use std::f64::consts::PI;

use serde::Serialize;

use super::contour::{trace, Grid};
use super::curves::{PlaneCurve, PlaneFrame};
use super::sphere::MSphere;
use crate::error::{Error, Result};
use crate::qb::{Direction, ProjParam, RootSet};
use crate::{Cube, Point, Quat, Tol};

/// One traced polyline of parameters `(t, u)` (angles) and its image points.
#[derive(Clone, Debug, Serialize)]
pub struct SingularBranch {
    pub direction: Direction,
    pub root: ProjParam<f64>,
    /// Angles of the two transverse parameters, in the order of `direction.others()`.
    pub angles: Vec<[f64; 2]>,
    pub points: Vec<Point>,
    pub closed: bool,
}

/// Curve of the singular locus on one carrier M-sphere.
#[derive(Clone, Debug, Serialize)]
pub struct SingularComponent {
    pub direction: Direction,
    pub carrier: MSphere,
    pub frame: Option<PlaneFrame>,
    pub curve: Option<PlaneCurve>,
    pub branches: Vec<SingularBranch>,
    /// Number of distinct slices whose fold curves cover this component.
    pub multiplicity: usize,
}

impl SingularComponent {
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.branches.iter().flat_map(|b| b.points.iter())
    }

    pub fn describe(&self) -> String {
        let what = match &self.curve {
            Some(c) => c.describe(),
            None if self.carrier.is_plane() => "plane curve".to_string(),
            None => "curve on a sphere".to_string(),
        };
        let mult = if self.multiplicity > 1 { format!(" (multiplicity {})", self.multiplicity) } else { String::new() };
        format!("{}-direction: {} on {}{}", self.direction.name(), what, self.carrier.describe(), mult)
    }
}

/// What happened in each direction.
#[derive(Clone, Debug, Serialize)]
pub enum DirectionLocus {
    /// σ ≡ 0: every slice is an M-sphere.
    Spherical,
    /// No real roots.
    Complex,
    /// A slice collapses to a point.
    Point(ProjParam<f64>),
    /// Real roots; lists the number of traced components.
    Curves(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularLocus {
    pub components: Vec<SingularComponent>,
    pub directions: [DirectionLocus; 3],
}

impl SingularLocus {
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.components.iter().flat_map(|c| c.points())
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Directions that contribute at least one curve.
    pub fn nonempty_directions(&self) -> usize {
        Direction::ALL.iter().filter(|d| self.components.iter().any(|c| c.direction == **d)).count()
    }
}

/// Grid resolution used for tracing.
pub const TRACE_CELLS: usize = 96;

fn params_at(dir: Direction, root: ProjParam<f64>, a: f64, b: f64) -> [ProjParam<f64>; 3] {
    let mut p = [root; 3];
    let [e0, e1] = dir.others();
    p[e0.index()] = ProjParam::from_angle(a);
    p[e1.index()] = ProjParam::from_angle(b);
    p
}

/// Homogeneous derivative along the tangent of the projective point in `dir`.
fn tangent_derivative(cube: &Cube, dir: Direction, p: [ProjParam<f64>; 3]) -> (Quat, Quat) {
    let x = p[dir.index()];
    let mut q = p;
    q[dir.index()] = ProjParam::new(x.den, -x.num);
    cube.homogeneous(q)
}

/// Normalized Study determinant of the columns `(U, W)` and `(∂U, ∂W)`; zero exactly when
/// `∂F = 0`. `None` at base points.
pub fn fold_measure(cube: &Cube, dir: Direction, p: [ProjParam<f64>; 3]) -> Option<f64> {
    let (u, w) = cube.homogeneous(p);
    let (du, dw) = tangent_derivative(cube, dir, p);
    let t1 = u.norm_sqr() * dw.norm_sqr();
    let t2 = du.norm_sqr() * w.norm_sqr();
    let den = t1 + t2;
    let scale = (u.norm_sqr() + w.norm_sqr()) * (du.norm_sqr() + dw.norm_sqr());
    if den <= 1e-24 * scale || scale == 0.0 {
        return None;
    }
    let cross = (dw.conj() * w * u.conj() * du).re();
    Some(((t1 + t2 - 2.0 * cross) / den).max(0.0))
}

/// `|W|⁶ ∂F·∇f`, with `f` the carrier; changes sign across the fold.
fn fold_function(cube: &Cube, dir: Direction, p: [ProjParam<f64>; 3], carrier: &MSphere) -> f64 {
    let (u, w) = cube.homogeneous(p);
    let (du, dw) = tangent_derivative(cube, dir, p);
    let w2 = w.norm_sqr();
    let uw = u * w.conj();
    let df = (du.scale(w2) - uw * dw) * w.conj();
    let uwv = uw.vec3();
    let n = [0, 1, 2].map(|i| 2.0 * carrier.a * uwv[i] + carrier.b[i] * w2);
    let dv = df.vec3();
    dv[0] * n[0] + dv[1] * n[1] + dv[2] * n[2]
}

/// Sample points of the slice on a regular angle grid.
pub fn slice_samples(cube: &Cube, dir: Direction, root: ProjParam<f64>, n: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = (i as f64 + 0.37) * PI / n as f64;
            let b = (j as f64 + 0.61) * PI / n as f64;
            if let Ok(p) = cube.eval_at(params_at(dir, root, a, b)) {
                out.push(p);
            }
        }
    }
    out
}

/// The slice is a single point (all samples within `tol` chordally).
pub fn slice_is_point(cube: &Cube, dir: Direction, root: ProjParam<f64>, tol: f64) -> bool {
    let pts = slice_samples(cube, dir, root, 7);
    match pts.first() {
        None => true,
        Some(p0) => pts.iter().all(|p| p.chordal_distance(p0) <= tol),
    }
}

fn carrier(cube: &Cube, dir: Direction, root: ProjParam<f64>) -> Option<MSphere> {
    MSphere::fit(&slice_samples(cube, dir, root, 9), 1e-8, 1e-6)
}

fn trace_slice(cube: &Cube, dir: Direction, root: ProjParam<f64>, carrier: &MSphere) -> Vec<SingularBranch> {
    let f = |a: f64, b: f64| fold_function(cube, dir, params_at(dir, root, a, b), carrier);
    // Offset so that special parameter values (0, 1, ∞) are not grid nodes.
    let off = 0.0123;
    let grid = Grid { x0: off, x1: off + PI, nx: TRACE_CELLS, y0: off, y1: off + PI, ny: TRACE_CELLS, periodic: true };
    let keep = |q: [f64; 2]| fold_measure(cube, dir, params_at(dir, root, q[0], q[1])).is_some_and(|m| m <= 1e-8);
    trace(&f, &grid, keep)
        .into_iter()
        .map(|pl| {
            let points = pl
                .points
                .iter()
                .map(|q| cube.eval_at(params_at(dir, root, q[0], q[1])).unwrap_or(Point::Infinity))
                .collect();
            SingularBranch { direction: dir, root, angles: pl.points, points, closed: pl.closed }
        })
        .collect()
}

fn fit_curve(frame: &PlaneFrame, comps: &[SingularBranch]) -> Option<PlaneCurve> {
    let pts: Vec<[f64; 2]> =
        comps.iter().flat_map(|b| b.points.iter()).filter_map(|p| p.vec3()).map(|v| frame.to_plane(v)).collect();
    PlaneCurve::fit(&pts)
}

/// Largest chordal distance from a point of `a` to the nearest point of `b`.
fn one_sided(a: &[&Point], b: &[&Point]) -> f64 {
    a.iter().map(|p| b.iter().map(|q| p.chordal_distance(q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

/// Extracts the singular locus. `tol` controls the identically-zero test of σ.
pub fn singular_locus(cube: &Cube, tol: &Tol) -> Result<SingularLocus> {
    if cube.is_degenerate() {
        return Err(Error::DegenerateCube("Jacobian vanishes identically".into()));
    }
    let sp = cube.spherical_polys();
    let mut components: Vec<SingularComponent> = Vec::new();
    let mut directions = [DirectionLocus::Complex, DirectionLocus::Complex, DirectionLocus::Complex];
    for dir in Direction::ALL {
        let roots = match sp.roots(dir, tol) {
            RootSet::Identically => {
                directions[dir.index()] = DirectionLocus::Spherical;
                continue;
            }
            RootSet::Complex => continue,
            r => r.real_roots(),
        };
        let mut point = None;
        let mut found: Vec<SingularComponent> = Vec::new();
        for root in roots {
            if slice_is_point(cube, dir, root, 1e-7) {
                point = Some(root);
                continue;
            }
            let Some(car) = carrier(cube, dir, root) else { continue };
            let branches = trace_slice(cube, dir, root, &car);
            if branches.is_empty() {
                continue;
            }
            match found.iter_mut().find(|c| c.carrier.same_as(&car, 1e-6)) {
                Some(c) => {
                    let old: Vec<&Point> = c.points().collect();
                    let new: Vec<&Point> = branches.iter().flat_map(|b| b.points.iter()).collect();
                    if one_sided(&new, &old) < 1e-3 && one_sided(&old, &new) < 1e-3 {
                        c.multiplicity += 1;
                    }
                    c.branches.extend(branches);
                }
                None => found.push(SingularComponent {
                    direction: dir,
                    carrier: car,
                    frame: PlaneFrame::from_plane(&car),
                    curve: None,
                    branches,
                    multiplicity: 1,
                }),
            }
        }
        for c in &mut found {
            if let Some(frame) = &c.frame {
                c.curve = fit_curve(frame, &c.branches);
            }
        }
        directions[dir.index()] = match point {
            Some(p) if found.is_empty() => DirectionLocus::Point(p),
            _ if found.is_empty() => DirectionLocus::Curves(0),
            _ => DirectionLocus::Curves(found.len()),
        };
        components.extend(found);
    }
    Ok(SingularLocus { components, directions })
}
