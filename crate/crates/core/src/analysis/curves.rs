//! Plane curves carried by the singular locus: lines, conics and bicircular quartics
//! `λ(x²+y²)² + L(x,y)(x²+y²) + Q(x,y) = 0`.

use serde::Serialize;

use super::contour::{trace, Grid};
use super::linalg::null_fit;
use super::sphere::MSphere;
use crate::error::{Error, Result};
use crate::Point;

/// Orthonormal frame of a plane. Coordinate planes use their natural axes:
/// `z = c` ↦ `(x, y)`, `y = c` ↦ `(x, z)`, `x = c` ↦ `(y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaneFrame {
    pub origin: [f64; 3],
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub normal: [f64; 3],
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl PlaneFrame {
    /// Frame of a plane `b·x + c = 0`; `None` for a proper sphere.
    pub fn from_plane(s: &MSphere) -> Option<Self> {
        if !s.is_plane() {
            return None;
        }
        let nb = dot(s.b, s.b).sqrt();
        let n = s.b.map(|v| v / nb);
        let origin = n.map(|v| -v * s.c / nb);
        let axis = (0..3).find(|&i| n[i].abs() > 1.0 - 1e-9);
        let unit = |i: usize| {
            let mut e = [0.0; 3];
            e[i] = 1.0;
            e
        };
        let (e1, e2) = match axis {
            Some(2) => (unit(0), unit(1)),
            Some(1) => (unit(0), unit(2)),
            Some(0) => (unit(1), unit(2)),
            _ => {
                let a = if n[0].abs() < 0.9 { unit(0) } else { unit(1) };
                let d = dot(a, n);
                let e1 = [a[0] - d * n[0], a[1] - d * n[1], a[2] - d * n[2]];
                let l = dot(e1, e1).sqrt();
                let e1 = e1.map(|v| v / l);
                let e2 = [n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]];
                (e1, e2)
            }
        };
        let origin = match axis {
            Some(i) => {
                let mut o = [0.0; 3];
                o[i] = origin[i];
                o
            }
            None => origin,
        };
        Some(Self { origin, e1, e2, normal: n })
    }

    pub fn to_plane(&self, p: [f64; 3]) -> [f64; 2] {
        let d = [p[0] - self.origin[0], p[1] - self.origin[1], p[2] - self.origin[2]];
        [dot(d, self.e1), dot(d, self.e2)]
    }

    pub fn to_space(&self, q: [f64; 2]) -> [f64; 3] {
        let mut p = self.origin;
        for i in 0..3 {
            p[i] += q[0] * self.e1[i] + q[1] * self.e2[i];
        }
        p
    }

    /// Distance of `p` from the plane.
    pub fn offset(&self, p: [f64; 3]) -> f64 {
        let d = [p[0] - self.origin[0], p[1] - self.origin[1], p[2] - self.origin[2]];
        dot(d, self.normal)
    }
}

/// `λ r⁴ + (l₀ x + l₁ y) r² + q₀x² + q₁xy + q₂y² + q₃x + q₄y + q₅`, with `r² = x² + y²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BicircularQuartic {
    pub lambda: f64,
    pub l: [f64; 2],
    pub q: [f64; 6],
}

impl BicircularQuartic {
    pub fn from_coeffs(v: &[f64]) -> Self {
        Self { lambda: v[0], l: [v[1], v[2]], q: [v[3], v[4], v[5], v[6], v[7], v[8]] }
    }

    pub fn coeffs(&self) -> [f64; 9] {
        let q = self.q;
        [self.lambda, self.l[0], self.l[1], q[0], q[1], q[2], q[3], q[4], q[5]]
    }

    /// `(x²+y²)² − 2K x² + 2M y² + δ`.
    pub fn symmetric(k: f64, m: f64, delta: f64) -> Self {
        Self { lambda: 1.0, l: [0.0; 2], q: [-2.0 * k, 0.0, 2.0 * m, 0.0, 0.0, delta] }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let r2 = x * x + y * y;
        let q = self.q;
        self.lambda * r2 * r2
            + (self.l[0] * x + self.l[1] * y) * r2
            + q[0] * x * x
            + q[1] * x * y
            + q[2] * y * y
            + q[3] * x
            + q[4] * y
            + q[5]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Scaled so that the largest coefficient in magnitude is `+1`.
    pub fn normalized(&self) -> Self {
        let c = self.coeffs();
        let big = c.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if big == 0.0 {
            return *self;
        }
        Self::from_coeffs(&c.map(|v| v / big))
    }

    pub fn distance_up_to_scale(&self, o: &Self) -> f64 {
        let a = self.normalized().coeffs();
        let b = o.normalized().coeffs();
        a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    }

    /// Number of connected real components, counted as closed contours on a grid of `n²`
    /// cells over a box containing the curve. Needs `λ ≠ 0`.
    pub fn component_count(&self, n: usize) -> Option<usize> {
        if self.lambda.abs() <= 1e-12 * self.max_abs() {
            return None;
        }
        let c = self.coeffs().map(|v| v / self.lambda);
        let bound = 1.0 + c[1..].iter().fold(0.0f64, |m, v| m.max(v.abs())) * 3.0;
        let r = bound.sqrt().max(bound.min(4.0)) * 1.1;
        let f = |x: f64, y: f64| self.eval(x, y);
        // Slight offset so that symmetry axes do not coincide with grid lines.
        let grid = Grid { x0: -r - 1e-3, x1: r, nx: n, y0: -r - 2e-3, y1: r, ny: n, periodic: false };
        Some(trace(&f, &grid, |_| true).iter().filter(|p| p.closed).count())
    }
}

/// `c₀x² + c₁xy + c₂y² + c₃x + c₄y + c₅`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Conic {
    pub c: [f64; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
    LinePair,
    ParallelLines,
    Point,
    Empty,
}

impl Conic {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let c = self.c;
        c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5]
    }

    pub fn kind(&self) -> ConicKind {
        let s = self.c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let [a, b, c, d, e, f] = self.c.map(|v| v / s);
        let (b, d, e) = (b / 2.0, d / 2.0, e / 2.0);
        let det = a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d);
        let disc = b * b - a * c;
        let eps = 1e-9;
        if det.abs() <= eps {
            return if disc > eps {
                ConicKind::LinePair
            } else if disc < -eps {
                ConicKind::Point
            } else {
                ConicKind::ParallelLines
            };
        }
        if disc.abs() <= eps {
            ConicKind::Parabola
        } else if disc > 0.0 {
            ConicKind::Hyperbola
        } else if (a + c) * det > 0.0 {
            ConicKind::Empty
        } else {
            ConicKind::Ellipse
        }
    }
}

/// Fitted curve in plane coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PlaneCurve {
    /// `c₀x + c₁y + c₂ = 0`.
    Line([f64; 3]),
    Conic(Conic),
    Quartic(BicircularQuartic),
}

impl PlaneCurve {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            PlaneCurve::Line(c) => c[0] * x + c[1] * y + c[2],
            PlaneCurve::Conic(c) => c.eval(x, y),
            PlaneCurve::Quartic(q) => q.eval(x, y),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PlaneCurve::Line(_) => "line".into(),
            PlaneCurve::Conic(c) => match c.kind() {
                ConicKind::Ellipse => "ellipse".into(),
                ConicKind::Hyperbola => "hyperbola".into(),
                ConicKind::Parabola => "parabola".into(),
                ConicKind::LinePair => "two intersecting lines".into(),
                ConicKind::ParallelLines => "parallel lines".into(),
                ConicKind::Point => "point".into(),
                ConicKind::Empty => "empty conic".into(),
            },
            PlaneCurve::Quartic(q) => match bq_canonicalize(q) {
                Ok(BqForm::Symmetric { delta, .. }) if delta < 0.0 => "1-oval bicircular quartic".into(),
                Ok(BqForm::Symmetric { .. }) => "2-oval bicircular quartic".into(),
                Ok(BqForm::CircularCubic) => "circular cubic".into(),
                Ok(BqForm::Conic) => "conic".into(),
                Err(_) => match q.component_count(400) {
                    Some(1) => "1-oval bicircular quartic".into(),
                    Some(2) => "2-oval bicircular quartic".into(),
                    _ => "bicircular quartic".into(),
                },
            },
        }
    }

    /// Lowest-degree model (line, conic, bicircular quartic) through the points.
    pub fn fit(points: &[[f64; 2]]) -> Option<Self> {
        let pts: Vec<[f64; 2]> = points.iter().copied().filter(|p| p[0].hypot(p[1]) < 1e4).collect();
        if pts.len() < 12 {
            return None;
        }
        let accept = |rows: Vec<Vec<f64>>, n: usize| {
            let f = null_fit(&rows, n);
            (f.ratio < 1e-8 && f.gap > 1e-6).then_some(f.vector)
        };
        let line: Vec<Vec<f64>> = pts.iter().map(|p| vec![p[0], p[1], 1.0]).collect();
        if let Some(v) = accept(line, 3) {
            return Some(PlaneCurve::Line(normalize3(&v)));
        }
        let conic: Vec<Vec<f64>> = pts.iter().map(|&[x, y]| vec![x * x, x * y, y * y, x, y, 1.0]).collect();
        if let Some(v) = accept(conic, 6) {
            let mut c = [0.0; 6];
            c.copy_from_slice(&normalize(&v));
            return Some(PlaneCurve::Conic(Conic { c }));
        }
        let quartic: Vec<Vec<f64>> = pts
            .iter()
            .map(|&[x, y]| {
                let r2 = x * x + y * y;
                vec![r2 * r2, x * r2, y * r2, x * x, x * y, y * y, x, y, 1.0]
            })
            .collect();
        accept(quartic, 9).map(|v| PlaneCurve::Quartic(BicircularQuartic::from_coeffs(&normalize(&v)).normalized()))
    }
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let big = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    v.iter().map(|x| x / big).collect()
}

fn normalize3(v: &[f64]) -> [f64; 3] {
    let n = normalize(v);
    [n[0], n[1], n[2]]
}

/// Outcome of reducing a bicircular quartic to `(x²+y²)² − 2Kx² + 2My² + δ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum BqForm {
    Symmetric {
        k: f64,
        m: f64,
        delta: f64,
    },
    /// `λ = 0`.
    CircularCubic,
    /// `λ = L = 0`.
    Conic,
}

/// Symmetric-form coefficients after scaling the coordinates so that `|constant| = 1`.
pub fn bq_canonicalize(b: &BicircularQuartic) -> Result<BqForm> {
    let s = b.max_abs();
    if s == 0.0 {
        return Err(Error::InvalidParameter("zero polynomial".into()));
    }
    let small = |v: f64| v.abs() <= 1e-9 * s;
    if small(b.lambda) {
        return Ok(if small(b.l[0]) && small(b.l[1]) { BqForm::Conic } else { BqForm::CircularCubic });
    }
    if !(small(b.l[0]) && small(b.l[1]) && small(b.q[1]) && small(b.q[3]) && small(b.q[4])) {
        return Err(Error::NotSymmetricForm);
    }
    let lam = b.lambda;
    let q0 = b.q[5] / lam;
    if q0.abs() <= 1e-9 * s / lam.abs() {
        return Err(Error::SingularCurve);
    }
    let mu2 = q0.abs().sqrt();
    let delta = q0.signum();
    let k = -b.q[0] / (2.0 * lam * mu2);
    let m = b.q[2] / (2.0 * lam * mu2);
    let near = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + x.abs());
    if (k > 0.0 && near(k * k, delta)) || (m < 0.0 && near(m * m, delta)) {
        return Err(Error::SingularCurve);
    }
    Ok(BqForm::Symmetric { k, m, delta })
}

/// Coefficients of three focal symmetric quartics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FocalTriple {
    pub k: f64,
    pub m: f64,
    pub n: f64,
    pub delta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl FocalTriple {
    /// `KM + MN + NK + δ`.
    pub fn relation(&self) -> f64 {
        self.k * self.m + self.m * self.n + self.n * self.k + self.delta
    }

    /// Curves on `z = 0` in `(x, y)`, `y = 0` in `(x, z)`, `x = 0` in `(y, z)`.
    pub fn curves(&self) -> [BicircularQuartic; 3] {
        [
            BicircularQuartic::symmetric(self.k, self.m, self.delta),
            BicircularQuartic::symmetric(-self.n, -self.m, self.delta),
            BicircularQuartic::symmetric(self.n, self.k, self.delta),
        ]
    }
}

fn check_region(delta: f64, a: f64, c: f64) -> Result<()> {
    let ok = if delta == -1.0 {
        a > 0.0 && c > 0.0 && a * c > 1.0
    } else if delta == 1.0 {
        c < 0.0 && a > c.abs() && c.abs() > 1.0 / a
    } else {
        return Err(Error::OutOfRegion(format!("delta must be +1 or -1, got {delta}")));
    };
    if ok {
        Ok(())
    } else if delta < 0.0 {
        Err(Error::OutOfRegion(format!("need a > 0, c > 0, ac > 1 (a = {a}, c = {c})")))
    } else {
        Err(Error::OutOfRegion(format!("need c < 0, a > |c| > 1/a (a = {a}, c = {c})")))
    }
}

/// `K = −(cδ + 1/c)/2`, `N = −(aδ + 1/a)/2`, `M = −(bδ + 1/b)/2` with
/// `b = −(a + c)/(1 + acδ)` forced by the focal relation.
pub fn focal_params(delta: f64, a: f64, c: f64) -> Result<FocalTriple> {
    check_region(delta, a, c)?;
    let b = -(a + c) / (1.0 + a * c * delta);
    let h = |v: f64| -(v * delta + 1.0 / v) / 2.0;
    Ok(FocalTriple { k: h(c), m: h(b), n: h(a), delta, a, b, c })
}

fn axis_roots(p: f64, delta: f64) -> Vec<f64> {
    // t⁴ + p t² + δ = 0
    let disc = p * p - 4.0 * delta;
    if disc < 0.0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in [(-p + disc.sqrt()) / 2.0, (-p - disc.sqrt()) / 2.0] {
        if s > 0.0 {
            out.push(s.sqrt());
            out.push(-s.sqrt());
        }
    }
    out
}

/// Focal points of the three curves: where each coordinate plane meets the other two curves.
pub fn focal_points(delta: f64, a: f64, c: f64) -> Result<[Vec<Point>; 3]> {
    let f = focal_params(delta, a, c)?;
    let (k, m, n) = (f.k, f.m, f.n);
    let on = |axis: usize, vals: Vec<f64>| -> Vec<Point> {
        vals.into_iter()
            .map(|v| {
                let mut p = [0.0; 3];
                p[axis] = v;
                Point::xyz(p[0], p[1], p[2])
            })
            .collect()
    };
    // Axis traces: curve 1 on x: x⁴ − 2Kx² + δ, on y: y⁴ + 2My² + δ;
    // curve 2 on x: x⁴ + 2Nx² + δ, on z: z⁴ − 2Mz² + δ;
    // curve 3 on y: y⁴ − 2Ny² + δ, on z: z⁴ + 2Kz² + δ.
    let mut phi1 = on(0, axis_roots(2.0 * n, delta));
    phi1.extend(on(1, axis_roots(-2.0 * n, delta)));
    let mut phi2 = on(0, axis_roots(-2.0 * k, delta));
    phi2.extend(on(2, axis_roots(2.0 * k, delta)));
    let mut phi3 = on(1, axis_roots(2.0 * m, delta));
    phi3.extend(on(2, axis_roots(-2.0 * m, delta)));
    Ok([phi1, phi2, phi3])
}
