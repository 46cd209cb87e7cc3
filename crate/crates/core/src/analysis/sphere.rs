//! M-spheres `A|x|² + b·x + C = 0` (planes when `A = 0`).

use serde::Serialize;

use super::linalg::null_fit;
use crate::Point;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MSphere {
    pub a: f64,
    pub b: [f64; 3],
    pub c: f64,
}

impl MSphere {
    pub fn new(a: f64, b: [f64; 3], c: f64) -> Self {
        Self { a, b, c }
    }

    /// Least-squares M-sphere through the points; `None` unless exactly one relation fits
    /// within `rel` (smallest singular value) while the next stays above `gap`.
    pub fn fit(points: &[Point], rel: f64, gap: f64) -> Option<Self> {
        let rows = sphere_rows(points);
        if rows.len() < 5 {
            return None;
        }
        let f = null_fit(&rows, 5);
        if f.ratio > rel || f.gap < gap {
            return None;
        }
        let v = f.vector;
        Some(Self::new(v[0], [v[1], v[2], v[3]], v[4]).normalized())
    }

    /// Scaled to unit discriminant norm `|b|² − 4AC = 1` when positive, with a sign
    /// convention making the first nonzero of `(A, b)` positive.
    pub fn normalized(&self) -> Self {
        let q = self.discriminant();
        let s = if q > 0.0 { 1.0 / q.sqrt() } else { 1.0 / self.norm().max(f64::MIN_POSITIVE) };
        let lead = [self.a, self.b[0], self.b[1], self.b[2], self.c]
            .into_iter()
            .find(|v| v.abs() > 1e-12 * self.norm())
            .unwrap_or(1.0);
        let s = if lead < 0.0 { -s } else { s };
        Self::new(self.a * s, self.b.map(|v| v * s), self.c * s)
    }

    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b.iter().map(|v| v * v).sum::<f64>() + self.c * self.c).sqrt()
    }

    /// `|b|² − 4AC`; positive for real spheres.
    pub fn discriminant(&self) -> f64 {
        self.b.iter().map(|v| v * v).sum::<f64>() - 4.0 * self.a * self.c
    }

    pub fn is_plane(&self) -> bool {
        self.a.abs() <= 1e-9 * self.discriminant().abs().sqrt()
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        self.a * r2 + self.b[0] * p[0] + self.b[1] * p[1] + self.b[2] * p[2] + self.c
    }

    /// Residual relative to the size of the terms.
    pub fn relative_residual(&self, p: [f64; 3]) -> f64 {
        let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        let bn = self.b.iter().map(|v| v * v).sum::<f64>().sqrt();
        let scale = self.a.abs() * r2 + bn * r2.sqrt() + self.c.abs();
        self.eval(p).abs() / scale.max(f64::MIN_POSITIVE)
    }

    /// Gradient `2A x + b`.
    pub fn normal(&self, p: [f64; 3]) -> [f64; 3] {
        [2.0 * self.a * p[0] + self.b[0], 2.0 * self.a * p[1] + self.b[1], 2.0 * self.a * p[2] + self.b[2]]
    }

    /// Cosine of the intersection angle; `|·| < 1` intersecting, `= 1` tangent, `> 1` disjoint.
    pub fn inversive_product(&self, o: &Self) -> f64 {
        let dot = self.b[0] * o.b[0] + self.b[1] * o.b[1] + self.b[2] * o.b[2];
        (dot - 2.0 * (self.a * o.c + o.a * self.c)) / (self.discriminant() * o.discriminant()).sqrt()
    }

    /// Same M-sphere up to scale.
    pub fn same_as(&self, o: &Self, tol: f64) -> bool {
        let a = self.normalized();
        let b = o.normalized();
        let d = |x: &MSphere, y: &MSphere, s: f64| {
            let mut m = (x.a - s * y.a).abs().max((x.c - s * y.c).abs());
            for i in 0..3 {
                m = m.max((x.b[i] - s * y.b[i]).abs());
            }
            m
        };
        d(&a, &b, 1.0).min(d(&a, &b, -1.0)) <= tol
    }

    pub fn describe(&self) -> String {
        if self.is_plane() {
            let n = self.b;
            format!("plane {:.6}x {:+.6}y {:+.6}z {:+.6} = 0", n[0], n[1], n[2], self.c)
        } else {
            let c = self.b.map(|v| -v / (2.0 * self.a));
            let r2 = self.discriminant() / (4.0 * self.a * self.a);
            format!("sphere center ({:.6}, {:.6}, {:.6}) radius^2 {:.6}", c[0], c[1], c[2], r2)
        }
    }
}

pub(crate) fn sphere_rows(points: &[Point]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| match p.vec3() {
            None => vec![1.0, 0.0, 0.0, 0.0, 0.0],
            Some(v) => {
                let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
                if r2 > 1e12 || !r2.is_finite() {
                    vec![1.0, 0.0, 0.0, 0.0, 0.0]
                } else {
                    vec![r2, v[0], v[1], v[2], 1.0]
                }
            }
        })
        .collect()
}
