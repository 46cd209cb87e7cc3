//! Singular curves as plain-text polylines with per-curve metadata.
//!
//! ```text
//! # dccube singular curves
//! curve 0
//! direction s
//! carrier plane ...
//! type hyperbola
//! coefficients <c...>
//! polyline open 57
//! x y z
//! ...
//! end
//! ```
//! A curve may hold several polylines; coordinates are in space.

use std::io::Write;

use serde::Serialize;

use crate::analysis::contour::{trace, Grid};
use crate::analysis::{PlaneCurve, SingularComponent, SingularLocus};

#[derive(Clone, Debug, Serialize)]
pub struct CurveExport {
    pub direction: String,
    pub carrier: String,
    pub kind: String,
    pub coefficients: Vec<f64>,
    pub polylines: Vec<(bool, Vec<[f64; 3]>)>,
}

fn coefficients(c: &PlaneCurve) -> Vec<f64> {
    match c {
        PlaneCurve::Line(v) => v.to_vec(),
        PlaneCurve::Conic(c) => c.c.to_vec(),
        PlaneCurve::Quartic(q) => q.coeffs().to_vec(),
    }
}

/// Parameter-space branches mapped to space, split at ∞ and beyond `radius`.
fn branch_polylines(c: &SingularComponent, radius: f64) -> Vec<(bool, Vec<[f64; 3]>)> {
    let mut out = Vec::new();
    for b in &c.branches {
        let mut cur: Vec<[f64; 3]> = Vec::new();
        let mut split = false;
        for p in &b.points {
            match p.vec3().filter(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt() <= radius) {
                Some(v) => cur.push(v),
                None => {
                    split = true;
                    if cur.len() > 1 {
                        out.push((false, std::mem::take(&mut cur)));
                    }
                    cur.clear();
                }
            }
        }
        if cur.len() > 1 {
            out.push((b.closed && !split, cur));
        }
    }
    out
}

/// Curves of the locus; fitted plane curves are retraced by marching squares on their
/// carrier plane over the window of the sampled points, with `resolution` cells per side;
/// otherwise the traced parameter branches are used.
pub fn export_singular_curves(locus: &SingularLocus, resolution: usize, radius: f64) -> Vec<CurveExport> {
    let mut out = Vec::new();
    for c in &locus.components {
        let kind = c.curve.as_ref().map_or_else(|| "unfitted".to_string(), |k| k.describe());
        let coeffs = c.curve.as_ref().map(coefficients).unwrap_or_default();
        let traced = match (&c.frame, &c.curve) {
            (Some(frame), Some(curve)) => {
                let pts: Vec<[f64; 2]> = c
                    .points()
                    .filter_map(|p| p.vec3())
                    .filter(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt() <= radius)
                    .map(|v| frame.to_plane(v))
                    .collect();
                if pts.is_empty() {
                    Vec::new()
                } else {
                    let lo = [0, 1].map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min));
                    let hi = [0, 1].map(|i| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max));
                    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-6);
                    let n = resolution.max(4);
                    let grid = Grid {
                        x0: lo[0] - pad,
                        x1: hi[0] + pad * 1.01,
                        nx: n,
                        y0: lo[1] - pad * 0.99,
                        y1: hi[1] + pad,
                        ny: n,
                        periodic: false,
                    };
                    let f = |x: f64, y: f64| curve.eval(x, y);
                    trace(&f, &grid, |_| true)
                        .into_iter()
                        .map(|pl| (pl.closed, pl.points.iter().map(|q| frame.to_space(*q)).collect()))
                        .collect()
                }
            }
            _ => Vec::new(),
        };
        // Double curves have no sign change to trace.
        let polylines = if traced.is_empty() { branch_polylines(c, radius) } else { traced };
        out.push(CurveExport {
            direction: c.direction.name().to_string(),
            carrier: c.carrier.describe(),
            kind,
            coefficients: coeffs,
            polylines,
        });
    }
    out
}

pub fn write_polylines<W: Write>(w: &mut W, curves: &[CurveExport]) -> std::io::Result<()> {
    writeln!(w, "# dccube singular curves")?;
    for (n, c) in curves.iter().enumerate() {
        writeln!(w, "curve {n}")?;
        writeln!(w, "direction {}", c.direction)?;
        writeln!(w, "carrier {}", c.carrier)?;
        writeln!(w, "type {}", c.kind)?;
        let co: Vec<String> = c.coefficients.iter().map(|v| format!("{v:.12e}")).collect();
        writeln!(w, "coefficients {}", co.join(" "))?;
        for (closed, pts) in &c.polylines {
            writeln!(w, "polyline {} {}", if *closed { "closed" } else { "open" }, pts.len())?;
            for p in pts {
                writeln!(w, "{:.12e} {:.12e} {:.12e}", p[0], p[1], p[2])?;
            }
        }
        writeln!(w, "end")?;
    }
    Ok(())
}
