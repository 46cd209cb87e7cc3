//! Quad meshes of coordinate surfaces, written as Wavefront OBJ.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qb::{Direction, ProjParam};
use crate::Cube;

/// Parameter window of a mesh.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MeshDomain {
    /// The patch `[0, 1]²`.
    Patch,
    /// All of `(ℝP¹)²`, sampled in angle coordinates; closes up periodically.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct MeshOptions {
    pub resolution: usize,
    pub domain: MeshDomain,
    /// Clipping radius around the centroid of the finite control points; `None` uses ten
    /// times the control-net diameter.
    pub clip_radius: Option<f64>,
}

impl Default for MeshOptions {
    fn default() -> Self {
        Self { resolution: 32, domain: MeshDomain::Full, clip_radius: None }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Quads as vertex indices (0-based).
    pub faces: Vec<[usize; 4]>,
    /// Edges along which faces were dropped by clipping.
    pub clipped_edges: Vec<[usize; 2]>,
}

/// Centroid and diameter of the finite control points.
pub fn control_net_bounds(cube: &Cube) -> ([f64; 3], f64) {
    let pts: Vec<[f64; 3]> =
        cube.control_points().map(|p| p.iter().filter_map(|q| q.vec3()).collect()).unwrap_or_default();
    if pts.is_empty() {
        return ([0.0; 3], 1.0);
    }
    let c = [0, 1, 2].map(|i| pts.iter().map(|p| p[i]).sum::<f64>() / pts.len() as f64);
    let mut d = 0.0f64;
    for a in &pts {
        for b in &pts {
            d = d.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt());
        }
    }
    (c, if d > 1e-12 { d } else { 1.0 })
}

/// Samples the coordinate surface `dir = value` on a uniform parameter grid.
pub fn export_surface_mesh(cube: &Cube, dir: Direction, value: ProjParam<f64>, opts: &MeshOptions) -> Result<Mesh> {
    let n = opts.resolution.max(1);
    let patch = cube.slice(dir, value);
    let (center, diam) = control_net_bounds(cube);
    let radius = opts.clip_radius.unwrap_or(10.0 * diam);
    let (count, param): (usize, Box<dyn Fn(usize) -> ProjParam<f64>>) = match opts.domain {
        MeshDomain::Patch => (n + 1, Box::new(move |i| ProjParam::affine(i as f64 / n as f64))),
        MeshDomain::Full => (n, Box::new(move |i| ProjParam::from_angle((i as f64 + 0.5) * PI / n as f64))),
    };
    let mut index = vec![None; count * count];
    let mut mesh = Mesh::default();
    let mut first: Option<[f64; 3]> = None;
    let mut spread = 0.0f64;
    for j in 0..count {
        for i in 0..count {
            let Ok(p) = patch.eval(param(i), param(j)) else { continue };
            let Some(v) = p.vec3() else { continue };
            let d = ((v[0] - center[0]).powi(2) + (v[1] - center[1]).powi(2) + (v[2] - center[2]).powi(2)).sqrt();
            if !(d <= radius) {
                continue;
            }
            let f = *first.get_or_insert(v);
            spread = spread.max((v[0] - f[0]).abs().max((v[1] - f[1]).abs()).max((v[2] - f[2]).abs()));
            index[i + count * j] = Some(mesh.vertices.len());
            mesh.vertices.push(v);
        }
    }
    if mesh.vertices.is_empty() || spread <= 1e-9 * diam {
        return Err(Error::DegenerateSlice);
    }
    let at = |i: usize, j: usize| index[(i % count) + count * (j % count)];
    for j in 0..n {
        for i in 0..n {
            let q = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            match q {
                [Some(a), Some(b), Some(c), Some(d)] => mesh.faces.push([a, b, c, d]),
                _ => {
                    for k in 0..4 {
                        if let (Some(a), Some(b)) = (q[k], q[(k + 1) % 4]) {
                            mesh.clipped_edges.push([a.min(b), a.max(b)]);
                        }
                    }
                }
            }
        }
    }
    mesh.clipped_edges.sort_unstable();
    mesh.clipped_edges.dedup();
    Ok(mesh)
}

impl Mesh {
    /// OBJ text: `v` records, `f` quads (1-based), and the clipped boundary as `l` records
    /// in group `clipped`.
    pub fn write_obj<W: Write>(&self, w: &mut W, header: &str) -> std::io::Result<()> {
        for line in header.lines() {
            writeln!(w, "# {line}")?;
        }
        for v in &self.vertices {
            writeln!(w, "v {:.12e} {:.12e} {:.12e}", v[0], v[1], v[2])?;
        }
        for f in &self.faces {
            writeln!(w, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
        }
        if !self.clipped_edges.is_empty() {
            writeln!(w, "g clipped")?;
            for e in &self.clipped_edges {
                writeln!(w, "l {} {}", e[0] + 1, e[1] + 1)?;
            }
        }
        Ok(())
    }
}
