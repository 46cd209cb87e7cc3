//! Möbius classification by invariants: σ root structure, singular locus and degree.

use serde::Serialize;

use super::degree::{degree, patch_degree, DegreeOptions};
use super::singular::{singular_locus, slice_is_point, slice_samples, SingularLocus};
use super::sphere::MSphere;
use super::{CoarseType, Subtype};
use crate::error::{Error, Result};
use crate::qb::{Direction, ProjParam, QuadPoly, RootSet};
use crate::{Cube, Tol};

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub tol: Tol,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { tol: Tol::default(), seed: 7 }
    }
}

/// σ data of one direction.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub direction: Direction,
    pub sigma: QuadPoly<f64>,
    pub roots: RootSet<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub coarse: CoarseType,
    pub subtype: Subtype,
    pub sigma: Vec<SigmaReport>,
    /// Named invariants that fixed the subtype.
    pub parameters: Vec<(String, f64)>,
    pub singular: Vec<String>,
    pub degree: Option<u32>,
    #[serde(skip)]
    pub locus: Option<SingularLocus>,
}

/// Sample parameters for the spherical slices.
const SPHERE_SLICES: [f64; 2] = [0.1234, 0.618];

fn slice_sphere(cube: &Cube, dir: Direction, x: f64) -> Option<MSphere> {
    MSphere::fit(&slice_samples(cube, dir, ProjParam::affine(x), 9), 1e-8, 1e-6)
}

fn spherical_subtype(cube: &Cube, dir: Direction, seed: u64) -> Result<(Subtype, f64)> {
    let fail = || Error::Unclassifiable(format!("{}-slices are not M-spheres", dir.name()));
    let s1 = slice_sphere(cube, dir, SPHERE_SLICES[0]).ok_or_else(fail)?;
    let s2 = slice_sphere(cube, dir, SPHERE_SLICES[1]).ok_or_else(fail)?;
    let ip = s1.inversive_product(&s2).abs();
    let sub = if (ip - 1.0).abs() <= 1e-6 {
        Subtype::S2
    } else if ip > 1.0 {
        Subtype::S1
    } else {
        match patch_degree(&cube.slice(dir, ProjParam::affine(SPHERE_SLICES[0])), seed)? {
            2 => Subtype::S3,
            1 => Subtype::S4,
            n => return Err(Error::Unclassifiable(format!("spherical slice of degree {n}"))),
        }
    };
    Ok((sub, ip))
}

/// Coarse type and subtype of a DC cube.
pub fn classify(cube: &Cube, opts: &ClassifyOptions) -> Result<Classification> {
    if cube.is_degenerate() {
        return Err(Error::DegenerateCube("Jacobian vanishes identically".into()));
    }
    let sp = cube.spherical_polys();
    let sigma: Vec<SigmaReport> = Direction::ALL
        .iter()
        .map(|&d| SigmaReport { direction: d, sigma: *sp.get(d), roots: sp.roots(d, &opts.tol) })
        .collect();
    let mut parameters = Vec::new();

    let spherical: Vec<Direction> =
        sigma.iter().filter(|s| matches!(s.roots, RootSet::Identically)).map(|s| s.direction).collect();
    if !spherical.is_empty() {
        let mut best = None;
        for d in spherical {
            let (sub, ip) = spherical_subtype(cube, d, opts.seed)?;
            parameters.push((format!("inversive product of {}-slices", d.name()), ip));
            best = Some(best.map_or(sub, |b: Subtype| b.max(sub)));
        }
        let locus = singular_locus(cube, &opts.tol).ok();
        let singular = locus.as_ref().map(|l| l.components.iter().map(|c| c.describe()).collect()).unwrap_or_default();
        let subtype = best.expect("at least one spherical direction");
        return Ok(Classification { coarse: CoarseType::S, subtype, sigma, parameters, singular, degree: None, locus });
    }

    let mut offset = false;
    let mut complex = false;
    for s in &sigma {
        match s.roots {
            RootSet::Double(r) => {
                if slice_is_point(cube, s.direction, r, 1e-6) {
                    offset = true;
                } else {
                    return Err(Error::Unclassifiable(format!(
                        "double root of sigma in the {}-direction without a point slice",
                        s.direction.name()
                    )));
                }
            }
            RootSet::Distinct(a, b) => {
                for r in [a, b] {
                    if slice_is_point(cube, s.direction, r, 1e-6) {
                        offset = true;
                    }
                }
            }
            RootSet::Complex => complex = true,
            RootSet::Identically => unreachable!(),
        }
    }
    let coarse = if offset {
        CoarseType::O
    } else if complex {
        CoarseType::B
    } else {
        CoarseType::A
    };

    let locus = singular_locus(cube, &opts.tol)?;
    let deg = degree(cube, None, Some(&locus), &DegreeOptions { seed: opts.seed, ..DegreeOptions::default() })?.degree;
    let nonempty = locus.nonempty_directions();
    parameters.push(("directions with singular curves".into(), nonempty as f64));
    let unclass = |why: String| Error::Unclassifiable(why);
    let subtype = match coarse {
        CoarseType::O => match deg {
            4 => Subtype::O1,
            3 => Subtype::O2,
            d => return Err(unclass(format!("offset system of degree {d}"))),
        },
        CoarseType::A => match (deg, nonempty) {
            (2, _) => Subtype::A4,
            (3, _) => Subtype::A3,
            (4, 3) => Subtype::A1,
            (4, 2) => Subtype::A2,
            (d, n) => return Err(unclass(format!("type A system of degree {d} with {n} singular directions"))),
        },
        CoarseType::B => Subtype::B,
        CoarseType::S => unreachable!(),
    };
    let singular = locus.components.iter().map(|c| c.describe()).collect();
    Ok(Classification { coarse, subtype, sigma, parameters, singular, degree: Some(deg), locus: Some(locus) })
}
