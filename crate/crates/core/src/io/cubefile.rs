//! CubeFile: a TOML document holding the eight homogeneous control points.
//!
//! ```toml
//! schema = 1
//! family = "A"            # optional
//! params = [1.0, 2.0, 3.0] # optional
//! # p0..p7 with flat index i + 2j + 4k; each row is u.r u.x u.y u.z w.r w.x w.y w.z
//! points = [
//!   [0.0000000000000000e0, ...],
//! ]
//! ```
//! Reals are written with 17 significant digits, so binary64 values survive a round trip.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::{Cube, Hp, Patch, Quat, Tol};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct CubeFile {
    pub cube: Cube,
    pub family: Option<String>,
    pub params: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    schema: u32,
    family: Option<String>,
    params: Option<Vec<f64>>,
    points: Vec<Vec<f64>>,
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_raw(text: &str) -> Result<Raw> {
    let raw: Raw = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema version {}", raw.schema)));
    }
    Ok(raw)
}

fn pairs<const N: usize>(rows: &[Vec<f64>]) -> Result<[(Quat, Quat); N]> {
    if rows.len() != N {
        return Err(Error::Parse(format!("expected {N} control points, found {}", rows.len())));
    }
    let mut pairs = [(Quat::zero(), Quat::zero()); N];
    for (n, row) in rows.iter().enumerate() {
        if row.len() != 8 {
            return Err(Error::Parse(format!("control point {n} has {} reals, expected 8", row.len())));
        }
        pairs[n] = (Quat::new(row[0], row[1], row[2], row[3]), Quat::new(row[4], row[5], row[6], row[7]));
    }
    Ok(pairs)
}

fn write_points(s: &mut String, net: &[Hp]) -> Result<()> {
    let last = net.len() - 1;
    let index = if net.len() == 8 { "i + 2j + 4k" } else { "i + 2j" };
    writeln!(s, "# p0..p{last}, flat index {index}; u.r u.x u.y u.z w.r w.x w.y w.z").unwrap();
    writeln!(s, "points = [").unwrap();
    for hp in net {
        let vals: Vec<f64> = hp.u.to_array().into_iter().chain(hp.w.to_array()).collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite control point".into()));
        }
        let row: Vec<String> = vals.iter().map(|v| real(*v)).collect();
        writeln!(s, "  [{}],", row.join(", ")).unwrap();
    }
    writeln!(s, "]").unwrap();
    Ok(())
}

impl CubeFile {
    pub fn new(cube: Cube) -> Self {
        Self { cube, family: None, params: Vec::new() }
    }

    pub fn with_family(cube: Cube, family: &str, params: &[f64]) -> Self {
        Self { cube, family: Some(family.to_string()), params: params.to_vec() }
    }

    pub fn to_toml(&self) -> Result<String> {
        let mut s = String::new();
        writeln!(s, "schema = {SCHEMA_VERSION}").unwrap();
        if let Some(f) = &self.family {
            if f.chars().any(|c| c == '"' || c == '\\' || c.is_control()) {
                return Err(Error::InvalidParameter(format!("family label `{f}` cannot be stored")));
            }
            writeln!(s, "family = \"{f}\"").unwrap();
        }
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|v| real(*v)).collect();
            writeln!(s, "params = [{}]", p.join(", ")).unwrap();
        }
        if self.params.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite parameter".into()));
        }
        write_points(&mut s, &self.cube.net)?;
        Ok(s)
    }

    /// Parses without checking the geometric invariants.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = parse_raw(text)?;
        let pairs = pairs::<8>(&raw.points)?;
        Ok(Self { cube: Cube::from_pairs(pairs), family: raw.family, params: raw.params.unwrap_or_default() })
    }

    /// Parses and validates the Study-quadric and cosphericality invariants.
    pub fn parse_validated(text: &str, tol: &Tol) -> Result<Self> {
        let f = Self::parse(text)?;
        f.cube.check_invariants(tol)?;
        Ok(f)
    }
}

pub fn save_cube(path: &Path, file: &CubeFile) -> Result<()> {
    std::fs::write(path, file.to_toml()?)?;
    Ok(())
}

pub fn load_cube(path: &Path, tol: &Tol) -> Result<CubeFile> {
    let text = std::fs::read_to_string(path)?;
    CubeFile::parse_validated(&text, tol)
}

/// Same layout as a CubeFile with four points (flat index `i + 2j`); used for faces.
pub fn patch_to_toml(patch: &Patch) -> Result<String> {
    let mut s = format!("schema = {SCHEMA_VERSION}\n");
    write_points(&mut s, &patch.net)?;
    Ok(s)
}

pub fn parse_patch(text: &str) -> Result<Patch> {
    let raw = parse_raw(text)?;
    Ok(Patch::from_pairs(pairs::<4>(&raw.points)?))
}

pub fn load_patch(path: &Path) -> Result<Patch> {
    parse_patch(&std::fs::read_to_string(path)?)
}
