//! Catalog of the canonical families with their expected classification.

use serde::Serialize;

use crate::analysis::{CoarseType, Subtype};
use crate::construct::{axial_cube, offset_cube};
use crate::error::{Error, Result};
use crate::qb::DcPatch;
use crate::quat::{Generator, MobiusMap};
use crate::{Cube, Patch, Quat};

fn q(r: f64, x: f64, y: f64, z: f64) -> Quat {
    Quat::new(r, x, y, z)
}

fn cube(u: [Quat; 8], w: [Quat; 8]) -> Cube {
    let mut pairs = [(Quat::zero(), Quat::zero()); 8];
    for n in 0..8 {
        pairs[n] = (u[n], w[n]);
    }
    Cube::from_pairs(pairs)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Expected classification of a catalog entry; `None` where the family does not pin it down.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub coarse: CoarseType,
    pub subtype: Option<Subtype>,
    pub degree: Option<u32>,
    pub singular: &'static str,
}

/// One catalog cube with its label, parameters and expected classification.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalFamily {
    pub label: String,
    pub params: Vec<f64>,
    pub cube: Cube,
    pub expected: Expected,
}

/// Type A cube with `d = a + b + c`:
/// u-row `(0, i, j, i+j, k, i+k, j+k, d+i+j+k)`,
/// w-row `(1, 1, 1, 1−ak, 1, 1−cj, 1−bi, 1−bi−cj−ak)`.
pub fn type_a_cube(a: f64, b: f64, c: f64) -> Cube {
    let d = a + b + c;
    let o = Quat::one();
    cube(
        [
            Quat::zero(),
            q(0., 1., 0., 0.),
            q(0., 0., 1., 0.),
            q(0., 1., 1., 0.),
            q(0., 0., 0., 1.),
            q(0., 1., 0., 1.),
            q(0., 0., 1., 1.),
            q(d, 1., 1., 1.),
        ],
        [o, o, o, q(1., 0., 0., -a), o, q(1., 0., -c, 0.), q(1., -b, 0., 0.), q(1., -b, -c, -a)],
    )
}

/// Exceptional type A cube, `a ≠ −1`, with `e = 2a/(1+a)`.
pub fn type_a4_cube(a: f64) -> Result<Cube> {
    if a == -1.0 {
        return Err(invalid("A4 requires a != -1"));
    }
    let e = 2.0 * a / (1.0 + a);
    let o = Quat::one();
    Ok(cube(
        [
            Quat::zero(),
            q(0., 1., 0., 0.),
            Quat::zero(),
            q(0., 1., 0., 0.),
            q(0., 0., 0., 1.),
            q(0., 1., 0., 1.),
            q(0., 0., 0., 1.),
            q(-(1.0 - a) / (1.0 + a), 1., 0., 1.),
        ],
        [o, o, o, q(1., 0., 0., 1.), o, o, q(1., -e, 0., 0.), q(1., -e, 0., 1.)],
    ))
}

/// Two-plane family; `Δ = a² − c` separates the offset (`Δ = 0`), type A (`Δ > 0`) and
/// type B (`Δ < 0`) cases.
pub fn two_plane_cube(a: f64, b: f64, c: f64) -> Cube {
    let o = Quat::one();
    let s = 2.0 * a + 2.0 * c + 1.0;
    cube(
        [
            Quat::zero(),
            q(0., 1., 0., 0.),
            q(0., 0., 1., 0.),
            q(0., 1., 1., 0.),
            q(0., 0., 0., 2.),
            q(0., 1., 0., 1.),
            q(-1., 0., 1., 2.),
            q(-(2.0 * a + 2.0 * b + 1.0), 1., 1., 1.),
        ],
        [
            o,
            o,
            o,
            q(1., 0., 0., -c),
            q(1., 0., 1., 0.),
            q(1., 0., s, 0.),
            q(1., 2.0 * b, 1., 0.),
            q(1., 2.0 * b - c, s, -c),
        ],
    )
}

/// General position: `p₀ = ∞` and the three coordinate M-circles through it are lines;
/// `η = g² + h²`.
pub fn general_cube(g: f64, h: f64, a: f64, b: f64, c: f64) -> Cube {
    let eta = g * g + h * h;
    let z = Quat::zero();
    cube(
        [
            Quat::one(),
            z,
            q(0., 1., 0., 0.),
            q(0., 0., 0., c),
            q(0., -h, g, 0.),
            q(0., 0., eta * (b - 1.0), 0.),
            q(-h, eta * a + a - 1.0, 0., g),
            q(0., c * g, c * h, eta * (b - 1.0)),
        ],
        [
            z,
            q(0., -1., 0., 0.),
            q(0., 0., -1., 0.),
            Quat::one(),
            q(0., 0., 0., -1.),
            q(-h, 0., 0., g),
            q(g, 0., 1., h),
            q((eta + 1.0) * (a - 1.0) + b * eta + c, h, -g, 0.),
        ],
    )
}

/// `(h₀, h₁)` of the type B cube.
pub fn type_b_h(k: f64, m: f64) -> (f64, f64) {
    let h0 = 2.0 * (k - m) * (k * m + 1.0);
    let h1 = -((m + k).powi(2) - (k * m - 1.0).powi(2)) * (k - m) * (k * m + 1.0) / ((m + k) * (k * m - 1.0));
    (h0, h1)
}

/// Type B cube, symmetric with respect to the planes `z = 0`, `y = 0` and the imaginary
/// sphere `x² + y² + z² + 1 = 0`.
pub fn type_b_cube(k: f64, m: f64) -> Result<Cube> {
    for (name, v) in [("k", k), ("m", m)] {
        if v == 0.0 || v.abs() == 1.0 {
            return Err(invalid(format!("type B requires {name} not in {{0, 1, -1}}")));
        }
    }
    if k * m == 1.0 {
        return Err(invalid("type B requires k*m != 1"));
    }
    if k == -m {
        return Err(invalid("type B requires k != -m"));
    }
    if (m + k).powi(2) == (k * m - 1.0).powi(2) {
        return Err(invalid("type B requires (m+k)^2 != (km-1)^2"));
    }
    if k * m == -1.0 || k == m {
        return Err(invalid("type B requires h0 = 2(k-m)(km+1) != 0"));
    }
    let (h0, h1) = type_b_h(k, m);
    let z = Quat::zero();
    Ok(cube(
        [
            z,
            q(0., 1., 0., 0.),
            q(0., 0., 2.0 * k, 0.),
            q(0., 0., k * k - 1.0, 0.),
            q(0., 0., 0., -2.0 * m),
            q(0., 0., 0., -(m * m - 1.0)),
            q(h0, 0., 0., 0.),
            q(h1, 0., 0., 0.),
        ],
        [
            Quat::one(),
            z,
            q(0., 0., 0., k * k - 1.0),
            q(0., 0., 0., -2.0 * k),
            q(0., 0., m * m - 1.0, 0.),
            q(0., 0., -2.0 * m, 0.),
            q(0., -h1, 0., 0.),
            q(0., h0, 0., 0.),
        ],
    ))
}

/// Bipolar patch `F(s,t) = (si + tj)(1 − ast k)⁻¹` on the xy-plane.
pub fn bipolar_patch(a: f64) -> Patch {
    DcPatch::from_pairs([
        (Quat::zero(), Quat::one()),
        (q(0., 1., 0., 0.), Quat::one()),
        (q(0., 0., 1., 0.), Quat::one()),
        (q(0., 1., 1., 0.), q(1., 0., 0., -a)),
    ])
}

/// 1-polar patch on the xy-plane with its pole at the origin.
pub fn one_polar_patch() -> Patch {
    DcPatch::from_pairs([
        (Quat::zero(), Quat::one()),
        (q(0., 1., 0., 0.), Quat::one()),
        (Quat::zero(), Quat::one()),
        (q(0., 1., 0., 0.), q(1., 0., 0., 1.)),
    ])
}

/// Spherical families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SphericalKind {
    /// Offset construction on concentric spheres, parameter `a`.
    S1 { a: f64 },
    /// Offset of the 1-polar plane.
    S2OnePolar,
    /// Offset of the bipolar plane with parameter `a ≠ 0`.
    S2TwoPolar { a: f64 },
    /// Bipolar plane rotated about the x-axis.
    S3 { a: f64 },
    /// 1-polar plane shifted by `e j` and rotated about the x-axis; `e = 0` puts the pole on the axis.
    S4 { e: f64 },
}

pub fn spherical_cube(kind: SphericalKind) -> Result<Cube> {
    let o = Quat::one();
    match kind {
        SphericalKind::S1 { a } => {
            let w3 = q(1., -a, -1., 1.);
            Ok(cube(
                [
                    q(0., 1., 0., 0.),
                    q(0., 1., 1., 0.),
                    q(0., 1., 0., 1.),
                    q(a, 1., 1., 1.),
                    q(0., -1., 0., 0.),
                    q(0., -1., -1., 0.),
                    q(0., -1., 0., -1.),
                    q(-a, -1., -1., -1.),
                ],
                [o, q(1., 0., 0., 1.), q(1., 0., -1., 0.), w3, o, q(1., 0., 0., 1.), q(1., 0., -1., 0.), w3],
            ))
        }
        SphericalKind::S2OnePolar => Ok(cube(
            [
                Quat::zero(),
                q(0., 1., 0., 0.),
                Quat::zero(),
                q(0., 1., 0., 0.),
                q(0., 0., 0., 1.),
                q(0., 1., 0., 1.),
                q(0., 0., 0., 1.),
                q(-1., 1., 0., 1.),
            ],
            [o, o, o, q(1., 0., 0., 1.), o, o, o, q(1., 0., 0., 1.)],
        )),
        SphericalKind::S2TwoPolar { a } => {
            if a == 0.0 {
                return Err(invalid("S2 two-polar offset requires a != 0"));
            }
            offset_cube(&bipolar_patch(a), 1.0)
        }
        SphericalKind::S3 { a } => {
            if a == 0.0 {
                return Err(invalid("S3 requires a != 0"));
            }
            axial_cube(&bipolar_patch(a), Quat::i())
        }
        SphericalKind::S4 { e } => {
            let shift = MobiusMap::new(vec![Generator::Translation(q(0., 0., e, 0.))]);
            axial_cube(&one_polar_patch().apply(&shift), Quat::i())
        }
    }
}

/// Offset family O1 with `h ∉ {0, ±1}`.
pub fn offset_o1(h: f64) -> Result<Cube> {
    if h == 0.0 || h.abs() == 1.0 {
        return Err(invalid("O1 requires h not in {0, 1, -1}"));
    }
    Ok(cube(
        [
            q(0., -1., 0., 0.),
            q(0., 0., h, 0.),
            q(0., 0., 0., h),
            q(h, 0., 0., 0.),
            q(0., -2., 0., 0.),
            q(0., 0., h + 1.0, 0.),
            q(0., 0., 0., h - 1.0),
            Quat::zero(),
        ],
        [
            Quat::one(),
            q(0., 0., 0., -1.),
            q(0., 0., -1., 0.),
            q(0., -h, 0., 0.),
            Quat::one(),
            q(0., 0., 0., -1.),
            q(0., 0., -1., 0.),
            q(0., -h, 0., 0.),
        ],
    ))
}

/// Offset family O2 (parabolic cyclides).
pub fn offset_o2() -> Cube {
    cube(
        [
            Quat::one(),
            q(0., 0., 0., -1.),
            q(0., 0., -3., 0.),
            q(0., -4., 0., 0.),
            Quat::one(),
            q(0., 0., 0., -2.),
            q(0., 0., -2., 0.),
            Quat::zero(),
        ],
        [
            Quat::zero(),
            q(0., 0., -1., 0.),
            q(0., 0., 0., -1.),
            q(-4., 0., 0., 0.),
            Quat::zero(),
            q(0., 0., -1., 0.),
            q(0., 0., 0., -1.),
            q(-4., 0., 0., 0.),
        ],
    )
}

fn expect(coarse: CoarseType, subtype: Option<Subtype>, degree: Option<u32>, singular: &'static str) -> Expected {
    Expected { coarse, subtype, degree, singular }
}

fn params(p: &[f64], n: usize, label: &str) -> Result<()> {
    if p.len() != n {
        return Err(invalid(format!("family {label} takes {n} parameter(s), got {}", p.len())));
    }
    Ok(())
}

/// Catalog entry by label: `A`, `A4`, `TP`, `B`, `S1`, `S2`, `S3`, `S4`, `O1`, `O2`.
pub fn family(label: &str, p: &[f64]) -> Result<CanonicalFamily> {
    use CoarseType as C;
    use Subtype as T;
    let (cube, expected) = match label {
        "A" => {
            params(p, 3, label)?;
            let (a, b, c) = (p[0], p[1], p[2]);
            let d = a + b + c;
            let e = if a + b == 0.0 || a + c == 0.0 || b + c == 0.0 {
                expect(C::S, None, None, "spherical degeneration")
            } else if a * b * c == 0.0 || d == 0.0 {
                expect(C::A, Some(T::A3), Some(3), "focal ellipse and hyperbola")
            } else if d / (a * b * c) > 0.0 {
                expect(C::A, Some(T::A1), Some(4), "three focal 1-oval bicircular quartics")
            } else {
                expect(C::A, Some(T::A2), Some(4), "two focal 2-oval bicircular quartics")
            };
            (type_a_cube(a, b, c), e)
        }
        "A4" => {
            params(p, 1, label)?;
            (type_a4_cube(p[0])?, expect(C::A, Some(T::A4), Some(2), "two intersecting lines"))
        }
        "TP" => {
            params(p, 3, label)?;
            let (a, b, c) = (p[0], p[1], p[2]);
            let delta = a * a - c;
            let e = if b == c || a + b + c == 0.0 {
                expect(C::S, None, None, "spherical degeneration")
            } else if delta == 0.0 {
                expect(C::O, None, None, "focal conics")
            } else if delta > 0.0 {
                expect(C::A, None, None, "three real M-spheres")
            } else {
                expect(C::B, Some(T::B), Some(4), "two focal 2-oval bicircular quartics")
            };
            (two_plane_cube(a, b, c), e)
        }
        "B" => {
            params(p, 2, label)?;
            (type_b_cube(p[0], p[1])?, expect(C::B, Some(T::B), Some(4), "two focal 2-oval bicircular quartics"))
        }
        "S1" => {
            params(p, 1, label)?;
            (spherical_cube(SphericalKind::S1 { a: p[0] })?, expect(C::S, Some(T::S1), None, "two intersecting lines"))
        }
        "S2" => {
            let cube = match p.len() {
                0 => spherical_cube(SphericalKind::S2OnePolar)?,
                1 => spherical_cube(SphericalKind::S2TwoPolar { a: p[0] })?,
                n => return Err(invalid(format!("family S2 takes 0 or 1 parameter, got {n}"))),
            };
            (cube, expect(C::S, Some(T::S2), None, "parallel or double lines"))
        }
        "S3" => {
            params(p, 1, label)?;
            (
                spherical_cube(SphericalKind::S3 { a: p[0] })?,
                expect(C::S, Some(T::S3), None, "a double line and 2 circles"),
            )
        }
        "S4" => {
            params(p, 1, label)?;
            (
                spherical_cube(SphericalKind::S4 { e: p[0] })?,
                expect(C::S, Some(T::S4), None, "a double line and a double circle"),
            )
        }
        "O1" => {
            params(p, 1, label)?;
            (offset_o1(p[0])?, expect(C::O, Some(T::O1), Some(4), "focal ellipse and hyperbola"))
        }
        "O2" => {
            params(p, 0, label)?;
            (offset_o2(), expect(C::O, Some(T::O2), Some(3), "two focal parabolas"))
        }
        other => return Err(invalid(format!("unknown family `{other}`"))),
    };
    Ok(CanonicalFamily { label: label.to_string(), params: p.to_vec(), cube, expected })
}

/// Twenty catalog cubes covering every subtype.
pub fn catalog() -> Vec<CanonicalFamily> {
    let entries: [(&str, &[f64]); 20] = [
        ("S1", &[0.5]),
        ("S1", &[2.0]),
        ("S2", &[]),
        ("S2", &[0.5]),
        ("S3", &[0.5]),
        ("S4", &[0.6]),
        ("S4", &[0.0]),
        ("O1", &[0.5]),
        ("O1", &[-0.4]),
        ("O2", &[]),
        ("A", &[1.0, 2.0, 3.0]),
        ("A", &[2.0, 3.0, -0.5]),
        ("A", &[1.0, 2.0, -1.0]),
        ("A", &[0.0, 1.0, 2.0]),
        ("A", &[1.0, 2.0, -3.0]),
        ("A4", &[0.7]),
        ("A4", &[-0.3]),
        ("B", &[2.0, -3.0]),
        ("TP", &[0.0, 1.0, 2.0]),
        ("TP", &[1.0, 2.0, 1.0]),
    ];
    entries.iter().map(|(l, p)| family(l, p).expect("catalog entry")).collect()
}
