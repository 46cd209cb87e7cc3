//! Dupin cyclidic cubes: trilinear quaternionic Bézier parametrizations of triply orthogonal
//! systems whose coordinate lines are circles.

pub mod analysis;
pub mod canonical;
pub mod construct;
pub mod error;
pub mod io;
pub mod qb;
pub mod quat;
mod scalar;
mod tolerance;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tolerance::Tolerance;

pub type Quat = quat::Quaternion<f64>;
pub type Point = quat::MPoint<f64>;
pub type Hp = qb::HomogeneousPoint<f64>;
pub type Patch = qb::DcPatch<f64>;
pub type Cube = qb::DcCube<f64>;
pub type Param = qb::ProjParam<f64>;
pub type Tol = Tolerance<f64>;
