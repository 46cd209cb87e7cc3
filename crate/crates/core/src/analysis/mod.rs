//! Implicitization, singular loci, bicircular quartics, classification and degree.

use std::fmt;

use serde::Serialize;

pub mod classify;
pub mod contour;
pub mod curves;
pub mod degree;
pub mod discriminant;
pub mod implicit;
pub mod involution;
pub mod linalg;
pub mod poly;
pub mod singular;
pub mod sphere;

pub use classify::{classify, Classification, ClassifyOptions, SigmaReport};
pub use contour::{Grid, Polyline2};
pub use curves::{
    bq_canonicalize, focal_params, focal_points, BicircularQuartic, BqForm, Conic, ConicKind, FocalTriple, PlaneCurve,
    PlaneFrame,
};
pub use degree::{degree, degree_at, DegreeOptions, DegreeReport};
pub use discriminant::{discriminant_region, DiscriminantReport};
pub use implicit::{implicitize_patch, implicitize_slice, ImplicitSource, ImplicitSurface};
pub use involution::{involution_check, involution_holds};
pub use poly::{real_roots, Poly3};
pub use singular::{singular_locus, SingularBranch, SingularComponent, SingularLocus};
pub use sphere::MSphere;

/// Coarse Möbius type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoarseType {
    S,
    O,
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Subtype {
    S1,
    S2,
    S3,
    S4,
    O1,
    O2,
    A1,
    A2,
    A3,
    A4,
    B,
}

impl Subtype {
    pub fn coarse(self) -> CoarseType {
        use Subtype::*;
        match self {
            S1 | S2 | S3 | S4 => CoarseType::S,
            O1 | O2 => CoarseType::O,
            A1 | A2 | A3 | A4 => CoarseType::A,
            B => CoarseType::B,
        }
    }
}

impl fmt::Display for CoarseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl fmt::Display for Subtype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}
