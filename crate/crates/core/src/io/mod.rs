//! File formats and text reports.

pub mod cubefile;
pub mod mesh;
pub mod polyline;
pub mod report;

pub use cubefile::{load_cube, load_patch, parse_patch, patch_to_toml, save_cube, CubeFile, SCHEMA_VERSION};
pub use mesh::{control_net_bounds, export_surface_mesh, Mesh, MeshDomain, MeshOptions};
pub use polyline::{export_singular_curves, write_polylines, CurveExport};
pub use report::{render_classification, render_cube, singular_summary};
