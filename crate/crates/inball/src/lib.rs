//! Numerical verification toolkit for surfaces of bounded normal
//! curvature: curvature analysis, star-shapedness and radial-projection
//! checks, inscribed-ball certification, geodesic property checks, a
//! genus-2 fishbowl construction, and a volume-minimization probe.

pub mod catalog;
pub mod fishbowl;
pub mod forms;
pub mod geodesic;
pub mod mesh;
pub mod num;
pub mod patch;
pub mod probe;
pub mod vec3;
pub mod verify;

pub use catalog::{CatalogError, Surface};
pub use forms::{CurvatureSample, FundamentalForms};
pub use mesh::{BallSpec, TriMesh};
pub use patch::{ParamPoint, SurfacePatch};
pub use vec3::Vec3;
pub use verify::{VerificationReport, VerifyConfig};
