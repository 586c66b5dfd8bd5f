//! Catalog of analytic test surfaces: spheres, radial graphs, surfaces of
//! revolution, and tube segments, stitched from parametric patches.

mod basis;
mod profile;
mod shapes;
pub mod spec;

pub use basis::SpherePoly;
pub use profile::{Piece, ProfileCurve};
pub use shapes::{
    make_perturbed_sphere, make_revolution, make_scaled_perturbed_sphere, make_sphere,
    make_tube_segment,
};

use crate::forms::max_abs_normal_curvature;
use crate::patch::{Edge, ParamPoint, SurfacePatch};
use crate::vec3::Vec3;
use thiserror::Error;

/// Stitch tolerance for boundary-curve agreement.
pub const STITCH_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("invalid radius {0}: must be positive")]
    InvalidRadius(f64),
    #[error("nonpositive radius in radial graph (min r = {0})")]
    NonpositiveRadius(f64),
    #[error("profile not revolvable: x = {0} < 0 on a piece")]
    NonRevolvable(f64),
    #[error("self-intersecting tube: tube radius {tube} >= axis radius {axis}")]
    SelfIntersecting { axis: f64, tube: f64 },
    #[error("stitch mismatch: patches {a} and {b} differ by {gap} at t = {t}")]
    StitchMismatch { a: usize, b: usize, gap: f64, t: f64 },
    #[error("profile pieces do not share endpoints (gap {0})")]
    DisconnectedProfile(f64),
    #[error("surface spec parse error: {0}")]
    Parse(String),
}

/// Identification of two patch boundary edges. A point at fraction `t`
/// along edge `a` coincides with fraction `t` (or `1-t` when `reversed`)
/// along edge `b`.
#[derive(Debug, Clone, Copy)]
pub struct Stitch {
    pub a: (usize, Edge),
    pub b: (usize, Edge),
    pub reversed: bool,
}

/// A surface assembled from stitched patches.
#[derive(Debug, Clone)]
pub struct Surface {
    pub patches: Vec<SurfacePatch>,
    pub stitches: Vec<Stitch>,
    pub closed: bool,
    pub label: String,
}

impl Surface {
    /// Pointwise agreement of every stitch within [`STITCH_TOL`], plus the
    /// closure bookkeeping: on a closed surface every non-degenerate
    /// boundary edge must appear in some stitch.
    pub fn validate(&self) -> Result<(), CatalogError> {
        for s in &self.stitches {
            let pa = &self.patches[s.a.0];
            let pb = &self.patches[s.b.0];
            for k in 0..=16 {
                let t = k as f64 / 16.0;
                let tb = if s.reversed { 1.0 - t } else { t };
                let qa = pa.position(s.a.1.point(&pa.domain, t));
                let qb = pb.position(s.b.1.point(&pb.domain, tb));
                let gap = qa.distance(qb);
                if gap > STITCH_TOL {
                    return Err(CatalogError::StitchMismatch { a: s.a.0, b: s.b.0, gap, t });
                }
            }
        }
        if self.closed {
            for (i, p) in self.patches.iter().enumerate() {
                for e in Edge::ALL {
                    if p.degenerate_edges.contains(&e) {
                        continue;
                    }
                    let used = self
                        .stitches
                        .iter()
                        .any(|s| (s.a == (i, e)) || (s.b == (i, e)));
                    if !used {
                        return Err(CatalogError::StitchMismatch {
                            a: i,
                            b: i,
                            gap: f64::INFINITY,
                            t: 0.0,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Stitch partner of `(patch, edge)` if one exists.
    pub fn stitch_partner(&self, patch: usize, edge: Edge) -> Option<(usize, Edge, bool)> {
        for s in &self.stitches {
            if s.a == (patch, edge) {
                return Some((s.b.0, s.b.1, s.reversed));
            }
            if s.b == (patch, edge) {
                return Some((s.a.0, s.a.1, s.reversed));
            }
        }
        None
    }

    /// Hypothesis evaluator: maximum `|kappa_n|` over all patches with the
    /// achieving patch index and parameter point.
    pub fn max_abs_normal_curvature(
        &self,
        grid: u32,
    ) -> Result<(f64, usize, ParamPoint), crate::patch::GeomError> {
        let mut best: Option<(f64, usize, ParamPoint)> = None;
        for (i, patch) in self.patches.iter().enumerate() {
            let (val, p) = max_abs_normal_curvature(patch, grid)?;
            if best.map_or(true, |(b, _, _)| val > b) {
                best = Some((val, i, p));
            }
        }
        Ok(best.expect("surface has at least one patch"))
    }

    /// Farthest sample from the origin over a coarse grid (used as a seed
    /// for refinement-based searches).
    pub fn rigid_transformed(&self, rotation: [[f64; 3]; 3], translation: Vec3) -> Surface {
        Surface {
            patches: self
                .patches
                .iter()
                .map(|p| p.transformed(rotation, translation))
                .collect(),
            stitches: self.stitches.clone(),
            closed: self.closed,
            label: self.label.clone(),
        }
    }

    pub fn translated(&self, offset: Vec3) -> Surface {
        self.rigid_transformed(crate::patch::IDENTITY, offset)
    }
}

/// Flip patch orientations so the tessellated signed volume is positive.
/// Robust for any closed surface, star-shaped or not.
pub(crate) fn orient_outward(surface: &mut Surface) {
    if !surface.closed {
        return;
    }
    let mesh = crate::mesh::tessellate(surface, 24).expect("orientation tessellation");
    if mesh.signed_volume() < 0.0 {
        for p in &mut surface.patches {
            p.flip_normal = !p.flip_normal;
        }
    }
}
