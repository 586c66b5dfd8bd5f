//! Parametric surface patches with first/second derivative access.
//!
//! A patch is a smooth map from a closed rectangle in `(u, v)` into 3-space.
//! Catalog surfaces provide analytic jets; anything else falls back to
//! central finite differences of the position map.

use crate::vec3::Vec3;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

/// First-partial step from the configured rule; second partials use a wider
/// step because the second central difference loses half the mantissa to
/// cancellation at 1e-5.
fn fd_steps(extent: f64) -> (f64, f64) {
    let h1 = (1e-7 * extent).max(1e-5);
    let h2 = (1e-6 * extent).max(3e-4);
    (h1, h2)
}

/// Relative regularity floor for `|r_u x r_v|`.
pub const REGULARITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("degenerate patch at (u={u}, v={v}): |r_u x r_v| below tolerance")]
    DegeneratePatch { u: f64, v: f64 },
}

/// Parameter point in a patch's rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPoint {
    pub u: f64,
    pub v: f64,
}

impl ParamPoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }
}

/// Closed rectangle `[u0, u1] x [v0, v1]`.
#[derive(Debug, Clone, Copy)]
pub struct Rect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Rect {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Self { u0, u1, v0, v1 }
    }

    pub fn contains(&self, p: ParamPoint) -> bool {
        p.u >= self.u0 - 1e-12
            && p.u <= self.u1 + 1e-12
            && p.v >= self.v0 - 1e-12
            && p.v <= self.v1 + 1e-12
    }

    pub fn u_extent(&self) -> f64 {
        self.u1 - self.u0
    }

    pub fn v_extent(&self) -> f64 {
        self.v1 - self.v0
    }

    pub fn clamp(&self, p: ParamPoint) -> ParamPoint {
        ParamPoint::new(p.u.clamp(self.u0, self.u1), p.v.clamp(self.v0, self.v1))
    }
}

/// Position and partial derivatives at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct PatchJet {
    pub p: Vec3,
    pub ru: Vec3,
    pub rv: Vec3,
    pub ruu: Vec3,
    pub ruv: Vec3,
    pub rvv: Vec3,
}

/// The underlying smooth map. Implementors may provide an analytic jet;
/// otherwise derivatives come from finite differences of `position`.
pub trait PatchMap: Send + Sync {
    fn position(&self, u: f64, v: f64) -> Vec3;

    fn analytic_jet(&self, _u: f64, _v: f64) -> Option<PatchJet> {
        None
    }
}

/// Which of the four domain sides an edge refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Edge {
    UMin,
    UMax,
    VMin,
    VMax,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::UMin, Edge::UMax, Edge::VMin, Edge::VMax];

    /// Point at fraction `t` in `[0, 1]` along this edge.
    pub fn point(&self, rect: &Rect, t: f64) -> ParamPoint {
        match self {
            Edge::UMin => ParamPoint::new(rect.u0, rect.v0 + t * rect.v_extent()),
            Edge::UMax => ParamPoint::new(rect.u1, rect.v0 + t * rect.v_extent()),
            Edge::VMin => ParamPoint::new(rect.u0 + t * rect.u_extent(), rect.v0),
            Edge::VMax => ParamPoint::new(rect.u0 + t * rect.u_extent(), rect.v1),
        }
    }

    /// Fraction along this edge for a point assumed to lie on it.
    pub fn fraction(&self, rect: &Rect, p: ParamPoint) -> f64 {
        match self {
            Edge::UMin | Edge::UMax => (p.v - rect.v0) / rect.v_extent(),
            Edge::VMin | Edge::VMax => (p.u - rect.u0) / rect.u_extent(),
        }
    }
}

/// A bounded parametric patch with an orientation convention.
///
/// `flip_normal` selects which side of `r_u x r_v` counts as outward; the
/// catalog fixes it so that normals point out of the enclosed region.
#[derive(Clone)]
pub struct SurfacePatch {
    map: Arc<dyn PatchMap>,
    pub domain: Rect,
    pub flip_normal: bool,
    /// Grid resolution multipliers (u, v) relative to a caller's density.
    pub res_hint: (u32, u32),
    /// Edges that collapse to a single point (e.g. a polar cap apex).
    pub degenerate_edges: Vec<Edge>,
    pub label: String,
}

impl std::fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("flip_normal", &self.flip_normal)
            .finish()
    }
}

impl SurfacePatch {
    pub fn new(map: Arc<dyn PatchMap>, domain: Rect, label: impl Into<String>) -> Self {
        Self {
            map,
            domain,
            flip_normal: false,
            res_hint: (1, 1),
            degenerate_edges: Vec::new(),
            label: label.into(),
        }
    }

    pub fn with_res_hint(mut self, u: u32, v: u32) -> Self {
        self.res_hint = (u, v);
        self
    }

    pub fn with_degenerate_edges(mut self, edges: Vec<Edge>) -> Self {
        self.degenerate_edges = edges;
        self
    }

    pub fn position(&self, p: ParamPoint) -> Vec3 {
        self.map.position(p.u, p.v)
    }

    /// Full jet: analytic when the map provides one, otherwise central
    /// finite differences (first partials at step h1, second at h2).
    pub fn jet(&self, p: ParamPoint) -> PatchJet {
        if let Some(j) = self.map.analytic_jet(p.u, p.v) {
            return j;
        }
        self.fd_jet(p)
    }

    /// Finite-difference jet, always available. Used both as the fallback
    /// and as the cross-check oracle for analytic jets.
    pub fn fd_jet(&self, p: ParamPoint) -> PatchJet {
        let extent = self.domain.u_extent().max(self.domain.v_extent());
        let (h1, h2) = fd_steps(extent);
        let f = |u: f64, v: f64| self.map.position(u, v);
        let (u, v) = (p.u, p.v);
        let pos = f(u, v);
        let ru = (f(u + h1, v) - f(u - h1, v)) / (2.0 * h1);
        let rv = (f(u, v + h1) - f(u, v - h1)) / (2.0 * h1);
        let ruu = (f(u + h2, v) - pos * 2.0 + f(u - h2, v)) / (h2 * h2);
        let rvv = (f(u, v + h2) - pos * 2.0 + f(u, v - h2)) / (h2 * h2);
        let ruv = (f(u + h2, v + h2) - f(u + h2, v - h2) - f(u - h2, v + h2)
            + f(u - h2, v - h2))
            / (4.0 * h2 * h2);
        PatchJet { p: pos, ru, rv, ruu, ruv, rvv }
    }

    /// Outward unit normal per the patch orientation convention.
    pub fn outward_normal(&self, p: ParamPoint) -> Result<Vec3, GeomError> {
        let jet = self.jet(p);
        let raw = jet.ru.cross(jet.rv);
        let scale = jet.ru.norm() * jet.rv.norm();
        if raw.norm() < REGULARITY_TOL * scale || scale == 0.0 {
            return Err(GeomError::DegeneratePatch { u: p.u, v: p.v });
        }
        let n = raw.normalized().expect("checked above");
        Ok(if self.flip_normal { -n } else { n })
    }

    pub fn transformed(&self, rotation: [[f64; 3]; 3], translation: Vec3) -> SurfacePatch {
        let inner = Arc::clone(&self.map);
        let map = Arc::new(TransformedMap { inner, rotation, translation });
        SurfacePatch {
            map,
            domain: self.domain,
            flip_normal: self.flip_normal,
            res_hint: self.res_hint,
            degenerate_edges: self.degenerate_edges.clone(),
            label: self.label.clone(),
        }
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, s: f64) -> SurfacePatch {
        let inner = Arc::clone(&self.map);
        let map = Arc::new(ScaledMap { inner, s });
        SurfacePatch {
            map,
            domain: self.domain,
            flip_normal: self.flip_normal,
            res_hint: self.res_hint,
            degenerate_edges: self.degenerate_edges.clone(),
            label: self.label.clone(),
        }
    }
}

fn rotate(m: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
        m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
        m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
    )
}

struct TransformedMap {
    inner: Arc<dyn PatchMap>,
    rotation: [[f64; 3]; 3],
    translation: Vec3,
}

impl PatchMap for TransformedMap {
    fn position(&self, u: f64, v: f64) -> Vec3 {
        rotate(&self.rotation, self.inner.position(u, v)) + self.translation
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<PatchJet> {
        let j = self.inner.analytic_jet(u, v)?;
        Some(PatchJet {
            p: rotate(&self.rotation, j.p) + self.translation,
            ru: rotate(&self.rotation, j.ru),
            rv: rotate(&self.rotation, j.rv),
            ruu: rotate(&self.rotation, j.ruu),
            ruv: rotate(&self.rotation, j.ruv),
            rvv: rotate(&self.rotation, j.rvv),
        })
    }
}

struct ScaledMap {
    inner: Arc<dyn PatchMap>,
    s: f64,
}

impl PatchMap for ScaledMap {
    fn position(&self, u: f64, v: f64) -> Vec3 {
        self.inner.position(u, v) * self.s
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<PatchJet> {
        let j = self.inner.analytic_jet(u, v)?;
        Some(PatchJet {
            p: j.p * self.s,
            ru: j.ru * self.s,
            rv: j.rv * self.s,
            ruu: j.ruu * self.s,
            ruv: j.ruv * self.s,
            rvv: j.rvv * self.s,
        })
    }
}

/// Rotation matrix for angle `theta` about a unit axis.
pub fn rotation_about_axis(axis: Vec3, theta: f64) -> [[f64; 3]; 3] {
    let a = axis.normalized().unwrap_or(Vec3::new(0.0, 0.0, 1.0));
    let (s, c) = theta.sin_cos();
    let t = 1.0 - c;
    [
        [t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y],
        [t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x],
        [t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c],
    ]
}

pub const IDENTITY: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
