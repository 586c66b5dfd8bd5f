//! Fundamental forms, shape operator, principal and normal curvatures.

use crate::num::refine_max;
use crate::patch::{GeomError, ParamPoint, PatchJet, SurfacePatch, REGULARITY_TOL};
use crate::vec3::Vec3;
use serde::Serialize;

/// First- and second-form coefficients at a point.
///
/// `l`, `m`, `n` are signed so that a surface convex toward the outward
/// normal has positive principal curvatures (a sphere of radius r gives
/// `kappa1 = kappa2 = 1/r` with the outward field).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundamentalForms {
    pub fn metric_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Point sample of the curvature data used by every checker.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvatureSample {
    pub point: Vec3,
    pub unit_normal: Vec3,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa_max_abs: f64,
}

fn forms_from_jet(jet: &PatchJet, flip_normal: bool, p: ParamPoint) -> Result<(FundamentalForms, Vec3), GeomError> {
    let raw = jet.ru.cross(jet.rv);
    let scale = jet.ru.norm() * jet.rv.norm();
    if scale == 0.0 || raw.norm() < REGULARITY_TOL * scale {
        return Err(GeomError::DegeneratePatch { u: p.u, v: p.v });
    }
    let mut outward = raw.normalized().expect("nonzero");
    if flip_normal {
        outward = -outward;
    }
    // Project second partials on the inward normal so convex-from-outside
    // means positive curvature.
    let nk = -outward;
    let forms = FundamentalForms {
        e: jet.ru.dot(jet.ru),
        f: jet.ru.dot(jet.rv),
        g: jet.rv.dot(jet.rv),
        l: jet.ruu.dot(nk),
        m: jet.ruv.dot(nk),
        n: jet.rvv.dot(nk),
    };
    Ok((forms, outward))
}

/// First and second fundamental forms at `p`.
pub fn fundamental_forms(patch: &SurfacePatch, p: ParamPoint) -> Result<FundamentalForms, GeomError> {
    let jet = patch.jet(p);
    forms_from_jet(&jet, patch.flip_normal, p).map(|(f, _)| f)
}

/// Principal curvatures as the closed-form eigenvalues of the shape
/// operator `I^-1 II`, ordered `kappa1 <= kappa2`.
pub fn curvature_sample(patch: &SurfacePatch, p: ParamPoint) -> Result<CurvatureSample, GeomError> {
    let jet = patch.jet(p);
    let (forms, outward) = forms_from_jet(&jet, patch.flip_normal, p)?;
    let det = forms.metric_det();
    // Mean and Gaussian curvature from the coefficient formulas, then the
    // quadratic formula for the eigenvalues.
    let h = (forms.e * forms.n + forms.g * forms.l - 2.0 * forms.f * forms.m) / (2.0 * det);
    let k = (forms.l * forms.n - forms.m * forms.m) / det;
    let disc = (h * h - k).max(0.0).sqrt();
    let kappa1 = h - disc;
    let kappa2 = h + disc;
    Ok(CurvatureSample {
        point: jet.p,
        unit_normal: outward,
        kappa1,
        kappa2,
        kappa_max_abs: kappa1.abs().max(kappa2.abs()),
    })
}

/// Normal curvature of the tangent direction `a*r_u + b*r_v` at `p`.
/// By Euler's relation the value lies in `[kappa1, kappa2]`.
pub fn normal_curvature(patch: &SurfacePatch, p: ParamPoint, a: f64, b: f64) -> Result<f64, GeomError> {
    let forms = fundamental_forms(patch, p)?;
    let ii = forms.l * a * a + 2.0 * forms.m * a * b + forms.n * b * b;
    let i = forms.e * a * a + 2.0 * forms.f * a * b + forms.g * b * b;
    Ok(ii / i)
}

/// Maximum of `|kappa|_max` over a uniform grid with local refinement.
///
/// Degenerate grid points (polar cap apexes and the like) are skipped; a
/// patch degenerate everywhere yields an error.
pub fn max_abs_normal_curvature(
    patch: &SurfacePatch,
    grid: u32,
) -> Result<(f64, ParamPoint), GeomError> {
    debug_assert!(grid >= 2);
    let eval = |p: ParamPoint| curvature_sample(patch, p).map(|s| s.kappa_max_abs).ok();
    match refine_max(&patch.domain, grid.max(2), 3, 4, eval) {
        Some((val, p)) => Ok((val, p)),
        None => Err(GeomError::DegeneratePatch {
            u: patch.domain.u0,
            v: patch.domain.v0,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_sphere, make_tube_segment};
    use crate::vec3::Vec3;
    use std::f64::consts::PI;

    #[test]
    fn unit_sphere_forms_and_curvature() {
        let s = make_sphere(Vec3::new(0.0, 0.0, 0.0), 1.0).unwrap();
        let patch = &s.patches[0];
        let p = ParamPoint::new(PI / 3.0, 1.1);
        let f = fundamental_forms(patch, p).unwrap();
        // Round sphere: II = I in this sign convention.
        assert!((f.l - f.e).abs() < 1e-9);
        assert!((f.n - f.g).abs() < 1e-9);
        assert!((f.m - f.f).abs() < 1e-9);
        let c = curvature_sample(patch, p).unwrap();
        assert!((c.kappa1 - 1.0).abs() < 1e-9);
        assert!((c.kappa2 - 1.0).abs() < 1e-9);
        assert!((c.unit_normal.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn radius_sphere_curvature_is_reciprocal() {
        let s = make_sphere(Vec3::new(0.3, -0.2, 0.1), 1.5).unwrap();
        for patch in &s.patches {
            let c = curvature_sample(patch, ParamPoint::new(0.7, 2.0)).unwrap();
            assert!((c.kappa1 - 2.0 / 3.0).abs() < 1e-9, "kappa1 = {}", c.kappa1);
            assert!((c.kappa2 - 2.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn torus_outer_equator_curvatures() {
        // R=2, r=1: outer equator principal curvatures {1/3, 1}.
        let s = make_tube_segment(2.0, 1.0, 2.0 * PI).unwrap();
        let patch = &s.patches[0];
        // theta = 0 is the outer equator in the tube parametrization.
        let c = curvature_sample(patch, ParamPoint::new(0.0, 0.4)).unwrap();
        assert!((c.kappa1 - 1.0 / 3.0).abs() < 1e-9, "kappa1 = {}", c.kappa1);
        assert!((c.kappa2 - 1.0).abs() < 1e-9, "kappa2 = {}", c.kappa2);
    }

    #[test]
    fn torus_max_curvature_is_one() {
        let s = make_tube_segment(2.0, 1.0, 2.0 * PI).unwrap();
        let (max, _) = max_abs_normal_curvature(&s.patches[0], 64).unwrap();
        assert!((max - 1.0).abs() < 1e-6, "max = {max}");
    }

    #[test]
    fn plane_patch_is_flat() {
        struct Plane;
        impl crate::patch::PatchMap for Plane {
            fn position(&self, u: f64, v: f64) -> Vec3 {
                Vec3::new(u, v, 0.0)
            }
        }
        let patch = SurfacePatch::new(
            std::sync::Arc::new(Plane),
            crate::patch::Rect::new(-1.0, 1.0, -1.0, 1.0),
            "plane",
        );
        let f = fundamental_forms(&patch, ParamPoint::new(0.2, -0.3)).unwrap();
        assert!(f.l.abs() < 1e-9 && f.m.abs() < 1e-9 && f.n.abs() < 1e-9);
    }
}
