//! Constructors for the catalog surfaces.

use super::basis::SpherePoly;
use super::profile::{Piece, ProfileCurve};
use super::{orient_outward, CatalogError, Stitch, Surface};
use crate::patch::{Edge, ParamPoint, PatchJet, PatchMap, Rect, SurfacePatch};
use crate::vec3::Vec3;
use std::f64::consts::PI;
use std::sync::Arc;

/// Unit direction and its derivatives for a polar cap chart.
/// North: n = (sin t cos p, sin t sin p, cos t); the south cap flips the
/// y and z components so that both charts are right-side-out.
#[derive(Clone, Copy)]
struct CapFrame {
    south: bool,
}

impl CapFrame {
    fn dir(&self, t: f64, p: f64) -> (Vec3, Vec3, Vec3, Vec3, Vec3, Vec3) {
        let (st, ct) = t.sin_cos();
        let (sp, cp) = p.sin_cos();
        let (sy, sz) = if self.south { (-1.0, -1.0) } else { (1.0, 1.0) };
        let n = Vec3::new(st * cp, sy * st * sp, sz * ct);
        let nt = Vec3::new(ct * cp, sy * ct * sp, -sz * st);
        let np = Vec3::new(-st * sp, sy * st * cp, 0.0);
        let ntt = Vec3::new(-st * cp, -sy * st * sp, -sz * ct);
        let ntp = Vec3::new(-ct * sp, sy * ct * cp, 0.0);
        let npp = Vec3::new(-st * cp, -sy * st * sp, 0.0);
        (n, nt, np, ntt, ntp, npp)
    }
}

struct SphereCapMap {
    center: Vec3,
    radius: f64,
    frame: CapFrame,
}

impl PatchMap for SphereCapMap {
    fn position(&self, u: f64, v: f64) -> Vec3 {
        let (n, ..) = self.frame.dir(u, v);
        self.center + n * self.radius
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<PatchJet> {
        let (n, nt, np, ntt, ntp, npp) = self.frame.dir(u, v);
        let r = self.radius;
        Some(PatchJet {
            p: self.center + n * r,
            ru: nt * r,
            rv: np * r,
            ruu: ntt * r,
            ruv: ntp * r,
            rvv: npp * r,
        })
    }
}

fn cap_patch(map: Arc<dyn PatchMap>, label: &str) -> SurfacePatch {
    SurfacePatch::new(map, Rect::new(0.0, PI / 2.0, 0.0, 2.0 * PI), label)
        .with_res_hint(1, 4)
        .with_degenerate_edges(vec![Edge::UMin])
}

fn two_cap_stitches() -> Vec<Stitch> {
    vec![
        // Equator: phi on the north cap matches 2*pi - phi on the south cap.
        Stitch { a: (0, Edge::UMax), b: (1, Edge::UMax), reversed: true },
        // Seams phi = 0 <-> phi = 2*pi within each cap.
        Stitch { a: (0, Edge::VMin), b: (0, Edge::VMax), reversed: false },
        Stitch { a: (1, Edge::VMin), b: (1, Edge::VMax), reversed: false },
    ]
}

/// Round sphere as two polar caps stitched at the equator.
pub fn make_sphere(center: Vec3, radius: f64) -> Result<Surface, CatalogError> {
    if radius <= 0.0 {
        return Err(CatalogError::InvalidRadius(radius));
    }
    let north = cap_patch(
        Arc::new(SphereCapMap { center, radius, frame: CapFrame { south: false } }),
        "sphere-north",
    );
    let south = cap_patch(
        Arc::new(SphereCapMap { center, radius, frame: CapFrame { south: true } }),
        "sphere-south",
    );
    let mut surface = Surface {
        patches: vec![north, south],
        stitches: two_cap_stitches(),
        closed: true,
        label: format!("sphere(r={radius})"),
    };
    orient_outward(&mut surface);
    Ok(surface)
}

/// Radial graph r(n) = scale * (1 + sum_i coeff_i * f_i(n)) over the unit
/// sphere about the origin.
struct RadialGraphMap {
    basis: Arc<Vec<SpherePoly>>,
    coeffs: Vec<f64>,
    scale: f64,
    frame: CapFrame,
}

impl RadialGraphMap {
    fn radius_jet(&self, n: Vec3, nt: Vec3, np: Vec3, ntt: Vec3, ntp: Vec3, npp: Vec3) -> [f64; 6] {
        let v = [n.x, n.y, n.z];
        let mut f = 0.0;
        let mut g = Vec3::new(0.0, 0.0, 0.0);
        let mut h = [[0.0; 3]; 3];
        for (c, poly) in self.coeffs.iter().zip(self.basis.iter()) {
            if *c == 0.0 {
                continue;
            }
            f += c * poly.eval(v);
            let pg = poly.grad(v);
            g += Vec3::new(pg[0], pg[1], pg[2]) * *c;
            let ph = poly.hess(v);
            for a in 0..3 {
                for b in 0..3 {
                    h[a][b] += c * ph[a][b];
                }
            }
        }
        let hess = |a: Vec3, b: Vec3| -> f64 {
            let ax = [a.x, a.y, a.z];
            let bx = [b.x, b.y, b.z];
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += ax[i] * h[i][j] * bx[j];
                }
            }
            s
        };
        let r = self.scale * (1.0 + f);
        let rt = self.scale * g.dot(nt);
        let rp = self.scale * g.dot(np);
        let rtt = self.scale * (hess(nt, nt) + g.dot(ntt));
        let rtp = self.scale * (hess(nt, np) + g.dot(ntp));
        let rpp = self.scale * (hess(np, np) + g.dot(npp));
        [r, rt, rp, rtt, rtp, rpp]
    }
}

impl PatchMap for RadialGraphMap {
    fn position(&self, u: f64, v: f64) -> Vec3 {
        let (n, nt, np, ntt, ntp, npp) = self.frame.dir(u, v);
        let [r, ..] = self.radius_jet(n, nt, np, ntt, ntp, npp);
        n * r
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<PatchJet> {
        let (n, nt, np, ntt, ntp, npp) = self.frame.dir(u, v);
        let [r, rt, rp, rtt, rtp, rpp] = self.radius_jet(n, nt, np, ntt, ntp, npp);
        Some(PatchJet {
            p: n * r,
            ru: nt * r + n * rt,
            rv: np * r + n * rp,
            ruu: ntt * r + nt * (2.0 * rt) + n * rtt,
            ruv: ntp * r + nt * rp + np * rt + n * rtp,
            rvv: npp * r + np * (2.0 * rp) + n * rpp,
        })
    }
}

/// Perturbed sphere `r = 1 + amplitude * f(n)` about the origin. Errors if
/// the radius dips nonpositive anywhere on a dense direction grid.
pub fn make_perturbed_sphere(
    basis: Vec<SpherePoly>,
    coeffs: Vec<f64>,
    amplitude: f64,
) -> Result<Surface, CatalogError> {
    let scaled: Vec<f64> = coeffs.iter().map(|c| c * amplitude).collect();
    make_scaled_perturbed_sphere(basis, scaled, 1.0)
}

/// Radial graph with an overall scale factor (the probe uses this to
/// renormalize curvature).
pub fn make_scaled_perturbed_sphere(
    basis: Vec<SpherePoly>,
    coeffs: Vec<f64>,
    scale: f64,
) -> Result<Surface, CatalogError> {
    let basis = Arc::new(basis);
    // Dense positivity check for the radial graph.
    let mut min_r = f64::INFINITY;
    for i in 0..=96 {
        for j in 0..=192 {
            let t = PI * i as f64 / 96.0;
            let p = 2.0 * PI * j as f64 / 192.0;
            let n = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
            let f: f64 = coeffs
                .iter()
                .zip(basis.iter())
                .map(|(c, poly)| c * poly.eval(n))
                .sum();
            min_r = min_r.min(scale * (1.0 + f));
        }
    }
    if min_r <= 0.0 {
        return Err(CatalogError::NonpositiveRadius(min_r));
    }
    let north = cap_patch(
        Arc::new(RadialGraphMap {
            basis: Arc::clone(&basis),
            coeffs: coeffs.clone(),
            scale,
            frame: CapFrame { south: false },
        }),
        "radial-north",
    );
    let south = cap_patch(
        Arc::new(RadialGraphMap { basis, coeffs, scale, frame: CapFrame { south: true } }),
        "radial-south",
    );
    let mut surface = Surface {
        patches: vec![north, south],
        stitches: two_cap_stitches(),
        closed: true,
        label: "perturbed-sphere".into(),
    };
    orient_outward(&mut surface);
    Ok(surface)
}

struct RevolutionMap {
    piece: Piece,
}

impl PatchMap for RevolutionMap {
    fn position(&self, u: f64, v: f64) -> Vec3 {
        let (x, y) = self.piece.point(u);
        let (sv, cv) = v.sin_cos();
        Vec3::new(x * cv, y, x * sv)
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<PatchJet> {
        let (x, y) = self.piece.point(u);
        let (xd, yd) = self.piece.derivative(u);
        let (xdd, ydd) = self.piece.second_derivative(u);
        let (sv, cv) = v.sin_cos();
        Some(PatchJet {
            p: Vec3::new(x * cv, y, x * sv),
            ru: Vec3::new(xd * cv, yd, xd * sv),
            rv: Vec3::new(-x * sv, 0.0, x * cv),
            ruu: Vec3::new(xdd * cv, ydd, xdd * sv),
            ruv: Vec3::new(-xd * sv, 0.0, xd * cv),
            rvv: Vec3::new(-x * cv, 0.0, -x * sv),
        })
    }
}

/// Revolve a profile about the y-axis. Each piece becomes one patch,
/// stitched to its neighbors along shared profile junctions and to itself
/// across the angular seam. Endpoints on the axis close as poles.
pub fn make_revolution(profile: &ProfileCurve, label: &str) -> Result<Surface, CatalogError> {
    let n = profile.pieces.len();
    let total_len: f64 = profile.pieces.iter().map(|p| p.length_estimate()).sum();
    let mut patches = Vec::with_capacity(n);
    for (i, piece) in profile.pieces.iter().enumerate() {
        let frac = (piece.length_estimate() / total_len).max(0.05);
        let hint_u = (frac * n as f64 * 2.0).ceil().max(1.0) as u32;
        let mut patch = SurfacePatch::new(
            Arc::new(RevolutionMap { piece: *piece }),
            Rect::new(0.0, 1.0, 0.0, 2.0 * PI),
            format!("{label}/piece{i}"),
        )
        .with_res_hint(hint_u, 4);
        let mut degenerate = Vec::new();
        if profile.touches_axis(i, 0.0) {
            degenerate.push(Edge::UMin);
        }
        if profile.touches_axis(i, 1.0) {
            degenerate.push(Edge::UMax);
        }
        patch = patch.with_degenerate_edges(degenerate);
        patches.push(patch);
    }
    let mut stitches = Vec::new();
    for i in 0..n {
        stitches.push(Stitch { a: (i, Edge::VMin), b: (i, Edge::VMax), reversed: false });
    }
    let junctions = if profile.closed { n } else { n - 1 };
    for i in 0..junctions {
        let j = (i + 1) % n;
        if !profile.touches_axis(i, 1.0) {
            stitches.push(Stitch { a: (i, Edge::UMax), b: (j, Edge::UMin), reversed: false });
        }
    }
    // An open profile with both endpoints on the axis still closes up.
    let endpoints_on_axis = profile.touches_axis(0, 0.0) && profile.touches_axis(n - 1, 1.0);
    let closed = profile.closed || endpoints_on_axis;
    let mut surface =
        Surface { patches, stitches, closed, label: label.to_string() };
    surface.validate()?;
    if closed {
        orient_outward(&mut surface);
    }
    Ok(surface)
}

struct TubeMap {
    axis_radius: f64,
    tube_radius: f64,
}

impl PatchMap for TubeMap {
    // u: tube angle, v: revolution angle about the y-axis.
    fn position(&self, u: f64, v: f64) -> Vec3 {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let w = self.axis_radius + self.tube_radius * cu;
        Vec3::new(w * cv, self.tube_radius * su, w * sv)
    }

    fn analytic_jet(&self, u: f64, v: f64) -> Option<PatchJet> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let r = self.tube_radius;
        let w = self.axis_radius + r * cu;
        Some(PatchJet {
            p: Vec3::new(w * cv, r * su, w * sv),
            ru: Vec3::new(-r * su * cv, r * cu, -r * su * sv),
            rv: Vec3::new(-w * sv, 0.0, w * cv),
            ruu: Vec3::new(-r * cu * cv, -r * su, -r * cu * sv),
            ruv: Vec3::new(r * su * sv, 0.0, -r * su * cv),
            rvv: Vec3::new(-w * cv, 0.0, -w * sv),
        })
    }
}

/// Torus tube segment: tube of radius `tube_radius` around a horizontal
/// circle of radius `axis_radius`, swept through `angular_extent`.
/// A full sweep produces a closed torus; anything less is boundary-bearing.
pub fn make_tube_segment(
    axis_radius: f64,
    tube_radius: f64,
    angular_extent: f64,
) -> Result<Surface, CatalogError> {
    if tube_radius <= 0.0 {
        return Err(CatalogError::InvalidRadius(tube_radius));
    }
    if tube_radius >= axis_radius {
        return Err(CatalogError::SelfIntersecting { axis: axis_radius, tube: tube_radius });
    }
    let full = (angular_extent - 2.0 * PI).abs() < 1e-12;
    let patch = SurfacePatch::new(
        Arc::new(TubeMap { axis_radius, tube_radius }),
        Rect::new(0.0, 2.0 * PI, 0.0, angular_extent),
        "tube",
    )
    .with_res_hint(1, ((angular_extent / (2.0 * PI) * 2.0).ceil() as u32).max(1));
    let mut stitches = vec![Stitch { a: (0, Edge::UMin), b: (0, Edge::UMax), reversed: false }];
    if full {
        stitches.push(Stitch { a: (0, Edge::VMin), b: (0, Edge::VMax), reversed: false });
    }
    let mut surface = Surface {
        patches: vec![patch],
        stitches,
        closed: full,
        label: format!("tube(R={axis_radius},r={tube_radius})"),
    };
    surface.validate()?;
    if full {
        orient_outward(&mut surface);
    }
    Ok(surface)
}

/// Profile of a circle of radius `r` centered at `(R, 0)`: revolved, a torus.
pub fn circle_profile(big_r: f64, r: f64) -> ProfileCurve {
    let pieces = vec![
        Piece::Arc { center: (big_r, 0.0), radius: r, ang0: -PI / 2.0, ang1: PI / 2.0 },
        Piece::Arc { center: (big_r, 0.0), radius: r, ang0: PI / 2.0, ang1: 3.0 * PI / 2.0 },
    ];
    ProfileCurve::new(pieces, true).expect("circle profile is connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::curvature_sample;

    #[test]
    fn sphere_stitches_validate() {
        let s = make_sphere(Vec3::new(0.2, 0.0, -0.4), 1.3).unwrap();
        s.validate().unwrap();
    }

    #[test]
    fn sphere_rejects_bad_radius() {
        assert!(matches!(
            make_sphere(Vec3::new(0.0, 0.0, 0.0), -1.0),
            Err(CatalogError::InvalidRadius(_))
        ));
    }

    #[test]
    fn perturbed_sphere_zero_amplitude_is_round() {
        let s = make_perturbed_sphere(vec![SpherePoly::cos_polar(3)], vec![1.0], 0.0).unwrap();
        for patch in &s.patches {
            for k in 1..6 {
                let p = ParamPoint::new(0.3 * k as f64, 0.9 * k as f64);
                let c = curvature_sample(patch, p).unwrap();
                assert!((c.kappa1 - 1.0).abs() < 1e-9);
                assert!((c.kappa2 - 1.0).abs() < 1e-9);
                assert!((patch.position(p).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn perturbed_sphere_rejects_nonpositive_radius() {
        let r = make_perturbed_sphere(vec![SpherePoly::cos_polar(1)], vec![1.0], 1.5);
        assert!(matches!(r, Err(CatalogError::NonpositiveRadius(_))));
    }

    #[test]
    fn perturbed_analytic_jet_matches_fd() {
        let s =
            make_perturbed_sphere(vec![SpherePoly::cos_polar(3)], vec![1.0], 0.05).unwrap();
        let patch = &s.patches[0];
        for k in 1..8 {
            let p = ParamPoint::new(0.18 * k as f64, 0.7 * k as f64);
            let a = patch.jet(p);
            let f = patch.fd_jet(p);
            assert!(a.ru.distance(f.ru) < 1e-7);
            assert!(a.rv.distance(f.rv) < 1e-7);
            assert!(a.ruu.distance(f.ruu) < 1e-5);
            assert!(a.ruv.distance(f.ruv) < 1e-5);
            assert!(a.rvv.distance(f.rvv) < 1e-5);
        }
    }

    #[test]
    fn tube_rejects_self_intersection() {
        assert!(matches!(
            make_tube_segment(1.0, 1.5, 2.0 * PI),
            Err(CatalogError::SelfIntersecting { .. })
        ));
    }

    #[test]
    fn revolution_circle_matches_tube_torus() {
        let profile = circle_profile(2.0, 1.0);
        let rev = make_revolution(&profile, "torus").unwrap();
        let tube = make_tube_segment(2.0, 1.0, 2.0 * PI).unwrap();
        // Pointwise agreement after parameter alignment: both cover the
        // same torus; compare a few positions by nearest-distance.
        let mesh = crate::mesh::tessellate(&rev, 48).unwrap();
        for k in 0..12 {
            let p = tube.patches[0].position(ParamPoint::new(0.5 * k as f64, 0.4 * k as f64));
            let (d, _) = mesh.min_distance(p);
            assert!(d < 4e-3, "distance {d}");
        }
    }

    #[test]
    fn revolution_sphere_profile_closes() {
        // Half circle centered on the axis, endpoints on the axis.
        let profile = ProfileCurve::new(
            vec![Piece::Arc {
                center: (0.0, 0.0),
                radius: 1.0,
                ang0: -PI / 2.0,
                ang1: PI / 2.0,
            }],
            false,
        )
        .unwrap();
        let s = make_revolution(&profile, "rev-sphere").unwrap();
        assert!(s.closed);
        let (max, _, _) = s.max_abs_normal_curvature(32).unwrap();
        assert!((max - 1.0).abs() < 1e-6);
    }
}
