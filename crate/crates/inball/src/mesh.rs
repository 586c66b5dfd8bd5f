//! Watertight triangle meshes: tessellation of stitched surfaces, volume,
//! containment, distance, and topology queries.

use crate::catalog::Surface;
use crate::patch::ParamPoint;
use crate::vec3::Vec3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh is not watertight ({open} open edges, {bad} misoriented)")]
    NotWatertight { open: usize, bad: usize },
    #[error("stitch mismatch while welding: gap {0}")]
    StitchMismatch(f64),
    #[error("query point lies on the surface (distance {0})")]
    OnSurface(f64),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("obj parse error at line {0}")]
    ObjParse(usize),
}

/// Ball given by center and radius.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BallSpec {
    pub center: Vec3,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(center: Vec3, radius: f64) -> Self {
        assert!(radius > 0.0, "ball radius must be positive");
        Self { center, radius }
    }
}

/// Indexed triangle mesh, counter-clockwise seen from outside.
#[derive(Debug, Clone, Default)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
}

/// Result of a point-containment query; tangency cases get their own state
/// so rounding cannot flip a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Outside,
    OnSurface,
}

impl TriMesh {
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    fn tri(&self, t: [u32; 3]) -> (Vec3, Vec3, Vec3) {
        (
            self.vertices[t[0] as usize],
            self.vertices[t[1] as usize],
            self.vertices[t[2] as usize],
        )
    }

    /// Signed volume by the centroid form of the divergence theorem:
    /// `V = (1/3) sum centroid . (area vector)`.
    pub fn signed_volume(&self) -> f64 {
        let mut v = 0.0;
        for t in &self.triangles {
            let (a, b, c) = self.tri(*t);
            let centroid = (a + b + c) / 3.0;
            let area_vec = (b - a).cross(c - a) * 0.5;
            v += centroid.dot(area_vec);
        }
        v / 3.0
    }

    /// Enclosed volume of a watertight outward-oriented mesh.
    pub fn enclosed_volume(&self) -> Result<f64, MeshError> {
        self.check_watertight()?;
        Ok(self.signed_volume())
    }

    /// Map from undirected edges to (count, net orientation).
    fn edge_census(&self) -> HashMap<(u32, u32), (u32, i64)> {
        let mut edges: HashMap<(u32, u32), (u32, i64)> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let a = t[k];
                let b = t[(k + 1) % 3];
                let key = (a.min(b), a.max(b));
                let orient = if a < b { 1 } else { -1 };
                let e = edges.entry(key).or_insert((0, 0));
                e.0 += 1;
                e.1 += orient;
            }
        }
        edges
    }

    /// Every edge shared by exactly two triangles with opposite orientation.
    pub fn check_watertight(&self) -> Result<(), MeshError> {
        let mut open = 0;
        let mut bad = 0;
        for (_, (count, orient)) in self.edge_census() {
            if count != 2 {
                open += 1;
            } else if orient != 0 {
                bad += 1;
            }
        }
        if open == 0 && bad == 0 {
            Ok(())
        } else {
            Err(MeshError::NotWatertight { open, bad })
        }
    }

    pub fn is_watertight(&self) -> bool {
        self.check_watertight().is_ok()
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices.len() as i64;
        let f = self.triangles.len() as i64;
        let e = self.edge_census().len() as i64;
        v - e + f
    }

    /// Genus of a closed orientable mesh, `g = (2 - chi) / 2`.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Exact point-to-triangle minimum over all triangles, with the
    /// nearest surface point.
    pub fn min_distance(&self, q: Vec3) -> (f64, Vec3) {
        let mut best = f64::INFINITY;
        let mut best_point = q;
        for t in &self.triangles {
            let (a, b, c) = self.tri(*t);
            let p = closest_point_on_triangle(q, a, b, c);
            let d2 = (p - q).norm_squared();
            if d2 < best {
                best = d2;
                best_point = p;
            }
        }
        (best.sqrt(), best_point)
    }

    /// Ray-parity containment with random ray redraws near degenerate hits.
    /// Distance to the mesh below `1e-9 * bbox diagonal` reports
    /// [`Containment::OnSurface`] instead of a verdict.
    pub fn contains_point(&self, q: Vec3) -> Containment {
        let diag = self.bbox_diagonal();
        let (d, _) = self.min_distance(q);
        if d < 1e-9 * diag {
            return Containment::OnSurface;
        }
        let (lo, hi) = self.bounding_box();
        if q.x < lo.x || q.x > hi.x || q.y < lo.y || q.y > hi.y || q.z < lo.z || q.z > hi.z {
            return Containment::Outside;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba11);
        'redraw: for _ in 0..8 {
            let dir = loop {
                let v = Vec3::new(
                    rng.gen::<f64>() - 0.5,
                    rng.gen::<f64>() - 0.5,
                    rng.gen::<f64>() - 0.5,
                );
                if let Some(u) = v.normalized() {
                    break u;
                }
            };
            let mut crossings = 0u64;
            for t in &self.triangles {
                let (a, b, c) = self.tri(*t);
                match ray_triangle(q, dir, a, b, c) {
                    Hit::Miss => {}
                    Hit::Cross => crossings += 1,
                    Hit::Degenerate => continue 'redraw,
                }
            }
            return if crossings % 2 == 1 { Containment::Inside } else { Containment::Outside };
        }
        // All redraws hit degeneracies; fall back to nearest-feature side.
        Containment::Outside
    }

    /// `contains_point` as a plain boolean, with tangency as an error.
    pub fn contains_point_strict(&self, q: Vec3) -> Result<bool, MeshError> {
        match self.contains_point(q) {
            Containment::Inside => Ok(true),
            Containment::Outside => Ok(false),
            Containment::OnSurface => {
                let (d, _) = self.min_distance(q);
                Err(MeshError::OnSurface(d))
            }
        }
    }

    /// Ball containment: center inside and `min distance >= radius - tol`.
    /// Returns the margin `min distance - radius` and the nearest surface
    /// point (the witness of a tangency).
    pub fn contains_ball(&self, ball: BallSpec, tol: f64) -> BallVerdict {
        let (dist, witness) = self.min_distance(ball.center);
        let inside = matches!(self.contains_point(ball.center), Containment::Inside);
        BallVerdict {
            pass: inside && dist >= ball.radius - tol,
            margin: dist - ball.radius,
            nearest: witness,
            center_inside: inside,
        }
    }

    /// ASCII OBJ export (`v x y z`, `f i j k`, 1-based).
    pub fn write_obj<W: Write>(&self, mut w: W) -> Result<(), MeshError> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v.x, v.y, v.z)?;
        }
        for t in &self.triangles {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        Ok(())
    }

    pub fn save_obj(&self, path: &std::path::Path) -> Result<(), MeshError> {
        let file = std::fs::File::create(path)?;
        self.write_obj(std::io::BufWriter::new(file))
    }

    pub fn read_obj<R: BufRead>(r: R) -> Result<TriMesh, MeshError> {
        let mut mesh = TriMesh::default();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("v") => {
                    let mut next = || -> Result<f64, MeshError> {
                        parts
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or(MeshError::ObjParse(lineno + 1))
                    };
                    let (x, y, z) = (next()?, next()?, next()?);
                    mesh.vertices.push(Vec3::new(x, y, z));
                }
                Some("f") => {
                    let mut idx = [0u32; 3];
                    for slot in &mut idx {
                        let tok = parts.next().ok_or(MeshError::ObjParse(lineno + 1))?;
                        let first = tok.split('/').next().unwrap_or(tok);
                        let i: i64 =
                            first.parse().map_err(|_| MeshError::ObjParse(lineno + 1))?;
                        *slot = (i - 1) as u32;
                    }
                    mesh.triangles.push(idx);
                }
                _ => {}
            }
        }
        Ok(mesh)
    }
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BallVerdict {
    pub pass: bool,
    pub margin: f64,
    pub nearest: Vec3,
    pub center_inside: bool,
}

enum Hit {
    Miss,
    Cross,
    Degenerate,
}

/// Moller-Trumbore with a degeneracy band around edges and grazing rays.
fn ray_triangle(origin: Vec3, dir: Vec3, a: Vec3, b: Vec3, c: Vec3) -> Hit {
    let e1 = b - a;
    let e2 = c - a;
    let p = dir.cross(e2);
    let det = e1.dot(p);
    let scale = e1.norm() * e2.norm();
    if det.abs() < 1e-14 * scale {
        // Parallel ray; a grazing pass would be unreliable, but only
        // treat it as degenerate if the ray passes near the plane.
        let n = e1.cross(e2);
        let dist = (origin - a).dot(n);
        if dist.abs() < 1e-9 * n.norm() {
            return Hit::Degenerate;
        }
        return Hit::Miss;
    }
    let inv = 1.0 / det;
    let tvec = origin - a;
    let u = tvec.dot(p) * inv;
    let q = tvec.cross(e1);
    let v = dir.dot(q) * inv;
    let t = e2.dot(q) * inv;
    let eps = 1e-10;
    if u < -eps || v < -eps || u + v > 1.0 + eps || t.abs() < eps {
        if (u.abs() < eps || v.abs() < eps || (u + v - 1.0).abs() < eps) && t > -eps {
            // Near an edge or vertex: redraw the ray.
            if u > -eps && v > -eps && u + v < 1.0 + eps {
                return Hit::Degenerate;
            }
        }
        return Hit::Miss;
    }
    if t < 0.0 {
        return Hit::Miss;
    }
    if u < eps || v < eps || u + v > 1.0 - eps {
        return Hit::Degenerate;
    }
    Hit::Cross
}

/// Closest point on a triangle (Ericson, Real-Time Collision Detection).
pub fn closest_point_on_triangle(p: Vec3, a: Vec3, b: Vec3, c: Vec3) -> Vec3 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(ap);
    let d2 = ac.dot(ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = p - b;
    let d3 = ab.dot(bp);
    let d4 = ac.dot(bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return a + ab * v;
    }
    let cp = p - c;
    let d5 = ab.dot(cp);
    let d6 = ac.dot(cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return a + ac * w;
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + (c - b) * w;
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    a + ab * v + ac * w
}

/// Per-patch vertex index grid produced by the tessellator: `nu` by `nv`
/// cells, ids stored row-major over `(nu + 1) * (nv + 1)` grid points.
#[derive(Debug, Clone)]
pub struct PatchGrid {
    pub nu: u32,
    pub nv: u32,
    ids: Vec<u32>,
}

impl PatchGrid {
    pub fn id(&self, i: u32, j: u32) -> u32 {
        self.ids[(i * (self.nv + 1) + j) as usize]
    }
}

/// Tessellate a stitched surface into a triangle mesh.
///
/// Vertex positions are exact patch evaluations. Patch-boundary vertices
/// are welded at 1e-9 so stitched seams, polar closures, and fold circles
/// share vertices; degenerate triangles are dropped.
pub fn tessellate(surface: &Surface, density: u32) -> Result<TriMesh, MeshError> {
    tessellate_with_grids(surface, density).map(|(mesh, _)| mesh)
}

/// As [`tessellate`], additionally returning the per-patch index grids
/// (used by mesh-level surgery such as the fishbowl handle).
pub fn tessellate_with_grids(
    surface: &Surface,
    density: u32,
) -> Result<(TriMesh, Vec<PatchGrid>), MeshError> {
    let density = density.max(2);
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    let mut grids: Vec<PatchGrid> = Vec::new();
    // Weld map over boundary vertices only; interior grid vertices are
    // unique by construction.
    let mut weld: HashMap<(i64, i64, i64), u32> = HashMap::new();
    let weld_tol = 1e-9;
    let key_of = |p: Vec3| -> (i64, i64, i64) {
        (
            (p.x / weld_tol).round() as i64,
            (p.y / weld_tol).round() as i64,
            (p.z / weld_tol).round() as i64,
        )
    };

    for patch in &surface.patches {
        let nu = density * patch.res_hint.0;
        let nv = density * patch.res_hint.1;
        let mut grid = vec![0u32; ((nu + 1) * (nv + 1)) as usize];
        for i in 0..=nu {
            for j in 0..=nv {
                let u = patch.domain.u0 + patch.domain.u_extent() * i as f64 / nu as f64;
                let v = patch.domain.v0 + patch.domain.v_extent() * j as f64 / nv as f64;
                let p = patch.position(ParamPoint::new(u, v));
                let boundary = i == 0 || i == nu || j == 0 || j == nv;
                let idx = if boundary {
                    let key = key_of(p);
                    // Check neighboring buckets so near-boundary rounding
                    // cannot split coincident vertices.
                    let mut found = None;
                    'scan: for dx in -1..=1 {
                        for dy in -1..=1 {
                            for dz in -1..=1 {
                                let k = (key.0 + dx, key.1 + dy, key.2 + dz);
                                if let Some(&id) = weld.get(&k) {
                                    if vertices[id as usize].distance(p) <= weld_tol {
                                        found = Some(id);
                                        break 'scan;
                                    }
                                }
                            }
                        }
                    }
                    match found {
                        Some(id) => id,
                        None => {
                            let id = vertices.len() as u32;
                            vertices.push(p);
                            weld.insert(key, id);
                            id
                        }
                    }
                } else {
                    let id = vertices.len() as u32;
                    vertices.push(p);
                    id
                };
                grid[(i * (nv + 1) + j) as usize] = idx;
            }
        }
        grids.push(PatchGrid { nu, nv, ids: grid.clone() });
        let scale2 = {
            let ext = surface
                .patches
                .iter()
                .map(|p| {
                    p.position(ParamPoint::new(p.domain.u0, p.domain.v0))
                        .distance(p.position(ParamPoint::new(p.domain.u1, p.domain.v1)))
                })
                .fold(0.0f64, f64::max)
                .max(1e-12);
            ext * ext
        };
        for i in 0..nu {
            for j in 0..nv {
                let v00 = grid[(i * (nv + 1) + j) as usize];
                let v10 = grid[((i + 1) * (nv + 1) + j) as usize];
                let v01 = grid[(i * (nv + 1) + j + 1) as usize];
                let v11 = grid[((i + 1) * (nv + 1) + j + 1) as usize];
                for tri in [[v00, v10, v11], [v00, v11, v01]] {
                    if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                        continue;
                    }
                    let (a, b, c) = (
                        vertices[tri[0] as usize],
                        vertices[tri[1] as usize],
                        vertices[tri[2] as usize],
                    );
                    let area = (b - a).cross(c - a).norm() * 0.5;
                    if area <= 1e-14 * scale2 {
                        continue;
                    }
                    // Winding: the (u, v) grid order gives a normal along
                    // r_u x r_v; flip when the patch's outward is flipped.
                    if patch.flip_normal {
                        triangles.push([tri[0], tri[2], tri[1]]);
                    } else {
                        triangles.push(tri);
                    }
                }
            }
        }
    }
    let mesh = TriMesh { vertices, triangles };
    if surface.closed {
        mesh.check_watertight().map_err(|e| match e {
            MeshError::NotWatertight { .. } => MeshError::StitchMismatch(weld_tol),
            other => other,
        })?;
    }
    Ok((mesh, grids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_sphere, make_tube_segment};
    use std::f64::consts::PI;

    fn unit_sphere_mesh(density: u32) -> TriMesh {
        let s = make_sphere(Vec3::new(0.0, 0.0, 0.0), 1.0).unwrap();
        tessellate(&s, density).unwrap()
    }

    #[test]
    fn sphere_mesh_is_watertight_chi_two() {
        let mesh = unit_sphere_mesh(24);
        mesh.check_watertight().unwrap();
        assert_eq!(mesh.euler_characteristic(), 2);
        assert_eq!(mesh.genus(), 0);
    }

    #[test]
    fn torus_mesh_chi_zero() {
        let t = make_tube_segment(2.0, 1.0, 2.0 * PI).unwrap();
        let mesh = tessellate(&t, 32).unwrap();
        mesh.check_watertight().unwrap();
        assert_eq!(mesh.euler_characteristic(), 0);
        assert_eq!(mesh.genus(), 1);
    }

    #[test]
    fn sphere_volume_converges_second_order() {
        let exact = 4.0 * PI / 3.0;
        let v1 = unit_sphere_mesh(16).enclosed_volume().unwrap();
        let v2 = unit_sphere_mesh(32).enclosed_volume().unwrap();
        let e1 = (exact - v1).abs();
        let e2 = (exact - v2).abs();
        let rate = (e1 / e2).log2();
        assert!(rate > 1.7 && rate < 2.3, "rate = {rate}");
    }

    #[test]
    fn sphere_volume_at_high_density() {
        let v = unit_sphere_mesh(128).enclosed_volume().unwrap();
        let exact = 4.0 * PI / 3.0;
        assert!((v - exact).abs() / exact < 1e-3, "v = {v}");
    }

    #[test]
    fn torus_volume_matches_pappus() {
        let t = make_tube_segment(2.0, 1.0, 2.0 * PI).unwrap();
        let v = tessellate(&t, 128).unwrap().enclosed_volume().unwrap();
        let pappus = 2.0 * PI * 2.0 * PI; // 2 pi R * pi r^2
        assert!((v - pappus).abs() / pappus < 1e-3, "v = {v}");
    }

    #[test]
    fn containment_basic() {
        let mesh = unit_sphere_mesh(32);
        assert_eq!(mesh.contains_point(Vec3::new(0.0, 0.0, 0.0)), Containment::Inside);
        assert_eq!(mesh.contains_point(Vec3::new(2.0, 0.0, 0.0)), Containment::Outside);
        assert_eq!(mesh.contains_point(Vec3::new(0.3, -0.2, 0.1)), Containment::Inside);
    }

    #[test]
    fn offset_sphere_excludes_origin() {
        let s = make_sphere(Vec3::new(1.05, 0.0, 0.0), 1.0).unwrap();
        let mesh = tessellate(&s, 48).unwrap();
        assert_eq!(mesh.contains_point(Vec3::new(0.0, 0.0, 0.0)), Containment::Outside);
    }

    #[test]
    fn contains_ball_tangent_cases() {
        let mesh = unit_sphere_mesh(96);
        let v = mesh.contains_ball(BallSpec::new(Vec3::new(0.0, 0.0, 0.0), 0.99), 1e-6);
        assert!(v.pass, "margin = {}", v.margin);
        let v = mesh.contains_ball(BallSpec::new(Vec3::new(0.0, 0.0, 0.0), 1.01), 1e-6);
        assert!(!v.pass);
        assert!((v.margin + 0.01).abs() < 2e-3);
    }

    #[test]
    fn min_distance_from_outside() {
        let mesh = unit_sphere_mesh(64);
        let (d, p) = mesh.min_distance(Vec3::new(3.0, 0.0, 0.0));
        assert!((d - 2.0).abs() < 1e-3);
        assert!(p.distance(Vec3::new(1.0, 0.0, 0.0)) < 2e-2);
    }

    #[test]
    fn cube_corner_distance() {
        // Hand-built cube [-1,1]^3.
        let mut mesh = TriMesh::default();
        for z in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for x in [-1.0, 1.0] {
                    mesh.vertices.push(Vec3::new(x, y, z));
                }
            }
        }
        let quads = [
            [0, 1, 3, 2],
            [4, 6, 7, 5],
            [0, 4, 5, 1],
            [2, 3, 7, 6],
            [0, 2, 6, 4],
            [1, 5, 7, 3],
        ];
        for q in quads {
            mesh.triangles.push([q[0], q[1], q[2]]);
            mesh.triangles.push([q[0], q[2], q[3]]);
        }
        let (d, p) = mesh.min_distance(Vec3::new(2.0, 2.0, 2.0));
        assert!((d - 3.0f64.sqrt()).abs() < 1e-12);
        assert!(p.distance(Vec3::new(1.0, 1.0, 1.0)) < 1e-12);
        // Volume = 8, outward orientation check.
        mesh.check_watertight().unwrap();
        assert!((mesh.signed_volume() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn obj_round_trip() {
        let mesh = unit_sphere_mesh(8);
        let mut buf = Vec::new();
        mesh.write_obj(&mut buf).unwrap();
        let back = TriMesh::read_obj(std::io::BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(back.vertices.len(), mesh.vertices.len());
        assert_eq!(back.triangles.len(), mesh.triangles.len());
        assert!((back.signed_volume() - mesh.signed_volume()).abs() < 1e-12);
    }
}
