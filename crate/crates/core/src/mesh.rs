//! Triangle meshes of Meissner and Reuleaux polyhedra, with OBJ and PLY
//! output.
//!
//! Every patch is sampled with `2^refinement` segments along each boundary
//! curve. Face patches are fans of spherical triangles, wedge halves are
//! interpolated between a geodesic and the edge arc on one supporting sphere,
//! and spindles are swept by the great-circle meridians of the balls centered
//! along the retained arc.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::ops::Range;
use std::path::Path;

use nalgebra::{Point3, Vector3};

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::polytope::{face_cycle, MeissnerPolyhedron};

/// Vertices closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3<f64>>,
    pub triangles: Vec<[usize; 3]>,
    /// Named runs of consecutive triangles.
    pub groups: Vec<(String, Range<usize>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl std::str::FromStr for MeshFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(Self::Obj),
            "ply" => Ok(Self::Ply),
            other => Err(Error::InvalidArgument(format!("unknown mesh format {other:?}"))),
        }
    }
}

/// Accumulates triangles, merging coincident vertices through a hash grid.
struct MeshBuilder {
    mesh: TriangleMesh,
    grid: HashMap<(i64, i64, i64), Vec<usize>>,
    interior: Point3<f64>,
    group_start: usize,
}

const CELL: f64 = 1e-9;

impl MeshBuilder {
    fn new(interior: Point3<f64>) -> Self {
        Self {
            mesh: TriangleMesh::default(),
            grid: HashMap::new(),
            interior,
            group_start: 0,
        }
    }

    fn cell(p: &Point3<f64>) -> (i64, i64, i64) {
        let q = |v: f64| (v / CELL).floor() as i64;
        (q(p.x), q(p.y), q(p.z))
    }

    fn vertex(&mut self, p: Point3<f64>) -> usize {
        let (cx, cy, cz) = Self::cell(&p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(ids) = self.grid.get(&(cx + dx, cy + dy, cz + dz)) {
                        if let Some(&id) = ids.iter().find(|&&id| (self.mesh.vertices[id] - p).norm() <= MERGE_TOL) {
                            return id;
                        }
                    }
                }
            }
        }
        let id = self.mesh.vertices.len();
        self.mesh.vertices.push(p);
        self.grid.entry((cx, cy, cz)).or_default().push(id);
        id
    }

    /// Adds a triangle facing away from the interior point; drops it if two
    /// corners merged.
    fn triangle(&mut self, a: usize, b: usize, c: usize) {
        if a == b || b == c || a == c {
            return;
        }
        let v = &self.mesh.vertices;
        let n = (v[b] - v[a]).cross(&(v[c] - v[a]));
        let outward = (v[a] + (v[b] - v[a] + (v[c] - v[a])) / 3.0) - self.interior;
        self.mesh
            .triangles
            .push(if n.dot(&outward) >= 0.0 { [a, b, c] } else { [a, c, b] });
    }

    /// Adds a grid of `rows x cols` points as quads split into triangles.
    fn grid_patch(&mut self, rows: usize, cols: usize, point: impl Fn(usize, usize) -> Point3<f64>) {
        let ids: Vec<Vec<usize>> = (0..=rows)
            .map(|i| (0..=cols).map(|j| self.vertex(point(i, j))).collect())
            .collect();
        for i in 0..rows {
            for j in 0..cols {
                let (a, b, c, d) = (ids[i][j], ids[i + 1][j], ids[i + 1][j + 1], ids[i][j + 1]);
                self.triangle(a, b, c);
                self.triangle(a, c, d);
            }
        }
    }

    fn end_group(&mut self, name: String) {
        let end = self.mesh.triangles.len();
        self.mesh.groups.push((name, self.group_start..end));
        self.group_start = end;
    }
}

/// `c + normalize(Σ w_i d_i)`: a point of the unit sphere about `c`.
fn on_sphere(c: &Point3<f64>, dirs: &[(f64, Vector3<f64>)]) -> Point3<f64> {
    let v: Vector3<f64> = dirs.iter().map(|(w, d)| d * *w).sum();
    c + v.normalize()
}

/// Spherical polygon on the unit sphere about `x` with the given corners,
/// fanned from the normalized corner centroid.
fn face_patch(b: &mut MeshBuilder, x: &Point3<f64>, corners: &[Point3<f64>], n: usize) {
    let dirs: Vec<Vector3<f64>> = corners.iter().map(|c| c - x).collect();
    let mid: Vector3<f64> = dirs.iter().sum::<Vector3<f64>>().normalize();
    let k = dirs.len();
    for s in 0..k {
        let (p, q) = (dirs[s], dirs[(s + 1) % k]);
        // Barycentric grid: row i has n - i + 1 points.
        let rows: Vec<Vec<usize>> = (0..=n)
            .map(|i| {
                (0..=n - i)
                    .map(|j| {
                        let w0 = (n - i - j) as f64;
                        b.vertex(on_sphere(x, &[(w0, mid), (j as f64, p), (i as f64, q)]))
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n - i {
                b.triangle(rows[i][j], rows[i][j + 1], rows[i + 1][j]);
                if j + 1 < n - i {
                    b.triangle(rows[i][j + 1], rows[i + 1][j + 1], rows[i + 1][j]);
                }
            }
        }
    }
}

/// Geodesic point on the unit sphere about `c` between `a` and `b`.
fn geodesic_point(c: &Point3<f64>, a: &Point3<f64>, b: &Point3<f64>, i: usize, n: usize) -> Point3<f64> {
    on_sphere(c, &[((n - i) as f64, a - c), (i as f64, b - c)])
}

fn arc_point(arc: &Arc, i: usize, n: usize) -> Point3<f64> {
    arc.point_at(arc.start + arc.sweep() * i as f64 / n as f64)
}

/// The half of the wedge around `arc` (from `a` to `b`) lying on the unit
/// sphere about `c`.
fn wedge_half(builder: &mut MeshBuilder, c: &Point3<f64>, a: &Point3<f64>, b: &Point3<f64>, arc: &Arc, n: usize) {
    builder.grid_patch(n, n, |i, j| {
        let g = geodesic_point(c, a, b, i, n);
        let s = arc_point(arc, i, n);
        on_sphere(c, &[((n - j) as f64, g - c), (j as f64, s - c)])
    });
}

/// Spindle through `a` and `b` swept by the balls centered along `centers`.
fn spindle(builder: &mut MeshBuilder, a: &Point3<f64>, b: &Point3<f64>, centers: &Arc, n: usize) {
    builder.grid_patch(n, n, |i, j| {
        let c = arc_point(centers, i, n);
        geodesic_point(&c, a, b, j, n)
    });
}

fn interior_point(m: &MeissnerPolyhedron) -> Point3<f64> {
    let pts = m.vertices().points();
    Point3::from(pts.iter().map(|p| p.coords).sum::<Vector3<f64>>() / pts.len() as f64)
}

fn check_refinement(refinement: u32) -> Result<usize> {
    if !(1..=10).contains(&refinement) {
        return Err(Error::InvalidArgument(format!(
            "refinement must be between 1 and 10, got {refinement}"
        )));
    }
    Ok(1usize << refinement)
}

fn faces(builder: &mut MeshBuilder, m: &MeissnerPolyhedron, n: usize) -> Result<()> {
    let pts = m.vertices().points();
    for x in 0..pts.len() {
        let cycle = face_cycle(pts, m.graph(), x)?;
        let corners: Vec<_> = cycle.iter().map(|&j| pts[j]).collect();
        face_patch(builder, &pts[x], &corners, n);
        builder.end_group(format!("face_{x}"));
    }
    Ok(())
}

/// Surface mesh of the Meissner polyhedron with `2^refinement` segments per
/// boundary curve.
pub fn tessellate(m: &MeissnerPolyhedron, refinement: u32) -> Result<TriangleMesh> {
    let n = check_refinement(refinement)?;
    let pts = m.vertices().points();
    let mut b = MeshBuilder::new(interior_point(m));
    faces(&mut b, m, n)?;
    for (i, o) in m.oriented().enumerate() {
        let (x, y) = (pts[o.retained.0], pts[o.retained.1]);
        let (xd, yd) = (pts[o.smoothed.0], pts[o.smoothed.1]);
        // The retained arc runs from x to y on dB(x') ∩ dB(y').
        let arc = o.retained_arc;
        wedge_half(&mut b, &xd, &x, &y, arc, n);
        wedge_half(&mut b, &yd, &x, &y, arc, n);
        b.end_group(format!("wedge_{i}"));
        spindle(&mut b, &xd, &yd, arc, n);
        b.end_group(format!("spindle_{i}"));
    }
    Ok(b.mesh)
}

/// Surface mesh of the Reuleaux polyhedron on the same vertex set: faces and
/// the wedges of both edges of every pair.
pub fn tessellate_reuleaux(m: &MeissnerPolyhedron, refinement: u32) -> Result<TriangleMesh> {
    let n = check_refinement(refinement)?;
    let pts = m.vertices().points();
    let mut b = MeshBuilder::new(interior_point(m));
    faces(&mut b, m, n)?;
    for (i, p) in m.pairs().iter().enumerate() {
        let g = &p.geometry;
        for (e, d, arc) in [(p.e, p.e_dual, &g.arc_e), (p.e_dual, p.e, &g.arc_dual)] {
            let (x, y) = (pts[e.0], pts[e.1]);
            wedge_half(&mut b, &pts[d.0], &x, &y, arc, n);
            wedge_half(&mut b, &pts[d.1], &x, &y, arc, n);
        }
        b.end_group(format!("wedge_{i}"));
    }
    Ok(b.mesh)
}

/// Unit sphere about the origin from a subdivided icosahedron.
pub fn icosphere(depth: u32) -> TriangleMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ];
    let mut vertices: Vec<Point3<f64>> = raw
        .iter()
        .map(|&(x, y, z)| Point3::from(Vector3::new(x, y, z).normalize()))
        .collect();
    let mut triangles: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..depth {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point3<f64>>| {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                vertices.push(Point3::from((vertices[a].coords + vertices[b].coords).normalize()));
                vertices.len() - 1
            })
        };
        triangles = triangles
            .iter()
            .flat_map(|&[a, b, c]| {
                let ab = mid(a, b, &mut vertices);
                let bc = mid(b, c, &mut vertices);
                let ca = mid(c, a, &mut vertices);
                [[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]
            })
            .collect();
    }
    let count = triangles.len();
    TriangleMesh {
        vertices,
        triangles,
        groups: vec![("sphere".into(), 0..count)],
    }
}

pub fn mesh_area(mesh: &TriangleMesh) -> f64 {
    mesh.triangles
        .iter()
        .map(|&[a, b, c]| {
            let v = &mesh.vertices;
            (v[b] - v[a]).cross(&(v[c] - v[a])).norm() / 2.0
        })
        .sum()
}

/// Number of uses of every undirected edge, and whether each use pairs with
/// one of opposite direction.
fn edge_uses(mesh: &TriangleMesh) -> HashMap<(usize, usize), (usize, i64)> {
    let mut uses: HashMap<(usize, usize), (usize, i64)> = HashMap::new();
    for t in &mesh.triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let entry = uses.entry((a.min(b), a.max(b))).or_default();
            entry.0 += 1;
            entry.1 += if a < b { 1 } else { -1 };
        }
    }
    uses
}

/// `V - E + F`, counting only vertices used by some triangle.
pub fn euler_characteristic(mesh: &TriangleMesh) -> i64 {
    let mut used = vec![false; mesh.vertices.len()];
    for t in &mesh.triangles {
        for &v in t {
            used[v] = true;
        }
    }
    let v = used.iter().filter(|&&u| u).count() as i64;
    v - edge_uses(mesh).len() as i64 + mesh.triangles.len() as i64
}

/// Closed, consistently oriented 2-manifold test: every edge is shared by
/// exactly two triangles that traverse it in opposite directions.
pub fn is_watertight(mesh: &TriangleMesh) -> bool {
    edge_uses(mesh).values().all(|&(count, balance)| count == 2 && balance == 0)
}

pub fn write_obj<W: Write>(mesh: &TriangleMesh, mut out: W) -> Result<()> {
    let mut s = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(s, "v {} {} {}", v.x, v.y, v.z);
    }
    let write_faces = |s: &mut String, range: Range<usize>| {
        for t in &mesh.triangles[range] {
            let _ = writeln!(s, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
    };
    if mesh.groups.is_empty() {
        write_faces(&mut s, 0..mesh.triangles.len());
    }
    for (name, range) in &mesh.groups {
        let _ = writeln!(s, "g {name}");
        write_faces(&mut s, range.clone());
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_ply<W: Write>(mesh: &TriangleMesh, mut out: W) -> Result<()> {
    let mut s = format!(
        "ply\nformat ascii 1.0\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\n\
         element face {}\nproperty list uchar int vertex_indices\nend_header\n",
        mesh.vertices.len(),
        mesh.triangles.len()
    );
    for v in &mesh.vertices {
        let _ = writeln!(s, "{} {} {}", v.x, v.y, v.z);
    }
    for t in &mesh.triangles {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_mesh(mesh: &TriangleMesh, path: impl AsRef<Path>, format: MeshFormat) -> Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    match format {
        MeshFormat::Obj => write_obj(mesh, file),
        MeshFormat::Ply => write_ply(mesh, file),
    }
}

/// Reads the `v`, `f` and `g` lines of an OBJ file with triangular faces.
pub fn read_obj<R: Read>(input: R) -> Result<TriangleMesh> {
    let mut mesh = TriangleMesh::default();
    let mut current: Option<(String, usize)> = None;
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let err = |message: String| Error::Parse { line: idx + 1, message };
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("v") => {
                let c = tok
                    .map(|t| t.parse::<f64>().map_err(|_| err(format!("invalid coordinate {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if c.len() < 3 {
                    return Err(err("vertex needs 3 coordinates".into()));
                }
                mesh.vertices.push(Point3::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let ids = tok
                    .map(|t| {
                        let first = t.split('/').next().unwrap_or("");
                        first
                            .parse::<usize>()
                            .ok()
                            .filter(|&i| i >= 1)
                            .map(|i| i - 1)
                            .ok_or_else(|| err(format!("invalid face index {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if ids.len() != 3 {
                    return Err(err(format!("expected a triangle, found {} indices", ids.len())));
                }
                mesh.triangles.push([ids[0], ids[1], ids[2]]);
            }
            Some("g") => {
                if let Some((name, start)) = current.take() {
                    mesh.groups.push((name, start..mesh.triangles.len()));
                }
                current = Some((tok.collect::<Vec<_>>().join(" "), mesh.triangles.len()));
            }
            _ => {}
        }
    }
    if let Some((name, start)) = current {
        mesh.groups.push((name, start..mesh.triangles.len()));
    }
    if let Some(t) = mesh.triangles.iter().find(|t| t.iter().any(|&i| i >= mesh.vertices.len())) {
        return Err(Error::Parse {
            line: 0,
            message: format!("face {t:?} references a missing vertex"),
        });
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{regular_pyramid, regular_tetrahedron};
    use crate::polytope::reuleaux_area;
    use std::f64::consts::PI;

    fn tetra() -> MeissnerPolyhedron {
        MeissnerPolyhedron::with_optimal_smoothing(regular_tetrahedron()).unwrap()
    }

    #[test]
    fn icosphere_area() {
        let s = icosphere(5);
        assert!(((mesh_area(&s) - 4.0 * PI) / (4.0 * PI)).abs() < 1e-3);
        assert_eq!(euler_characteristic(&s), 2);
        assert!(is_watertight(&s));
    }

    #[test]
    fn tetrahedron_mesh_is_closed_sphere() {
        let m = tetra();
        for r in 1..=4 {
            let mesh = tessellate(&m, r).unwrap();
            assert_eq!(euler_characteristic(&mesh), 2, "refinement {r}");
            assert!(is_watertight(&mesh), "refinement {r}");
        }
        let mesh = tessellate(&m, 4).unwrap();
        assert!(((mesh_area(&mesh) - m.area()) / m.area()).abs() < 0.01);
        let names: Vec<_> = mesh.groups.iter().map(|g| g.0.as_str()).collect();
        assert_eq!(names.iter().filter(|n| n.starts_with("face_")).count(), 4);
        assert_eq!(names.iter().filter(|n| n.starts_with("spindle_")).count(), 3);
    }

    #[test]
    fn pyramid_meshes_are_closed() {
        let m = MeissnerPolyhedron::with_optimal_smoothing(regular_pyramid(2).unwrap()).unwrap();
        let mesh = tessellate(&m, 3).unwrap();
        assert_eq!(euler_characteristic(&mesh), 2);
        assert!(is_watertight(&mesh));
        let r = tessellate_reuleaux(&m, 3).unwrap();
        assert_eq!(euler_characteristic(&r), 2);
        assert!(is_watertight(&r));
    }

    #[test]
    fn vertices_lie_on_body_boundary() {
        let m = tetra();
        let system = crate::oracle::BallSystem::meissner(&m);
        let mesh = tessellate(&m, 3).unwrap();
        for v in &mesh.vertices {
            let far = system
                .point_centers
                .iter()
                .map(|c| (v - c).norm())
                .chain(system.arc_centers.iter().map(|a| a.max_distance(v)))
                .fold(0.0, f64::max);
            assert!((far - 1.0).abs() < 1e-9, "vertex {v:?} at {far}");
        }
    }

    #[test]
    fn reuleaux_mesh_area() {
        let m = tetra();
        let mesh = tessellate_reuleaux(&m, 4).unwrap();
        assert!(is_watertight(&mesh));
        let target = reuleaux_area(m.pairs());
        assert!(((mesh_area(&mesh) - target) / target).abs() < 0.01);
    }

    #[test]
    fn second_order_convergence() {
        let m = tetra();
        let err: Vec<f64> = (2..=5)
            .map(|r| (m.area() - mesh_area(&tessellate(&m, r).unwrap())).abs())
            .collect();
        for w in err.windows(2) {
            let ratio = w[0] / w[1];
            assert!(ratio > 3.0 && ratio < 5.0, "{err:?}");
        }
    }

    #[test]
    fn obj_round_trip() {
        let mesh = tessellate(&tetra(), 2).unwrap();
        let mut buf = Vec::new();
        write_obj(&mesh, &mut buf).unwrap();
        let back = read_obj(buf.as_slice()).unwrap();
        assert_eq!(back.vertices.len(), mesh.vertices.len());
        assert_eq!(back.triangles, mesh.triangles);
        assert_eq!(back.groups, mesh.groups);
        assert_eq!(back.vertices, mesh.vertices);
    }

    #[test]
    fn ply_header_counts() {
        let mesh = icosphere(1);
        let mut buf = Vec::new();
        write_ply(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("element vertex 42\n"));
        assert!(text.contains("element face 80\n"));
        assert_eq!(text.lines().count(), 9 + 42 + 80);
    }

    #[test]
    fn refinement_bounds() {
        assert!(tessellate(&tetra(), 0).is_err());
        assert!(tessellate(&tetra(), 11).is_err());
    }
}
