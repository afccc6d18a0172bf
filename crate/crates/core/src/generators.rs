//! Canonical extremal vertex sets and the text vertex-file format.
//!
//! A vertex file holds the vertex count on its first line, then one line of
//! three coordinates per vertex. An optional `EDGES` line may follow, with
//! one pair of 0-based vertex indices per line; when present, it must agree
//! with the computed diameter graph. Blank lines and lines starting with `#`
//! are ignored.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::Point3;

use crate::error::{Error, Result};
use crate::polytope::{build_diameter_graph, edge, validate_vertex_set, Edge, VertexSet, DEFAULT_TOL};

/// The regular tetrahedron of edge length one.
pub fn regular_tetrahedron() -> VertexSet {
    let h = 1.0 / (2.0 * 2f64.sqrt());
    let points = vec![
        Point3::new(0.5, 0.0, -h),
        Point3::new(-0.5, 0.0, -h),
        Point3::new(0.0, 0.5, h),
        Point3::new(0.0, -0.5, h),
    ];
    validate_vertex_set(points, DEFAULT_TOL).expect("regular tetrahedron is extremal")
}

/// Regular Meissner pyramid over `2k + 1` base vertices.
///
/// The apex is vertex 0 at the origin. The base vertices `1..=2k+1` are
/// equally spaced on a circle of the unit sphere about the apex, with radius
/// chosen so that base vertices `k` steps apart are at distance one. `k = 1`
/// gives the regular tetrahedron.
pub fn regular_pyramid(k: usize) -> Result<VertexSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("pyramid parameter k must be at least 1".into()));
    }
    let n = 2 * k + 1;
    let sin_r = 1.0 / (2.0 * (PI * k as f64 / n as f64).sin());
    let cos_r = (1.0 - sin_r * sin_r).sqrt();
    let mut points = Vec::with_capacity(n + 1);
    points.push(Point3::origin());
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        points.push(Point3::new(sin_r * t.cos(), sin_r * t.sin(), cos_r));
    }
    validate_vertex_set(points, DEFAULT_TOL)
}

/// Contents of a vertex file before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFile {
    pub points: Vec<Point3<f64>>,
    pub edges: Option<Vec<Edge>>,
}

pub fn parse_vertex_file(text: &str) -> Result<VertexFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (line, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected the vertex count".into()))?;
    let m: usize = first
        .parse()
        .map_err(|_| parse_err(line, format!("invalid vertex count {first:?}")))?;
    if m < 4 {
        return Err(parse_err(line, format!("at least 4 vertices are required, got {m}")));
    }

    let mut points = Vec::with_capacity(m);
    for i in 0..m {
        let (line, text) = lines
            .next()
            .ok_or_else(|| parse_err(line, format!("expected {m} vertex lines, found {i}")))?;
        let coords = text
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_err(line, format!("invalid coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != 3 {
            return Err(parse_err(line, format!("expected 3 coordinates, found {}", coords.len())));
        }
        points.push(Point3::new(coords[0], coords[1], coords[2]));
    }

    let edges = match lines.next() {
        None => None,
        Some((_, "EDGES")) => {
            let mut edges = Vec::new();
            for (line, text) in lines.by_ref() {
                let idx = text
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .ok()
                            .filter(|&v| v < m)
                            .ok_or_else(|| parse_err(line, format!("invalid vertex index {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if idx.len() != 2 || idx[0] == idx[1] {
                    return Err(parse_err(line, "expected two distinct vertex indices".into()));
                }
                edges.push(edge(idx[0], idx[1]));
            }
            Some(edges)
        }
        Some((line, other)) => {
            return Err(parse_err(line, format!("unexpected content {other:?} after the vertex lines")));
        }
    };
    Ok(VertexFile { points, edges })
}

/// Parses, validates and cross-checks an optional `EDGES` section.
pub fn vertex_set_from_str(text: &str, tol: f64) -> Result<VertexSet> {
    let file = parse_vertex_file(text)?;
    let vs = validate_vertex_set(file.points, tol)?;
    if let Some(mut listed) = file.edges {
        listed.sort_unstable();
        listed.dedup();
        let graph = build_diameter_graph(&vs)?;
        if listed != graph.edges() {
            let missing: Vec<_> = graph.edges().iter().filter(|e| !listed.contains(e)).collect();
            let extra: Vec<_> = listed.iter().filter(|e| !graph.edges().contains(e)).collect();
            return Err(Error::ValidationMismatch(format!(
                "missing {missing:?}, unexpected {extra:?}"
            )));
        }
    }
    Ok(vs)
}

pub fn load_vertex_file(path: impl AsRef<Path>, tol: f64) -> Result<VertexSet> {
    let text = std::fs::read_to_string(path)?;
    vertex_set_from_str(&text, tol)
}

/// Formats points with enough digits to round-trip exactly.
pub fn format_vertex_file(points: &[Point3<f64>], edges: Option<&[Edge]>) -> String {
    let mut out = format!("{}\n", points.len());
    for p in points {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z);
    }
    if let Some(edges) = edges {
        out.push_str("EDGES\n");
        for (a, b) in edges {
            let _ = writeln!(out, "{a} {b}");
        }
    }
    out
}

pub fn save_vertex_file(vs: &VertexSet, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_vertex_file(vs.points(), None))?;
    Ok(())
}
