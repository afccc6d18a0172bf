use nalgebra::Point3;

use crate::error::{Error, Result};

/// Default absolute tolerance for deciding that two vertices are at unit
/// distance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An unordered vertex pair stored with the smaller index first.
pub type Edge = (usize, usize);

pub(crate) fn edge(a: usize, b: usize) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A validated extremal set of diameter one.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    points: Vec<Point3<f64>>,
    tol: f64,
    diameters: usize,
    max_distance: f64,
}

impl VertexSet {
    pub fn points(&self) -> &[Point3<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point3<f64> {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Number of pairs at unit distance (within tolerance).
    pub fn diameter_count(&self) -> usize {
        self.diameters
    }

    pub fn max_distance(&self) -> f64 {
        self.max_distance
    }

    pub fn into_points(self) -> Vec<Point3<f64>> {
        self.points
    }
}

/// Checks that `points` has diameter one and exactly `2m - 2` diametric
/// pairs.
pub fn validate_vertex_set(points: Vec<Point3<f64>>, tol: f64) -> Result<VertexSet> {
    let m = points.len();
    if m < 4 {
        return Err(Error::TooFewVertices(m));
    }
    let mut max_distance = 0.0f64;
    let mut diameters = 0;
    for i in 0..m {
        for j in i + 1..m {
            let d = (points[i] - points[j]).norm();
            if !d.is_finite() || d > 1.0 + tol {
                return Err(Error::DiameterViolation {
                    pair: Some((i, j)),
                    distance: d,
                });
            }
            max_distance = max_distance.max(d);
            if (d - 1.0).abs() <= tol {
                diameters += 1;
            }
        }
    }
    if diameters != 2 * m - 2 {
        return Err(Error::NotExtremal {
            found: diameters,
            expected: 2 * m - 2,
        });
    }
    Ok(VertexSet {
        points,
        tol,
        diameters,
        max_distance,
    })
}

/// The graph whose edges join vertices at unit distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterGraph {
    m: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl DiameterGraph {
    /// Builds a graph from an explicit edge list; duplicates are merged and
    /// the list is sorted.
    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .filter(|&(a, b)| a != b && a < m && b < m)
            .map(|(a, b)| edge(a, b))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); m];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self { m, edges, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Vertex pairs not joined by an edge.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in a + 1..self.m {
                if !self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn unit_distance_edges(points: &[Point3<f64>], tol: f64) -> Vec<Edge> {
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if ((points[i] - points[j]).norm() - 1.0).abs() <= tol {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn build_diameter_graph(vs: &VertexSet) -> Result<DiameterGraph> {
    let edges = unit_distance_edges(vs.points(), vs.tol());
    let m = vs.len();
    if edges.len() != 2 * m - 2 {
        return Err(Error::NotExtremal {
            found: edges.len(),
            expected: 2 * m - 2,
        });
    }
    Ok(DiameterGraph::from_edges(m, edges))
}
