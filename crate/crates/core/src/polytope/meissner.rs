use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::dual::{find_dual_pairs, DualEdgePair};
use super::vertex_set::{build_diameter_graph, DiameterGraph, Edge, VertexSet};
use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::spherical::{self, PairLengths};

/// Largest number of dual pairs for which all smoothings are enumerated.
pub const ENUMERATION_LIMIT: usize = 20;

/// Lengths within this margin are treated as equal by [`optimal_smoothing`].
const TIE_TOL: f64 = 1e-12;

/// For each dual pair, which of its two edges is smoothed. A `true` bit keeps
/// `e` as a wedge edge and smooths `e_dual`; `false` does the opposite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmoothingChoice {
    bits: Vec<bool>,
}

impl SmoothingChoice {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn uniform(len: usize, bit: bool) -> Self {
        Self {
            bits: vec![bit; len],
        }
    }

    /// The choice whose bit `i` is bit `i` of `index`.
    pub fn from_index(index: u64, len: usize) -> Self {
        Self {
            bits: (0..len).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut bits = self.bits.clone();
        bits[i] = !bits[i];
        Self { bits }
    }
}

impl fmt::Display for SmoothingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SmoothingChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "smoothing bits must be 0 or 1, found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

/// One dual pair seen through a smoothing choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedPair<'a> {
    pub retained: Edge,
    pub smoothed: Edge,
    /// `theta` is the retained length, `theta_dual` the smoothed one.
    pub lengths: PairLengths,
    /// Dihedral angle at the retained edge.
    pub phi_retained: f64,
    /// Dihedral angle at the smoothed edge; also the sweep of the retained
    /// arc.
    pub phi_smoothed: f64,
    /// The retained edge as an arc; the smoothing balls are centered on it.
    pub retained_arc: &'a Arc,
    pub smoothed_arc: &'a Arc,
}

impl<'a> OrientedPair<'a> {
    pub fn new(pair: &'a DualEdgePair, keep_e: bool) -> Self {
        let g = &pair.geometry;
        if keep_e {
            Self {
                retained: pair.e,
                smoothed: pair.e_dual,
                lengths: g.lengths(),
                phi_retained: g.phi,
                phi_smoothed: g.phi_dual,
                retained_arc: &g.arc_e,
                smoothed_arc: &g.arc_dual,
            }
        } else {
            Self {
                retained: pair.e_dual,
                smoothed: pair.e,
                lengths: g.lengths().swapped(),
                phi_retained: g.phi_dual,
                phi_smoothed: g.phi,
                retained_arc: &g.arc_dual,
                smoothed_arc: &g.arc_e,
            }
        }
    }

    pub fn f(&self) -> f64 {
        spherical::f_pair(self.lengths)
    }
}

/// A Meissner polyhedron: an extremal vertex set together with one smoothed
/// edge per dual pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MeissnerPolyhedron {
    vertices: VertexSet,
    graph: DiameterGraph,
    pairs: Vec<DualEdgePair>,
    choice: SmoothingChoice,
}

impl MeissnerPolyhedron {
    pub fn new(vertices: VertexSet, choice: SmoothingChoice) -> Result<Self> {
        let graph = build_diameter_graph(&vertices)?;
        let pairs = find_dual_pairs(&graph, &vertices)?;
        Self::from_parts(vertices, graph, pairs, choice)
    }

    pub fn with_optimal_smoothing(vertices: VertexSet) -> Result<Self> {
        let graph = build_diameter_graph(&vertices)?;
        let pairs = find_dual_pairs(&graph, &vertices)?;
        let choice = optimal_smoothing(&pairs);
        Self::from_parts(vertices, graph, pairs, choice)
    }

    pub fn from_parts(
        vertices: VertexSet,
        graph: DiameterGraph,
        pairs: Vec<DualEdgePair>,
        choice: SmoothingChoice,
    ) -> Result<Self> {
        if choice.len() != pairs.len() {
            return Err(Error::InvalidArgument(format!(
                "smoothing choice has {} bits for {} dual pairs",
                choice.len(),
                pairs.len()
            )));
        }
        Ok(Self {
            vertices,
            graph,
            pairs,
            choice,
        })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn graph(&self) -> &DiameterGraph {
        &self.graph
    }

    pub fn pairs(&self) -> &[DualEdgePair] {
        &self.pairs
    }

    pub fn choice(&self) -> &SmoothingChoice {
        &self.choice
    }

    /// A copy with a different smoothing choice.
    pub fn with_choice(&self, choice: SmoothingChoice) -> Result<Self> {
        Self::from_parts(
            self.vertices.clone(),
            self.graph.clone(),
            self.pairs.clone(),
            choice,
        )
    }

    pub fn oriented(&self) -> impl Iterator<Item = OrientedPair<'_>> + '_ {
        self.pairs
            .iter()
            .zip(self.choice.bits())
            .map(|(p, &b)| OrientedPair::new(p, b))
    }

    pub fn area(&self) -> f64 {
        meissner_area(self)
    }

    pub fn volume(&self) -> f64 {
        meissner_volume(self)
    }
}

/// Smooths the longer edge of every pair; ties keep `e` and smooth `e_dual`.
pub fn optimal_smoothing(pairs: &[DualEdgePair]) -> SmoothingChoice {
    SmoothingChoice::from_bits(
        pairs
            .iter()
            .map(|p| p.geometry.theta <= p.geometry.theta_dual + TIE_TOL)
            .collect(),
    )
}

/// `2π - Σ f(retained, smoothed)` over the given oriented pair lengths.
pub fn meissner_area_from_lengths(lengths: impl IntoIterator<Item = PairLengths>) -> f64 {
    TAU - lengths.into_iter().map(spherical::f_pair).sum::<f64>()
}

pub fn meissner_area(m: &MeissnerPolyhedron) -> f64 {
    meissner_area_from_lengths(m.oriented().map(|o| o.lengths))
}

/// Volume of a body of constant width one with the given surface area.
pub fn volume_from_area(area: f64) -> f64 {
    area / 2.0 - PI / 3.0
}

pub fn meissner_volume(m: &MeissnerPolyhedron) -> f64 {
    volume_from_area(meissner_area(m))
}

/// Surface area of the Reuleaux polyhedron `B(X)`.
pub fn reuleaux_area(pairs: &[DualEdgePair]) -> f64 {
    TAU + pairs
        .iter()
        .map(|p| {
            let g = &p.geometry;
            4.0 * g.alpha
                - 2.0 * (g.theta / 2.0).sin() * g.phi
                - 2.0 * (g.theta_dual / 2.0).sin() * g.phi_dual
        })
        .sum::<f64>()
}

/// Areas of all `2^(m-1)` Meissner polyhedra on the given pairs, in order of
/// [`SmoothingChoice::from_index`].
pub fn enumerate_smoothings(pairs: &[DualEdgePair]) -> Result<Vec<(SmoothingChoice, f64)>> {
    let n = pairs.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooManyPairs {
            pairs: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let forward: Vec<f64> = pairs.iter().map(|p| spherical::f_pair(p.geometry.lengths())).collect();
    let backward: Vec<f64> = pairs
        .iter()
        .map(|p| spherical::f_pair(p.geometry.lengths().swapped()))
        .collect();
    Ok((0..1u64 << n)
        .into_par_iter()
        .map(|index| {
            let choice = SmoothingChoice::from_index(index, n);
            let removed: f64 = choice
                .bits()
                .iter()
                .enumerate()
                .map(|(i, &b)| if b { forward[i] } else { backward[i] })
                .sum();
            (choice, TAU - removed)
        })
        .collect())
}

/// The entry of an enumeration with the smallest area; the first one wins
/// among exact ties.
pub fn min_area_choice(table: &[(SmoothingChoice, f64)]) -> Option<&(SmoothingChoice, f64)> {
    table
        .iter()
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
}
