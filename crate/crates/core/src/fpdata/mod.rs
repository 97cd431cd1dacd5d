//! Fixed-point data of torus actions with isolated fixed points, describing
//! multigraphs, and the necessary conditions such data must satisfy.

mod build;
mod checks;
mod classify;
mod json;
mod report;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::weight_algebra::{is_unimodular_basis, IntMatrix, Weight};

pub use build::{build_multigraph, BuiltGraph};
pub use checks::{
    check_describes, check_edge_congruence, check_gkm, check_pairing, check_simple,
    check_torus_manifold, check_weight_sum_zero, congruent_mod, validate_all,
};
pub use classify::{classify_few_fixed_points, FewFixedPoints};
pub use json::{parse, parse_str, to_canonical_json, Document};
pub use report::{CheckOutcome, EdgeMatching, ValidationReport, Witness};

/// An isolated fixed point and the multiset of its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub id: String,
    pub weights: Vec<Weight>,
}

impl FixedPoint {
    pub fn new(id: impl Into<String>, weights: Vec<Weight>) -> Self {
        FixedPoint {
            id: id.into(),
            weights,
        }
    }

    /// Weights in lexicographic order.
    pub fn sorted_weights(&self) -> Vec<Weight> {
        let mut w = self.weights.clone();
        w.sort();
        w
    }
}

/// Fixed-point data: torus rank `k`, half dimension `n`, and the fixed
/// points, each carrying `n` non-zero weights in `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointData {
    torus_rank: usize,
    half_dim: usize,
    torus_manifold: bool,
    points: Vec<FixedPoint>,
}

impl FixedPointData {
    /// Structural validation: ranks, weight counts, non-zero weights, unique
    /// ids. The torus-manifold flag starts cleared.
    pub fn new(torus_rank: usize, half_dim: usize, points: Vec<FixedPoint>) -> Result<Self> {
        if torus_rank == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        let mut ids = BTreeSet::new();
        for p in &points {
            if !ids.insert(p.id.as_str()) {
                return Err(Error::DuplicateId(p.id.clone()));
            }
            if p.weights.len() != half_dim {
                return Err(Error::Dimension {
                    expected: half_dim,
                    found: p.weights.len(),
                });
            }
            for w in &p.weights {
                if w.rank() != torus_rank {
                    return Err(Error::Dimension {
                        expected: torus_rank,
                        found: w.rank(),
                    });
                }
                if w.is_zero() {
                    return Err(Error::ZeroWeight(Some(format!("fixed point {:?}", p.id))));
                }
            }
        }
        Ok(FixedPointData {
            torus_rank,
            half_dim,
            torus_manifold: false,
            points,
        })
    }

    /// Sets the torus-manifold flag after checking `k = n` and that the
    /// weights at every point form a basis of `Z^n`.
    pub fn with_torus_manifold(mut self, flag: bool) -> Result<Self> {
        if flag {
            self.torus_manifold_conditions()?;
        }
        self.torus_manifold = flag;
        Ok(self)
    }

    /// `Ok` iff `k = n` and every weight set is a basis of `Z^n`.
    pub fn torus_manifold_conditions(&self) -> Result<()> {
        if self.torus_rank != self.half_dim {
            return Err(Error::Precondition(format!(
                "torus rank {} differs from half dimension {}",
                self.torus_rank, self.half_dim
            )));
        }
        for p in &self.points {
            if !is_unimodular_basis(&p.weights)? {
                return Err(Error::Precondition(format!(
                    "weights at {:?} do not form a basis of Z^{}",
                    p.id, self.half_dim
                )));
            }
        }
        Ok(())
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn is_torus_manifold(&self) -> bool {
        self.torus_manifold
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, id: &str) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.id == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.points.iter().map(|p| p.id.as_str()).collect()
    }

    pub fn all_weights(&self) -> impl Iterator<Item = &Weight> {
        self.points.iter().flat_map(|p| p.weights.iter())
    }

    /// Distinct weights occurring anywhere.
    pub fn distinct_weights(&self) -> Vec<Weight> {
        self.all_weights()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Points sorted by id, weights sorted lexicographically.
    pub fn canonical(&self) -> FixedPointData {
        let mut points: Vec<FixedPoint> = self
            .points
            .iter()
            .map(|p| FixedPoint::new(p.id.clone(), p.sorted_weights()))
            .collect();
        points.sort_by(|a, b| a.id.cmp(&b.id));
        FixedPointData {
            points,
            ..self.clone()
        }
    }

    /// Applies `w -> M w` to every weight. For unimodular `M` the flag is
    /// preserved.
    pub fn transform(&self, m: &IntMatrix) -> Result<FixedPointData> {
        if m.size() != self.torus_rank {
            return Err(Error::Dimension {
                expected: self.torus_rank,
                found: m.size(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| FixedPoint::new(p.id.clone(), p.weights.iter().map(|w| m.apply(w)).collect()))
            .collect();
        let out = FixedPointData::new(self.torus_rank, self.half_dim, points)?;
        out.with_torus_manifold(self.torus_manifold)
    }

    /// Negates every weight at every point.
    pub fn negated(&self) -> FixedPointData {
        FixedPointData {
            points: self
                .points
                .iter()
                .map(|p| FixedPoint::new(p.id.clone(), p.weights.iter().map(|w| -w).collect()))
                .collect(),
            ..self.clone()
        }
    }

    /// Multiset of weights at each point, keyed by id.
    pub(crate) fn multisets(&self) -> BTreeMap<&str, Vec<Weight>> {
        self.points
            .iter()
            .map(|p| (p.id.as_str(), p.sorted_weights()))
            .collect()
    }
}

/// A directed edge `from -> to` labeled by a non-zero weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub label: Weight,
}

impl Edge {
    pub fn new(from: impl Into<String>, to: impl Into<String>, label: Weight) -> Self {
        Edge {
            from: from.into(),
            to: to.into(),
            label,
        }
    }

    /// The same edge read in the other direction with the label negated;
    /// both describe the same pair of weights.
    pub fn reversed(&self) -> Edge {
        Edge::new(self.to.clone(), self.from.clone(), -&self.label)
    }
}

/// Labeled directed multigraph on the fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_ids: BTreeSet<String>,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(
        vertex_ids: impl IntoIterator<Item = String>,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        let vertex_ids: BTreeSet<String> = vertex_ids.into_iter().collect();
        let k = edges.first().map(|e| e.label.rank());
        for e in &edges {
            for end in [&e.from, &e.to] {
                if !vertex_ids.contains(end) {
                    return Err(Error::UnknownVertex(end.clone()));
                }
            }
            if e.label.is_zero() {
                return Err(Error::ZeroWeight(Some(format!(
                    "edge {} -> {}",
                    e.from, e.to
                ))));
            }
            if Some(e.label.rank()) != k {
                return Err(Error::Dimension {
                    expected: k.unwrap_or(0),
                    found: e.label.rank(),
                });
            }
        }
        Ok(Multigraph { vertex_ids, edges })
    }

    /// A graph on the ids of `data`; also checks label ranks against `k`.
    pub fn for_data(data: &FixedPointData, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.label.rank() != data.torus_rank() {
                return Err(Error::Dimension {
                    expected: data.torus_rank(),
                    found: e.label.rank(),
                });
            }
        }
        Multigraph::new(data.ids().into_iter().map(String::from), edges)
    }

    pub fn vertex_ids(&self) -> &BTreeSet<String> {
        &self.vertex_ids
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Every edge oriented from the smaller to the larger endpoint (in the
    /// given vertex order), labels negated where reversed, then sorted.
    /// Two graphs describing the same weights this way compare equal.
    pub fn oriented_by(&self, order: &[&str]) -> Vec<Edge> {
        let pos = |v: &str| order.iter().position(|&o| o == v).unwrap_or(usize::MAX);
        let mut out: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                if pos(&e.from) > pos(&e.to) {
                    e.reversed()
                } else {
                    e.clone()
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Multiset of weights the graph induces at `v`: outgoing labels and
    /// negated incoming labels.
    pub fn induced_weights(&self, v: &str) -> Vec<Weight> {
        let mut w: Vec<Weight> = self
            .edges
            .iter()
            .flat_map(|e| {
                let mut here = Vec::new();
                if e.from == v {
                    here.push(e.label.clone());
                }
                if e.to == v {
                    here.push(-&e.label);
                }
                here
            })
            .collect();
        w.sort();
        w
    }

    /// Neighbours of `v` (with multiplicity, loops counted once).
    pub fn neighbours(&self, v: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.from == v {
                    Some(e.to.as_str())
                } else if e.to == v {
                    Some(e.from.as_str())
                } else {
                    None
                }
            })
            .collect()
    }
}
