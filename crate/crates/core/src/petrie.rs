//! Rigidity for minimal torus manifolds: data with `n + 1` fixed points and a
//! basis of `Z^n` at each point must be the linear action on `CP^n`.
//!
//! From a base point `p0` with weights `w_1..w_n`, every other point must
//! carry exactly `{-w_j} ∪ {w_l - w_j : l != j}` for a distinct `j`. The
//! assignment is found by bipartite matching, so ambiguous synthetic data is
//! searched exhaustively.

use std::fmt;

use serde::Serialize;

use crate::catalog::cpn;
use crate::error::{Error, Result};
use crate::fpdata::{FixedPoint, FixedPointData, Multigraph, Witness};
use crate::genus::{chi_y, ChiYPolynomial};
use crate::localization::{compare_chern, ChernComparison, Mode};
use crate::matching::perfect_matching;
use crate::weight_algebra::{FactoredFraction, IntMatrix, SparsePoly, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    NoMatch,
    PreconditionFailed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::NoMatch => "no-match",
            Verdict::PreconditionFailed => "precondition-failed",
        })
    }
}

/// Model vertex `p{i}` of the reconstructed `CP^n` and the data point it is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relabel {
    pub model: String,
    pub data: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTable {
    pub chi_y: ChiYPolynomial,
    pub expected_chi_y: ChiYPolynomial,
    pub euler: u64,
    pub todd: u64,
    pub signature: i64,
    pub chern: ChernComparison,
}

/// `f_{to} - f_{from}` must be divisible by `divisor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkmRelation {
    pub from: String,
    pub to: String,
    pub divisor: Weight,
}

impl fmt::Display for GkmRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[{}] - f[{}] divisible by {}", self.to, self.from, self.divisor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PetrieReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precondition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_point: Option<String>,
    /// `a_i = w_{0,i}`, the weights at the base point.
    pub basis: Vec<Weight>,
    pub relabeling: Vec<Relabel>,
    /// `0, a_1, .., a_n`.
    pub simplex: Vec<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub base_point_independent: bool,
    pub model_regenerates: bool,
    /// Whether a supplied edge list agrees with the reconstructed model graph
    /// up to reversing edges; `None` without an edge list.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gl_equivalent: Option<bool>,
    pub relations: Vec<GkmRelation>,
}

impl PetrieReport {
    fn empty(verdict: Verdict) -> Self {
        PetrieReport {
            verdict,
            precondition: None,
            base_point: None,
            basis: Vec::new(),
            relabeling: Vec::new(),
            simplex: Vec::new(),
            invariants: None,
            witness: None,
            base_point_independent: true,
            model_regenerates: false,
            graph_agrees: None,
            gl_equivalent: None,
            relations: Vec::new(),
        }
    }

    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }

    /// Data id of model vertex `i`.
    pub fn data_id(&self, i: usize) -> Option<&str> {
        self.relabeling.get(i).map(|r| r.data.as_str())
    }
}

impl fmt::Display for PetrieReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Some(p) = &self.precondition {
            writeln!(f, "precondition: {p}")?;
        }
        if let Some(b) = &self.base_point {
            writeln!(f, "base point: {b}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        if self.verdict != Verdict::PreconditionFailed {
            writeln!(f, "base point independent: {}", self.base_point_independent)?;
        }
        if !self.is_match() {
            if let Some(g) = self.gl_equivalent {
                writeln!(f, "equivalent up to GL(n,Z): {g}")?;
            }
            return Ok(());
        }
        let basis: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        writeln!(f, "basis: {}", basis.join(" "))?;
        let relabel: Vec<String> = self
            .relabeling
            .iter()
            .map(|r| format!("{}={}", r.model, r.data))
            .collect();
        writeln!(f, "relabeling: {}", relabel.join(" "))?;
        let simplex: Vec<String> = self.simplex.iter().map(ToString::to_string).collect();
        writeln!(f, "simplex: {}", simplex.join(" "))?;
        writeln!(f, "model regenerates: {}", self.model_regenerates)?;
        if let Some(g) = self.graph_agrees {
            writeln!(f, "edge list agrees: {g}")?;
        }
        if let Some(g) = self.gl_equivalent {
            writeln!(f, "equivalent up to GL(n,Z): {g}")?;
        }
        if let Some(t) = &self.invariants {
            writeln!(f, "chi_y: {} (model {})", t.chi_y, t.expected_chi_y)?;
            writeln!(f, "euler: {}", t.euler)?;
            writeln!(f, "todd: {}", t.todd)?;
            writeln!(f, "signature: {}", t.signature)?;
            for row in &t.chern.rows {
                let show = |v: &Option<num_rational::BigRational>| {
                    v.as_ref().map_or("?".to_string(), ToString::to_string)
                };
                writeln!(
                    f,
                    "c[{}]: {} (model {}){}",
                    row.partition,
                    show(&row.left),
                    show(&row.right),
                    if row.equal { "" } else { " DIFFERENT" }
                )?;
            }
            writeln!(f, "chern numbers agree: {}", t.chern.cobordant)?;
        }
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// `χ_y` of the linear model: every `a_i = 1`.
pub fn expected_chi_y(n: usize) -> ChiYPolynomial {
    ChiYPolynomial::all_ones(n)
}

/// Whether `1/(w0i w0j) + 1/((-w0i) wij) + 1/((-w0j)(-wij))` vanishes,
/// which happens exactly when `wij = w0j - w0i`.
pub fn triangle_identity(w0i: &Weight, w0j: &Weight, wij: &Weight) -> Result<bool> {
    for w in [w0i, w0j, wij] {
        if w.is_zero() {
            return Err(Error::ZeroWeight(Some("triangle".into())));
        }
    }
    if w0i.rank() != w0j.rank() || w0i.rank() != wij.rank() {
        return Err(Error::Dimension {
            expected: w0i.rank(),
            found: if w0i.rank() != w0j.rank() { w0j.rank() } else { wij.rank() },
        });
    }
    if w0i.is_parallel(w0j) {
        return Err(Error::Dependent(w0i.clone(), w0j.clone()));
    }
    let k = w0i.rank();
    let one = SparsePoly::one(k);
    let terms = [
        FactoredFraction::new(one.clone(), &[w0i.clone(), w0j.clone()])?,
        FactoredFraction::new(one.clone(), &[-w0i, wij.clone()])?,
        FactoredFraction::new(one, &[-w0j, -wij])?,
    ];
    let sum = terms
        .iter()
        .fold(FactoredFraction::zero(k), |acc, t| acc.add(t));
    Ok(sum.is_zero())
}

/// `k = n`, a basis at every point, and `n + 1` points.
pub fn petrie_preconditions(data: &FixedPointData) -> Result<()> {
    data.torus_manifold_conditions()?;
    let n = data.half_dim();
    if data.num_points() != n + 1 {
        return Err(Error::Precondition(format!(
            "Euler number {} differs from n + 1 = {}",
            data.num_points(),
            n + 1
        )));
    }
    Ok(())
}

/// Weights of model vertex `j + 1` given the base weights.
fn model_weights(base: &[Weight], j: usize) -> Vec<Weight> {
    let mut out: Vec<Weight> = std::iter::once(-&base[j])
        .chain(
            base.iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .map(|(_, w)| w - &base[j]),
        )
        .collect();
    out.sort();
    out
}

#[derive(Debug)]
struct Reconstruction {
    basis: Vec<Weight>,
    /// Data point index of model vertex `i`; entry 0 is the base.
    vertices: Vec<usize>,
}

fn reconstruct(points: &[FixedPoint], base: usize) -> std::result::Result<Reconstruction, Witness> {
    let basis = points[base].sorted_weights();
    let n = basis.len();
    let others: Vec<usize> = (0..points.len()).filter(|&i| i != base).collect();
    let expected: Vec<Vec<Weight>> = (0..n).map(|j| model_weights(&basis, j)).collect();

    let mut adj = Vec::with_capacity(others.len());
    for &q in &others {
        let found = points[q].sorted_weights();
        let candidates: Vec<usize> = (0..n).filter(|&j| expected[j] == found).collect();
        if candidates.is_empty() {
            let base_id = &points[base].id;
            let partner = (0..n).find(|&j| found.contains(&-&basis[j]));
            return Err(match partner {
                Some(j) => Witness::ModelMismatch {
                    point: points[q].id.clone(),
                    found,
                    expected: expected[j].clone(),
                },
                None => Witness::Message {
                    detail: format!(
                        "no weight at {base_id} has its negative at {}",
                        points[q].id
                    ),
                },
            });
        }
        adj.push(candidates);
    }
    let Some(assignment) = perfect_matching(&adj, n) else {
        return Err(Witness::Message {
            detail: format!(
                "the points other than {} cannot be assigned distinct weights at it",
                points[base].id
            ),
        });
    };
    let mut vertices = vec![base; n + 1];
    for (r, &j) in assignment.iter().enumerate() {
        vertices[j + 1] = others[r];
    }

    // cross-check every triangle p0, p_i, p_j through the vanishing of the
    // localized class 1 on the sphere pair they span
    for i in 1..=n {
        for j in (i + 1)..=n {
            let (pi, pj) = (&points[vertices[i]], &points[vertices[j]]);
            let holds = pi
                .weights
                .iter()
                .filter(|u| pj.weights.contains(&-*u))
                .any(|u| triangle_identity(&basis[i - 1], &basis[j - 1], u).unwrap_or(false));
            if !holds {
                return Err(Witness::Message {
                    detail: format!("triangle {}, {}, {} fails", points[base].id, pi.id, pj.id),
                });
            }
        }
    }
    Ok(Reconstruction { basis, vertices })
}

fn relabeled_model(n: usize, basis: &[Weight], names: &[String]) -> Result<(FixedPointData, Multigraph)> {
    let entry = cpn(n, basis)?;
    let rename = |id: &str| -> String {
        let i: usize = id[1..].parse().expect("model ids are p<i>");
        names[i].clone()
    };
    let points = entry
        .data
        .points()
        .iter()
        .map(|p| FixedPoint::new(rename(&p.id), p.weights.clone()))
        .collect();
    let data = FixedPointData::new(n, n, points)?;
    let graph = entry.graph.expect("cpn has a graph");
    let edges = graph
        .edges()
        .iter()
        .map(|e| crate::fpdata::Edge::new(rename(&e.from), rename(&e.to), e.label.clone()))
        .collect();
    let graph = Multigraph::for_data(&data, edges)?;
    Ok((data, graph))
}

fn same_multisets(a: &FixedPointData, b: &FixedPointData) -> bool {
    a.multisets() == b.multisets()
}

/// Runs the reconstruction from the first id in sorted order.
pub fn petrie_verify(data: &FixedPointData) -> PetrieReport {
    petrie_verify_with(data, None, false)
}

/// Runs the reconstruction from the named base point.
pub fn petrie_verify_from(data: &FixedPointData, base_id: &str) -> Result<PetrieReport> {
    let canonical = data.canonical();
    let base = canonical
        .points()
        .iter()
        .position(|p| p.id == base_id)
        .ok_or_else(|| Error::UnknownVertex(base_id.to_string()))?;
    Ok(verify(&canonical, base, None, false))
}

/// Full check: an optional edge list is compared with the reconstructed
/// model, and `up_to_gl` also tests equivalence after undoing the basis.
pub fn petrie_verify_with(data: &FixedPointData, graph: Option<&Multigraph>, up_to_gl: bool) -> PetrieReport {
    verify(&data.canonical(), 0, graph, up_to_gl)
}

fn verify(data: &FixedPointData, base: usize, graph: Option<&Multigraph>, up_to_gl: bool) -> PetrieReport {
    if let Err(e) = petrie_preconditions(data) {
        let mut r = PetrieReport::empty(Verdict::PreconditionFailed);
        r.precondition = Some(match e {
            Error::Precondition(m) => m,
            other => other.to_string(),
        });
        return r;
    }
    let points = data.points();
    let n = data.half_dim();
    let first = reconstruct(points, base);
    let verdict_of = |r: &std::result::Result<Reconstruction, Witness>| r.is_ok();
    let independent = (0..points.len())
        .filter(|&b| b != base)
        .all(|b| verdict_of(&reconstruct(points, b)) == verdict_of(&first));

    let rec = match first {
        Ok(rec) => rec,
        Err(w) => {
            let mut r = PetrieReport::empty(Verdict::NoMatch);
            r.base_point = Some(points[base].id.clone());
            r.witness = Some(w);
            r.base_point_independent = independent;
            // GL(n,Z) maps linear models to linear models, so no-match from
            // the data rules out equivalence too
            r.gl_equivalent = up_to_gl.then_some(false);
            return r;
        }
    };

    let names: Vec<String> = rec.vertices.iter().map(|&v| points[v].id.clone()).collect();
    let (model, model_graph) = relabeled_model(n, &rec.basis, &names).expect("basis checked above");
    let mut simplex = vec![Weight::zero(n)];
    simplex.extend(rec.basis.iter().cloned());
    let relations = (0..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .map(|(i, j)| GkmRelation {
            from: names[i].clone(),
            to: names[j].clone(),
            divisor: &simplex[j] - &simplex[i],
        })
        .collect();

    let order: Vec<&str> = names.iter().map(String::as_str).collect();
    let graph_agrees = graph.map(|g| g.oriented_by(&order) == model_graph.oriented_by(&order));
    let gl_equivalent = up_to_gl.then(|| gl_check(data, &rec.basis, &names));

    let chi = chi_y(data);
    let invariants = compare_chern(data, &model, Mode::Generic).ok().map(|chern| InvariantTable {
        euler: chi.euler(),
        todd: chi.todd(),
        signature: chi.signature(),
        chi_y: chi.clone(),
        expected_chi_y: expected_chi_y(n),
        chern,
    });

    PetrieReport {
        verdict: Verdict::Match,
        precondition: None,
        base_point: Some(points[base].id.clone()),
        basis: rec.basis,
        relabeling: names
            .iter()
            .enumerate()
            .map(|(i, d)| Relabel {
                model: format!("p{i}"),
                data: d.clone(),
            })
            .collect(),
        simplex,
        invariants,
        witness: None,
        base_point_independent: independent,
        model_regenerates: same_multisets(data, &model),
        graph_agrees,
        gl_equivalent,
        relations,
    }
}

// Transform by the inverse of the basis matrix and compare with the standard
// model.
fn gl_check(data: &FixedPointData, basis: &[Weight], names: &[String]) -> bool {
    let n = basis.len();
    let Ok(columns) = IntMatrix::from_rows(basis).map(|m| m.transpose()) else {
        return false;
    };
    let Ok(inverse) = columns.inverse_unimodular() else {
        return false;
    };
    let Ok(moved) = data.transform(&inverse) else {
        return false;
    };
    let standard: Vec<Weight> = (0..n).map(|i| Weight::unit(n, i)).collect();
    relabeled_model(n, &standard, names)
        .map(|(model, _)| same_multisets(&moved, &model))
        .unwrap_or(false)
}

/// The divisibility relations `f_{p_j} - f_{p_i} ∈ (a_j - a_i)` with `a_0 = 0`.
pub fn gkm_relations(report: &PetrieReport) -> Result<Vec<GkmRelation>> {
    if !report.is_match() {
        return Err(Error::Precondition(format!(
            "relations need a match, verdict is {}",
            report.verdict
        )));
    }
    Ok(report.relations.clone())
}

/// Vertices `0, a_1, .., a_n` of the lattice simplex, after confirming that
/// each model edge label `i -> j` is `v_j - v_i` in `data`.
pub fn simplex_realization(report: &PetrieReport, data: &FixedPointData) -> Result<Vec<Weight>> {
    if !report.is_match() {
        return Err(Error::Precondition(format!(
            "simplex needs a match, verdict is {}",
            report.verdict
        )));
    }
    let v = &report.simplex;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            let label = &v[j] - &v[i];
            let (pi, pj) = (report.data_id(i), report.data_id(j));
            let holds = match (pi.and_then(|x| data.point(x)), pj.and_then(|x| data.point(x))) {
                (Some(a), Some(b)) => a.weights.contains(&label) && b.weights.contains(&-&label),
                _ => false,
            };
            if !holds {
                return Err(Error::Inconsistent(format!(
                    "edge p{i} -> p{j} should carry {label}"
                )));
            }
        }
    }
    Ok(v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cpn_standard, s6};

    fn w(e: &[i64]) -> Weight {
        Weight::from_i64s(e)
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_identity(&w(&[1, 0]), &w(&[0, 1]), &w(&[-1, 1])), Ok(true));
        assert_eq!(triangle_identity(&w(&[1, 0]), &w(&[0, 1]), &w(&[1, 1])), Ok(false));
        assert!(matches!(
            triangle_identity(&w(&[1, 0]), &w(&[2, 0]), &w(&[1, 0])),
            Err(Error::Dependent(..))
        ));
        assert!(matches!(
            triangle_identity(&w(&[1, 0]), &w(&[0, 1]), &w(&[0, 0])),
            Err(Error::ZeroWeight(_))
        ));
    }

    #[test]
    fn cp2_matches() {
        let e = cpn_standard(2).unwrap();
        let r = petrie_verify_with(&e.data, e.graph.as_ref(), true);
        assert_eq!(r.verdict, Verdict::Match);
        assert_eq!(r.basis, vec![w(&[0, 1]), w(&[1, 0])]);
        assert_eq!(r.simplex, vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]);
        assert!(r.model_regenerates);
        assert!(r.base_point_independent);
        assert_eq!(r.graph_agrees, Some(true));
        assert_eq!(r.gl_equivalent, Some(true));
        let t = r.invariants.as_ref().unwrap();
        assert_eq!(t.chi_y, expected_chi_y(2));
        assert!(t.chern.cobordant);
        let rel = gkm_relations(&r).unwrap();
        let mut as_tuples: Vec<(String, String, Weight)> = rel
            .iter()
            .map(|x| {
                let (a, b) = if x.from < x.to { (&x.from, &x.to) } else { (&x.to, &x.from) };
                let d = if x.from < x.to { x.divisor.clone() } else { -&x.divisor };
                (a.clone(), b.clone(), d)
            })
            .collect();
        as_tuples.sort();
        assert_eq!(
            as_tuples,
            vec![
                ("p0".into(), "p1".into(), w(&[1, 0])),
                ("p0".into(), "p2".into(), w(&[0, 1])),
                ("p1".into(), "p2".into(), w(&[-1, 1])),
            ]
        );
        assert_eq!(simplex_realization(&r, &e.data).unwrap().len(), 3);
    }

    #[test]
    fn altered_weight_is_rejected() {
        let e = cpn_standard(2).unwrap();
        let mut pts = e.data.points().to_vec();
        let i = pts[2].weights.iter().position(|x| *x == w(&[1, -1])).unwrap();
        pts[2].weights[i] = w(&[1, -2]);
        let d = FixedPointData::new(2, 2, pts).unwrap();
        let r = petrie_verify(&d);
        assert_eq!(r.verdict, Verdict::NoMatch);
        assert!(r.witness.is_some());
        assert!(gkm_relations(&r).is_err());
    }

    #[test]
    fn s6_fails_preconditions() {
        let e = s6(&w(&[1, 0]), &w(&[0, 1])).unwrap();
        let r = petrie_verify(&e.data);
        assert_eq!(r.verdict, Verdict::PreconditionFailed);
        assert!(r.precondition.unwrap().contains("torus rank"));
    }

    #[test]
    fn wrong_edge_list_is_reported() {
        let e = cpn_standard(2).unwrap();
        let g = Multigraph::for_data(&e.data, vec![]).unwrap();
        let r = petrie_verify_with(&e.data, Some(&g), false);
        assert!(r.is_match());
        assert_eq!(r.graph_agrees, Some(false));
    }

    #[test]
    fn every_base_point() {
        let e = cpn_standard(3).unwrap();
        for id in e.data.ids() {
            let r = petrie_verify_from(&e.data, id).unwrap();
            assert!(r.is_match(), "{id}");
            assert_eq!(r.base_point.as_deref(), Some(id));
        }
        assert!(petrie_verify_from(&e.data, "nope").is_err());
    }
}
