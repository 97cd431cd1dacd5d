use std::collections::BTreeMap;

use super::report::{CheckOutcome, EdgeMatching, ValidationReport, Witness};
use super::{FixedPointData, Multigraph};
use crate::matching::perfect_matching;
use crate::weight_algebra::{is_unimodular_basis, Weight};

/// True iff `u - v` is an integer multiple of `w`.
pub fn congruent_mod(u: &Weight, v: &Weight, w: &Weight) -> bool {
    u.congruent_mod(v, w)
}

/// Every weight occurs, counted over all points, as often as its negative.
pub fn check_pairing(data: &FixedPointData) -> ValidationReport {
    let mut counts: BTreeMap<&Weight, usize> = BTreeMap::new();
    for w in data.all_weights() {
        *counts.entry(w).or_default() += 1;
    }
    let mut witnesses = Vec::new();
    for (w, &count) in &counts {
        let negated_count = counts.get(&(-*w)).copied().unwrap_or(0);
        // report each class once, from the side with surplus
        if count > negated_count {
            witnesses.push(Witness::UnpairedWeight {
                weight: (*w).clone(),
                count,
                negated_count,
            });
        }
    }
    ValidationReport::single(CheckOutcome::from_witnesses("pairing", witnesses))
}

/// The sum of all weights over all fixed points vanishes.
pub fn check_weight_sum_zero(data: &FixedPointData) -> ValidationReport {
    let sum = data
        .all_weights()
        .fold(Weight::zero(data.torus_rank()), |acc, w| &acc + w);
    let witnesses = if sum.is_zero() {
        vec![]
    } else {
        vec![Witness::NonZeroWeightSum { sum }]
    };
    ValidationReport::single(CheckOutcome::from_witnesses("weight_sum_zero", witnesses))
}

/// Weights at each point are pairwise linearly independent.
pub fn check_gkm(data: &FixedPointData) -> ValidationReport {
    let mut witnesses = Vec::new();
    for p in data.points() {
        for (i, a) in p.weights.iter().enumerate() {
            for b in &p.weights[i + 1..] {
                if a.is_parallel(b) {
                    witnesses.push(Witness::ParallelWeights {
                        point: p.id.clone(),
                        first: a.clone(),
                        second: b.clone(),
                    });
                }
            }
        }
    }
    ValidationReport::single(CheckOutcome::from_witnesses("gkm", witnesses))
}

/// `k = n` and the weights at each point form a basis of `Z^n`.
pub fn check_torus_manifold(data: &FixedPointData) -> ValidationReport {
    let mut witnesses = Vec::new();
    if data.torus_rank() != data.half_dim() {
        witnesses.push(Witness::RankMismatch {
            torus_rank: data.torus_rank(),
            half_dim: data.half_dim(),
        });
    } else {
        for p in data.points() {
            if !is_unimodular_basis(&p.weights).unwrap_or(false) {
                witnesses.push(Witness::NotABasis {
                    point: p.id.clone(),
                });
            }
        }
    }
    ValidationReport::single(CheckOutcome::from_witnesses("torus_manifold", witnesses))
}

/// For every edge, the weights at its two ends agree modulo its label under
/// some bijection, found by bipartite matching on the congruence relation.
pub fn check_edge_congruence(data: &FixedPointData, graph: &Multigraph) -> ValidationReport {
    let mut witnesses = Vec::new();
    let mut matchings = Vec::new();
    for (idx, e) in graph.edges().iter().enumerate() {
        let (Some(p), Some(q)) = (data.point(&e.from), data.point(&e.to)) else {
            witnesses.push(Witness::EdgeNotCongruent {
                edge: idx,
                from: e.from.clone(),
                to: e.to.clone(),
                label: e.label.clone(),
            });
            continue;
        };
        let adj: Vec<Vec<usize>> = p
            .weights
            .iter()
            .map(|u| {
                q.weights
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| u.congruent_mod(v, &e.label))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        match perfect_matching(&adj, q.weights.len()) {
            Some(m) => matchings.push(EdgeMatching {
                edge: idx,
                pairs: m
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (p.weights[i].clone(), q.weights[j].clone()))
                    .collect(),
            }),
            None => witnesses.push(Witness::EdgeNotCongruent {
                edge: idx,
                from: e.from.clone(),
                to: e.to.clone(),
                label: e.label.clone(),
            }),
        }
    }
    let mut outcome = CheckOutcome::from_witnesses("edge_congruence", witnesses);
    outcome.matchings = matchings;
    ValidationReport::single(outcome)
}

/// The graph has the fixed points as vertices and induces the declared
/// weight multiset at each; edge congruence is checked alongside.
pub fn check_describes(data: &FixedPointData, graph: &Multigraph) -> ValidationReport {
    let mut witnesses = Vec::new();
    let ids = data.ids();
    let missing: Vec<String> = ids
        .iter()
        .filter(|id| !graph.vertex_ids().contains(**id))
        .map(|s| s.to_string())
        .collect();
    let extra: Vec<String> = graph
        .vertex_ids()
        .iter()
        .filter(|v| !ids.contains(&v.as_str()))
        .cloned()
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        witnesses.push(Witness::VertexSetMismatch { missing, extra });
    }
    for (id, declared) in data.multisets() {
        let induced = graph.induced_weights(id);
        if induced != declared {
            witnesses.push(Witness::MultisetMismatch {
                point: id.to_string(),
                declared,
                induced,
            });
        }
    }
    let describes = CheckOutcome::from_witnesses("describes", witnesses).with_note(
        "the isotropy-component condition is replaced by congruence of weights modulo each edge label",
    );
    ValidationReport::single(describes).merge(check_edge_congruence(data, graph))
}

/// No self-loops and at most one edge between any two vertices.
pub fn check_simple(graph: &Multigraph) -> ValidationReport {
    let mut witnesses = Vec::new();
    let mut pairs: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for (idx, e) in graph.edges().iter().enumerate() {
        if e.from == e.to {
            witnesses.push(Witness::SelfLoop {
                edge: idx,
                vertex: e.from.clone(),
            });
            continue;
        }
        let key = if e.from < e.to {
            (e.from.as_str(), e.to.as_str())
        } else {
            (e.to.as_str(), e.from.as_str())
        };
        *pairs.entry(key).or_default() += 1;
    }
    for ((a, b), count) in pairs {
        if count >= 2 {
            witnesses.push(Witness::MultipleEdges {
                first: a.to_string(),
                second: b.to_string(),
                count,
            });
        }
    }
    ValidationReport::single(CheckOutcome::from_witnesses("simple", witnesses))
}

/// Every data-level check, plus the graph checks when a graph is supplied.
pub fn validate_all(data: &FixedPointData, graph: Option<&Multigraph>) -> ValidationReport {
    let mut report = check_pairing(data)
        .merge(check_weight_sum_zero(data))
        .merge(check_gkm(data));
    if data.is_torus_manifold() {
        report = report.merge(check_torus_manifold(data));
    }
    if let Some(g) = graph {
        report = report.merge(check_describes(data, g));
        if data.is_torus_manifold() {
            report = report.merge(check_simple(g));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::{Edge, FixedPoint};
    use super::*;

    fn w(e: &[i64]) -> Weight {
        Weight::from_i64s(e)
    }

    fn data(k: usize, n: usize, pts: &[(&str, &[&[i64]])]) -> FixedPointData {
        FixedPointData::new(
            k,
            n,
            pts.iter()
                .map(|(id, ws)| FixedPoint::new(*id, ws.iter().map(|x| w(x)).collect()))
                .collect(),
        )
        .unwrap()
    }

    fn s6() -> FixedPointData {
        // a = (1,0), b = (0,1)
        data(
            2,
            3,
            &[
                ("p", &[&[-1, -1], &[1, 0], &[0, 1]]),
                ("q", &[&[-1, 0], &[0, -1], &[1, 1]]),
            ],
        )
    }

    #[test]
    fn pairing_examples() {
        assert!(check_pairing(&s6()).passed());
        let single = data(2, 2, &[("p", &[&[1, 0], &[0, 1]])]);
        let r = check_pairing(&single);
        assert!(!r.passed());
        assert!(r.witnesses().any(|x| matches!(
            x,
            Witness::UnpairedWeight { weight, count: 1, negated_count: 0 } if *weight == w(&[1, 0])
        )));
        assert_eq!(check_pairing(&s6().negated()), check_pairing(&s6()));
    }

    #[test]
    fn weight_sum_examples() {
        let fano = data(
            1,
            3,
            &[
                ("p1", &[&[1], &[2], &[3]]),
                ("p2", &[&[-1], &[1], &[4]]),
                ("p3", &[&[-1], &[-4], &[1]]),
                ("p4", &[&[-1], &[-2], &[-3]]),
            ],
        );
        assert!(check_weight_sum_zero(&fano).passed());
        let r = check_weight_sum_zero(&data(1, 1, &[("p", &[&[1]])]));
        assert_eq!(
            r.witnesses().collect::<Vec<_>>(),
            vec![&Witness::NonZeroWeightSum { sum: w(&[1]) }]
        );
    }

    #[test]
    fn edge_congruence_examples() {
        let d = data(
            2,
            2,
            &[
                ("p0", &[&[1, 0], &[0, 1]]),
                ("p1", &[&[-1, 0], &[-1, 1]]),
                ("bad", &[&[-1, 0], &[0, 5]]),
            ],
        );
        let g = Multigraph::for_data(&d, vec![Edge::new("p0", "p1", w(&[1, 0]))]).unwrap();
        let r = check_edge_congruence(&d, &g);
        assert!(r.passed());
        let m = &r.checks[0].matchings[0];
        assert_eq!(
            m.pairs,
            vec![(w(&[1, 0]), w(&[-1, 0])), (w(&[0, 1]), w(&[-1, 1]))]
        );
        let g = Multigraph::for_data(&d, vec![Edge::new("p0", "bad", w(&[1, 0]))]).unwrap();
        assert!(!check_edge_congruence(&d, &g).passed());
    }

    #[test]
    fn simple_examples() {
        let d = s6();
        let g = Multigraph::for_data(&d, vec![Edge::new("p", "p", w(&[1, 0]))]).unwrap();
        assert!(matches!(
            check_simple(&g).witnesses().next(),
            Some(Witness::SelfLoop { .. })
        ));
        let g = Multigraph::for_data(
            &d,
            vec![
                Edge::new("p", "q", w(&[1, 0])),
                Edge::new("q", "p", w(&[1, 1])),
            ],
        )
        .unwrap();
        assert!(matches!(
            check_simple(&g).witnesses().next(),
            Some(Witness::MultipleEdges { count: 2, .. })
        ));
    }

    #[test]
    fn describes_detects_vertex_mismatch() {
        let d = s6();
        let g = Multigraph::new(["p".to_string(), "r".to_string()], vec![]).unwrap();
        let r = check_describes(&d, &g);
        assert!(r.witnesses().any(|x| matches!(x, Witness::VertexSetMismatch { .. })));
    }
}
