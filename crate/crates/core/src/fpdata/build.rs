use std::collections::{BTreeMap, BTreeSet};

use super::checks::check_pairing;
use super::report::Witness;
use super::{Edge, FixedPointData, Multigraph};
use crate::error::{Error, Result};
use crate::matching::perfect_matching;
use crate::weight_algebra::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltGraph {
    pub graph: Multigraph,
    /// False when some class could only be matched using a self-loop.
    pub loop_free: bool,
}

/// Builds a multigraph describing `data`.
///
/// For each class `{w, -w}` (with `w` canonical) the occurrences of `w` are
/// matched with the occurrences of `-w`; a pair of points is admissible when
/// their whole weight multisets agree modulo `w`. Each matched pair becomes
/// an edge from the `w`-occurrence to the `-w`-occurrence, labeled `w`.
/// Self-loops are admitted only for classes that cannot be matched without.
pub fn build_multigraph(data: &FixedPointData) -> Result<BuiltGraph> {
    let pairing = check_pairing(data);
    if let Some(Witness::UnpairedWeight {
        weight,
        count,
        negated_count,
    }) = pairing.witnesses().next()
    {
        return Err(Error::PairingViolation {
            weight: weight.clone(),
            count: *count,
            negated_count: *negated_count,
        });
    }

    let classes: BTreeSet<Weight> = data
        .all_weights()
        .map(|w| w.canonicalize().map(|(_, c)| c))
        .collect::<Result<_>>()?;

    let mut edges = Vec::new();
    let mut loop_free = true;
    for class in &classes {
        let neg = -class;
        let occurrences = |target: &Weight| -> Vec<usize> {
            data.points()
                .iter()
                .enumerate()
                .flat_map(|(pi, p)| p.weights.iter().filter(move |w| *w == target).map(move |_| pi))
                .collect()
        };
        let plus = occurrences(class);
        let minus = occurrences(&neg);

        let residues: BTreeMap<usize, Vec<Weight>> = plus
            .iter()
            .chain(&minus)
            .map(|&p| {
                let mut r: Vec<Weight> = data.points()[p]
                    .weights
                    .iter()
                    .map(|u| u.residue_mod(class))
                    .collect();
                r.sort();
                (p, r)
            })
            .collect();
        let admissible = |allow_loops: bool| -> Vec<Vec<usize>> {
            plus.iter()
                .map(|&p| {
                    minus
                        .iter()
                        .enumerate()
                        .filter(|&(_, &q)| {
                            if p == q {
                                allow_loops
                            } else {
                                residues[&p] == residues[&q]
                            }
                        })
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect()
        };

        let matched = match perfect_matching(&admissible(false), minus.len()) {
            Some(m) => m,
            None => {
                let m = perfect_matching(&admissible(true), minus.len())
                    .ok_or_else(|| Error::NoPerfectMatching(class.clone()))?;
                if m.iter().enumerate().any(|(i, &j)| plus[i] == minus[j]) {
                    loop_free = false;
                }
                m
            }
        };
        for (i, &j) in matched.iter().enumerate() {
            edges.push(Edge::new(
                data.points()[plus[i]].id.clone(),
                data.points()[minus[j]].id.clone(),
                class.clone(),
            ));
        }
    }

    let graph = Multigraph::for_data(data, edges)?;
    Ok(BuiltGraph { graph, loop_free })
}
