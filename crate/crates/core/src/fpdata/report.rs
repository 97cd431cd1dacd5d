use std::fmt;

use serde::Serialize;

use crate::weight_algebra::Weight;

/// Evidence that a check failed. Passing checks carry none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    UnpairedWeight {
        weight: Weight,
        count: usize,
        negated_count: usize,
    },
    NonZeroWeightSum {
        sum: Weight,
    },
    ParallelWeights {
        point: String,
        first: Weight,
        second: Weight,
    },
    NotABasis {
        point: String,
    },
    RankMismatch {
        torus_rank: usize,
        half_dim: usize,
    },
    VertexSetMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },
    MultisetMismatch {
        point: String,
        declared: Vec<Weight>,
        induced: Vec<Weight>,
    },
    EdgeNotCongruent {
        edge: usize,
        from: String,
        to: String,
        label: Weight,
    },
    SelfLoop {
        edge: usize,
        vertex: String,
    },
    MultipleEdges {
        first: String,
        second: String,
        count: usize,
    },
    ModelMismatch {
        point: String,
        found: Vec<Weight>,
        expected: Vec<Weight>,
    },
    AsymmetricCoefficient {
        index: usize,
        value: i64,
        mirror_value: i64,
    },
    VanishingCoefficient {
        index: usize,
    },
    NonZeroIntegral {
        partition: String,
        value: String,
    },
    Message {
        detail: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::UnpairedWeight {
                weight,
                count,
                negated_count,
            } => write!(
                f,
                "weight {weight} occurs {count} times, its negative {negated_count} times"
            ),
            Witness::NonZeroWeightSum { sum } => write!(f, "weights sum to {sum}"),
            Witness::ParallelWeights {
                point,
                first,
                second,
            } => write!(f, "at {point}: {first} and {second} are parallel"),
            Witness::NotABasis { point } => write!(f, "weights at {point} are not a basis"),
            Witness::RankMismatch {
                torus_rank,
                half_dim,
            } => write!(f, "torus rank {torus_rank} but half dimension {half_dim}"),
            Witness::VertexSetMismatch { missing, extra } => write!(
                f,
                "graph vertices missing {missing:?}, unexpected {extra:?}"
            ),
            Witness::MultisetMismatch {
                point,
                declared,
                induced,
            } => write!(
                f,
                "at {point}: declared {} but graph gives {}",
                join(declared),
                join(induced)
            ),
            Witness::EdgeNotCongruent {
                edge,
                from,
                to,
                label,
            } => write!(
                f,
                "edge #{edge} {from} -> {to}: weights not congruent modulo {label}"
            ),
            Witness::SelfLoop { edge, vertex } => write!(f, "edge #{edge} is a loop at {vertex}"),
            Witness::MultipleEdges {
                first,
                second,
                count,
            } => write!(f, "{count} edges between {first} and {second}"),
            Witness::ModelMismatch {
                point,
                found,
                expected,
            } => write!(
                f,
                "at {point}: weights {} but the linear model needs {}",
                join(found),
                join(expected)
            ),
            Witness::AsymmetricCoefficient {
                index,
                value,
                mirror_value,
            } => write!(f, "a_{index} = {value} but its mirror is {mirror_value}"),
            Witness::VanishingCoefficient { index } => write!(f, "a_{index} = 0"),
            Witness::NonZeroIntegral { partition, value } => {
                write!(f, "integral of c_[{partition}] is {value}")
            }
            Witness::Message { detail } => write!(f, "{detail}"),
        }
    }
}

fn join(ws: &[Weight]) -> String {
    let parts: Vec<String> = ws.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// The bijection found between the weights at the two ends of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeMatching {
    pub edge: usize,
    pub pairs: Vec<(Weight, Weight)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matchings: Vec<EdgeMatching>,
}

impl CheckOutcome {
    pub fn from_witnesses(check: &str, witnesses: Vec<Witness>) -> Self {
        CheckOutcome {
            check: check.to_string(),
            passed: witnesses.is_empty(),
            witnesses,
            note: None,
            matchings: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn single(outcome: CheckOutcome) -> Self {
        ValidationReport {
            checks: vec![outcome],
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.checks.iter().flat_map(|c| c.witnesses.iter())
    }

    pub fn outcome(&self, check: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.checks.extend(other.checks);
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.check)?;
            for w in &c.witnesses {
                writeln!(f, "    {w}")?;
            }
            if let Some(n) = &c.note {
                writeln!(f, "    note: {n}")?;
            }
        }
        Ok(())
    }
}
