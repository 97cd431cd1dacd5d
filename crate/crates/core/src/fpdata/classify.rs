use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::FixedPointData;
use crate::error::{Error, Result};
use crate::weight_algebra::serialize_bigint;

/// Weight patterns that circle actions with at most three fixed points can
/// have. Anything else cannot come from an almost complex manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FewFixedPoints {
    Point,
    /// Weights `{a}` and `{-a}`.
    SphereDim2 {
        #[serde(serialize_with = "serialize_bigint")]
        a: BigInt,
    },
    /// Weights `{-a-b, a, b}` and `{-a, -b, a+b}`, with `0 < a <= b`.
    Dim6Pair {
        #[serde(serialize_with = "serialize_bigint")]
        a: BigInt,
        #[serde(serialize_with = "serialize_bigint")]
        b: BigInt,
    },
    /// Weights `{a+b, a}`, `{-a, b}`, `{-b, -a-b}`.
    Dim4Triple {
        #[serde(serialize_with = "serialize_bigint")]
        a: BigInt,
        #[serde(serialize_with = "serialize_bigint")]
        b: BigInt,
    },
    Nonconforming,
}

impl fmt::Display for FewFixedPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FewFixedPoints::Point => write!(f, "point"),
            FewFixedPoints::SphereDim2 { a } => write!(f, "sphere-dim2(a={a})"),
            FewFixedPoints::Dim6Pair { a, b } => write!(f, "dim6-pair(a={a}, b={b})"),
            FewFixedPoints::Dim4Triple { a, b } => write!(f, "dim4-triple(a={a}, b={b})"),
            FewFixedPoints::Nonconforming => write!(f, "nonconforming"),
        }
    }
}

fn sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v
}

/// Matches circle (`k = 1`) data with one to three fixed points against the
/// known classification.
pub fn classify_few_fixed_points(data: &FixedPointData) -> Result<FewFixedPoints> {
    if data.torus_rank() != 1 {
        return Err(Error::Precondition(format!(
            "classification needs a circle action, got torus rank {}",
            data.torus_rank()
        )));
    }
    let count = data.num_points();
    if !(1..=3).contains(&count) {
        return Err(Error::Precondition(format!(
            "classification covers 1 to 3 fixed points, got {count}"
        )));
    }
    let sets: Vec<Vec<BigInt>> = data
        .points()
        .iter()
        .map(|p| sorted(p.weights.iter().map(|w| w.entries()[0].clone()).collect()))
        .collect();
    let n = data.half_dim();

    let found = match (count, n) {
        (1, 0) => Some(FewFixedPoints::Point),
        (2, 1) => {
            let (x, y) = (&sets[0][0], &sets[1][0]);
            (x == &-y).then(|| FewFixedPoints::SphereDim2 { a: x.abs() })
        }
        (2, 3) => (0..2).find_map(|i| dim6(&sets[i], &sets[1 - i])),
        (3, 2) => dim4(&sets),
        _ => None,
    };
    Ok(found.unwrap_or(FewFixedPoints::Nonconforming))
}

// `first` must be {-a-b, a, b} with a, b > 0.
fn dim6(first: &[BigInt], second: &[BigInt]) -> Option<FewFixedPoints> {
    let (neg, a, b) = (&first[0], &first[1], &first[2]);
    if !a.is_positive() || neg != &-(a + b) {
        return None;
    }
    let expected = sorted(vec![-a, -b, a + b]);
    (second == expected.as_slice()).then(|| FewFixedPoints::Dim6Pair {
        a: a.clone(),
        b: b.clone(),
    })
}

// one point carries {a, a+b} with a, b > 0; the others are {-a, b} and {-b, -a-b}
fn dim4(sets: &[Vec<BigInt>]) -> Option<FewFixedPoints> {
    for top in 0..3 {
        let s = &sets[top];
        if !s[0].is_positive() || s[0] == s[1] {
            continue;
        }
        let a = s[0].clone();
        let b = &s[1] - &a;
        let mut rest: Vec<&Vec<BigInt>> = (0..3).filter(|&i| i != top).map(|i| &sets[i]).collect();
        rest.sort();
        let mut want = vec![sorted(vec![-&a, b.clone()]), sorted(vec![-&b, -(&a + &b)])];
        want.sort();
        if rest.iter().zip(&want).all(|(x, y)| *x == y) {
            return Some(FewFixedPoints::Dim4Triple { a, b });
        }
    }
    None
}
