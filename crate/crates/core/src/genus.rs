//! The χ_y-genus of isolated fixed-point data by the Kosniowski formula,
//! with the Euler number, Todd genus and signature it specializes to.
//!
//! Every input is treated as isolated-fixed-point data: each point
//! contributes `(-y)^{d_minus}` where `d_minus` counts the weights pairing
//! negatively with a generic circle.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpdata::{CheckOutcome, FixedPoint, FixedPointData, ValidationReport, Witness};
use crate::weight_algebra::{generic_point, Weight};

/// `χ_y = Σ a_i (-y)^i`, stored as the coefficients `a_0..a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChiYPolynomial {
    coeffs: Vec<u64>,
}

impl ChiYPolynomial {
    pub fn new(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "a χ_y polynomial has at least a_0");
        ChiYPolynomial { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        ChiYPolynomial::new(vec![0; n + 1])
    }

    /// `Σ_{i=0}^n (-y)^i`, the genus of the linear model.
    pub fn all_ones(n: usize) -> Self {
        ChiYPolynomial::new(vec![1; n + 1])
    }

    pub fn half_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn a(&self, i: usize) -> u64 {
        self.coeffs[i]
    }

    pub fn reversed(&self) -> Self {
        ChiYPolynomial::new(self.coeffs.iter().rev().copied().collect())
    }

    /// Value at an integer `y`.
    pub fn eval(&self, y: i64) -> BigInt {
        let minus_y = BigInt::from(-y);
        let mut acc = BigInt::from(0);
        for a in self.coeffs.iter().rev() {
            acc = acc * &minus_y + BigInt::from(*a);
        }
        acc
    }

    /// `χ_{-1}`: the number of fixed points.
    pub fn euler(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `χ_0 = a_0`.
    pub fn todd(&self) -> u64 {
        self.coeffs[0]
    }

    /// `χ_1 = Σ (-1)^i a_i`.
    pub fn signature(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 0 { a as i64 } else { -(a as i64) })
            .sum()
    }
}

/// Renders the polynomial in `y`, e.g. `1 - y + y^2 - y^3` or `-y + y^2`.
impl fmt::Display for ChiYPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let negative = i % 2 == 1;
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            };
            let body = match (a, i) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{a}*{mono}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for ChiYPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ChiYPolynomial", 2)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.serialize_field("polynomial", &self.to_string())?;
        s.end()
    }
}

fn pairings(p: &FixedPoint, xi: &Weight) -> Result<Vec<BigInt>> {
    p.weights
        .iter()
        .map(|w| {
            let d = xi.dot(w)?;
            if d == BigInt::from(0) {
                Err(Error::NonGenericCircle {
                    xi: xi.clone(),
                    point: p.id.clone(),
                    weight: w.clone(),
                })
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// Number of weights at `p` pairing negatively with `xi`.
pub fn index_d_minus(p: &FixedPoint, xi: &Weight) -> Result<usize> {
    Ok(pairings(p, xi)?.iter().filter(|d| d.sign() == num_bigint::Sign::Minus).count())
}

/// Number of weights at `p` pairing positively with `xi`.
pub fn index_d_plus(p: &FixedPoint, xi: &Weight) -> Result<usize> {
    Ok(p.weights.len() - index_d_minus(p, xi)?)
}

/// The deterministic generic circle for `data`: the first vector of the
/// `(1, N, N^2, ..)` schedule pairing non-trivially with every weight.
pub fn generic_circle(data: &FixedPointData) -> Weight {
    generic_point(&data.distinct_weights(), data.torus_rank())
}

fn tally(data: &FixedPointData, xi: &Weight, index: fn(&FixedPoint, &Weight) -> Result<usize>) -> Result<ChiYPolynomial> {
    if xi.rank() != data.torus_rank() {
        return Err(Error::Dimension {
            expected: data.torus_rank(),
            found: xi.rank(),
        });
    }
    let mut coeffs = vec![0u64; data.half_dim() + 1];
    for p in data.points() {
        coeffs[index(p, xi)?] += 1;
    }
    Ok(ChiYPolynomial::new(coeffs))
}

/// `a_i` = number of points with `d_minus = i` under the default circle.
pub fn chi_y(data: &FixedPointData) -> ChiYPolynomial {
    chi_y_with_xi(data, &generic_circle(data)).expect("the default circle is generic")
}

/// As [`chi_y`] with a caller-supplied circle.
pub fn chi_y_with_xi(data: &FixedPointData, xi: &Weight) -> Result<ChiYPolynomial> {
    tally(data, xi, index_d_minus)
}

/// Counts `d_plus` instead; for manifold data this is the reversed list.
pub fn chi_y_by_d_plus(data: &FixedPointData, xi: &Weight) -> Result<ChiYPolynomial> {
    tally(data, xi, index_d_plus)
}

pub fn euler(data: &FixedPointData) -> u64 {
    data.num_points() as u64
}

pub fn todd(data: &FixedPointData) -> u64 {
    chi_y(data).todd()
}

pub fn signature(data: &FixedPointData) -> i64 {
    chi_y(data).signature()
}

/// `a_i = a_{n-i}` for every `i`.
pub fn check_symmetry(data: &FixedPointData) -> ValidationReport {
    let chi = chi_y(data);
    let n = chi.half_dim();
    let witnesses = (0..=n / 2)
        .filter(|&i| chi.a(i) != chi.a(n - i))
        .map(|i| Witness::AsymmetricCoefficient {
            index: i,
            value: chi.a(i) as i64,
            mirror_value: chi.a(n - i) as i64,
        })
        .collect();
    ValidationReport::single(CheckOutcome::from_witnesses("chi_y_symmetry", witnesses))
}

/// `a_i >= 1` for every `i`, which holds for every almost complex torus
/// manifold.
///
/// Needs `k = n` and a basis at every point; those conditions are checked
/// directly, so unflagged data qualifies when it satisfies them.
pub fn check_positivity(data: &FixedPointData) -> Result<ValidationReport> {
    data.torus_manifold_conditions()?;
    let chi = chi_y(data);
    let witnesses: Vec<Witness> = (0..=chi.half_dim())
        .filter(|&i| chi.a(i) == 0)
        .map(|index| Witness::VanishingCoefficient { index })
        .collect();
    let failed = !witnesses.is_empty();
    let mut outcome = CheckOutcome::from_witnesses("chi_y_positivity", witnesses);
    if failed {
        outcome = outcome.with_note(
            "data unrealizable: every almost complex torus manifold has all a_i positive",
        );
    }
    Ok(ValidationReport::single(outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &[i64]) -> Weight {
        Weight::from_i64s(e)
    }

    fn point(id: &str, ws: &[&[i64]]) -> FixedPoint {
        FixedPoint::new(id, ws.iter().map(|x| w(x)).collect())
    }

    fn cp2() -> FixedPointData {
        FixedPointData::new(
            2,
            2,
            vec![
                point("p0", &[&[1, 0], &[0, 1]]),
                point("p1", &[&[-1, 0], &[-1, 1]]),
                point("p2", &[&[0, -1], &[1, -1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn d_minus_examples() {
        let xi = w(&[1, 2]);
        assert_eq!(index_d_minus(&point("p1", &[&[-1, 0], &[-1, 1]]), &xi), Ok(1));
        assert_eq!(index_d_minus(&point("p0", &[&[1, 0], &[0, 1]]), &xi), Ok(0));
        assert_eq!(index_d_minus(&point("p3", &[&[1, -1], &[-1, -2], &[0, 1]]), &xi), Ok(2));
        assert_eq!(index_d_plus(&point("p3", &[&[1, -1], &[-1, -2], &[0, 1]]), &xi), Ok(1));
        assert!(matches!(
            index_d_minus(&point("p", &[&[2, -1]]), &xi),
            Err(Error::NonGenericCircle { .. })
        ));
    }

    #[test]
    fn cp2_genus() {
        let d = cp2();
        assert_eq!(generic_circle(&d), w(&[1, 2]));
        let chi = chi_y(&d);
        assert_eq!(chi.coeffs(), &[1, 1, 1]);
        assert_eq!(chi.signature(), 1);
        assert_eq!(chi.todd(), 1);
        assert_eq!(chi.euler(), 3);
        assert_eq!(chi.eval(-1), BigInt::from(3));
        assert_eq!(chi.eval(1), BigInt::from(1));
        assert_eq!(chi.to_string(), "1 - y + y^2");
        assert_eq!(chi_y_by_d_plus(&d, &w(&[1, 2])).unwrap(), chi.reversed());
    }

    #[test]
    fn display() {
        assert_eq!(ChiYPolynomial::new(vec![1, 1, 1, 1]).to_string(), "1 - y + y^2 - y^3");
        assert_eq!(ChiYPolynomial::new(vec![0, 1, 1, 0]).to_string(), "-y + y^2");
        assert_eq!(ChiYPolynomial::new(vec![0, 2, 2, 0]).to_string(), "-2*y + 2*y^2");
        assert_eq!(ChiYPolynomial::zero(2).to_string(), "0");
        assert_eq!(ChiYPolynomial::new(vec![3]).to_string(), "3");
    }

    #[test]
    fn positivity_flags_missing_class() {
        let d = cp2();
        assert!(check_positivity(&d).unwrap().passed());
        let cut = FixedPointData::new(2, 2, d.points()[..2].to_vec()).unwrap();
        let r = check_positivity(&cut).unwrap();
        assert!(!r.passed());
        assert!(r.checks[0].note.as_deref().unwrap().contains("unrealizable"));
        let s6 = FixedPointData::new(
            2,
            3,
            vec![
                point("p", &[&[-1, -1], &[1, 0], &[0, 1]]),
                point("q", &[&[-1, 0], &[0, -1], &[1, 1]]),
            ],
        )
        .unwrap();
        assert!(matches!(check_positivity(&s6), Err(Error::Precondition(_))));
        assert!(check_symmetry(&s6).passed());
    }

    #[test]
    fn symmetry_witness() {
        let lopsided = FixedPointData::new(1, 1, vec![point("p", &[&[1]])]).unwrap();
        let r = check_symmetry(&lopsided);
        assert_eq!(
            r.witnesses().next(),
            Some(&Witness::AsymmetricCoefficient {
                index: 0,
                value: 1,
                mirror_value: 0
            })
        );
    }
}
