//! Exact fixed-point localization: `∫_M α = Σ_p α|_p / ∏_i ⟨w_{p,i}, t⟩`.
//!
//! The equivariant Chern class `c_j` restricted to a fixed point is the
//! `j`-th elementary symmetric polynomial in the weight forms there. Sums
//! are computed either by evaluating at generic rational points (default)
//! or by adding factored fractions symbolically (reference oracle).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpdata::{CheckOutcome, FixedPointData, ValidationReport, Witness};
use crate::weight_algebra::{
    elem_sym, elem_sym_values, generic_points, to_rational_point, FactoredFraction, SparsePoly,
    Weight,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Evaluate every term at a generic point and sum rationals, cross-checked
    /// at a second point.
    #[default]
    Generic,
    /// Add the terms as factored fractions and read off the constant.
    Expanded,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "generic" | "generic-eval" => Ok(Mode::Generic),
            "expanded" => Ok(Mode::Expanded),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?}; expected generic or expanded"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Generic => "generic",
            Mode::Expanded => "expanded",
        })
    }
}

/// Weakly decreasing positive parts. The empty partition indexes the class 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `m`, largest first part first: `(m), .., (1,..,1)`.
    pub fn all(m: usize) -> Vec<Partition> {
        fn rec(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in (1..=rest.min(cap)).rev() {
                prefix.push(part);
                rec(rest - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

fn evaluation_points(data: &FixedPointData, count: usize) -> Vec<Vec<BigRational>> {
    generic_points(&data.distinct_weights(), data.torus_rank(), count)
        .iter()
        .map(to_rational_point)
        .collect()
}

fn check_numerators(data: &FixedPointData, numerators: &[SparsePoly]) -> Result<()> {
    if numerators.len() != data.num_points() {
        return Err(Error::Precondition(format!(
            "{} numerators for {} fixed points",
            numerators.len(),
            data.num_points()
        )));
    }
    Ok(())
}

/// The localization sum as a factored fraction, any numerator degree.
pub fn integrate_expanded(data: &FixedPointData, numerators: &[SparsePoly]) -> Result<FactoredFraction> {
    check_numerators(data, numerators)?;
    let mut acc = FactoredFraction::zero(data.torus_rank());
    for (p, num) in data.points().iter().zip(numerators) {
        acc = acc.add(&FactoredFraction::new(num.clone(), &p.weights)?);
    }
    Ok(acc)
}

fn sum_at(data: &FixedPointData, numerators: &[SparsePoly], rho: &[BigRational]) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (p, num) in data.points().iter().zip(numerators) {
        let mut denom = BigRational::one();
        for w in &p.weights {
            let v = eval_form(w, rho);
            if v.is_zero() {
                return Err(Error::NonGenericPoint(w.clone()));
            }
            denom *= v;
        }
        total += num.eval(rho)? / denom;
    }
    Ok(total)
}

fn eval_form(w: &Weight, rho: &[BigRational]) -> BigRational {
    w.entries()
        .iter()
        .zip(rho)
        .map(|(c, x)| x * BigRational::from_integer(c.clone()))
        .sum()
}

fn agree(first: BigRational, second: BigRational) -> Result<BigRational> {
    if first == second {
        Ok(first)
    } else {
        Err(Error::Inconsistent(format!(
            "generic points give {first} and {second}; the sum is not constant"
        )))
    }
}

/// `Σ_p numerator_p / ∏ ⟨w_{p,i}, t⟩` as an exact constant.
///
/// In generic mode numerators of degree above `n` are rejected, since the
/// sum need not be constant; two evaluation points must agree. In expanded
/// mode the symbolic sum must reduce to a constant.
pub fn integrate(data: &FixedPointData, numerators: &[SparsePoly], mode: Mode) -> Result<BigRational> {
    check_numerators(data, numerators)?;
    match mode {
        Mode::Generic => {
            if let Some(degree) = numerators.iter().map(SparsePoly::degree).max() {
                if degree > data.half_dim() {
                    return Err(Error::DegreeTooHigh {
                        degree,
                        half_dim: data.half_dim(),
                    });
                }
            }
            let pts = evaluation_points(data, 2);
            agree(sum_at(data, numerators, &pts[0])?, sum_at(data, numerators, &pts[1])?)
        }
        Mode::Expanded => {
            let f = integrate_expanded(data, numerators)?;
            f.as_constant().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "the localization sum reduces to a non-constant fraction with denominator {}",
                    f.denominator().iter().map(ToString::to_string).collect::<Vec<_>>().join("*")
                ))
            })
        }
    }
}

/// `∏_j c_{λ_j}` at a fixed point as a polynomial in `t`.
pub fn chern_monomial(weights: &[Weight], nvars: usize, lambda: &Partition) -> Result<SparsePoly> {
    let mut acc = SparsePoly::one(nvars);
    for &j in lambda.parts() {
        if j > weights.len() {
            return Ok(SparsePoly::zero(nvars));
        }
        acc = acc.mul(&elem_sym(j, weights, nvars)?);
    }
    Ok(acc)
}

// Generic mode never builds polynomials: c_j at a point is e_j of the values
// of the weight forms.
fn chern_sum_at(data: &FixedPointData, lambda: &Partition, rho: &[BigRational]) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for p in data.points() {
        let values: Vec<BigRational> = p.weights.iter().map(|w| eval_form(w, rho)).collect();
        let mut denom = BigRational::one();
        for (w, v) in p.weights.iter().zip(&values) {
            if v.is_zero() {
                return Err(Error::NonGenericPoint(w.clone()));
            }
            denom *= v;
        }
        let e = elem_sym_values(&values);
        let num: BigRational = lambda
            .parts()
            .iter()
            .map(|&j| e.get(j).cloned().unwrap_or_else(BigRational::zero))
            .product();
        total += num / denom;
    }
    Ok(total)
}

/// `∫ ∏_j c_{λ_j}` for any partition; rational, and zero for `|λ| < n` on
/// manifold data.
pub fn chern_integral(data: &FixedPointData, lambda: &Partition, mode: Mode) -> Result<BigRational> {
    if lambda.size() > data.half_dim() && mode == Mode::Generic {
        return Err(Error::DegreeTooHigh {
            degree: lambda.size(),
            half_dim: data.half_dim(),
        });
    }
    match mode {
        Mode::Generic => {
            let pts = evaluation_points(data, 2);
            agree(chern_sum_at(data, lambda, &pts[0])?, chern_sum_at(data, lambda, &pts[1])?)
        }
        Mode::Expanded => {
            let k = data.torus_rank();
            let nums = data
                .points()
                .iter()
                .map(|p| chern_monomial(&p.weights, k, lambda))
                .collect::<Result<Vec<_>>>()?;
            integrate(data, &nums, Mode::Expanded)
        }
    }
}

fn require_size(data: &FixedPointData, lambda: &Partition) -> Result<()> {
    if lambda.size() != data.half_dim() {
        return Err(Error::Precondition(format!(
            "partition {lambda} has size {} but the half dimension is {}",
            lambda.size(),
            data.half_dim()
        )));
    }
    Ok(())
}

fn integral(value: BigRational, lambda: &Partition) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{value} (partition {lambda})")))
    }
}

/// The Chern number `c_λ` for `|λ| = n`; non-integral sums are errors.
pub fn chern_number(data: &FixedPointData, lambda: &Partition, mode: Mode) -> Result<BigInt> {
    require_size(data, lambda)?;
    integral(chern_integral(data, lambda, mode)?, lambda)
}

/// One row of a Chern report. `value` is `None` when the two generic points
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernValue {
    pub partition: Partition,
    #[serde(serialize_with = "ser_opt_rational")]
    pub value: Option<BigRational>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) if r.is_integer() => crate::weight_algebra::serialize_bigint(&r.to_integer(), s),
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernReport {
    pub mode: Mode,
    pub values: Vec<ChernValue>,
    /// Every sum was constant (two generic points agree, or the expanded
    /// fraction reduced to a constant).
    pub consistent: bool,
    /// Every value is an integer.
    pub integral: bool,
}

impl ChernReport {
    pub fn get(&self, lambda: &Partition) -> Option<&BigRational> {
        self.values
            .iter()
            .find(|v| &v.partition == lambda)
            .and_then(|v| v.value.as_ref())
    }

    pub fn passed(&self) -> bool {
        self.consistent && self.integral
    }
}

impl fmt::Display for ChernReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            match &v.value {
                Some(x) => writeln!(f, "c[{}] = {}", v.partition, x)?,
                None => writeln!(f, "c[{}] = inconsistent", v.partition)?,
            }
        }
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "consistent: {}", self.consistent)?;
        write!(f, "integral: {}", self.integral)
    }
}

/// Chern numbers for the given partitions (all partitions of `n` if `None`).
pub fn chern_numbers(data: &FixedPointData, partitions: Option<&[Partition]>, mode: Mode) -> Result<ChernReport> {
    let all;
    let partitions = match partitions {
        Some(p) => p,
        None => {
            all = Partition::all(data.half_dim());
            &all
        }
    };
    let mut values = Vec::with_capacity(partitions.len());
    let (mut consistent, mut integral) = (true, true);
    for lambda in partitions {
        require_size(data, lambda)?;
        let value = match chern_integral(data, lambda, mode) {
            Ok(v) => {
                integral &= v.is_integer();
                Some(v)
            }
            Err(Error::Inconsistent(_)) => {
                consistent = false;
                None
            }
            Err(e) => return Err(e),
        };
        values.push(ChernValue {
            partition: lambda.clone(),
            value,
        });
    }
    Ok(ChernReport {
        mode,
        values,
        consistent,
        integral,
    })
}

/// `∫ ∏ c_{λ_j} = 0` for every partition of every `m < n`.
pub fn check_lower_degree_vanishing(data: &FixedPointData, mode: Mode) -> Result<ValidationReport> {
    let mut witnesses = Vec::new();
    for m in 0..data.half_dim() {
        for lambda in Partition::all(m) {
            let value = match chern_integral(data, &lambda, mode) {
                Ok(v) if v.is_zero() => continue,
                Ok(v) => v.to_string(),
                Err(Error::Inconsistent(_)) => "not constant".to_string(),
                Err(e) => return Err(e),
            };
            witnesses.push(Witness::NonZeroIntegral {
                partition: lambda.to_string(),
                value,
            });
        }
    }
    let name = format!("lower_degree_vanishing_{mode}");
    Ok(ValidationReport::single(CheckOutcome::from_witnesses(&name, witnesses)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernRow {
    pub partition: Partition,
    #[serde(serialize_with = "ser_opt_rational")]
    pub left: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub right: Option<BigRational>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernComparison {
    pub rows: Vec<ChernRow>,
    /// All Chern numbers agree; for torus manifolds this is equivariant
    /// cobordism.
    pub cobordant: bool,
}

/// Compares all Chern numbers of two datasets of the same dimension.
pub fn compare_chern(data: &FixedPointData, model: &FixedPointData, mode: Mode) -> Result<ChernComparison> {
    if data.half_dim() != model.half_dim() {
        return Err(Error::Precondition(format!(
            "half dimensions differ: {} and {}",
            data.half_dim(),
            model.half_dim()
        )));
    }
    let left = chern_numbers(data, None, mode)?;
    let right = chern_numbers(model, None, mode)?;
    let rows: Vec<ChernRow> = left
        .values
        .into_iter()
        .zip(right.values)
        .map(|(l, r)| ChernRow {
            equal: l.value.is_some() && l.value == r.value,
            partition: l.partition,
            left: l.value,
            right: r.value,
        })
        .collect();
    let cobordant = rows.iter().all(|r| r.equal);
    Ok(ChernComparison { rows, cobordant })
}
