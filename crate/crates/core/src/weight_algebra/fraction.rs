use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{SparsePoly, Weight};
use crate::error::{Error, Result};

/// A rational function `numerator / prod <w, t>` whose denominator is a
/// product of linear forms.
///
/// Denominator factors are kept canonicalized (first non-zero entry
/// positive); the sign flips are absorbed into the numerator. Equality is
/// decided by cross-multiplication, not by representation.
#[derive(Clone)]
pub struct FactoredFraction {
    numerator: SparsePoly,
    denominator: BTreeMap<Weight, u32>,
}

impl FactoredFraction {
    pub fn zero(nvars: usize) -> Self {
        FactoredFraction {
            numerator: SparsePoly::zero(nvars),
            denominator: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        FactoredFraction {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    /// `numerator / prod_{w in forms} <w, t>`.
    pub fn new(numerator: SparsePoly, forms: &[Weight]) -> Result<Self> {
        let k = numerator.nvars();
        let mut denominator = BTreeMap::new();
        let mut negative = false;
        for f in forms {
            if f.rank() != k {
                return Err(Error::Dimension {
                    expected: k,
                    found: f.rank(),
                });
            }
            let (sign, c) = f.canonicalize()?;
            negative ^= sign < 0;
            *denominator.entry(c).or_insert(0) += 1;
        }
        let numerator = if negative {
            numerator.scale(&-BigRational::one())
        } else {
            numerator
        };
        Ok(FactoredFraction {
            numerator,
            denominator,
        })
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.numerator
    }

    /// Denominator factors with multiplicity, each canonicalized.
    pub fn denominator(&self) -> Vec<Weight> {
        self.denominator
            .iter()
            .flat_map(|(w, &m)| std::iter::repeat_n(w.clone(), m as usize))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The value when the fraction is a constant, i.e. nothing is left in the
    /// denominator and the numerator is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.numerator.is_zero() {
            return Some(BigRational::zero());
        }
        if self.denominator.is_empty() {
            self.numerator.as_constant()
        } else {
            None
        }
    }

    /// Numerator multiplied up to the denominator `target`, which must contain
    /// this fraction's denominator.
    fn lift_to(&self, target: &BTreeMap<Weight, u32>) -> SparsePoly {
        let mut p = self.numerator.clone();
        for (w, &m) in target {
            let have = self.denominator.get(w).copied().unwrap_or(0);
            for _ in have..m {
                p = p.mul(&SparsePoly::linear(w));
            }
        }
        p
    }

    fn lcm(&self, other: &FactoredFraction) -> BTreeMap<Weight, u32> {
        let mut l = self.denominator.clone();
        for (w, &m) in &other.denominator {
            let e = l.entry(w.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        l
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    fn reduce(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return self;
        }
        let forms: Vec<Weight> = self.denominator.keys().cloned().collect();
        for w in forms {
            while self.denominator.get(&w).is_some_and(|&m| m > 0) {
                match self.numerator.div_linear(&w) {
                    Some(q) => {
                        self.numerator = q;
                        let m = self.denominator.get_mut(&w).expect("present");
                        *m -= 1;
                        if *m == 0 {
                            self.denominator.remove(&w);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Exact sum over the least common denominator, followed by
    /// cancellation of linear factors.
    pub fn add(&self, other: &FactoredFraction) -> FactoredFraction {
        assert_eq!(self.nvars(), other.nvars(), "fraction rank mismatch");
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let l = self.lcm(other);
        let numerator = self.lift_to(&l).add(&other.lift_to(&l));
        FactoredFraction {
            numerator,
            denominator: l,
        }
        .reduce()
    }

    pub fn neg(&self) -> FactoredFraction {
        FactoredFraction {
            numerator: self.numerator.scale(&-BigRational::one()),
            denominator: self.denominator.clone(),
        }
    }

    /// Exact value at `point`; fails when a denominator form vanishes there.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let mut den = BigRational::one();
        for (w, &m) in &self.denominator {
            let v = SparsePoly::linear(w).eval(point)?;
            if v.is_zero() {
                return Err(Error::NonGenericPoint(w.clone()));
            }
            den *= num_traits::pow(v, m as usize);
        }
        Ok(self.numerator.eval(point)? / den)
    }
}

impl PartialEq for FactoredFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        let l = self.lcm(other);
        self.lift_to(&l) == other.lift_to(&l)
    }
}

impl fmt::Display for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if !self.denominator.is_empty() {
            write!(f, " / ")?;
            let parts: Vec<String> = self
                .denominator
                .iter()
                .map(|(w, &m)| {
                    let l = SparsePoly::linear(w);
                    if m == 1 {
                        format!("({l})")
                    } else {
                        format!("({l})^{m}")
                    }
                })
                .collect();
            write!(f, "{}", parts.join(""))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn frac_add(f: &FactoredFraction, g: &FactoredFraction) -> FactoredFraction {
    f.add(g)
}

pub fn frac_eval(f: &FactoredFraction, point: &[BigRational]) -> Result<BigRational> {
    f.eval(point)
}
