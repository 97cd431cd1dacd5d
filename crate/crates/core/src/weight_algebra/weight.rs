use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer vector in `Z^k`, read as the linear form `t -> <w, t>` on the
/// Lie algebra of the torus.
///
/// Ordering is lexicographic on the entries, which is the order used for
/// canonical serialization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(Vec<BigInt>);

impl Weight {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Weight(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        Weight(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zero(k: usize) -> Self {
        Weight(vec![BigInt::zero(); k])
    }

    /// The `i`-th standard basis vector of `Z^k`.
    pub fn unit(k: usize, i: usize) -> Self {
        let mut w = Weight::zero(k);
        w.0[i] = BigInt::from(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index and value of the first non-zero entry.
    pub fn pivot(&self) -> Option<(usize, &BigInt)> {
        self.0.iter().enumerate().find(|(_, e)| !e.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> Weight {
        Weight(self.0.iter().map(|e| e * c).collect())
    }

    fn check_rank(&self, other: &Weight) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    /// Exact pairing `sum_i self_i * other_i`.
    pub fn dot(&self, other: &Weight) -> Result<BigInt> {
        self.check_rank(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Returns `(sign, sign * self)` where the first non-zero entry of the
    /// second component is positive.
    pub fn canonicalize(&self) -> Result<(i8, Weight)> {
        match self.pivot() {
            None => Err(Error::ZeroWeight(None)),
            Some((_, p)) if p.is_negative() => Ok((-1, -self)),
            Some(_) => Ok((1, self.clone())),
        }
    }

    /// The integer `c` with `self = c * w`, if one exists.
    pub fn multiple_of(&self, w: &Weight) -> Option<BigInt> {
        if self.rank() != w.rank() {
            return None;
        }
        let (j, wj) = w.pivot()?;
        let (c, r) = self.0[j].div_rem(wj);
        if !r.is_zero() {
            return None;
        }
        self.0
            .iter()
            .zip(&w.0)
            .all(|(a, b)| *a == &c * b)
            .then_some(c)
    }

    /// True iff `self - v` is an integer multiple of `w`.
    pub fn congruent_mod(&self, v: &Weight, w: &Weight) -> bool {
        self.rank() == v.rank() && (self - v).multiple_of(w).is_some()
    }

    /// Canonical representative of `self + Z w`: the pivot coordinate of `w`
    /// is reduced into `[0, |w_pivot|)`. Two weights are congruent modulo `w`
    /// iff their residues agree.
    pub fn residue_mod(&self, w: &Weight) -> Weight {
        let Some((j, wj)) = w.pivot() else {
            return self.clone();
        };
        let c = self.0[j].div_floor(wj);
        let c = if wj.is_negative() && !(&self.0[j] - &c * wj).is_zero() {
            // floor division by a negative pivot leaves a non-positive remainder
            c + 1
        } else {
            c
        };
        let r = self - &w.scale(&c);
        debug_assert!(!r.0[j].is_negative() && r.0[j] < wj.abs());
        r
    }

    /// Two weights are parallel when every 2x2 minor vanishes.
    pub fn is_parallel(&self, other: &Weight) -> bool {
        let k = self.rank();
        if k != other.rank() {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                if &self.0[i] * &other.0[j] != &self.0[j] * &other.0[i] {
                    return false;
                }
            }
        }
        true
    }

    /// Renders `(a,b,..)`, or a bare integer when `k = 1`.
    pub fn compact_label(&self) -> String {
        if self.rank() == 1 {
            self.0[0].to_string()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `1,-2,3` (optionally wrapped in parentheses or brackets).
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let entries = s
            .split(',')
            .map(|t| {
                BigInt::from_str(t.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(entries))
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|e| -e).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

/// Writes an integer as a JSON number of any size. Use with
/// `#[serde(serialize_with = ...)]`.
pub fn serialize_bigint<S: Serializer>(x: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::Error as _;
    serde_json::Number::from_str(&x.to_string())
        .map_err(S::Error::custom)?
        .serialize(serializer)
}

struct AsNumber<'a>(&'a BigInt);

impl Serialize for AsNumber<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, serializer)
    }
}

// JSON numbers are carried through `serde_json::Number` so that entries of any
// size survive a round trip.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for e in &self.0 {
            seq.serialize_element(&AsNumber(e))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Number>::deserialize(deserializer)?;
        raw.iter()
            .map(|n| {
                BigInt::from_str(&n.to_string())
                    .map_err(|_| D::Error::custom(format!("weight entry {n} is not an integer")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &[i64]) -> Weight {
        Weight::from_i64s(e)
    }

    #[test]
    fn dot_examples() {
        assert_eq!(w(&[1, 2]).dot(&w(&[-2, -1])).unwrap(), BigInt::from(-4));
        assert_eq!(w(&[1, 0, 0]).dot(&w(&[7, 8, 9])).unwrap(), BigInt::from(7));
        assert_eq!(w(&[1, 2]).dot(&w(&[0, 1])).unwrap(), BigInt::from(2));
        assert_eq!(
            w(&[1, 2]).dot(&w(&[1, 2, 3])),
            Err(Error::Dimension {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(w(&[-1, 1]).canonicalize().unwrap(), (-1, w(&[1, -1])));
        assert_eq!(w(&[0, 3]).canonicalize().unwrap(), (1, w(&[0, 3])));
        assert_eq!(w(&[-2, 0]).canonicalize().unwrap(), (-1, w(&[2, 0])));
        assert!(matches!(
            w(&[0, 0]).canonicalize(),
            Err(Error::ZeroWeight(_))
        ));
    }

    #[test]
    fn congruence_examples() {
        assert!(w(&[0, 1]).congruent_mod(&w(&[-1, 1]), &w(&[1, 0])));
        assert!(w(&[1, 0]).congruent_mod(&w(&[-1, 0]), &w(&[1, 0])));
        assert!(!w(&[0, 1]).congruent_mod(&w(&[1, 1]), &w(&[0, 2])));
        assert_eq!(w(&[4, 6]).multiple_of(&w(&[-2, -3])), Some(BigInt::from(-2)));
        assert_eq!(w(&[4, 5]).multiple_of(&w(&[2, 3])), None);
    }

    #[test]
    fn residue_is_a_class_invariant() {
        let modulus = [w(&[2, 0]), w(&[-3, 1]), w(&[0, -2]), w(&[5])];
        for m in &modulus {
            let k = m.rank();
            for a in -6..6i64 {
                for b in -6..6i64 {
                    let u = if k == 1 { w(&[a]) } else { w(&[a, b]) };
                    let r = u.residue_mod(m);
                    assert!(u.congruent_mod(&r, m));
                    for c in -3..=3 {
                        let v = &u + &m.scale(&BigInt::from(c));
                        assert_eq!(v.residue_mod(m), r);
                    }
                }
            }
        }
        assert_eq!(w(&[-1, 7]).residue_mod(&w(&[1, 0])), w(&[0, 7]));
        assert_eq!(w(&[-1]).residue_mod(&w(&[4])), w(&[3]));
    }

    #[test]
    fn parallel_uses_minors() {
        assert!(w(&[-2, 0]).is_parallel(&w(&[-1, 0])));
        assert!(!w(&[-2, 0]).is_parallel(&w(&[-2, 1])));
        assert!(w(&[2, -4, 6]).is_parallel(&w(&[-1, 2, -3])));
    }

    #[test]
    fn parses_and_prints() {
        let v: Weight = "(1,-2)".parse().unwrap();
        assert_eq!(v, w(&[1, -2]));
        assert_eq!(v.to_string(), "(1,-2)");
        assert_eq!(w(&[3]).compact_label(), "3");
        assert!("1,x".parse::<Weight>().is_err());
    }

    #[test]
    fn json_keeps_big_entries() {
        let big = Weight::new(vec![
            BigInt::from_str("123456789012345678901234567890").unwrap(),
            BigInt::from(-1),
        ]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "[123456789012345678901234567890,-1]");
        let back: Weight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<Weight>("[1.5,2]").is_err());
    }
}
