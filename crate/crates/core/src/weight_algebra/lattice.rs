//! Integer matrices built from weights: determinants, unimodularity, and
//! random elements of GL(n, Z).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::Weight;
use crate::error::{Error, Result};

/// Square integer matrix whose rows are the given weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Weight]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.rank() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: r.rank(),
                });
            }
        }
        Ok(IntMatrix {
            rows: rows.iter().map(|r| r.entries().to_vec()).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n).map(|i| Weight::unit(n, i).into_entries()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> Vec<Weight> {
        self.rows.iter().cloned().map(Weight::new).collect()
    }

    /// Fraction-free (Bareiss) elimination; exact over Z.
    pub fn determinant(&self) -> BigInt {
        let n = self.size();
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `v -> v M`, i.e. the combination of rows with coefficients `v`.
    pub fn left_apply(&self, v: &Weight) -> Weight {
        let n = self.size();
        let mut out = vec![BigInt::zero(); n];
        for (c, row) in v.entries().iter().zip(&self.rows) {
            for (o, e) in out.iter_mut().zip(row) {
                *o += c * e;
            }
        }
        Weight::new(out)
    }

    /// `v -> M v`.
    pub fn apply(&self, v: &Weight) -> Weight {
        Weight::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(v.entries()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.size();
        IntMatrix {
            rows: (0..n)
                .map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Inverse of a unimodular matrix, computed by Gauss-Jordan over Q.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let n = self.size();
        let det = self.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(n));
        }
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .cloned()
                    .map(BigRational::from_integer)
                    .chain((0..n).map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    }))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::NotUnimodular(n))?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        let rows = a
            .into_iter()
            .map(|row| row[n..].iter().map(|x| x.to_integer()).collect())
            .collect();
        Ok(IntMatrix { rows })
    }
}

/// True iff the `n` vectors, each in `Z^n`, form a basis of `Z^n`.
pub fn is_unimodular_basis(vectors: &[Weight]) -> Result<bool> {
    let m = IntMatrix::from_rows(vectors)?;
    Ok(m.determinant().abs().is_one())
}

/// A random basis of `Z^n` with small entries: the identity scrambled by
/// signed permutations and elementary row additions.
pub fn random_unimodular_basis<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Weight> {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n == 0 {
        return Vec::new();
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        let next: Vec<i64> = rows[i].iter().zip(&rows[j]).map(|(a, b)| a + c * b).collect();
        if next.iter().all(|e| e.abs() <= 9) {
            rows[i] = next;
        }
    }
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        rows.swap(i, j);
    }
    for row in rows.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|e| *e = -*e);
        }
    }
    rows.iter().map(|r| Weight::from_i64s(r)).collect()
}
