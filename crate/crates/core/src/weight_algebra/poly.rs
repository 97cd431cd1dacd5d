use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Weight;
use crate::error::{Error, Result};

/// Dense exponent vector of length `k`.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial in `t_1..t_k` with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = SparsePoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        SparsePoly::constant(nvars, BigRational::one())
    }

    /// The linear form `<w, t>`.
    pub fn linear(w: &Weight) -> Self {
        let k = w.rank();
        let mut p = SparsePoly::zero(k);
        for (i, c) in w.entries().iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; k];
                m[i] = 1;
                p.terms.insert(m, BigRational::from_integer(c.clone()));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = SparsePoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial length");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// The constant term when the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self
                .terms
                .get(&vec![0; self.nvars])
                .cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        (0..e).fold(SparsePoly::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient by the linear form `<w, t>`, or `None` when it does not
    /// divide.
    ///
    /// Division runs in lex order with the pivot variable of `w` most
    /// significant, so the leading term of the divisor is `w_j t_j`; once the
    /// leading term of the remainder is free of `t_j`, so is every term.
    pub fn div_linear(&self, w: &Weight) -> Option<SparsePoly> {
        let (j, wj) = w.pivot()?;
        let lead = BigRational::from_integer(wj.clone());
        let divisor = SparsePoly::linear(w);
        let key = |m: &Monomial| {
            let mut k = Vec::with_capacity(m.len());
            k.push(m[j]);
            k.extend(m.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &e)| e));
            k
        };
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.nvars);
        while let Some((m, c)) = rem
            .terms
            .iter()
            .max_by(|a, b| key(a.0).cmp(&key(b.0)))
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if m[j] == 0 {
                return None;
            }
            let mut qm = m;
            qm[j] -= 1;
            let qc = c / &lead;
            let step = SparsePoly::from_terms(self.nvars, [(qm.clone(), qc.clone())]);
            rem = rem.sub(&step.mul(&divisor));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("t{}", v + 1)
                    } else {
                        format!("t{}^{}", v + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The `j`-th elementary symmetric polynomial in the linear forms of `forms`.
pub fn elem_sym(j: usize, forms: &[Weight], nvars: usize) -> Result<SparsePoly> {
    if j > forms.len() {
        return Err(Error::OutOfRange {
            index: j,
            max: forms.len(),
        });
    }
    let mut e = vec![SparsePoly::zero(nvars); j + 1];
    e[0] = SparsePoly::one(nvars);
    for (seen, w) in forms.iter().enumerate() {
        if w.rank() != nvars {
            return Err(Error::Dimension {
                expected: nvars,
                found: w.rank(),
            });
        }
        let l = SparsePoly::linear(w);
        for i in (1..=j.min(seen + 1)).rev() {
            e[i] = e[i].add(&e[i - 1].mul(&l));
        }
    }
    Ok(e.pop().expect("j + 1 entries"))
}

/// Elementary symmetric functions `e_0..e_n` of a list of exact values.
pub fn elem_sym_values(values: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); values.len() + 1];
    e[0] = BigRational::one();
    for (seen, x) in values.iter().enumerate() {
        for i in (1..=seen + 1).rev() {
            let t = &e[i - 1] * x;
            e[i] += t;
        }
    }
    e
}

#[cfg(test)]
pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}
