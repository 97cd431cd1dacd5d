//! Exact arithmetic over weights: linear forms, sparse polynomials, factored
//! rational functions, generic circles, and lattice tests.

mod fraction;
mod generic;
mod lattice;
mod poly;
mod weight;

pub use fraction::{frac_add, frac_eval, FactoredFraction};
pub use generic::{generic_point, generic_points, moment_curve, to_rational_point};
pub use lattice::{is_unimodular_basis, random_unimodular_basis, IntMatrix};
pub use poly::{elem_sym, elem_sym_values, Monomial, SparsePoly};
#[cfg(test)]
pub(crate) use poly::rational;
pub use weight::{serialize_bigint, Weight};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Pairing `<xi, w>`.
pub fn dot(xi: &Weight, w: &Weight) -> crate::Result<BigInt> {
    xi.dot(w)
}

/// `(sign, sign * w)` with a positive leading entry.
pub fn canonicalize(w: &Weight) -> crate::Result<(i8, Weight)> {
    w.canonicalize()
}
