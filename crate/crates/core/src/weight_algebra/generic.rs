use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Weight;

/// `(1, N, N^2, .., N^{k-1})`.
pub fn moment_curve(k: usize, base: u64) -> Weight {
    let n = BigInt::from(base);
    let mut acc = BigInt::one();
    let mut entries = Vec::with_capacity(k);
    for _ in 0..k {
        entries.push(acc.clone());
        acc *= &n;
    }
    Weight::new(entries)
}

fn avoids_all(xi: &Weight, forms: &[Weight]) -> bool {
    forms
        .iter()
        .all(|w| xi.dot(w).map(|d| !d.is_zero()).unwrap_or(false))
}

/// Deterministic generic circle: `(1, N, .., N^{k-1})` for the smallest
/// `N >= 2` pairing non-trivially with every form.
///
/// Each non-zero form is a non-zero polynomial in `N` of degree `< k`, so it
/// kills at most `k - 1` values of `N` and the search terminates. For
/// `k = 1` the vector is `(1)`.
pub fn generic_point(forms: &[Weight], k: usize) -> Weight {
    generic_points(forms, k, 1).pop().expect("one point")
}

/// The first `count` vectors of the schedule that avoid every form, in
/// increasing `N`.
pub fn generic_points(forms: &[Weight], k: usize, count: usize) -> Vec<Weight> {
    debug_assert!(forms.iter().all(|w| !w.is_zero() && w.rank() == k));
    if k == 1 {
        // every non-zero integer form pairs non-trivially with any non-zero xi
        return (1..=count as u64).map(|c| Weight::new(vec![BigInt::from(c)])).collect();
    }
    (2u64..)
        .map(|n| moment_curve(k, n))
        .filter(|xi| avoids_all(xi, forms))
        .take(count)
        .collect()
}

pub fn to_rational_point(xi: &Weight) -> Vec<BigRational> {
    xi.entries()
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect()
}
