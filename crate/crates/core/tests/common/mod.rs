#![allow(dead_code)]

use gkmkit::fpdata::{FixedPoint, FixedPointData};
use gkmkit::weight_algebra::{random_unimodular_basis, Weight};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(e: &[i64]) -> Weight {
    Weight::from_i64s(e)
}

pub fn basis(n: usize, rng: &mut ChaCha8Rng) -> Vec<Weight> {
    random_unimodular_basis(n, rng)
}

/// Shuffles point order and the weights within each point, and renames the
/// points to `v{..}` in a random order. Returns the data and, for each old
/// id, its new name.
pub fn relabel(data: &FixedPointData, rng: &mut ChaCha8Rng) -> (FixedPointData, Vec<(String, String)>) {
    let mut names: Vec<usize> = (0..data.num_points()).collect();
    names.shuffle(rng);
    let mut renames = Vec::new();
    let mut points: Vec<FixedPoint> = data
        .points()
        .iter()
        .zip(&names)
        .map(|(p, &k)| {
            let id = format!("v{k}");
            renames.push((p.id.clone(), id.clone()));
            let mut ws = p.weights.clone();
            ws.shuffle(rng);
            FixedPoint::new(id, ws)
        })
        .collect();
    points.shuffle(rng);
    let out = FixedPointData::new(data.torus_rank(), data.half_dim(), points)
        .unwrap()
        .with_torus_manifold(data.is_torus_manifold())
        .unwrap();
    (out, renames)
}

/// Replaces one weight by a different non-zero vector.
pub fn mutate(data: &FixedPointData, rng: &mut ChaCha8Rng) -> FixedPointData {
    let k = data.torus_rank();
    let mut points = data.points().to_vec();
    let pi = rng.gen_range(0..points.len());
    let wi = rng.gen_range(0..points[pi].weights.len());
    let old = points[pi].weights[wi].clone();
    let new = loop {
        let candidate = if rng.gen_bool(0.5) {
            // nudge one coordinate
            let mut e: Vec<i64> = old.entries().iter().map(|x| i64::try_from(x).unwrap()).collect();
            let i = rng.gen_range(0..k);
            e[i] += *[-2i64, -1, 1, 2].choose(rng).unwrap();
            w(&e)
        } else {
            let e: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
            w(&e)
        };
        if !candidate.is_zero() && candidate != old {
            break candidate;
        }
    };
    points[pi].weights[wi] = new;
    FixedPointData::new(k, data.half_dim(), points).unwrap()
}

/// Independent `χ_y` oracle: plain `i128` pairings against `xi`.
pub fn chi_y_oracle(data: &FixedPointData, xi: &[i64]) -> Option<Vec<u64>> {
    let mut a = vec![0u64; data.half_dim() + 1];
    for p in data.points() {
        let mut neg = 0;
        for wt in &p.weights {
            let d: i128 = wt
                .entries()
                .iter()
                .zip(xi)
                .map(|(c, x)| i128::try_from(c).unwrap() * *x as i128)
                .sum();
            if d == 0 {
                return None;
            }
            if d < 0 {
                neg += 1;
            }
        }
        a[neg] += 1;
    }
    Some(a)
}

/// Independent localization oracle: evaluates the fixed point sum for the
/// Chern monomial `c_lambda` at an integer point `x` with plain arithmetic.
/// Returns `None` if some weight pairs to zero with `x`.
pub fn chern_oracle(data: &FixedPointData, lambda: &[usize], x: &[i64]) -> Option<gkmkit::weight_algebra::BigRational> {
    use gkmkit::weight_algebra::{BigInt, BigRational};
    let mut total = BigRational::from_integer(BigInt::from(0));
    for p in data.points() {
        let vals: Vec<BigInt> = p
            .weights
            .iter()
            .map(|wt| wt.entries().iter().zip(x).map(|(c, xi)| c * BigInt::from(*xi)).sum())
            .collect();
        if vals.iter().any(|v| *v == BigInt::from(0)) {
            return None;
        }
        // e_0..e_n by the usual recurrence
        let mut e = vec![BigInt::from(0); vals.len() + 1];
        e[0] = BigInt::from(1);
        for (i, v) in vals.iter().enumerate() {
            for j in (1..=i + 1).rev() {
                let prev = e[j - 1].clone();
                e[j] += prev * v;
            }
        }
        let num: BigInt = lambda.iter().map(|&j| e[j].clone()).product();
        let den: BigInt = vals.iter().cloned().product();
        total += BigRational::new(num, den);
    }
    Some(total)
}
