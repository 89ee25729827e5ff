#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use qbps::extquiver::{FiberConfig, StratumSplit};
use qbps::weights::Weight;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Every integer vector of length `d` with entries in `[-r, r]`.
pub fn int_box(d: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// `x` lies in the convex hull of the permutations of `top` (sorted ascending)
/// iff the ascending partial sums of `x` dominate those of `top` with equal totals.
pub fn majorized(x: &[BigRational], top: &[BigRational]) -> bool {
    let mut xs = x.to_vec();
    xs.sort();
    let (mut sx, mut st) = (BigRational::zero(), BigRational::zero());
    for (a, b) in xs.iter().zip(top) {
        sx += a;
        st += b;
        if sx < st {
            return false;
        }
    }
    sx == st
}

/// `(k - (d-1)/2) * scale` for `k = 0..d`.
pub fn scaled_rho(d: usize, scale: &BigRational) -> Vec<BigRational> {
    (0..d as i64)
        .map(|k| q(2 * k - (d as i64 - 1), 2) * scale)
        .collect()
}

/// Membership in `scale * sum_{i<j} [-1, 1](beta_i - beta_j) + w tau_d` by majorization.
pub fn in_root_hull(x: &[i64], w: i64, scale: &BigRational) -> bool {
    let d = x.len();
    let centered: Vec<BigRational> = x.iter().map(|&c| q(c, 1) - q(w, d as i64)).collect();
    majorized(&centered, &scaled_rho(d, &(scale * q(2, 1))))
}

pub fn weight(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

pub fn is_dominant_ints(c: &[i64]) -> bool {
    c.windows(2).all(|p| p[0] <= p[1])
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut p = p.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Every configuration with `m <= max_m`, `d^(j) <= max_d`, binary flags,
/// together with every admissible split.
pub fn exhaustive(max_m: usize, max_d: usize) -> Vec<(FiberConfig, StratumSplit)> {
    let mut shapes: Vec<Vec<usize>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..max_m {
        shapes = shapes
            .into_iter()
            .flat_map(|s| (1..=max_d).map(move |d| [s.clone(), vec![d]].concat()))
            .collect();
        all.extend(shapes.clone());
    }
    let mut out = Vec::new();
    for d in all {
        let m = d.len();
        for mask in 0..(1u32 << m) {
            let a: Vec<u32> = (0..m).map(|j| (mask >> j) & 1).collect();
            let cfg = FiberConfig::new(d.clone(), a, 1, 0).unwrap();
            let mut splits: Vec<Vec<(usize, usize)>> = vec![vec![]];
            for &dj in &d {
                splits = splits
                    .into_iter()
                    .flat_map(|s| (0..=dj).map(move |n2| [s.clone(), vec![(dj - n2, n2)]].concat()))
                    .collect();
            }
            for s in splits {
                if s.iter().any(|p| p.1 > 0) {
                    out.push((cfg.clone(), StratumSplit::new(s)));
                }
            }
        }
    }
    out
}
