//! Dimension bookkeeping for the Ext-quiver of a formal fiber.
//!
//! A fiber over a point of the good moduli space is described by
//! multiplicities `d^(j)` at `m` distinct points, flags `a^(j)` recording
//! whether the point lies on the curve, and the dimensions `h0`, `h1` of the
//! curve summand. Window widths are computed both from closed forms and from
//! weight multisets.

use serde::{Deserialize, Serialize};

use crate::eps::EpsRational;
use crate::error::{Error, Result};
use crate::weights::{attracting_pairing, pair, BlockShape, Cocharacter, PairingMode, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFiberConfig")]
pub struct FiberConfig {
    d: Vec<usize>,
    a: Vec<u32>,
    h0: u64,
    h1: u64,
}

#[derive(Deserialize)]
struct RawFiberConfig {
    d: Vec<usize>,
    a: Vec<u32>,
    #[serde(default)]
    h0: u64,
    #[serde(default)]
    h1: u64,
}

impl TryFrom<RawFiberConfig> for FiberConfig {
    type Error = Error;
    fn try_from(r: RawFiberConfig) -> Result<Self> {
        FiberConfig::new(r.d, r.a, r.h0, r.h1)
    }
}

impl FiberConfig {
    /// Flags restricted to `{0, 1}`.
    pub fn new(d: Vec<usize>, a: Vec<u32>, h0: u64, h1: u64) -> Result<Self> {
        if a.iter().any(|&x| x > 1) {
            return Err(Error::InvalidFlags(a));
        }
        Self::unchecked(d, a, h0, h1)
    }

    /// Any `a^(j) >= 0`, as needed for the DT/PT quiver.
    pub fn unchecked(d: Vec<usize>, a: Vec<u32>, h0: u64, h1: u64) -> Result<Self> {
        if d.len() != a.len() {
            return Err(Error::LengthMismatch(format!(
                "{} multiplicities but {} flags",
                d.len(),
                a.len()
            )));
        }
        if d.contains(&0) {
            return Err(Error::InvalidShape(d));
        }
        Ok(Self { d, a, h0, h1 })
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self) -> &[usize] {
        &self.d
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn h0(&self) -> u64 {
        self.h0
    }

    pub fn h1(&self) -> u64 {
        self.h1
    }

    /// `None` when there are no points.
    pub fn shape(&self) -> Option<BlockShape> {
        BlockShape::new(self.d.clone()).ok()
    }
}

/// Per-point splittings `d^(j) = n1^(j) + n2^(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StratumSplit {
    pub parts: Vec<(usize, usize)>,
}

impl StratumSplit {
    pub fn new(parts: Vec<(usize, usize)>) -> Self {
        Self { parts }
    }

    pub fn check(&self, cfg: &FiberConfig) -> Result<()> {
        if self.parts.len() != cfg.m() {
            return Err(Error::IncompatibleSplit(format!(
                "{} parts for {} points",
                self.parts.len(),
                cfg.m()
            )));
        }
        for (j, (&(n1, n2), &d)) in self.parts.iter().zip(cfg.d()).enumerate() {
            if n1 + n2 != d {
                return Err(Error::IncompatibleSplit(format!(
                    "point {j}: {n1} + {n2} != {d}"
                )));
            }
        }
        if self.parts.iter().all(|p| p.1 == 0) {
            return Err(Error::IncompatibleSplit(
                "n2 vanishes at every point".into(),
            ));
        }
        Ok(())
    }

    /// `lambda^+` (`sign = -1`) or `lambda^-` (`sign = 1`): zero on the first
    /// `n1` coordinates of each block, `sign` on the rest.
    fn cocharacter(&self, shape: &BlockShape, sign: i64) -> Cocharacter {
        let exps = self
            .parts
            .iter()
            .flat_map(|&(n1, n2)| std::iter::repeat_n(0, n1).chain(std::iter::repeat_n(sign, n2)))
            .collect();
        Cocharacter::new(shape.clone(), exps).expect("split matches shape")
    }

    pub fn lambda_plus(&self, shape: &BlockShape) -> Cocharacter {
        self.cocharacter(shape, -1)
    }

    pub fn lambda_minus(&self, shape: &BlockShape) -> Cocharacter {
        self.cocharacter(shape, 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDims {
    pub hom0: u64,
    pub hom1: u64,
}

pub fn hom_dims(cfg: &FiberConfig) -> HomDims {
    let mut hom0 = cfg.h0;
    let mut hom1 = cfg.h1;
    for (&d, &a) in cfg.d.iter().zip(&cfg.a) {
        let (d, a) = (d as u64, a as u64);
        hom0 += d + a * d + 2 * d * d;
        hom1 += a * d + d * d;
    }
    HomDims { hom0, hom1 }
}

fn block_roots(shape: &BlockShape, j: usize, copies: usize, out: &mut Vec<Weight>) {
    let dj = shape.sizes()[j];
    for i in 0..dj {
        for k in 0..dj {
            for _ in 0..copies {
                out.push(Weight::root(shape, j, i, k));
            }
        }
    }
}

/// Per block: `a+1` copies of each `beta_i`, `a` of each `-beta_i` and three
/// of each `beta_i - beta_k` (zero weights included).
pub fn combined_rep_weights(cfg: &FiberConfig) -> Vec<Weight> {
    let Some(shape) = cfg.shape() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (j, &a) in cfg.a.iter().enumerate() {
        for i in 0..cfg.d[j] {
            let b = Weight::basis(&shape, j, i);
            for _ in 0..=a {
                out.push(b.clone());
            }
            for _ in 0..a {
                out.push(b.neg());
            }
        }
        block_roots(&shape, j, 3, &mut out);
    }
    out
}

/// Weights of the Lie algebra of `prod_j GL(d^(j))`.
pub fn blockwise_adjoint(shape: &BlockShape) -> Vec<Weight> {
    let mut out = Vec::new();
    for j in 0..shape.num_blocks() {
        block_roots(shape, j, 1, &mut out);
    }
    out
}

/// Weights of `Hom^1` on the points: `a` copies of each `-beta_i` and the
/// adjoint weights, per block.
pub fn hom1_block_weights(cfg: &FiberConfig) -> Vec<Weight> {
    let Some(shape) = cfg.shape() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (j, &a) in cfg.a.iter().enumerate() {
        for i in 0..cfg.d[j] {
            for _ in 0..a {
                out.push(Weight::basis(&shape, j, i).neg());
            }
        }
        block_roots(&shape, j, 1, &mut out);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaWidths {
    pub eta_plus: i64,
    pub eta_minus: i64,
}

/// `eta^+ = sum n2 (a + 1 + 2 n1)`, `eta^- = sum n2 (a + 2 n1)`.
pub fn eta_widths(cfg: &FiberConfig, split: &StratumSplit) -> Result<EtaWidths> {
    split.check(cfg)?;
    let (mut plus, mut minus) = (0i64, 0i64);
    for (&(n1, n2), &a) in split.parts.iter().zip(&cfg.a) {
        let (n1, n2, a) = (n1 as i64, n2 as i64, a as i64);
        plus += n2 * (a + 1 + 2 * n1);
        minus += n2 * (a + 2 * n1);
    }
    Ok(EtaWidths {
        eta_plus: plus,
        eta_minus: minus,
    })
}

fn to_i64(x: &EpsRational) -> i64 {
    let q = x.as_rational().expect("integral pairing");
    assert!(q.is_integer(), "integral pairing");
    i64::try_from(q.to_integer()).expect("fits in i64")
}

/// `<-lam, C^{-lam > 0}> - <lam, g^{lam > 0}>` for `lam = lambda^+` and `lambda^-`.
pub fn eta_oracle(cfg: &FiberConfig, split: &StratumSplit) -> Result<EtaWidths> {
    split.check(cfg)?;
    let shape = cfg.shape().expect("a valid split has points");
    let rep = combined_rep_weights(cfg);
    let adj = blockwise_adjoint(&shape);
    let width = |lam: Cocharacter| -> Result<i64> {
        let tangent = attracting_pairing(&lam.neg(), &rep, PairingMode::Positive)?;
        let gauge = attracting_pairing(&lam, &adj, PairingMode::Positive)?;
        Ok(to_i64(&tangent) - to_i64(&gauge))
    };
    Ok(EtaWidths {
        eta_plus: width(split.lambda_plus(&shape))?,
        eta_minus: width(split.lambda_minus(&shape))?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionDims {
    pub dim_o12: usize,
    pub dim_o21: usize,
}

/// Numbers of `Hom^1` block weights on which `lambda^-` resp. `lambda^+` is positive.
pub fn attracting_obstruction_dims(
    cfg: &FiberConfig,
    split: &StratumSplit,
) -> Result<ObstructionDims> {
    split.check(cfg)?;
    let shape = cfg.shape().expect("a valid split has points");
    let weights = hom1_block_weights(cfg);
    let count = |lam: Cocharacter| -> Result<usize> {
        let mut n = 0;
        for w in &weights {
            if pair(&lam, w)?.is_positive() {
                n += 1;
            }
        }
        Ok(n)
    };
    Ok(ObstructionDims {
        dim_o12: count(split.lambda_minus(&shape))?,
        dim_o21: count(split.lambda_plus(&shape))?,
    })
}

fn hall_offsets(d_list: &[usize], d_prime: usize) -> Vec<i64> {
    let total: i64 = d_list.iter().map(|&d| d as i64).sum();
    let mut before = 0i64;
    d_list
        .iter()
        .map(|&d| {
            let d = d as i64;
            let after = total - before - d;
            let off = d * (d_prime as i64 + after - before);
            before += d;
            off
        })
        .collect()
}

fn check_lengths(d_list: &[usize], values: &[i64]) -> Result<()> {
    if d_list.len() != values.len() {
        return Err(Error::LengthMismatch(format!(
            "{} sizes but {} weights",
            d_list.len(),
            values.len()
        )));
    }
    Ok(())
}

/// `w_i = v_i - d_i (d' + sum_{j>i} d_j - sum_{j<i} d_j)`.
pub fn hall_shift(d_list: &[usize], d_prime: usize, v_list: &[i64]) -> Result<Vec<i64>> {
    check_lengths(d_list, v_list)?;
    Ok(v_list
        .iter()
        .zip(hall_offsets(d_list, d_prime))
        .map(|(v, o)| v - o)
        .collect())
}

/// Inverse of [`hall_shift`].
pub fn hall_unshift(d_list: &[usize], d_prime: usize, w_list: &[i64]) -> Result<Vec<i64>> {
    check_lengths(d_list, w_list)?;
    Ok(w_list
        .iter()
        .zip(hall_offsets(d_list, d_prime))
        .map(|(w, o)| w + o)
        .collect())
}
