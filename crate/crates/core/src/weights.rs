//! Weights and cocharacters of products of general linear groups.
//!
//! A weight of `GL(d1) x ... x GL(dm)` is stored by its coefficients on the
//! simple-root basis vectors `beta_i^(j)`, block by block. Cocharacters are
//! integer vectors in the same layout and pair with weights by the dot product.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::eps::{int, rat, EpsRational};
use crate::error::{Error, Result};

/// Block sizes `(d^(1), ..., d^(m))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BlockShape(Vec<usize>);

impl BlockShape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidShape(sizes));
        }
        Ok(Self(sizes))
    }

    /// A single `GL(d)` block.
    pub fn single(d: usize) -> Self {
        Self::new(vec![d]).expect("block size must be positive")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    /// Total rank `d = d^(1) + ... + d^(m)`.
    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }

    /// Offset of block `j` in the flat coordinate layout.
    pub fn offset(&self, block: usize) -> usize {
        self.0[..block].iter().sum()
    }

    /// Flat index of `beta_i^(j)` (both 0-based).
    pub fn index(&self, block: usize, i: usize) -> usize {
        debug_assert!(i < self.0[block]);
        self.offset(block) + i
    }

    /// Flat index ranges of the blocks.
    pub fn ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.0.iter().scan(0, |start, &len| {
            let r = *start..*start + len;
            *start += len;
            Some(r)
        })
    }

    fn check(&self, other: &BlockShape) -> Result<()> {
        if self != other {
            return Err(Error::ShapeMismatch(self.0.clone(), other.0.clone()));
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for BlockShape {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let sizes = Vec::<usize>::deserialize(deserializer)?;
        BlockShape::new(sizes).map_err(serde::de::Error::custom)
    }
}

/// A weight `sum_j sum_i c_i^(j) beta_i^(j)` with coefficients in `Q(eps)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    shape: BlockShape,
    coeffs: Vec<EpsRational>,
}

impl Weight {
    pub fn new(shape: BlockShape, coeffs: Vec<EpsRational>) -> Result<Self> {
        if coeffs.len() != shape.rank() {
            return Err(Error::LengthMismatch(format!(
                "{} coefficients for shape {:?}",
                coeffs.len(),
                shape.sizes()
            )));
        }
        Ok(Self { shape, coeffs })
    }

    pub fn from_blocks(blocks: Vec<Vec<EpsRational>>) -> Result<Self> {
        let shape = BlockShape::new(blocks.iter().map(Vec::len).collect())?;
        Ok(Self {
            shape,
            coeffs: blocks.into_iter().flatten().collect(),
        })
    }

    pub fn zero(shape: &BlockShape) -> Self {
        Self {
            shape: shape.clone(),
            coeffs: vec![EpsRational::default(); shape.rank()],
        }
    }

    /// Single-block weight with integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self {
            shape: BlockShape::single(coeffs.len()),
            coeffs: coeffs.iter().map(|&c| EpsRational::from_int(c)).collect(),
        }
    }

    pub fn from_ints_shaped(shape: &BlockShape, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            shape.clone(),
            coeffs.iter().map(|&c| EpsRational::from_int(c)).collect(),
        )
    }

    /// Single-block weight with rational coefficients.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Self {
            shape: BlockShape::single(coeffs.len()),
            coeffs: coeffs.into_iter().map(EpsRational::from).collect(),
        }
    }

    /// The basis vector `beta_i^(j)`.
    pub fn basis(shape: &BlockShape, block: usize, i: usize) -> Self {
        let mut w = Self::zero(shape);
        w.coeffs[shape.index(block, i)] = EpsRational::from_int(1);
        w
    }

    /// The root `beta_i^(j) - beta_k^(j)`.
    pub fn root(shape: &BlockShape, block: usize, i: usize, k: usize) -> Self {
        let mut w = Self::zero(shape);
        w.coeffs[shape.index(block, i)] += &EpsRational::from_int(1);
        w.coeffs[shape.index(block, k)] -= &EpsRational::from_int(1);
        w
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn coeffs(&self) -> &[EpsRational] {
        &self.coeffs
    }

    pub fn coeff(&self, block: usize, i: usize) -> &EpsRational {
        &self.coeffs[self.shape.index(block, i)]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[EpsRational]> + '_ {
        self.shape.ranges().map(|r| &self.coeffs[r])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(EpsRational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(EpsRational::is_rational)
    }

    pub fn coefficient_sum(&self) -> EpsRational {
        self.coeffs
            .iter()
            .fold(EpsRational::default(), |acc, c| acc + c)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                let q = c.as_rational()?;
                if q.is_integer() {
                    q.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.to_ints().is_some()
    }

    pub fn try_add(&self, other: &Weight) -> Result<Weight> {
        self.shape.check(&other.shape)?;
        Ok(Self {
            shape: self.shape.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Weight) -> Result<Weight> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Weight {
        Self {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Weight {
        Self {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Multiply by a scalar in `Q(eps)`; fails on `eps * eps`.
    pub fn try_scale_eps(&self, k: &EpsRational) -> Result<Weight> {
        Ok(Self {
            shape: self.shape.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.try_mul(k))
                .collect::<Result<_>>()?,
        })
    }

    /// Permute coordinates inside each block: `perm[j]` reorders block `j`.
    pub fn permute_within_blocks(&self, perm: &[Vec<usize>]) -> Weight {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (block, p) in self.blocks().zip(perm) {
            coeffs.extend(p.iter().map(|&i| block[i].clone()));
        }
        Self {
            shape: self.shape.clone(),
            coeffs,
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.blocks())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<EpsRational>>::deserialize(deserializer)?;
        Weight::from_blocks(blocks).map_err(serde::de::Error::custom)
    }
}

/// A cocharacter of the maximal torus, by its integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter {
    shape: BlockShape,
    exponents: Vec<i64>,
}

impl Cocharacter {
    pub fn new(shape: BlockShape, exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() != shape.rank() {
            return Err(Error::LengthMismatch(format!(
                "{} exponents for shape {:?}",
                exponents.len(),
                shape.sizes()
            )));
        }
        Ok(Self { shape, exponents })
    }

    pub fn single(exponents: Vec<i64>) -> Self {
        Self {
            shape: BlockShape::single(exponents.len()),
            exponents,
        }
    }

    /// The diagonal cocharacter `1_d`.
    pub fn diagonal(shape: &BlockShape) -> Self {
        Self {
            shape: shape.clone(),
            exponents: vec![1; shape.rank()],
        }
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn neg(&self) -> Cocharacter {
        Self {
            shape: self.shape.clone(),
            exponents: self.exponents.iter().map(|e| -e).collect(),
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: i64, other: &Cocharacter, b: i64) -> Result<Cocharacter> {
        self.shape.check(&other.shape)?;
        Ok(Self {
            shape: self.shape.clone(),
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }
}

impl Serialize for Cocharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<Vec<String>> = self
            .shape
            .ranges()
            .map(|r| self.exponents[r].iter().map(i64::to_string).collect())
            .collect();
        blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cocharacter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<String>>::deserialize(deserializer)?;
        let shape = BlockShape::new(blocks.iter().map(Vec::len).collect())
            .map_err(serde::de::Error::custom)?;
        let exponents = blocks
            .iter()
            .flatten()
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self { shape, exponents })
    }
}

/// `<lam, chi> = sum lam_i^(j) * chi_i^(j)`.
pub fn pair(lam: &Cocharacter, chi: &Weight) -> Result<EpsRational> {
    lam.shape.check(&chi.shape)?;
    Ok(lam
        .exponents
        .iter()
        .zip(&chi.coeffs)
        .filter(|(&l, c)| l != 0 && !c.is_zero())
        .fold(EpsRational::default(), |acc, (&l, c)| match l {
            1 => acc + c,
            -1 => acc - c,
            _ => acc + c.scale(&int(l)),
        }))
}

/// Half the sum of positive roots, blockwise: coefficient `(2i - d - 1)/2`
/// for `i = 1..=d` in a block of size `d`.
pub fn rho(shape: &BlockShape) -> Weight {
    let coeffs = shape
        .sizes()
        .iter()
        .flat_map(|&d| (1..=d as i64).map(move |i| EpsRational::from_frac(2 * i - d as i64 - 1, 2)))
        .collect();
    Weight {
        shape: shape.clone(),
        coeffs,
    }
}

/// `tau_d = (1/d) sum beta_i`.
pub fn tau(d: usize) -> Weight {
    assert!(d >= 1, "tau needs d >= 1");
    Weight {
        shape: BlockShape::single(d),
        coeffs: vec![EpsRational::from_frac(1, d as i64); d],
    }
}

/// Sum of the determinant characters of the selected blocks.
pub fn det_character(shape: &BlockShape, selected_blocks: &[usize]) -> Weight {
    let mut w = Weight::zero(shape);
    for (j, r) in shape.ranges().enumerate() {
        if selected_blocks.contains(&j) {
            for c in &mut w.coeffs[r] {
                *c = EpsRational::from_int(1);
            }
        }
    }
    w
}

/// Coefficients weakly increase within every block.
pub fn is_dominant(chi: &Weight) -> bool {
    chi.blocks().all(|b| b.windows(2).all(|p| p[0] <= p[1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingMode {
    Nonneg,
    Positive,
}

/// Sum of `<lam, w>` over the weights `w` of `rep` pairing non-negatively
/// (resp. positively) with `lam`.
pub fn attracting_pairing(
    lam: &Cocharacter,
    rep: &[Weight],
    mode: PairingMode,
) -> Result<EpsRational> {
    let mut total = EpsRational::default();
    for w in rep {
        let p = pair(lam, w)?;
        let keep = match mode {
            PairingMode::Nonneg => !p.is_negative(),
            PairingMode::Positive => p.is_positive(),
        };
        if keep {
            total += &p;
        }
    }
    Ok(total)
}

/// All weights `beta_i - beta_j` of the adjoint representation of `gl(d)`,
/// including the `d` zero weights of the Cartan.
pub fn adjoint_weights(d: usize) -> Vec<Weight> {
    let shape = BlockShape::single(d);
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(Weight::root(&shape, 0, i, j));
        }
    }
    out
}

/// Dominance (majorization) of integer vectors with equal sums.
fn majorized_by(mu: &[i64], chi: &[i64]) -> bool {
    let mut a = mu.to_vec();
    let mut b = chi.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    let (mut sa, mut sb) = (0i64, 0i64);
    for (x, y) in a.iter().zip(&b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// Weight set of the irreducible `GL(d)`-representation of highest weight
/// `chi` (single block, dominant, integral), sorted lexicographically.
///
/// An integer `mu` occurs iff its sorted coefficients are majorized by those
/// of `chi`; the root-lattice condition reduces to equal coefficient sums.
pub fn irrep_weight_set(chi: &Weight) -> Result<Vec<Weight>> {
    if chi.shape.num_blocks() != 1 {
        return Err(Error::InvalidShape(chi.shape.sizes().to_vec()));
    }
    let Some(c) = chi.to_ints() else {
        return Err(Error::NotIntegral(format!("{chi:?}")));
    };
    if !is_dominant(chi) {
        return Err(Error::NotDominant(format!("{c:?}")));
    }
    let (lo, hi) = (c[0], c[c.len() - 1]);
    let total: i64 = c.iter().sum();
    let mut found = BTreeSet::new();
    let mut cur = Vec::with_capacity(c.len());
    fill(&mut cur, c.len(), lo, hi, total, &mut |mu| {
        if majorized_by(mu, &c) {
            found.insert(mu.to_vec());
        }
    });
    Ok(found.into_iter().map(|v| Weight::from_ints(&v)).collect())
}

/// Visit all integer vectors of length `n` with entries in `[lo, hi]` and sum `total`.
fn fill(cur: &mut Vec<i64>, n: usize, lo: i64, hi: i64, total: i64, f: &mut impl FnMut(&[i64])) {
    let left = n - cur.len();
    let used: i64 = cur.iter().sum();
    if left == 0 {
        if used == total {
            f(cur);
        }
        return;
    }
    let rest = total - used;
    for x in lo..=hi {
        let remaining = rest - x;
        let slots = (left - 1) as i64;
        if remaining < lo * slots || remaining > hi * slots {
            continue;
        }
        cur.push(x);
        fill(cur, n, lo, hi, total, f);
        cur.pop();
    }
}

/// Convenience for tests and fixtures: single-block weight from `(num, den)` pairs.
pub fn weight_of_fracs(fracs: &[(i64, i64)]) -> Weight {
    Weight::from_rationals(fracs.iter().map(|&(n, d)| rat(n, d)).collect())
}
