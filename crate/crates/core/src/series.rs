//! Truncated integer power series and the generating-function checks.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sod::enumerate_point_chains;

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| s.parse().map_err(D::Error::custom))
                .collect()
        }
    }
}

/// `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct IntSeries {
    order: usize,
    #[serde(with = "bigint_str::vec")]
    coeffs: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawSeries {
    order: usize,
    #[serde(with = "bigint_str::vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<RawSeries> for IntSeries {
    type Error = Error;
    fn try_from(r: RawSeries) -> Result<Self> {
        if r.coeffs.len() != r.order + 1 {
            return Err(Error::LengthMismatch(format!(
                "order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        Ok(Self {
            order: r.order,
            coeffs: r.coeffs,
        })
    }
}

impl IntSeries {
    /// Order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(Self {
            order: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiply by `(1 + c q^step)^e` for integer `e` of either sign.
    fn mul_binomial(&mut self, step: usize, c: &BigInt, e: i64) {
        if e == 0 || step > self.order {
            return;
        }
        let terms = self.order / step;
        let e = BigInt::from(e);
        let mut factor = Vec::with_capacity(terms + 1);
        let mut b = BigInt::one();
        let mut cpow = BigInt::one();
        factor.push(BigInt::one());
        for k in 1..=terms {
            let kk = BigInt::from(k);
            b = b * (&e - &kk + 1) / &kk;
            cpow *= c;
            factor.push(&b * &cpow);
        }
        let mut out = vec![BigInt::zero(); self.order + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, f) in factor.iter().enumerate() {
                let n = i + k * step;
                if n > self.order {
                    break;
                }
                out[n] += x * f;
            }
        }
        self.coeffs = out;
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;
    fn mul(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order.min(rhs.order);
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, x) in self.coeffs[..=order].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntSeries { order, coeffs: out }
    }
}

impl Add for &IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        IntSeries { order, coeffs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// Factors `1 - q^d`.
    Plus,
    /// Factors `1 - (-q)^d`.
    Minus,
}

/// `prod_{d=1}^{N} (1 - (+-q)^d)^{e(d)}` to order `N`.
pub fn eta_product(exponent: &dyn Fn(usize) -> i64, sign: Sign, order: usize) -> IntSeries {
    let mut s = IntSeries::one(order);
    for d in 1..=order {
        let c = match sign {
            Sign::Minus if d % 2 == 1 => BigInt::one(),
            _ => -BigInt::one(),
        };
        s.mul_binomial(d, &c, exponent(d));
    }
    s
}

/// `prod (1 - (-q)^d)^{-d chi}`.
pub fn macmahon_dt(chi: i64, order: usize) -> IntSeries {
    eta_product(&|d| -(d as i64) * chi, Sign::Minus, order)
}

/// `prod (1 - q^b)^{-chi}`: Euler characteristics of Hilbert schemes of points.
pub fn hilb_euler_series(chi: i64, order: usize) -> IntSeries {
    eta_product(&|_| -chi, Sign::Plus, order)
}

/// `DT_n = sum_k DT0_k PT_{n-k}`.
pub fn dtpt_convolve(dt0: &IntSeries, pt: &IntSeries) -> IntSeries {
    dt0 * pt
}

fn chain_gcd(d: usize, v: i64) -> usize {
    (d as i64).gcd(&v) as usize
}

/// `[q^n] = sum over point chains of n of prod_i hilb(chi)[gcd(d_i, v_i)]`.
pub fn sod_weighted_series(chi: i64, order: usize) -> IntSeries {
    let hilb = hilb_euler_series(chi, order);
    let coeffs = (0..=order)
        .into_par_iter()
        .map(|n| {
            enumerate_point_chains(n)
                .iter()
                .map(|c| {
                    c.entries()
                        .iter()
                        .map(|&(d, v)| hilb.coeff(chain_gcd(d, v)).clone())
                        .product::<BigInt>()
                })
                .sum()
        })
        .collect();
    IntSeries { order, coeffs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub n: usize,
    #[serde(with = "bigint_str")]
    pub lhs: BigInt,
    #[serde(with = "bigint_str")]
    pub rhs: BigInt,
    pub equal: bool,
}

pub const CONJECTURE_CONDITIONAL: &str = "conjecture-conditional";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallcrossingReport {
    pub chi: i64,
    pub order: usize,
    pub label: String,
    pub pass: bool,
    pub first_mismatch: Option<usize>,
    /// `lhs` from chain sums, `rhs` from the product.
    pub rows: Vec<CoefficientRow>,
}

pub fn verify_wallcrossing_points(chi: i64, order: usize) -> WallcrossingReport {
    let lhs = sod_weighted_series(chi, order);
    let rhs = eta_product(&|d| -(d as i64) * chi, Sign::Plus, order);
    let rows: Vec<CoefficientRow> = (0..=order)
        .map(|n| CoefficientRow {
            n,
            lhs: lhs.coeff(n).clone(),
            rhs: rhs.coeff(n).clone(),
            equal: lhs.coeff(n) == rhs.coeff(n),
        })
        .collect();
    let first_mismatch = rows.iter().find(|r| !r.equal).map(|r| r.n);
    WallcrossingReport {
        chi,
        order,
        label: CONJECTURE_CONDITIONAL.to_string(),
        pass: first_mismatch.is_none(),
        first_mismatch,
        rows,
    }
}

/// A multiset of parts `(d_i, v_i, x_i)` of one slope, `x_i` a fixed-point label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialClass {
    pub parts: Vec<(usize, i64, usize)>,
}

type PartitionVisitor<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

/// Visit every multiset of `(k, color)` with `sum k = g`, parts in
/// non-increasing order.
fn colored_partitions(g: usize, e: usize, visit: &mut PartitionVisitor) {
    fn go(
        rem: usize,
        max: (usize, usize),
        e: usize,
        cur: &mut Vec<(usize, usize)>,
        visit: &mut PartitionVisitor,
    ) {
        if rem == 0 {
            visit(cur);
            return;
        }
        for k in (1..=rem.min(max.0)).rev() {
            let top = if k == max.0 { max.1 } else { e - 1 };
            for color in (0..=top).rev() {
                cur.push((k, color));
                go(rem - k, (k, color), e, cur, visit);
                cur.pop();
            }
        }
    }
    if e == 0 {
        if g == 0 {
            visit(&[]);
        }
        return;
    }
    go(g, (g, e - 1), e, &mut Vec::new(), visit);
}

fn primitive(d: usize, v: i64) -> (usize, usize, i64) {
    assert!(d >= 1, "d must be positive");
    let g = chain_gcd(d, v);
    (g, d / g, v / g as i64)
}

pub fn enumerate_monomial_classes(d: usize, v: i64, e: usize) -> Vec<MonomialClass> {
    let (g, dp, vp) = primitive(d, v);
    let mut out = Vec::new();
    colored_partitions(g, e, &mut |parts| {
        out.push(MonomialClass {
            parts: parts
                .iter()
                .map(|&(k, x)| (k * dp, k as i64 * vp, x))
                .collect(),
        });
    });
    out
}

pub fn count_monomials(d: usize, v: i64, e: usize) -> u64 {
    let (g, _, _) = primitive(d, v);
    let mut n = 0u64;
    colored_partitions(g, e, &mut |_| n += 1);
    n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricRow {
    pub d: usize,
    pub w: i64,
    pub gcd: usize,
    pub monomials: u64,
    #[serde(with = "bigint_str")]
    pub hilb: BigInt,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub e: usize,
    pub d_max: usize,
    pub pass: bool,
    pub first_mismatch: Option<(usize, i64)>,
    pub rows: Vec<ToricRow>,
}

/// Monomial counts against Hilbert-scheme Euler characteristics for
/// `1 <= d <= d_max` and `w in 0..=d`.
pub fn verify_thmtoric(e: usize, d_max: usize) -> ToricReport {
    let hilb = hilb_euler_series(e as i64, d_max);
    let pairs: Vec<(usize, i64)> = (1..=d_max)
        .flat_map(|d| (0..=d as i64).map(move |w| (d, w)))
        .collect();
    let rows: Vec<ToricRow> = pairs
        .par_iter()
        .map(|&(d, w)| {
            let g = chain_gcd(d, w);
            let monomials = count_monomials(d, w, e);
            let hilb = hilb.coeff(g).clone();
            ToricRow {
                d,
                w,
                gcd: g,
                monomials,
                equal: BigInt::from(monomials) == hilb,
                hilb,
            }
        })
        .collect();
    let first_mismatch = rows.iter().find(|r| !r.equal).map(|r| (r.d, r.w));
    ToricReport {
        e,
        d_max,
        pass: first_mismatch.is_none(),
        first_mismatch,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> IntSeries {
        IntSeries::from_i64(c).unwrap()
    }

    #[test]
    fn eta_product_examples() {
        assert_eq!(eta_product(&|_| 0, Sign::Plus, 4), IntSeries::one(4));
        assert_eq!(
            eta_product(&|d| if d == 1 { -1 } else { 0 }, Sign::Plus, 5),
            s(&[1; 6])
        );
        assert_eq!(
            eta_product(&|d| -(d as i64), Sign::Plus, 5),
            s(&[1, 1, 3, 6, 13, 24])
        );
        // (1 - q)(1 - q^2) = 1 - q - q^2 + q^3
        assert_eq!(
            eta_product(&|d| (d <= 2) as i64, Sign::Plus, 4),
            s(&[1, -1, -1, 1, 0])
        );
        // (1 + q)(1 - q^2) = 1 + q - q^2 - q^3
        assert_eq!(
            eta_product(&|d| (d <= 2) as i64, Sign::Minus, 3),
            s(&[1, 1, -1, -1])
        );
    }

    #[test]
    fn macmahon_examples() {
        assert_eq!(macmahon_dt(0, 5), IntSeries::one(5));
        // prod (1 - (-q)^d)^{-d}: signed MacMahon numbers
        assert_eq!(macmahon_dt(1, 4), s(&[1, -1, 3, -6, 13]));
        for chi in -3..=3 {
            assert_eq!(*macmahon_dt(chi, 3).coeff(1), BigInt::from(-chi));
        }
    }

    #[test]
    fn hilb_examples() {
        assert_eq!(hilb_euler_series(1, 6), s(&[1, 1, 2, 3, 5, 7, 11]));
        assert_eq!(hilb_euler_series(0, 3), IntSeries::one(3));
        assert_eq!(*hilb_euler_series(3, 4).coeff(1), BigInt::from(3));
    }

    #[test]
    fn convolve_examples() {
        let m = macmahon_dt(2, 6);
        assert_eq!(dtpt_convolve(&m, &IntSeries::one(6)), m);
        assert_eq!(dtpt_convolve(&IntSeries::one(6), &m), m);
        assert_eq!(dtpt_convolve(&s(&[1, 2]), &s(&[1, 3])), s(&[1, 5]));
        assert_eq!(dtpt_convolve(&s(&[1, 2, 7]), &s(&[1, 3])).order(), 1);
    }

    #[test]
    fn sod_weighted_examples() {
        for chi in 0..5i64 {
            let sw = sod_weighted_series(chi, 2);
            assert_eq!(*sw.coeff(0), BigInt::one());
            assert_eq!(*sw.coeff(1), BigInt::from(chi));
            assert_eq!(*sw.coeff(2), BigInt::from(chi * (chi + 1) / 2 + 2 * chi));
        }
    }

    #[test]
    fn wallcrossing_examples() {
        for chi in [0, 1, 4] {
            let r = verify_wallcrossing_points(chi, 8);
            assert!(r.pass, "chi = {chi}: {:?}", r.first_mismatch);
            assert_eq!(r.label, CONJECTURE_CONDITIONAL);
            assert_eq!(r.rows.len(), 9);
        }
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(count_monomials(1, 0, 3), 3);
        assert_eq!(count_monomials(2, 1, 3), 3);
        assert_eq!(count_monomials(2, 0, 1), 2);
        assert_eq!(count_monomials(4, -2, 1), 2);
        let classes = enumerate_monomial_classes(4, 2, 2);
        assert_eq!(classes.len(), 5);
        for c in &classes {
            assert!(c.parts.iter().all(|&(d, v, _)| v * 2 == d as i64));
            assert_eq!(c.parts.iter().map(|p| p.0).sum::<usize>(), 4);
        }
    }

    #[test]
    fn toric_count_examples() {
        for e in [3, 4] {
            let r = verify_thmtoric(e, 6);
            assert!(r.pass, "e = {e}: {:?}", r.first_mismatch);
            assert_eq!(r.rows.iter().filter(|x| x.w == x.d as i64).count(), 6);
        }
    }

    #[test]
    fn series_json() {
        let x = s(&[1, -2, 3]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"order":2,"coeffs":["1","-2","3"]}"#);
        assert_eq!(serde_json::from_str::<IntSeries>(&json).unwrap(), x);
        assert!(serde_json::from_str::<IntSeries>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }
}
