//! Exact arithmetic in the ordered field `Q(eps)` truncated at first order.
//!
//! A value `a + b·eps` stands for a quantity perturbed by a positive
//! infinitesimal. Comparisons are lexicographic on `(a, b)`, which is the
//! order induced by any sufficiently small positive real `eps`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `std + inf·eps` with `0 < eps` infinitesimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EpsRational {
    std: BigRational,
    inf: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl EpsRational {
    pub fn new(std: BigRational, inf: BigRational) -> Self {
        Self { std, inf }
    }

    pub fn from_rational(std: BigRational) -> Self {
        Self {
            std,
            inf: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// The infinitesimal itself.
    pub fn eps() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn std_part(&self) -> &BigRational {
        &self.std
    }

    pub fn inf_part(&self) -> &BigRational {
        &self.inf
    }

    pub fn is_rational(&self) -> bool {
        self.inf.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.std)
    }

    pub fn is_zero(&self) -> bool {
        self.std.is_zero() && self.inf.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn signum(&self) -> Ordering {
        match self.std.cmp(&BigRational::zero()) {
            Ordering::Equal => self.inf.cmp(&BigRational::zero()),
            o => o,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.std * k, &self.inf * k)
    }

    /// Product in `Q(eps)`. Fails when both factors carry an eps part,
    /// since the result would need an `eps^2` term.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if !self.inf.is_zero() && !rhs.inf.is_zero() {
            return Err(Error::SecondOrderEps);
        }
        Ok(Self::new(
            &self.std * &rhs.std,
            &self.std * &rhs.inf + &self.inf * &rhs.std,
        ))
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, k: &BigRational) -> Self {
        assert!(!k.is_zero(), "division by zero");
        Self::new(&self.std / k, &self.inf / k)
    }

    /// Smallest integer `n` with `n >= self`.
    pub fn ceil(&self) -> BigInt {
        if self.std.is_integer() {
            let n = self.std.to_integer();
            if self.inf.is_positive() {
                n + 1
            } else {
                n
            }
        } else {
            self.std.ceil().to_integer()
        }
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        if self.std.is_integer() {
            let n = self.std.to_integer();
            if self.inf.is_negative() {
                n - 1
            } else {
                n
            }
        } else {
            self.std.floor().to_integer()
        }
    }
}

impl From<BigRational> for EpsRational {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for EpsRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Ord for EpsRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.std
            .cmp(&other.std)
            .then_with(|| self.inf.cmp(&other.inf))
    }
}

impl PartialOrd for EpsRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for EpsRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.std, -self.inf)
    }
}

impl Neg for &EpsRational {
    type Output = EpsRational;
    fn neg(self) -> EpsRational {
        EpsRational::new(-&self.std, -&self.inf)
    }
}

macro_rules! forward_additive {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&EpsRational> for &EpsRational {
            type Output = EpsRational;
            fn $method(self, rhs: &EpsRational) -> EpsRational {
                EpsRational::new(&self.std $op &rhs.std, &self.inf $op &rhs.inf)
            }
        }
        impl $tr<EpsRational> for EpsRational {
            type Output = EpsRational;
            fn $method(self, rhs: EpsRational) -> EpsRational {
                &self $op &rhs
            }
        }
        impl $tr<&EpsRational> for EpsRational {
            type Output = EpsRational;
            fn $method(self, rhs: &EpsRational) -> EpsRational {
                &self $op rhs
            }
        }
    };
}

forward_additive!(Add, add, +);
forward_additive!(Sub, sub, -);

impl AddAssign<&EpsRational> for EpsRational {
    fn add_assign(&mut self, rhs: &EpsRational) {
        self.std += &rhs.std;
        self.inf += &rhs.inf;
    }
}

impl SubAssign<&EpsRational> for EpsRational {
    fn sub_assign(&mut self, rhs: &EpsRational) {
        self.std -= &rhs.std;
        self.inf -= &rhs.inf;
    }
}

impl Mul<&BigRational> for &EpsRational {
    type Output = EpsRational;
    fn mul(self, k: &BigRational) -> EpsRational {
        self.scale(k)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form: `p`, `p/q`, or `p/q+r/s e` (`-` for a negative eps part).
impl fmt::Display for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.std))?;
        if !self.inf.is_zero() {
            let sign = if self.inf.is_negative() { '-' } else { '+' };
            write!(f, "{}{} e", sign, fmt_rational(&self.inf.abs()))?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.strip_prefix('+').unwrap_or(n).parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for EpsRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid exact number {s:?}"));
        let t = s.trim();
        let Some(body) = t.strip_suffix('e') else {
            return parse_rational(t).map(Self::from_rational).ok_or_else(bad);
        };
        let body = body.trim_end();
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (std, inf) = match split {
            Some(i) => (parse_rational(&body[..i]), parse_rational(&body[i..])),
            None => (Some(BigRational::zero()), parse_rational(body)),
        };
        match (std, inf) {
            (Some(std), Some(inf)) => Ok(Self::new(std, inf)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for EpsRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EpsRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
