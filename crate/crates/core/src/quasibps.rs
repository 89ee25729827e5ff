//! Generators of quasi-BPS and window categories.
//!
//! The quasi-BPS category of `d` points and weight `w` is generated by the
//! bundles attached to dominant integral `chi` with `chi + rho in W(d)_w`.
//! Window categories of the DT/PT quiver and of formal fibers are generated
//! the same way from the zonotopes in [`crate::polytopes`].

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::eps::EpsRational;
use crate::error::{Error, Result};
use crate::polytopes::{
    dtpt_window_e, dtpt_window_f, fiber_window_i, fiber_window_p, mu_delta, w_polytope, Zonotope,
};
use crate::sod::mu_generic;
use crate::weights::{rho, BlockShape, Cocharacter, Weight};

/// Dominant integral generator weights, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub shape: BlockShape,
    /// Weight with respect to the diagonal cocharacter, when fixed.
    pub w: Option<i64>,
    pub weights: Vec<Weight>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn sorted_points(z: &Zonotope) -> Result<Vec<Weight>> {
    let mut pts = z.dominant_integer_points()?;
    pts.sort_by_key(|w| w.to_ints().expect("integral"));
    Ok(pts)
}

/// The region `W(d)_w - rho` of weights `chi` with `chi + rho in W(d)_w`.
pub fn generator_region(d: usize, w: i64) -> Zonotope {
    let shape = BlockShape::single(d);
    w_polytope(d, w)
        .translate(&rho(&shape).neg())
        .expect("shapes agree")
}

pub fn enumerate_generators(d: usize, w: i64) -> GeneratorSet {
    assert!(d >= 1, "d must be positive");
    let weights = sorted_points(&generator_region(d, w)).expect("W(d)_w is well formed");
    GeneratorSet {
        shape: BlockShape::single(d),
        w: Some(w),
        weights,
    }
}

pub fn count_generators(d: usize, w: i64) -> usize {
    enumerate_generators(d, w).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WindowSpec {
    /// DT side of the DT/PT quiver with `delta = mu * chi_0`.
    E { d: usize, a: u32, mu: EpsRational },
    /// PT side of the DT/PT quiver with `delta = mu * chi_0`.
    F { d: usize, a: u32, mu: EpsRational },
    /// DT-side fiber window with `delta = -sum (a/2 + eps) chi_0^(j)`.
    #[serde(rename = "fiberI")]
    FiberI { shape: BlockShape, a: Vec<u32> },
    /// PT-side fiber window.
    #[serde(rename = "fiberP")]
    FiberP { shape: BlockShape, a: Vec<u32> },
}

impl WindowSpec {
    pub fn zonotope(&self) -> Result<Zonotope> {
        match self {
            WindowSpec::E { d, a, mu } | WindowSpec::F { d, a, mu } => {
                if let Some(q) = mu.as_rational() {
                    if !mu_generic(q, *d) {
                        return Err(Error::NonGenericMu {
                            mu: mu.to_string(),
                            d: *d,
                        });
                    }
                }
                let delta = mu_delta(*d, mu);
                if matches!(self, WindowSpec::E { .. }) {
                    dtpt_window_e(*d, *a, &delta)
                } else {
                    dtpt_window_f(*d, *a, &delta)
                }
            }
            WindowSpec::FiberI { shape, a } => fiber_window_i(shape, a, true),
            WindowSpec::FiberP { shape, a } => fiber_window_p(shape, a, true),
        }
    }

    pub fn shape(&self) -> BlockShape {
        match self {
            WindowSpec::E { d, .. } | WindowSpec::F { d, .. } => BlockShape::single(*d),
            WindowSpec::FiberI { shape, .. } | WindowSpec::FiberP { shape, .. } => shape.clone(),
        }
    }
}

pub fn enumerate_window_generators(spec: &WindowSpec) -> Result<GeneratorSet> {
    let z = spec.zonotope()?;
    Ok(GeneratorSet {
        shape: spec.shape(),
        w: None,
        weights: sorted_points(&z)?,
    })
}

/// `m_i = ceil(v i / d) - ceil(v (i-1) / d) + [i = d] - [i = 1]` for `i = 1..=d`.
pub fn m_sequence(d: usize, v: i64) -> Vec<i64> {
    assert!(d >= 1, "d must be positive");
    let dd = d as i64;
    (1..=dd)
        .map(|i| {
            let mut m = Integer::div_ceil(&(v * i), &dd) - Integer::div_ceil(&(v * (i - 1)), &dd);
            if i == dd {
                m += 1;
            }
            if i == 1 {
                m -= 1;
            }
            m
        })
        .collect()
}

/// `t -> (t^d, t^{d-1}, ..., t)`.
pub fn staircase_cocharacter(d: usize) -> Cocharacter {
    assert!(d >= 1, "d must be positive");
    Cocharacter::single((1..=d as i64).rev().collect())
}
