//! Zonotopes in weight space and their exact membership tests.
//!
//! A [`Zonotope`] is `shift + sum_k [lo_k, hi_k] * direction_k` where each
//! interval endpoint may be open. Membership reduces to feasibility of a
//! box-constrained linear system, decided by the exact simplex in [`crate::lp`]:
//! first with every endpoint closed, then, for each open endpoint, by checking
//! that the feasible set is not confined to that face. Convexity makes the
//! per-endpoint checks sufficient: averaging witnesses clears all open faces
//! at once.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::eps::{int, rat, EpsRational};
use crate::error::{Error, Result};
use crate::lp::BoxSystem;
use crate::weights::{
    adjoint_weights, attracting_pairing, det_character, pair, rho, tau, BlockShape, Cocharacter,
    PairingMode, Weight,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub direction: Weight,
    pub lo: EpsRational,
    pub hi: EpsRational,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl Segment {
    pub fn closed(direction: Weight, lo: EpsRational, hi: EpsRational) -> Self {
        Self {
            direction,
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawZonotope")]
pub struct Zonotope {
    shape: BlockShape,
    segments: Vec<Segment>,
    shift: Weight,
}

#[derive(Deserialize)]
struct RawZonotope {
    shape: BlockShape,
    segments: Vec<Segment>,
    shift: Weight,
}

impl TryFrom<RawZonotope> for Zonotope {
    type Error = Error;
    fn try_from(raw: RawZonotope) -> Result<Self> {
        Zonotope::new(raw.shape, raw.segments, raw.shift)
    }
}

impl Zonotope {
    pub fn new(shape: BlockShape, segments: Vec<Segment>, shift: Weight) -> Result<Self> {
        if shift.shape() != &shape {
            return Err(Error::ShapeMismatch(
                shape.sizes().to_vec(),
                shift.shape().sizes().to_vec(),
            ));
        }
        for (k, s) in segments.iter().enumerate() {
            if s.direction.shape() != &shape {
                return Err(Error::ShapeMismatch(
                    shape.sizes().to_vec(),
                    s.direction.shape().sizes().to_vec(),
                ));
            }
            if !s.direction.is_rational() {
                return Err(Error::EpsDirection);
            }
            if s.lo > s.hi || s.direction.is_zero() {
                return Err(Error::InvalidSegment(k));
            }
        }
        Ok(Self {
            shape,
            segments,
            shift,
        })
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn shift(&self) -> &Weight {
        &self.shift
    }

    /// Translate by `v`.
    pub fn translate(&self, v: &Weight) -> Result<Zonotope> {
        Ok(Self {
            shape: self.shape.clone(),
            segments: self.segments.clone(),
            shift: self.shift.try_add(v)?,
        })
    }

    pub fn has_open_endpoints(&self) -> bool {
        self.segments.iter().any(|s| s.lo_open || s.hi_open)
    }

    /// Same region with every endpoint closed.
    pub fn closure(&self) -> Zonotope {
        let mut z = self.clone();
        for s in &mut z.segments {
            s.lo_open = false;
            s.hi_open = false;
        }
        z
    }

    fn system(&self, p: &Weight) -> Result<BoxSystem> {
        if p.shape() != &self.shape {
            return Err(Error::ShapeMismatch(
                self.shape.sizes().to_vec(),
                p.shape().sizes().to_vec(),
            ));
        }
        let rows = self.shape.rank();
        // t_k = lo_k + s_k, so A s = p - shift - sum lo_k dir_k
        let mut b: Vec<EpsRational> = p
            .coeffs()
            .iter()
            .zip(self.shift.coeffs())
            .map(|(x, y)| x - y)
            .collect();
        let mut a = vec![Vec::with_capacity(self.segments.len()); rows];
        let mut upper = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            for (r, c) in s.direction.coeffs().iter().enumerate() {
                let c = c.std_part();
                a[r].push(c.clone());
                if !c.is_zero() {
                    b[r] -= &s.lo.scale(c);
                }
            }
            upper.push(&s.hi - &s.lo);
        }
        Ok(BoxSystem { a, b, upper })
    }

    /// Membership with all endpoints treated as closed.
    pub fn contains_closed(&self, p: &Weight) -> Result<bool> {
        Ok(self.system(p)?.solve().is_some())
    }

    /// Exact membership honoring open endpoints.
    pub fn contains(&self, p: &Weight) -> Result<bool> {
        let sys = self.system(p)?;
        let Some(feasible) = sys.solve() else {
            return Ok(false);
        };
        for (k, s) in self.segments.iter().enumerate() {
            if s.lo_open && !feasible.extremum(k, true).is_positive() {
                return Ok(false);
            }
            if s.hi_open && feasible.extremum(k, false) >= sys.upper[k] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A witness `t` with `p = shift + sum t_k dir_k` on the closed zonotope.
    pub fn closed_witness(&self, p: &Weight) -> Result<Option<Vec<EpsRational>>> {
        let Some(f) = self.system(p)?.solve() else {
            return Ok(None);
        };
        Ok(Some(
            f.point()
                .iter()
                .zip(&self.segments)
                .map(|(s, seg)| s + &seg.lo)
                .collect(),
        ))
    }

    /// Range of the linear functional `phi` over the closed zonotope.
    pub fn functional_range(&self, phi: &[BigRational]) -> (EpsRational, EpsRational) {
        let dot = |w: &Weight| -> BigRational {
            w.coeffs()
                .iter()
                .zip(phi)
                .fold(BigRational::zero(), |acc, (c, f)| acc + c.std_part() * f)
        };
        let base = self
            .shift
            .coeffs()
            .iter()
            .zip(phi)
            .fold(EpsRational::default(), |acc, (c, f)| acc + c.scale(f));
        let (mut lo, mut hi) = (base.clone(), base);
        for s in &self.segments {
            let v = dot(&s.direction);
            let (a, b) = (s.lo.scale(&v), s.hi.scale(&v));
            let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
            lo += &mn;
            hi += &mx;
        }
        (lo, hi)
    }

    /// Per-coordinate integer bounds containing every integer point.
    pub fn integer_box(&self) -> Vec<(BigInt, BigInt)> {
        let n = self.shape.rank();
        (0..n)
            .map(|c| {
                let phi: Vec<BigRational> = (0..n)
                    .map(|k| {
                        if k == c {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect();
                let (lo, hi) = self.functional_range(&phi);
                (lo.ceil(), hi.floor())
            })
            .collect()
    }

    /// All dominant integral weights in the zonotope, lexicographically sorted.
    pub fn dominant_integer_points(&self) -> Result<Vec<Weight>> {
        let bounds: Vec<(i64, i64)> = self
            .integer_box()
            .into_iter()
            .map(|(lo, hi)| (to_i64(&lo), to_i64(&hi)))
            .collect();
        let n = self.shape.rank();
        let ones = vec![BigRational::one(); n];
        let (slo, shi) = self.functional_range(&ones);
        let (sum_lo, sum_hi) = (to_i64(&slo.ceil()), to_i64(&shi.floor()));
        let block_start: Vec<bool> = {
            let mut v = vec![false; n];
            for r in self.shape.ranges() {
                v[r.start] = true;
            }
            v
        };
        let mut candidates = Vec::new();
        let mut cur = Vec::with_capacity(n);
        dominant_box_scan(
            &bounds,
            &block_start,
            (sum_lo, sum_hi),
            &mut cur,
            &mut candidates,
        );
        let mut out = Vec::new();
        for c in candidates {
            let chi = Weight::from_ints_shaped(&self.shape, &c)?;
            if self.contains(&chi)? {
                out.push(chi);
            }
        }
        Ok(out)
    }
}

fn to_i64(n: &BigInt) -> i64 {
    i64::try_from(n).expect("zonotope bounds fit in i64")
}

fn dominant_box_scan(
    bounds: &[(i64, i64)],
    block_start: &[bool],
    sum_range: (i64, i64),
    cur: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let k = cur.len();
    let partial: i64 = cur.iter().sum();
    if k == bounds.len() {
        if partial >= sum_range.0 && partial <= sum_range.1 {
            out.push(cur.clone());
        }
        return;
    }
    let rest_lo: i64 = bounds[k + 1..].iter().map(|b| b.0).sum();
    let rest_hi: i64 = bounds[k + 1..].iter().map(|b| b.1).sum();
    let mut lo = bounds[k].0;
    if !block_start[k] {
        lo = lo.max(cur[k - 1]);
    }
    for x in lo..=bounds[k].1 {
        if partial + x + rest_lo > sum_range.1 {
            break;
        }
        if partial + x + rest_hi < sum_range.0 {
            continue;
        }
        cur.push(x);
        dominant_box_scan(bounds, block_start, sum_range, cur, out);
        cur.pop();
    }
}

fn three_halves() -> EpsRational {
    EpsRational::from_frac(3, 2)
}

/// `(3/2) sum [0, beta_i - beta_i']` over ordered pairs `i != i'` inside each block.
fn root_segments(shape: &BlockShape) -> Vec<Segment> {
    let mut segs = Vec::new();
    for (j, &d) in shape.sizes().iter().enumerate() {
        for i in 0..d {
            for k in 0..d {
                if i != k {
                    segs.push(Segment::closed(
                        Weight::root(shape, j, i, k),
                        EpsRational::default(),
                        three_halves(),
                    ));
                }
            }
        }
    }
    segs
}

/// `W(d)_w = (3/2) sum_{i,j} [0, beta_i - beta_j] + w tau_d`.
pub fn w_polytope(d: usize, w: i64) -> Zonotope {
    let shape = BlockShape::single(d);
    let shift = tau(d).scale(&int(w));
    Zonotope::new(shape.clone(), root_segments(&shape), shift).expect("valid W polytope")
}

/// Hull description of `nabla_w`: `sum_{i<j} [-(beta_i - beta_j), beta_i - beta_j] + w tau_d`,
/// whose support function at `lam` is `eta_lam / 2`.
pub fn nabla_zonotope(d: usize, w: i64) -> Zonotope {
    let shape = BlockShape::single(d);
    let mut segs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            segs.push(Segment::closed(
                Weight::root(&shape, 0, i, j),
                EpsRational::from_int(-1),
                EpsRational::from_int(1),
            ));
        }
    }
    Zonotope::new(shape, segs, tau(d).scale(&int(w))).expect("valid nabla zonotope")
}

/// `eta_lam = 2 <lam, gl(d)^{lam > 0}>`.
pub fn eta_lambda(lam: &Cocharacter) -> Result<EpsRational> {
    let d = lam.shape().rank();
    Ok(attracting_pairing(lam, &adjoint_weights(d), PairingMode::Positive)?.scale(&int(2)))
}

/// Cocharacter test for `chi in nabla_w`: `|<lam, chi - w tau_d>| <= eta_lam / 2`
/// for every `lam in {0,1}^d`.
pub fn nabla_contains(d: usize, w: i64, chi: &Weight) -> Result<bool> {
    let shape = BlockShape::single(d);
    if chi.shape() != &shape {
        return Err(Error::ShapeMismatch(
            shape.sizes().to_vec(),
            chi.shape().sizes().to_vec(),
        ));
    }
    let centered = chi.try_sub(&tau(d).scale(&int(w)))?;
    let half = rat(1, 2);
    for mask in 0u64..(1u64 << d) {
        let lam = Cocharacter::single((0..d).map(|i| ((mask >> i) & 1) as i64).collect());
        let bound = eta_lambda(&lam)?.scale(&half);
        if pair(&lam, &centered)?.abs() > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

fn basis_segments(
    shape: &BlockShape,
    lo: EpsRational,
    hi: EpsRational,
    lo_open: bool,
) -> Vec<Segment> {
    let mut segs = Vec::new();
    for (j, &d) in shape.sizes().iter().enumerate() {
        for i in 0..d {
            segs.push(Segment {
                direction: Weight::basis(shape, j, i),
                lo: lo.clone(),
                hi: hi.clone(),
                lo_open,
                hi_open: false,
            });
        }
    }
    segs
}

fn dtpt_window(d: usize, a: u32, delta: &Weight, with_minus_basis: bool) -> Result<Zonotope> {
    let shape = BlockShape::single(d);
    let mut segs = root_segments(&shape);
    let half_a = EpsRational::from_frac(a as i64, 2);
    // E: closed [-a/2, a/2]; F: half-open (-a/2, a/2]
    segs.extend(basis_segments(
        &shape,
        -half_a.clone(),
        half_a,
        !with_minus_basis,
    ));
    if with_minus_basis {
        segs.extend(basis_segments(
            &shape,
            EpsRational::from_int(-1),
            EpsRational::default(),
            false,
        ));
    }
    let shift = rho(&shape).try_add(delta)?.neg();
    Zonotope::new(shape, segs, shift)
}

/// Region of `chi` with `chi + rho + delta` in
/// `(3/2) sum [0, beta_i - beta_j] + (a/2) sum [-beta_k, beta_k] + sum [-beta_k, 0]`.
pub fn dtpt_window_e(d: usize, a: u32, delta: &Weight) -> Result<Zonotope> {
    dtpt_window(d, a, delta, true)
}

/// Region of `chi` with `chi + rho + delta` in
/// `(3/2) sum [0, beta_i - beta_j] + (a/2) sum (-beta_k, beta_k]`.
pub fn dtpt_window_f(d: usize, a: u32, delta: &Weight) -> Result<Zonotope> {
    dtpt_window(d, a, delta, false)
}

/// `delta = mu * chi_0` for the single block of size `d`.
pub fn mu_delta(d: usize, mu: &EpsRational) -> Weight {
    Weight::new(BlockShape::single(d), vec![mu.clone(); d]).expect("valid shape")
}

fn check_flags(shape: &BlockShape, a_vec: &[u32]) -> Result<()> {
    if a_vec.len() != shape.num_blocks() || a_vec.iter().any(|&a| a > 1) {
        return Err(Error::InvalidFlags(a_vec.to_vec()));
    }
    Ok(())
}

/// `delta = -sum_j (a^(j)/2 + eps) chi_0^(j)`; the eps term is dropped when `eps_on` is false.
pub fn fiber_delta(shape: &BlockShape, a_vec: &[u32], eps_on: bool) -> Result<Weight> {
    check_flags(shape, a_vec)?;
    let mut delta = Weight::zero(shape);
    for (j, &a) in a_vec.iter().enumerate() {
        let mut c = EpsRational::from_frac(a as i64, 2);
        if eps_on {
            c += &EpsRational::eps();
        }
        delta = delta.try_add(&det_character(shape, &[j]).try_scale_eps(&-c)?)?;
    }
    Ok(delta)
}

fn fiber_window(
    shape: &BlockShape,
    a_vec: &[u32],
    eps_on: bool,
    with_minus_basis: bool,
) -> Result<Zonotope> {
    let delta = fiber_delta(shape, a_vec, eps_on)?;
    let mut segs = root_segments(shape);
    for (j, &d) in shape.sizes().iter().enumerate() {
        if a_vec[j] == 0 {
            continue;
        }
        let half = EpsRational::from_frac(a_vec[j] as i64, 2);
        for i in 0..d {
            segs.push(Segment::closed(
                Weight::basis(shape, j, i),
                -half.clone(),
                half.clone(),
            ));
        }
    }
    if with_minus_basis {
        segs.extend(basis_segments(
            shape,
            EpsRational::from_int(-1),
            EpsRational::default(),
            false,
        ));
    }
    let shift = rho(shape).try_add(&delta)?.neg();
    Zonotope::new(shape.clone(), segs, shift)
}

/// Generator region of the DT-side fiber window:
/// `chi + rho_G + delta in (3/2) sum [0, roots] + sum [-(a/2) beta, (a/2) beta] + sum [-beta, 0]`.
pub fn fiber_window_i(shape: &BlockShape, a_vec: &[u32], eps_on: bool) -> Result<Zonotope> {
    fiber_window(shape, a_vec, eps_on, true)
}

/// Generator region of the PT-side fiber window (no `[-beta, 0]` summands).
pub fn fiber_window_p(shape: &BlockShape, a_vec: &[u32], eps_on: bool) -> Result<Zonotope> {
    fiber_window(shape, a_vec, eps_on, false)
}
