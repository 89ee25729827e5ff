//! Exact bounded-variable simplex over `Q(eps)`.
//!
//! Solves systems `A s = b`, `0 <= s_k <= u_k` where `A` is rational and
//! `b`, `u` may carry eps parts. Pivoting only ever multiplies eps values by
//! rationals, so the first-order truncation of [`EpsRational`] is exact here.
//! Bland's rule is used for both entering and leaving choices.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::eps::EpsRational;

#[derive(Clone, Debug)]
pub(crate) struct BoxSystem {
    /// Row-major `rows x cols`.
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<EpsRational>,
    /// Upper bounds; lower bounds are all zero.
    pub upper: Vec<EpsRational>,
}

#[derive(Clone, Debug)]
struct Tableau {
    /// `B^-1 [A | I]`.
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    x: Vec<EpsRational>,
    upper: Vec<Option<EpsRational>>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn phase_one(sys: &BoxSystem) -> Self {
        let rows = sys.b.len();
        let cols = sys.upper.len();
        let total = cols + rows;
        let mut t = Vec::with_capacity(rows);
        let mut x = vec![EpsRational::default(); total];
        for r in 0..rows {
            let flip = sys.b[r].is_negative();
            let mut row: Vec<BigRational> = sys.a[r]
                .iter()
                .map(|v| if flip { -v } else { v.clone() })
                .collect();
            row.extend((0..rows).map(|k| {
                if k == r {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            t.push(row);
            x[cols + r] = sys.b[r].abs();
        }
        let mut upper: Vec<Option<EpsRational>> = sys.upper.iter().cloned().map(Some).collect();
        upper.extend(std::iter::repeat_n(None, rows));
        let mut is_basic = vec![false; total];
        for r in 0..rows {
            is_basic[cols + r] = true;
        }
        Self {
            t,
            basis: (cols..total).collect(),
            x,
            upper,
            at_upper: vec![false; total],
            is_basic,
        }
    }

    fn objective(&self, cost: &[BigRational]) -> EpsRational {
        self.x
            .iter()
            .zip(cost)
            .filter(|(_, c)| !c.is_zero())
            .fold(EpsRational::default(), |acc, (x, c)| acc + x.scale(c))
    }

    /// One simplex step minimizing `cost . x`.
    fn step(&mut self, cost: &[BigRational]) -> Step {
        let total = self.x.len();
        let mut entering = None;
        for j in 0..total {
            if self.is_basic[j] {
                continue;
            }
            let mut d = cost[j].clone();
            for (r, &bv) in self.basis.iter().enumerate() {
                if !cost[bv].is_zero() && !self.t[r][j].is_zero() {
                    d -= &cost[bv] * &self.t[r][j];
                }
            }
            let fixed = matches!(&self.upper[j], Some(u) if u.is_zero());
            if fixed {
                continue;
            }
            if !self.at_upper[j] && d.is_negative() {
                entering = Some((j, true));
                break;
            }
            if self.at_upper[j] && d.is_positive() {
                entering = Some((j, false));
                break;
            }
        }
        let Some((j, increase)) = entering else {
            return Step::Optimal;
        };

        // ratio test: (limit, leaving row or None for a bound flip, leaving goes to upper)
        let mut best: Option<(EpsRational, Option<usize>, bool)> =
            self.upper[j].clone().map(|u| (u, None, false));
        for r in 0..self.basis.len() {
            let coef = &self.t[r][j];
            if coef.is_zero() {
                continue;
            }
            // basic value moves by -alpha * theta
            let alpha = if increase { coef.clone() } else { -coef };
            let bv = self.basis[r];
            let (limit, to_upper) = if alpha.is_positive() {
                (self.x[bv].div_rational(&alpha), false)
            } else {
                match &self.upper[bv] {
                    Some(u) => ((u - &self.x[bv]).div_rational(&-&alpha), true),
                    None => continue,
                }
            };
            let better = match &best {
                None => true,
                Some((l, row, _)) => {
                    limit < *l
                        || (limit == *l
                            && match row {
                                None => false,
                                Some(rr) => bv < self.basis[*rr],
                            })
                }
            };
            if better {
                best = Some((limit, Some(r), to_upper));
            }
        }
        let Some((theta, leave, to_upper)) = best else {
            return Step::Unbounded;
        };

        let signed_theta = if increase {
            theta.clone()
        } else {
            -theta.clone()
        };
        self.x[j] += &signed_theta;
        for r in 0..self.basis.len() {
            let coef = &self.t[r][j];
            if !coef.is_zero() {
                let delta = signed_theta.scale(coef);
                let bv = self.basis[r];
                self.x[bv] -= &delta;
            }
        }

        match leave {
            None => {
                self.at_upper[j] = increase;
            }
            Some(r) => {
                let out = self.basis[r];
                // snap the leaving variable exactly onto its bound
                self.x[out] = if to_upper {
                    self.upper[out].clone().expect("bounded")
                } else {
                    EpsRational::default()
                };
                self.at_upper[out] = to_upper;
                self.is_basic[out] = false;
                self.is_basic[j] = true;
                self.at_upper[j] = false;
                self.basis[r] = j;
                self.pivot(r, j);
            }
        }
        Step::Moved
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.t[r][j].clone();
        for v in &mut self.t[r] {
            *v = &*v / &p;
        }
        let pivot_row = self.t[r].clone();
        for (rr, row) in self.t.iter_mut().enumerate() {
            if rr == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
    }

    fn minimize(&mut self, cost: &[BigRational]) -> Option<EpsRational> {
        loop {
            match self.step(cost) {
                Step::Optimal => return Some(self.objective(cost)),
                Step::Unbounded => return None,
                Step::Moved => {}
            }
        }
    }
}

/// Result of the closed feasibility phase; can answer optimization queries
/// over the feasible box-polytope.
pub(crate) struct Feasible {
    tab: Tableau,
    cols: usize,
}

impl BoxSystem {
    /// Closed feasibility. Returns `None` if the system has no solution.
    pub fn solve(&self) -> Option<Feasible> {
        let cols = self.upper.len();
        if self.upper.iter().any(EpsRational::is_negative) {
            return None;
        }
        let mut tab = Tableau::phase_one(self);
        let total = tab.x.len();
        let cost: Vec<BigRational> = (0..total)
            .map(|k| {
                if k >= cols {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let value = tab.minimize(&cost)?;
        if !value.is_zero() {
            return None;
        }
        // pin artificials to zero for later phases
        for k in cols..total {
            tab.upper[k] = Some(EpsRational::default());
        }
        Some(Feasible { tab, cols })
    }
}

impl Feasible {
    pub fn point(&self) -> Vec<EpsRational> {
        self.tab.x[..self.cols].to_vec()
    }

    /// Maximum (or minimum) of the variable `k` over the feasible set.
    pub fn extremum(&self, k: usize, maximize: bool) -> EpsRational {
        let mut tab = self.tab.clone();
        let mut cost = vec![BigRational::zero(); tab.x.len()];
        cost[k] = if maximize {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        tab.minimize(&cost).expect("box-bounded LP is bounded");
        tab.x[k].clone()
    }
}
