mod common;

use common::{in_root_hull, int_box, is_dominant_ints, permutations, q, weight};
use proptest::prelude::*;
use qbps::polytopes::{
    dtpt_window_e, dtpt_window_f, fiber_window_i, fiber_window_p, mu_delta, nabla_contains,
    nabla_zonotope, w_polytope,
};
use qbps::quasibps::enumerate_generators;
use qbps::weights::{irrep_weight_set, rho, BlockShape, Weight};
use qbps::EpsRational;

#[test]
fn w_polytope_matches_majorization() {
    for d in 1..=3 {
        let shape = BlockShape::single(d);
        for x in int_box(d, 3) {
            let w: i64 = x.iter().sum();
            let z = w_polytope(d, w);
            assert_eq!(
                z.contains(&weight(&x)).unwrap(),
                in_root_hull(&x, w, &q(3, 2)),
                "{x:?}"
            );
            // shifted by rho: half-integral points for even d
            let shifted = weight(&x).try_add(&rho(&shape)).unwrap();
            let coords: Vec<_> = shifted
                .coeffs()
                .iter()
                .map(|c| c.std_part().clone())
                .collect();
            let centered: Vec<_> = coords.iter().map(|c| c - q(w, d as i64)).collect();
            let top = common::scaled_rho(d, &q(3, 1));
            assert_eq!(
                z.contains(&shifted).unwrap(),
                common::majorized(&centered, &top),
                "{x:?} + rho"
            );
        }
    }
}

#[test]
fn nabla_routes_agree_small_rank() {
    for d in 1..=3 {
        for x in int_box(d, 3) {
            let w: i64 = x.iter().sum();
            let chi = weight(&x);
            let by_cochar = nabla_contains(d, w, &chi).unwrap();
            let by_lp = nabla_zonotope(d, w).contains(&chi).unwrap();
            let by_majorization = in_root_hull(&x, w, &q(1, 1));
            assert_eq!(by_cochar, by_lp, "{x:?}");
            assert_eq!(by_lp, by_majorization, "{x:?}");
        }
    }
}

#[test]
fn three_halves_hull_is_strictly_larger() {
    let x = [3, -2, -1];
    assert!(in_root_hull(&x, 0, &q(3, 2)));
    assert!(!nabla_contains(3, 0, &weight(&x)).unwrap());
}

#[test]
fn irrep_weights_of_generators_lie_in_nabla() {
    for d in 1..=3 {
        for w in -6..=6 {
            for chi in enumerate_generators(d, w).weights {
                for mu in irrep_weight_set(&chi).unwrap() {
                    assert!(nabla_contains(d, w, &mu).unwrap(), "{chi:?} -> {mu:?}");
                }
            }
        }
    }
}

fn minus_half_a_minus_eps(a: u32) -> EpsRational {
    EpsRational::from_frac(-(a as i64), 2) - EpsRational::eps()
}

#[test]
fn pt_window_inside_dt_window() {
    for d in 1..=3 {
        for a in 0..=2u32 {
            for mu in [
                minus_half_a_minus_eps(a),
                EpsRational::from_frac(-3, 7),
                EpsRational::from_frac(2, 9),
            ] {
                let delta = mu_delta(d, &mu);
                let e = dtpt_window_e(d, a, &delta).unwrap();
                let f = dtpt_window_f(d, a, &delta).unwrap();
                for chi in f.dominant_integer_points().unwrap() {
                    assert!(e.contains(&chi).unwrap(), "d={d} a={a} mu={mu} {chi:?}");
                }
            }
        }
    }
}

#[test]
fn generic_shift_has_no_lattice_points_on_open_faces() {
    for d in 1..=3 {
        for a in 0..=2u32 {
            for mu in [
                EpsRational::from_frac(-3, 7),
                EpsRational::from_frac(1, 9),
                EpsRational::from_frac(-5, 11),
            ] {
                let f = dtpt_window_f(d, a, &mu_delta(d, &mu)).unwrap();
                assert_eq!(
                    f.dominant_integer_points().unwrap(),
                    f.closure().dominant_integer_points().unwrap(),
                    "d={d} a={a} mu={mu}"
                );
            }
        }
    }
}

#[test]
fn fiber_pt_window_inside_dt_window() {
    for sizes in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![3]] {
        let shape = BlockShape::new(sizes.clone()).unwrap();
        let m = sizes.len();
        for mask in 0..(1u32 << m) {
            let a: Vec<u32> = (0..m).map(|j| (mask >> j) & 1).collect();
            let i = fiber_window_i(&shape, &a, true).unwrap();
            let p = fiber_window_p(&shape, &a, true).unwrap();
            let pts = p.dominant_integer_points().unwrap();
            for chi in &pts {
                assert!(i.contains(chi).unwrap(), "{sizes:?} {a:?} {chi:?}");
            }
            assert!(i.dominant_integer_points().unwrap().len() >= pts.len());
        }
    }
}

fn small_vec(max_d: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_d).prop_flat_map(|d| prop::collection::vec(-5i64..=5, d))
}

proptest! {
    #[test]
    fn nabla_lp_agrees_with_cocharacter_test(x in small_vec(4)) {
        let d = x.len();
        let w: i64 = x.iter().sum();
        let chi = weight(&x);
        prop_assert_eq!(nabla_contains(d, w, &chi).unwrap(), nabla_zonotope(d, w).contains(&chi).unwrap());
    }

    #[test]
    fn nabla_is_centrally_symmetric(x in small_vec(4)) {
        let d = x.len();
        let w: i64 = x.iter().sum();
        let neg: Vec<i64> = x.iter().map(|c| -c).collect();
        prop_assert_eq!(nabla_contains(d, w, &weight(&x)).unwrap(), nabla_contains(d, -w, &weight(&neg)).unwrap());
    }

    #[test]
    fn w_polytope_is_weyl_invariant(x in small_vec(3), seed in 0usize..6) {
        let d = x.len();
        let w: i64 = x.iter().sum();
        let perms = permutations(d);
        let p = &perms[seed % perms.len()];
        let y: Vec<i64> = p.iter().map(|&i| x[i]).collect();
        let z = w_polytope(d, w);
        prop_assert_eq!(z.contains(&weight(&x)).unwrap(), z.contains(&weight(&y)).unwrap());
    }

    #[test]
    fn generators_match_majorization_oracle(d in 1usize..=3, w in -4i64..=4) {
        let shape = BlockShape::single(d);
        let got: Vec<Weight> = enumerate_generators(d, w).weights;
        let mut expected = Vec::new();
        for x in int_box(d, 6) {
            if x.iter().sum::<i64>() != w || !is_dominant_ints(&x) {
                continue;
            }
            let shifted = weight(&x).try_add(&rho(&shape)).unwrap();
            let centered: Vec<_> = shifted.coeffs().iter().map(|c| c.std_part() - q(w, d as i64)).collect();
            if common::majorized(&centered, &common::scaled_rho(d, &q(3, 1))) {
                expected.push(weight(&x));
            }
        }
        prop_assert_eq!(got, expected);
    }
}
