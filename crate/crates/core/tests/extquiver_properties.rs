use proptest::prelude::*;
use qbps::extquiver::{
    attracting_obstruction_dims, combined_rep_weights, eta_oracle, eta_widths, hall_shift,
    hall_unshift, hom_dims, FiberConfig, StratumSplit,
};
use qbps::weights::{attracting_pairing, pair, BlockShape, PairingMode, Weight};
use qbps::EpsRational;

mod common;

use common::exhaustive;

fn sum_over(split: &StratumSplit, cfg: &FiberConfig, f: impl Fn(i64, i64, i64) -> i64) -> i64 {
    split
        .parts
        .iter()
        .zip(cfg.a())
        .map(|(&(n1, n2), &a)| f(n1 as i64, n2 as i64, a as i64))
        .sum()
}

#[test]
fn eta_routes_agree_exhaustively() {
    let cases = exhaustive(3, 4);
    assert!(cases.len() > 1000);
    for (cfg, split) in cases {
        let closed = eta_widths(&cfg, &split).unwrap();
        assert_eq!(
            eta_oracle(&cfg, &split).unwrap(),
            closed,
            "{cfg:?} {split:?}"
        );
        let n2: i64 = sum_over(&split, &cfg, |_, n2, _| n2);
        assert_eq!(closed.eta_plus - closed.eta_minus, n2);
    }
}

/// `<lam, U^{lam > 0}> - <lam, g^{lam > 0}>` with `U` symmetric:
/// `(a+1)` copies of each `beta_i` and of each `-beta_i`, three of each root.
fn symmetric_eta_plus(cfg: &FiberConfig, split: &StratumSplit) -> i64 {
    let shape = BlockShape::new(cfg.d().to_vec()).unwrap();
    let mut u = Vec::new();
    let mut g = Vec::new();
    for (j, &dj) in cfg.d().iter().enumerate() {
        for i in 0..dj {
            for _ in 0..=cfg.a()[j] {
                u.push(Weight::basis(&shape, j, i));
                u.push(Weight::basis(&shape, j, i).neg());
            }
            for k in 0..dj {
                for _ in 0..3 {
                    u.push(Weight::root(&shape, j, i, k));
                }
                g.push(Weight::root(&shape, j, i, k));
            }
        }
    }
    let lam = split.lambda_plus(&shape);
    let val = attracting_pairing(&lam, &u, PairingMode::Positive).unwrap()
        - attracting_pairing(&lam, &g, PairingMode::Positive).unwrap();
    i64::try_from(val.std_part().to_integer()).unwrap()
}

#[test]
fn eta_plus_from_symmetric_representation() {
    for (cfg, split) in exhaustive(2, 3) {
        assert_eq!(
            symmetric_eta_plus(&cfg, &split),
            eta_widths(&cfg, &split).unwrap().eta_plus
        );
    }
}

#[test]
fn obstruction_dims_match_closed_forms() {
    for (cfg, split) in exhaustive(3, 3) {
        let o = attracting_obstruction_dims(&cfg, &split).unwrap();
        let o21 = sum_over(&split, &cfg, |n1, n2, a| n2 * (a + n1));
        let o12 = sum_over(&split, &cfg, |n1, n2, _| n1 * n2);
        assert_eq!(o.dim_o21 as i64, o21, "{cfg:?} {split:?}");
        assert_eq!(o.dim_o12 as i64, o12, "{cfg:?} {split:?}");
        let eta = eta_widths(&cfg, &split).unwrap();
        let n2 = sum_over(&split, &cfg, |_, n2, _| n2);
        let an2 = sum_over(&split, &cfg, |_, n2, a| a * n2);
        assert_eq!((eta.eta_plus + an2 - n2) / 2, o21);
    }
}

#[test]
fn euler_pairing_of_hom_dims() {
    for (cfg, _) in exhaustive(3, 4) {
        let h = hom_dims(&cfg);
        let extra: u64 = cfg.d().iter().map(|&d| (d + d * d) as u64).sum();
        assert_eq!(
            h.hom0 as i64 - h.hom1 as i64,
            cfg.h0() as i64 - cfg.h1() as i64 + extra as i64
        );
    }
}

#[test]
fn combined_rep_size_and_pairings() {
    for (cfg, split) in exhaustive(2, 3) {
        let rep = combined_rep_weights(&cfg);
        let expected: usize = cfg
            .d()
            .iter()
            .zip(cfg.a())
            .map(|(&d, &a)| (2 * a as usize + 1) * d + 3 * d * d)
            .sum();
        assert_eq!(rep.len(), expected);
        let shape = BlockShape::new(cfg.d().to_vec()).unwrap();
        let lam = split.lambda_plus(&shape);
        let total: EpsRational = rep
            .iter()
            .map(|w| pair(&lam, w).unwrap())
            .fold(EpsRational::default(), |a, b| a + b);
        // roots cancel; a+1 copies of beta minus a copies
        let n2: i64 = split.parts.iter().map(|p| p.1 as i64).sum();
        assert_eq!(total, EpsRational::from_int(-n2));
    }
}

fn config_strategy() -> impl Strategy<Value = (FiberConfig, StratumSplit)> {
    prop::collection::vec((1usize..=7, 0u32..=1), 1..=5)
        .prop_flat_map(|blocks| {
            let n2s: Vec<_> = blocks.iter().map(|&(d, _)| 0..=d).collect();
            (Just(blocks), n2s)
        })
        .prop_filter("some n2 > 0", |(_, n2)| n2.iter().any(|&x| x > 0))
        .prop_map(|(blocks, n2)| {
            let d: Vec<usize> = blocks.iter().map(|b| b.0).collect();
            let a: Vec<u32> = blocks.iter().map(|b| b.1).collect();
            let parts = d.iter().zip(&n2).map(|(&d, &n2)| (d - n2, n2)).collect();
            (
                FiberConfig::new(d, a, 0, 0).unwrap(),
                StratumSplit::new(parts),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eta_routes_agree_on_random_configs((cfg, split) in config_strategy()) {
        prop_assert_eq!(eta_oracle(&cfg, &split).unwrap(), eta_widths(&cfg, &split).unwrap());
    }

    #[test]
    fn unchecked_flags_agree((d, a, n2) in (1usize..=4, 0u32..=4, 1usize..=4)) {
        let n2 = n2.min(d);
        let cfg = FiberConfig::unchecked(vec![d], vec![a], 0, 0).unwrap();
        let split = StratumSplit::new(vec![(d - n2, n2)]);
        prop_assert_eq!(eta_oracle(&cfg, &split).unwrap(), eta_widths(&cfg, &split).unwrap());
    }

    #[test]
    fn hall_shift_round_trip(
        (d_list, v_list) in prop::collection::vec((1usize..=9, -50i64..=50), 0..=6)
            .prop_map(|p| p.into_iter().unzip::<_, _, Vec<usize>, Vec<i64>>()),
        d_prime in 0usize..=12,
    ) {
        let w = hall_shift(&d_list, d_prime, &v_list).unwrap();
        prop_assert_eq!(hall_unshift(&d_list, d_prime, &w).unwrap(), v_list);
    }
}
