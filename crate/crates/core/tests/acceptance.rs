//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qbps::extquiver::{
    eta_oracle, eta_widths, hall_shift, hall_unshift, FiberConfig, StratumSplit,
};
use qbps::polytopes::{nabla_contains, nabla_zonotope};
use qbps::quasibps::{
    count_generators, enumerate_generators, enumerate_window_generators, m_sequence, WindowSpec,
};
use qbps::series::{
    dtpt_convolve, macmahon_dt, verify_thmtoric, verify_wallcrossing_points, IntSeries,
};
use qbps::sod::{enumerate_locdtpt_summands, verify_cor410_bijection, LocalSummand, SlopeChain};
use qbps::weights::irrep_weight_set;
use qbps::EpsRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail} in {took:.2?}"))
    }
}

fn wallcrossing() -> Outcome {
    let start = Instant::now();
    for chi in 1..=6 {
        let r = verify_wallcrossing_points(chi, 12);
        if !r.pass {
            return Err(format!(
                "chi={chi}: first mismatch at q^{}",
                r.first_mismatch.unwrap()
            ));
        }
    }
    within(
        Duration::from_secs(10),
        start,
        "chi 1..6 to order 12".into(),
    )
}

fn toric_counts() -> Outcome {
    let start = Instant::now();
    for e in [3, 4, 6] {
        let r = verify_thmtoric(e, 8);
        if !r.pass {
            return Err(format!(
                "e={e}: first mismatch at (d, w) = {:?}",
                r.first_mismatch.unwrap()
            ));
        }
    }
    within(Duration::from_secs(5), start, "e in {3,4,6}, d <= 8".into())
}

fn m_sequences() -> Outcome {
    let start = Instant::now();
    for d in 1..=50usize {
        for v in -200..=200i64 {
            let s: i64 = m_sequence(d, v).iter().sum();
            if s != v {
                return Err(format!("d={d} v={v}: sum {s}"));
            }
        }
    }
    within(
        Duration::from_secs(1),
        start,
        "1 <= d <= 50, |v| <= 200".into(),
    )
}

fn random_config(rng: &mut StdRng) -> (FiberConfig, StratumSplit) {
    loop {
        let m = rng.gen_range(1..=5);
        let d: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=7)).collect();
        let a: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=1)).collect();
        let parts: Vec<(usize, usize)> = d
            .iter()
            .map(|&dj| {
                let n2 = rng.gen_range(0..=dj);
                (dj - n2, n2)
            })
            .collect();
        if parts.iter().any(|p| p.1 > 0) {
            return (
                FiberConfig::new(d, a, 0, 0).unwrap(),
                StratumSplit::new(parts),
            );
        }
    }
}

fn eta_equivalence() -> Outcome {
    let mut cases = common::exhaustive(3, 4);
    let exhaustive = cases.len();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    cases.extend((0..200).map(|_| random_config(&mut rng)));
    let mut mismatches = 0;
    for (cfg, split) in &cases {
        if eta_oracle(cfg, split).map_err(|e| e.to_string())?
            != eta_widths(cfg, split).map_err(|e| e.to_string())?
        {
            mismatches += 1;
        }
    }
    if mismatches > 0 {
        return Err(format!("{mismatches} mismatches"));
    }
    Ok(format!(
        "{exhaustive} exhaustive + 200 random configs, 0 mismatches"
    ))
}

fn polytope_oracles() -> Outcome {
    let mut checked = 0;
    for d in 1..=4 {
        for x in common::int_box(d, 3) {
            let w: i64 = x.iter().sum();
            let chi = common::weight(&x);
            let a = nabla_contains(d, w, &chi).map_err(|e| e.to_string())?;
            let b = nabla_zonotope(d, w)
                .contains(&chi)
                .map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("chi={x:?}: cocharacter {a}, LP {b}"));
            }
            checked += 1;
        }
    }
    let mut weights = 0;
    for d in 1..=4 {
        for w in -6..=6 {
            for chi in enumerate_generators(d, w).weights {
                for mu in irrep_weight_set(&chi).map_err(|e| e.to_string())? {
                    if !nabla_contains(d, w, &mu).map_err(|e| e.to_string())? {
                        return Err(format!("d={d} w={w}: weight {mu:?} of {chi:?} outside"));
                    }
                    weights += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} points agree; {weights} irrep weights contained"
    ))
}

fn generator_counts() -> Outcome {
    for w in -20..=20 {
        if count_generators(1, w) != 1 {
            return Err(format!("N(1,{w}) != 1"));
        }
    }
    if count_generators(2, 0) != 2 {
        return Err("N(2,0) != 2".into());
    }
    for d in 1..=5usize {
        for w in -10..=10i64 {
            let n = count_generators(d, w);
            if n != count_generators(d, w + d as i64) || n != count_generators(d, -w) {
                return Err(format!("periodicity or symmetry fails at d={d} w={w}"));
            }
        }
    }
    Ok("d <= 5, |w| <= 10".into())
}

fn local_dtpt() -> Outcome {
    let mu = EpsRational::from_frac(-1, 2) - EpsRational::eps();
    let count = |spec: WindowSpec| {
        enumerate_window_generators(&spec)
            .map(|g| g.len())
            .map_err(|e| e.to_string())
    };
    let e = count(WindowSpec::E {
        d: 1,
        a: 1,
        mu: mu.clone(),
    })?;
    let f = count(WindowSpec::F {
        d: 1,
        a: 1,
        mu: mu.clone(),
    })?;
    let summands = enumerate_locdtpt_summands(1, 1, &mu).map_err(|e| e.to_string())?;
    let expected = vec![
        LocalSummand {
            d_prime: 1,
            chain: SlopeChain::empty(),
            w_list: vec![],
        },
        LocalSummand {
            d_prime: 0,
            chain: SlopeChain::new(vec![(1, 0)]).unwrap(),
            w_list: vec![0],
        },
    ];
    if (e, f) != (2, 1) {
        return Err(format!("E has {e}, F has {f}"));
    }
    if summands != expected {
        return Err(format!("index set {summands:?}"));
    }
    // each summand contributes |F(d')| times the quasi-BPS counts of its chain
    let mut rhs = 0;
    for s in &summands {
        let pt = if s.d_prime == 0 {
            1
        } else {
            count(WindowSpec::F {
                d: s.d_prime,
                a: 1,
                mu: mu.clone(),
            })?
        };
        let chain: usize = s
            .chain
            .entries()
            .iter()
            .zip(&s.w_list)
            .map(|(&(d, _), &w)| count_generators(d, w))
            .product();
        rhs += pt * chain;
    }
    if rhs != e {
        return Err(format!("balance {e} != {rhs}"));
    }
    Ok("|E| = 2, |F| = 1, 2 = 1*1 + 1".into())
}

fn index_bijection() -> Outcome {
    for n in 0..=8 {
        let r = verify_cor410_bijection(n, 8);
        if !r.pass {
            let bad = r.rows.iter().find(|x| !x.equal).unwrap();
            return Err(format!(
                "n={n} D={}: {} vs {}",
                bad.d, bad.dtpt_count, bad.points_count
            ));
        }
    }
    Ok("n in 0..=8, D_max = 8".into())
}

fn random_series(rng: &mut StdRng, order: usize) -> IntSeries {
    let c: Vec<i64> = (0..=order).map(|_| rng.gen_range(-1000..=1000)).collect();
    IntSeries::from_i64(&c).unwrap()
}

fn convolution() -> Outcome {
    for chi in 1..=4 {
        let m = macmahon_dt(chi, 12);
        if dtpt_convolve(&m, &IntSeries::one(12)) != m {
            return Err(format!("pt = 1 changes the chi={chi} series"));
        }
    }
    let mut rng = StdRng::seed_from_u64(9);
    for k in 0..100 {
        let (a, b, c) = (
            random_series(&mut rng, 12),
            random_series(&mut rng, 12),
            random_series(&mut rng, 12),
        );
        if dtpt_convolve(&dtpt_convolve(&a, &b), &c) != dtpt_convolve(&a, &dtpt_convolve(&b, &c)) {
            return Err(format!("associativity fails on triple {k}"));
        }
    }
    Ok("identity for chi 1..4; 100 random triples associate".into())
}

fn hall_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    for k in 0..500 {
        let len = rng.gen_range(0..=8);
        let d_list: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=10)).collect();
        let v_list: Vec<i64> = (0..len).map(|_| rng.gen_range(-100..=100)).collect();
        let d_prime = rng.gen_range(0..=20);
        let w = hall_shift(&d_list, d_prime, &v_list).map_err(|e| e.to_string())?;
        if hall_unshift(&d_list, d_prime, &w).map_err(|e| e.to_string())? != v_list {
            return Err(format!("instance {k}: {d_list:?} {d_prime} {v_list:?}"));
        }
    }
    Ok("500 random instances".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("wall-crossing identity", wallcrossing),
        ("toric monomial counts", toric_counts),
        ("m-sequence sums", m_sequences),
        ("eta width oracle", eta_equivalence),
        ("polytope oracles", polytope_oracles),
        ("quasi-BPS generator counts", generator_counts),
        ("local DT/PT window at d=1", local_dtpt),
        ("index-set bijection", index_bijection),
        ("DT/PT convolution", convolution),
        ("Hall-shift round trip", hall_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
