use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use qbps::extquiver::{
    attracting_obstruction_dims, combined_rep_weights, eta_oracle, eta_widths, hom_dims,
    FiberConfig, StratumSplit,
};
use qbps::polytopes::{
    dtpt_window_e, dtpt_window_f, fiber_window_i, fiber_window_p, mu_delta, nabla_contains,
    nabla_zonotope, w_polytope,
};
use qbps::quasibps::{enumerate_generators, enumerate_window_generators, GeneratorSet, WindowSpec};
use qbps::series::{
    hilb_euler_series, macmahon_dt, sod_weighted_series, verify_thmtoric,
    verify_wallcrossing_points,
};
use qbps::sod::{
    enumerate_dtpt_summands, enumerate_locdtpt_summands, enumerate_point_chains,
    enumerate_unbounded_chains, euler_offset, mu_generic, verify_cor410_bijection, SlopeChain,
};
use qbps::weights::{BlockShape, Weight};
use qbps::EpsRational;

use crate::args::*;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(qbps::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<qbps::Error> for CliError {
    fn from(e: qbps::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Result of one command before rendering.
pub struct Output {
    pub payload: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub pass: Option<bool>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable payload")
}

fn parse_one<T: FromStr>(s: &str, what: &str) -> CliResult<T> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid {what}: {s:?}")))
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',').map(|x| parse_one(x, what)).collect()
}

/// `k`, `a,b,c`, `lo..hi` (exclusive) or `lo..=hi`.
pub fn parse_sweep(s: &str, what: &str) -> CliResult<Vec<i64>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = parse_one(lo, what)?;
        let out: Vec<i64> = match hi.strip_prefix('=') {
            Some(hi) => (lo..=parse_one(hi, what)?).collect(),
            None => (lo..parse_one(hi, what)?).collect(),
        };
        if out.is_empty() {
            return usage(format!("empty range for {what}: {s:?}"));
        }
        return Ok(out);
    }
    parse_list(s, what)
}

fn require<'a, T>(x: &'a Option<T>, flag: &str) -> CliResult<&'a T> {
    x.as_ref()
        .ok_or_else(|| CliError::Usage(format!("--{flag} is required here")))
}

pub fn parse_mu(s: Option<&str>, a: u32) -> CliResult<EpsRational> {
    match s.unwrap_or("auto-eps") {
        "auto-eps" => Ok(EpsRational::from_frac(-(a as i64), 2) - EpsRational::eps()),
        other => parse_one(other, "mu"),
    }
}

fn parse_shape(s: &str) -> CliResult<BlockShape> {
    Ok(BlockShape::new(parse_list(s, "block sizes")?)?)
}

fn parse_point(s: &str, shape: &BlockShape) -> CliResult<Weight> {
    let blocks: Vec<Vec<EpsRational>> = s
        .split(';')
        .map(|b| parse_list(b, "coordinate"))
        .collect::<CliResult<_>>()?;
    let w = Weight::from_blocks(blocks)?;
    if w.shape() != shape {
        return usage(format!(
            "point {s:?} does not match block sizes {:?}",
            shape.sizes()
        ));
    }
    Ok(w)
}

pub fn fmt_weight(w: &Weight) -> String {
    w.blocks()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|c| c.to_string()).collect();
            format!("[{}]", inner.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn fmt_chain(c: &SlopeChain) -> String {
    if c.is_empty() {
        return "()".into();
    }
    c.entries()
        .iter()
        .map(|(d, v)| format!("({d},{v})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn single_or_list<T: Serialize>(items: &[T]) -> Value {
    if items.len() == 1 {
        to_value(&items[0])
    } else {
        to_value(&items)
    }
}

fn window_spec(kind: GeneratorKind, args: &GeneratorsArgs) -> CliResult<WindowSpec> {
    Ok(match kind {
        GeneratorKind::E | GeneratorKind::F => {
            let d: usize = parse_one(&args.d, "d")?;
            let a: u32 = parse_one(require(&args.a, "a")?, "a")?;
            let mu = parse_mu(args.mu.as_deref(), a)?;
            if kind == GeneratorKind::E {
                WindowSpec::E { d, a, mu }
            } else {
                WindowSpec::F { d, a, mu }
            }
        }
        GeneratorKind::FiberI | GeneratorKind::FiberP => {
            let shape = parse_shape(&args.d)?;
            let a: Vec<u32> = parse_list(require(&args.a, "a")?, "flag")?;
            if kind == GeneratorKind::FiberI {
                WindowSpec::FiberI { shape, a }
            } else {
                WindowSpec::FiberP { shape, a }
            }
        }
        GeneratorKind::QuasiBps => unreachable!("handled by the caller"),
    })
}

pub fn generators(args: &GeneratorsArgs) -> CliResult<Output> {
    let sets: Vec<GeneratorSet> = if args.kind == GeneratorKind::QuasiBps {
        let d: usize = parse_one(&args.d, "d")?;
        if d == 0 {
            return usage("--d must be positive");
        }
        let ws = parse_sweep(require(&args.w, "w")?, "w")?;
        ws.par_iter().map(|&w| enumerate_generators(d, w)).collect()
    } else {
        vec![enumerate_window_generators(&window_spec(args.kind, args)?)?]
    };
    let mut rows = Vec::new();
    for set in &sets {
        let w = set.w.map(|w| w.to_string()).unwrap_or_default();
        for (k, chi) in set.weights.iter().enumerate() {
            rows.push(vec![w.clone(), k.to_string(), fmt_weight(chi)]);
        }
    }
    Ok(Output {
        payload: single_or_list(&sets),
        headers: vec!["w", "index", "weight"],
        rows,
        pass: None,
    })
}

pub fn windows(args: &WindowsArgs) -> CliResult<Output> {
    let (zonotope, shape) = match args.kind {
        WindowKind::W | WindowKind::Nabla => {
            let d: usize = parse_one(&args.d, "d")?;
            if d == 0 {
                return usage("--d must be positive");
            }
            let w = *require(&args.w, "w")?;
            let z = if args.kind == WindowKind::W {
                w_polytope(d, w)
            } else {
                nabla_zonotope(d, w)
            };
            (z, BlockShape::single(d))
        }
        WindowKind::E | WindowKind::F => {
            let d: usize = parse_one(&args.d, "d")?;
            if d == 0 {
                return usage("--d must be positive");
            }
            let a: u32 = parse_one(require(&args.a, "a")?, "a")?;
            let mu = parse_mu(args.mu.as_deref(), a)?;
            if let Some(q) = mu.as_rational() {
                if !mu_generic(q, d) {
                    return Err(qbps::Error::NonGenericMu {
                        mu: mu.to_string(),
                        d,
                    }
                    .into());
                }
            }
            let delta = mu_delta(d, &mu);
            let z = if args.kind == WindowKind::E {
                dtpt_window_e(d, a, &delta)?
            } else {
                dtpt_window_f(d, a, &delta)?
            };
            (z, BlockShape::single(d))
        }
        WindowKind::FiberI | WindowKind::FiberP => {
            let shape = parse_shape(&args.d)?;
            let a: Vec<u32> = parse_list(require(&args.a, "a")?, "flag")?;
            let z = if args.kind == WindowKind::FiberI {
                fiber_window_i(&shape, &a, true)?
            } else {
                fiber_window_p(&shape, &a, true)?
            };
            (z, shape)
        }
    };
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for s in &args.chi {
        let chi = parse_point(s, &shape)?;
        let inside = zonotope.contains(&chi)?;
        let mut entry = json!({ "chi": to_value(&chi), "inside": inside });
        let mut row = vec![fmt_weight(&chi), inside.to_string(), String::new()];
        if args.kind == WindowKind::Nabla && chi.is_integral() {
            let by_cochar = nabla_contains(shape.rank(), args.w.unwrap_or(0), &chi)?;
            entry["cocharacter_test"] = json!(by_cochar);
            row[2] = by_cochar.to_string();
        }
        points.push(entry);
        rows.push(row);
    }
    Ok(Output {
        payload: json!({ "zonotope": to_value(&zonotope), "points": points }),
        headers: vec!["chi", "inside", "cocharacter_test"],
        rows,
        pass: None,
    })
}

fn all_splits(d: &[usize]) -> Vec<StratumSplit> {
    let mut parts: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for &dj in d {
        parts = parts
            .into_iter()
            .flat_map(|p| {
                (0..=dj).map(move |n2| {
                    let mut p = p.clone();
                    p.push((dj - n2, n2));
                    p
                })
            })
            .collect();
    }
    parts
        .into_iter()
        .filter(|p| p.iter().any(|x| x.1 > 0))
        .map(StratumSplit::new)
        .collect()
}

fn parse_split(s: &str) -> CliResult<StratumSplit> {
    let parts = s
        .split(',')
        .map(|p| {
            let (n1, n2) = p
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("split part {p:?} is not n1:n2")))?;
            Ok((parse_one(n1, "n1")?, parse_one(n2, "n2")?))
        })
        .collect::<CliResult<_>>()?;
    Ok(StratumSplit::new(parts))
}

pub fn fiber(args: &FiberArgs) -> CliResult<Output> {
    let d: Vec<usize> = parse_list(&args.d, "multiplicity")?;
    let a: Vec<u32> = parse_list(&args.a, "flag")?;
    let cfg = if args.unchecked {
        FiberConfig::unchecked(d, a, args.h0, args.h1)?
    } else {
        FiberConfig::new(d, a, args.h0, args.h1)?
    };
    let splits = match &args.split {
        Some(s) => vec![parse_split(s)?],
        None => all_splits(cfg.d()),
    };
    let results: Vec<(StratumSplit, _, _, _)> = splits
        .into_par_iter()
        .map(|s| {
            let closed = eta_widths(&cfg, &s)?;
            let oracle = eta_oracle(&cfg, &s)?;
            let obs = attracting_obstruction_dims(&cfg, &s)?;
            Ok((s, closed, oracle, obs))
        })
        .collect::<Result<_, qbps::Error>>()?;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for (s, closed, oracle, obs) in &results {
        entries.push(json!({
            "split": to_value(s),
            "eta": to_value(closed),
            "eta_oracle": to_value(oracle),
            "agree": closed == oracle,
            "obstruction": to_value(obs),
        }));
        let label: Vec<String> = s
            .parts
            .iter()
            .map(|(n1, n2)| format!("{n1}:{n2}"))
            .collect();
        rows.push(vec![
            label.join(","),
            closed.eta_plus.to_string(),
            closed.eta_minus.to_string(),
            oracle.eta_plus.to_string(),
            oracle.eta_minus.to_string(),
            obs.dim_o12.to_string(),
            obs.dim_o21.to_string(),
        ]);
    }
    let agree = results.iter().all(|r| r.1 == r.2);
    Ok(Output {
        payload: json!({
            "config": to_value(&cfg),
            "hom": to_value(&hom_dims(&cfg)),
            "combined_rep_size": combined_rep_weights(&cfg).len(),
            "splits": entries,
        }),
        headers: vec![
            "split",
            "eta_plus",
            "eta_minus",
            "oracle_plus",
            "oracle_minus",
            "dim_o12",
            "dim_o21",
        ],
        rows,
        pass: Some(agree),
    })
}

fn chain_rows(chains: &[SlopeChain]) -> Vec<Vec<String>> {
    chains
        .iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), fmt_chain(c), String::new(), String::new()])
        .collect()
}

pub fn sod(args: &SodArgs) -> CliResult<Output> {
    let headers = vec!["index", "chain", "n_prime_or_d_prime", "w_list"];
    match args.mode {
        SodMode::Points => {
            let n = *require(&args.n, "n")?;
            let Ok(n) = usize::try_from(n) else {
                return usage("--n must be nonnegative in points mode");
            };
            let chains = enumerate_point_chains(n);
            Ok(Output {
                payload: json!({ "count": chains.len(), "chains": to_value(&chains) }),
                headers,
                rows: chain_rows(&chains),
                pass: None,
            })
        }
        SodMode::Dtpt => {
            let n = *require(&args.n, "n")?;
            let dmax = *require(&args.dmax, "dmax")?;
            let summands = enumerate_dtpt_summands(n, dmax);
            let rows = summands
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    vec![
                        k.to_string(),
                        fmt_chain(&s.chain),
                        s.n_prime.map(|x| x.to_string()).unwrap_or_default(),
                        String::new(),
                    ]
                })
                .collect();
            Ok(Output {
                payload: json!({ "count": summands.len(), "summands": to_value(&summands) }),
                headers,
                rows,
                pass: None,
            })
        }
        SodMode::Quiver => {
            let a = *require(&args.a, "a")?;
            let d = *require(&args.d, "d")?;
            let mu = parse_mu(args.mu.as_deref(), a)?;
            let summands = enumerate_locdtpt_summands(a, d, &mu)?;
            let rows = summands
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let w: Vec<String> = s.w_list.iter().map(|x| x.to_string()).collect();
                    vec![
                        k.to_string(),
                        fmt_chain(&s.chain),
                        s.d_prime.to_string(),
                        w.join(","),
                    ]
                })
                .collect();
            Ok(Output {
                payload: json!({ "mu": mu.to_string(), "count": summands.len(), "summands": to_value(&summands) }),
                headers,
                rows,
                pass: None,
            })
        }
        SodMode::Surface => {
            let parse_q = |s: &Option<String>, flag: &str| -> CliResult<BigRational> {
                parse_one(require(s, flag)?, flag)
            };
            let (v_lo, v_hi) = (parse_q(&args.v_lo, "v-lo")?, parse_q(&args.v_hi, "v-hi")?);
            let (d, offset) = match (args.d, args.beta_sq, args.k_beta) {
                (Some(d), None, None) => (d as i64, None),
                (None, Some(b), Some(k)) => {
                    let off = euler_offset(b, k, *require(&args.n, "n")?)?;
                    (off.d, Some(off))
                }
                _ => return usage("surface mode takes either --d or --beta-sq, --k-beta and --n"),
            };
            let chains = if d >= 0 {
                enumerate_unbounded_chains(d as usize, &v_lo, &v_hi)
            } else {
                Vec::new()
            };
            Ok(Output {
                payload: json!({
                    "d": d,
                    "offset": offset.map(|o| to_value(&o)),
                    "count": chains.len(),
                    "chains": to_value(&chains),
                }),
                headers,
                rows: chain_rows(&chains),
                pass: None,
            })
        }
    }
}

pub fn series(args: &SeriesArgs) -> CliResult<Output> {
    let s = match args.kind {
        SeriesKind::Macmahon => macmahon_dt(args.chi, args.order),
        SeriesKind::Hilb => hilb_euler_series(args.chi, args.order),
        SeriesKind::Sodweighted => sod_weighted_series(args.chi, args.order),
    };
    let rows = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| vec![n.to_string(), c.to_string()])
        .collect();
    Ok(Output {
        payload: json!({ "series": to_value(&s) }),
        headers: vec!["n", "coefficient"],
        rows,
        pass: None,
    })
}

fn nonneg(xs: Vec<i64>, what: &str) -> CliResult<Vec<usize>> {
    xs.into_iter()
        .map(|x| {
            usize::try_from(x).map_err(|_| CliError::Usage(format!("{what} must be nonnegative")))
        })
        .collect()
}

pub fn verify(args: &VerifyArgs) -> CliResult<Output> {
    match args.check {
        Check::Wallcrossing => {
            let chis = parse_sweep(require(&args.chi, "chi")?, "chi")?;
            let order = *require(&args.order, "order")?;
            let reports: Vec<_> = chis
                .par_iter()
                .map(|&c| verify_wallcrossing_points(c, order))
                .collect();
            let mut rows = Vec::new();
            for r in &reports {
                for row in &r.rows {
                    rows.push(vec![
                        r.chi.to_string(),
                        row.n.to_string(),
                        row.lhs.to_string(),
                        row.rhs.to_string(),
                        row.equal.to_string(),
                    ]);
                }
            }
            Ok(Output {
                pass: Some(reports.iter().all(|r| r.pass)),
                payload: single_or_list(&reports),
                headers: vec!["chi", "n", "sod_weighted", "eta_product", "equal"],
                rows,
            })
        }
        Check::Thmtoric => {
            let es = nonneg(parse_sweep(require(&args.e, "e")?, "e")?, "e")?;
            if es.contains(&0) {
                return usage("--e must be positive");
            }
            let dmax = *require(&args.dmax, "dmax")?;
            let reports: Vec<_> = es.par_iter().map(|&e| verify_thmtoric(e, dmax)).collect();
            let mut rows = Vec::new();
            for r in &reports {
                for row in &r.rows {
                    rows.push(vec![
                        r.e.to_string(),
                        row.d.to_string(),
                        row.w.to_string(),
                        row.gcd.to_string(),
                        row.monomials.to_string(),
                        row.hilb.to_string(),
                        row.equal.to_string(),
                    ]);
                }
            }
            Ok(Output {
                pass: Some(reports.iter().all(|r| r.pass)),
                payload: single_or_list(&reports),
                headers: vec!["e", "d", "w", "gcd", "monomials", "hilb", "equal"],
                rows,
            })
        }
        Check::Cor410 => {
            let ns = parse_sweep(require(&args.n, "n")?, "n")?;
            let dmax = *require(&args.dmax, "dmax")?;
            let reports: Vec<_> = ns
                .par_iter()
                .map(|&n| verify_cor410_bijection(n, dmax))
                .collect();
            let mut rows = Vec::new();
            for r in &reports {
                for row in &r.rows {
                    rows.push(vec![
                        r.n.to_string(),
                        row.d.to_string(),
                        row.n_prime.to_string(),
                        row.dtpt_count.to_string(),
                        row.points_count.to_string(),
                        row.equal.to_string(),
                    ]);
                }
            }
            Ok(Output {
                pass: Some(reports.iter().all(|r| r.pass)),
                payload: single_or_list(&reports),
                headers: vec!["n", "d", "n_prime", "dtpt_count", "points_count", "equal"],
                rows,
            })
        }
    }
}
