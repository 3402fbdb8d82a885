//! Subcommand implementations. Each returns the artifact to emit.

use num_complex::Complex64;
use zfr_core::conductor::{global_conductor_bounds, reduction_sweep, ConductorData, Place, SweepConfig};
use zfr_core::fields::PrimeTable;
use zfr_core::lseries::{truncated_log_l, ZetaEvaluator};
use zfr_core::perron::{perron_discrepancy, Bump, SmoothWeight};
use zfr_core::reps::{aptable, build_auxiliary_pi, build_three_term_pi, rs_factorize, HoloNewform, Rep};
use zfr_core::sieve::sieve_report;
use zfr_core::zerofree::{default_log_q, lower_bound_scan, theorem2_chain, width_solver, WidthStatus, DEFAULT_C0};
use zfr_core::Error;

use crate::config::Settings;
use crate::output::{Artifact, Cell};
use crate::{repspec, CliError};

const DEFAULT_CAPACITY: u64 = 100_000;

/// `--capacity`, or the grid demand (at least the default) when absent.
fn capacity(s: &Settings, demand: u64) -> Result<u64, CliError> {
    match s.capacity {
        Some(cap) if cap < demand => Err(CliError::Core(Error::Resource {
            what: "--capacity (raise it or shrink the grid)",
            requested: demand,
            limit: cap,
        })),
        Some(cap) => Ok(cap),
        None => Ok(demand.max(DEFAULT_CAPACITY)),
    }
}

fn rep(s: &Settings, cap: u64) -> Result<Rep, CliError> {
    let spec = s
        .rep
        .as_deref()
        .ok_or_else(|| CliError::Config("--rep is required for this subcommand".into()))?;
    repspec::parse(spec, cap)
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn weight(s: &Settings) -> Result<SmoothWeight, CliError> {
    match &s.profile {
        None => Ok(SmoothWeight::default()),
        Some(p) if p.len() == 2 => Ok(SmoothWeight::new(p[0], p[1])?),
        Some(p) => Err(CliError::Config(format!("--profile takes two numbers a,b (got {})", p.len()))),
    }
}

pub fn sieve(s: &Settings) -> Result<Artifact, CliError> {
    let ys = s.y_grid()?;
    let ts = s.t_grid()?;
    let cs = s.c_grid()?;
    let cap = capacity(s, (2.0 * max_of(&ys)).floor() as u64)?;
    let rep = rep(s, cap)?;
    let table = PrimeTable::new(cap);
    let mut rows = Vec::new();
    for &y in &ys {
        for &t in &ts {
            for &c in &cs {
                for r in sieve_report(&rep, &table, y, t, c)?.rows {
                    rows.push(vec![
                        r.estimate.into(),
                        r.y.into(),
                        r.t.into(),
                        r.c.into(),
                        r.value.into(),
                        r.bound.into(),
                        r.ratio.into(),
                        Cell::Bool(r.verdict),
                    ]);
                }
            }
        }
    }
    Ok(Artifact::Table {
        header: vec![
            "estimate",
            "Y [dyadic range Y <= N(p) <= 2Y]",
            "t",
            "C",
            "value [count or weighted sum over the range]",
            "bound [right-hand side of the estimate]",
            "ratio [value/bound]",
            "verdict [estimate holds; empty for measurements]",
        ],
        rows,
    })
}

pub fn perron(s: &Settings) -> Result<Artifact, CliError> {
    let t = s.single_t()?;
    let ys = s.y_grid()?;
    let psi = weight(s)?;
    let cap = capacity(s, (psi.support().1 * max_of(&ys)).floor() as u64 + 1)?;
    let rep = rep(s, cap)?;
    let table = PrimeTable::new(cap);
    let report = perron_discrepancy(&rep, t, &ys, &psi, &table, &ZetaEvaluator::default())?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.y.into(),
                r.direct.into(),
                r.predicted.value.into(),
                r.predicted.leading.into(),
                r.predicted.linear.into(),
                r.abs_diff.into(),
                r.diff_over_y.into(),
            ]
        })
        .collect();
    Ok(Artifact::Table {
        header: vec![
            "Y",
            "F_direct [sum_n lambda_{Pi x Pi~}(n) psi(n/Y)]",
            "F_predicted [residues at s = 1, 1 +- it]",
            "leading [r_-2 psi^(1) Y log Y]",
            "linear [(r_-1 psi^(1) + r_-2 psi^'(1)) Y]",
            "abs_diff [|F_direct - F_predicted|]",
            "diff_over_Y [abs_diff / Y]",
        ],
        rows,
    })
}

fn place_list(mode: Option<&str>) -> Result<Vec<Place>, CliError> {
    match mode.unwrap_or("both") {
        "both" => Ok(vec![Place::Complex, Place::Real]),
        "real" => Ok(vec![Place::Real]),
        "complex" => Ok(vec![Place::Complex]),
        "none" => Ok(vec![]),
        other => Err(CliError::Config(format!("--mode for conductor must be real, complex, both or none (got {other})"))),
    }
}

pub fn conductor(s: &Settings) -> Result<Artifact, CliError> {
    let places = place_list(s.mode.as_deref())?;
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    let cfg = SweepConfig {
        samples: s.samples.unwrap_or(100_000) as usize,
        seed: s.seed.unwrap_or(1),
        ..SweepConfig::default()
    };
    for place in places {
        let sweep = reduction_sweep(place, cfg)?;
        let section = format!("sweep {place:?}");
        let n = sweep.rows.len() as i64;
        for (case, max) in &sweep.max_ratio_by_case {
            rows.push(vec![section.clone().into(), format!("max ratio, {case}").into(), (*max).into(), Cell::Int(n)]);
        }
        for (item, count) in [
            ("reduction failures at C = 9", sweep.reduction_failures),
            ("tensor dimension failures", sweep.dimension_failures),
            ("sqrt3 claim, first inequality failures", sweep.claim_first_failures),
            ("sqrt3 claim, second inequality failures", sweep.claim_second_failures),
        ] {
            rows.push(vec![section.clone().into(), item.into(), Cell::Int(count as i64), Cell::Int(n)]);
        }
    }
    if s.rep.is_some() {
        let cap = capacity(s, 0)?;
        let pi = ConductorData::from_rep(&rep(s, cap)?)?;
        let pi2 = match &s.pi_prime {
            Some(spec) => ConductorData::from_rep(&repspec::parse(spec, cap)?)?,
            None => ConductorData::from_rep(&Rep::trivial(zfr_core::fields::NumberField::rationals()))?,
        };
        let ts = s.t.clone().unwrap_or_else(|| vec![0.0]);
        for t in ts {
            let g = global_conductor_bounds(&pi, &pi2, t, 9.0)?;
            let section = format!("global t={}", zfr_core::numeric::fmt_f64(t));
            for (name, b) in [
                ("finite part ratio", g.finite),
                ("archimedean part ratio, C1 = 9", g.upper_rs),
                ("auxiliary bound ratio", g.auxiliary),
            ] {
                rows.push(vec![section.clone().into(), name.into(), b.ratio.into(), Cell::Bool(Some(b.satisfied))]);
            }
            rows.push(vec![section.into(), "implied C1".into(), g.implied_c1.into(), Cell::Bool(None)]);
        }
    }
    if rows.is_empty() {
        return Err(CliError::Config("nothing to do: give --rep or a sweep --mode".into()));
    }
    Ok(Artifact::Table {
        header: vec![
            "section",
            "item",
            "value [ratio lhs/rhs, or a count]",
            "extent [samples, or whether the bound holds]",
        ],
        rows,
    })
}

pub fn poles(s: &Settings) -> Result<Artifact, CliError> {
    let t = s.single_t()?;
    let cap = capacity(s, 0)?;
    let pi = rep(s, cap)?;
    let sum = match &s.pi_prime {
        Some(spec) => build_three_term_pi(&pi, &repspec::parse(spec, cap)?, t)?,
        None => build_auxiliary_pi(&pi, t)?,
    };
    let fact = rs_factorize(&sum);
    let m = fact.pole_order as i64;
    let rows = fact
        .factors
        .iter()
        .map(|f| {
            vec![
                f.left.label().into(),
                f.right.label().into(),
                f.net_shift.into(),
                f.contributes_pole.into(),
                Cell::Int(m),
            ]
        })
        .collect();
    Ok(Artifact::Table {
        header: vec![
            "left [pi_i]",
            "right [contragredient of pi_j]",
            "net_shift [tau_i - tau_j]",
            "contributes_pole [pole of L(s + i shift, pi_i x pi_j~) at s = 1]",
            "m [order of the pole of L(s, Pi x Pi~) at s = 1]",
        ],
        rows,
    })
}

pub fn zerofree(s: &Settings) -> Result<Artifact, CliError> {
    match s.mode.as_deref().unwrap_or("scan") {
        "width" => {
            let gammas = s.t_grid()?;
            let c = match &s.c {
                None => 1.0,
                Some(v) if v.len() == 1 => v[0],
                Some(_) => return Err(CliError::Config("width mode takes a single --C".into())),
            };
            let a = s.a_const.unwrap_or(1.0);
            let c0 = s.c0.unwrap_or(DEFAULT_C0);
            let mut rows = Vec::new();
            for g in gammas {
                let lq = s.log_q.unwrap_or_else(|| default_log_q(g));
                let w = width_solver(c, a, lq, g, c0)?;
                let status = match w.status {
                    WidthStatus::Constrained => "constrained",
                    WidthStatus::NoConstraint => "no constraint",
                    WidthStatus::Excluded => "excluded",
                };
                let opt = |x: Option<f64>| x.map_or(Cell::Text(String::new()), Cell::Num);
                rows.push(vec![
                    g.into(),
                    w.sigma.into(),
                    lq.into(),
                    opt(w.beta_max),
                    opt(w.one_minus_beta),
                    opt(w.one_minus_beta.map(|x| x * (g.abs() + 3.0).ln())),
                    status.into(),
                ]);
            }
            Ok(Artifact::Table {
                header: vec![
                    "gamma",
                    "sigma [1 + c0/log(|gamma|+3)]",
                    "log_Q",
                    "beta_max",
                    "one_minus_beta",
                    "scaled_width [(1 - beta_max) log(|gamma|+3)]",
                    "status",
                ],
                rows,
            })
        }
        "scan" => {
            let ts = s.t_grid()?;
            let offsets = s.sigma.clone().unwrap_or_else(|| vec![1.0]);
            if offsets.is_empty() {
                return Err(CliError::Config("--sigma grid is empty".into()));
            }
            let cap = capacity(s, 0)?;
            let rep = rep(s, cap)?;
            let table = PrimeTable::new(cap);
            let scan = lower_bound_scan(&rep, &ts, &offsets, &table, cap)?;
            let rows = scan
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.t.into(),
                        r.sigma.into(),
                        r.value.into(),
                        r.bar.into(),
                        r.lower.into(),
                        r.comparator.into(),
                        r.ratio.into(),
                    ]
                })
                .collect();
            Ok(Artifact::Table {
                header: vec![
                    "t",
                    "sigma",
                    "abs_L [|L(sigma + it, pi x pi~)|]",
                    "bar [truncation error bound]",
                    "lower [abs_L - bar]",
                    "comparator [1/log(|t|+3)]",
                    "ratio [lower/comparator]",
                ],
                rows,
            })
        }
        "chain" => {
            let t = s.single_t()?;
            let ys = s.y_grid()?;
            let psi = weight(s)?;
            let cap = capacity(s, (psi.support().1 * max_of(&ys)).floor() as u64 + 1)?;
            let rep = rep(s, cap)?;
            let table = PrimeTable::new(cap);
            let chain = theorem2_chain(&rep, t, &ys, &psi, &table, &ZetaEvaluator::default(), s.k_const)?;
            let rows = chain
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.y.into(),
                        r.f_direct.into(),
                        r.upper_shape.into(),
                        chain.k.into(),
                        r.implied_lower.into(),
                        r.comparator.into(),
                        r.informative.into(),
                    ]
                })
                .collect();
            Ok(Artifact::Table {
                header: vec![
                    "Y",
                    "F_direct [sum_n lambda_{Pi x Pi~}(n) psi(n/Y)]",
                    "upper_shape [|L(1+it, pi x pi~)| Y (log Y)^2]",
                    "K",
                    "implied_lower [F_direct / (K Y (log Y)^2)]",
                    "comparator [1/(log(|t|+3))^3]",
                    "informative",
                ],
                rows,
            })
        }
        other => Err(CliError::Config(format!("--mode for zerofree must be width, scan or chain (got {other})"))),
    }
}

pub fn lfun(s: &Settings) -> Result<Artifact, CliError> {
    let ts = s.t_grid()?;
    let sigmas = s.sigma_grid()?;
    let cap = capacity(s, 0)?;
    let rep = rep(s, cap)?;
    let table = PrimeTable::new(cap);
    let mut rows = Vec::new();
    for &sigma in &sigmas {
        for &t in &ts {
            let v = truncated_log_l(&rep, Complex64::new(sigma, t), cap, &table)?;
            rows.push(vec![
                sigma.into(),
                t.into(),
                v.value.re.into(),
                v.value.im.into(),
                v.tail_bound.into(),
                v.value.re.exp().into(),
                (v.value.re - v.tail_bound).exp().into(),
            ]);
        }
    }
    Ok(Artifact::Table {
        header: vec![
            "sigma",
            "t",
            "re_log_L [Re log L(s, pi x pi~), truncated]",
            "im_log_L",
            "tail_bound [bound on the omitted terms]",
            "abs_L",
            "abs_L_lower [exp(re_log_L - tail_bound)]",
        ],
        rows,
    })
}

pub fn gen_delta(s: &Settings) -> Result<Artifact, CliError> {
    let cap = s.capacity.unwrap_or(DEFAULT_CAPACITY);
    if cap < 2 {
        return Err(CliError::Config("--capacity must be at least 2".into()));
    }
    Ok(Artifact::Text(aptable::write(&HoloNewform::delta(cap))))
}
