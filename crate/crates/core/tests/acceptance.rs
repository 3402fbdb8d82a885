//! Acceptance criteria 1–9. Each prints one PASS/FAIL line; the test fails if
//! any criterion fails.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zfr_core::conductor::{check_boring, reduction_sweep, Place, SweepConfig};
use zfr_core::fields::{NumberField, PrimeIdeal, PrimeTable};
use zfr_core::lseries::{rs_lambda_prime_power, rs_Lambda_prime_power, ZetaEvaluator};
use zfr_core::perron::{perron_discrepancy, SmoothWeight};
use zfr_core::reps::delta::ramanujan_tau;
use zfr_core::reps::{build_auxiliary_pi, build_three_term_pi, rs_factorize, DirichletCharacter, Rep};
use zfr_core::sieve::{sieve_lemma_lhs, small_angle_count, small_angle_hypotheses, DEFAULT_THRESHOLD};
use zfr_core::zerofree::{default_log_q, lower_bound_scan, width_solver, BoundTemplate, WidthStatus, DEFAULT_C0};

struct Verdict {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn verdict(id: &'static str, pass: bool, detail: String) -> Verdict {
    println!("criterion {id}: {}  {detail}", if pass { "PASS" } else { "FAIL" });
    Verdict { id, pass, detail }
}

fn log_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / steps as f64).exp())
        .collect()
}

fn perron_identity() -> Verdict {
    let start = Instant::now();
    let triv = Rep::trivial(NumberField::rationals());
    let table = PrimeTable::new(260_000);
    let ys = [1e3, 1e4, 1e5];
    let report = perron_discrepancy(
        &triv,
        1.0,
        &ys,
        &SmoothWeight::default(),
        &table,
        &ZetaEvaluator::default(),
    )
    .unwrap();
    let secs = start.elapsed().as_secs_f64();
    let last = report.rows.last().unwrap();
    let rel = last.abs_diff / last.direct;
    let input_error = report.residues.inputs.error;
    let diffs: Vec<String> = report.rows.iter().map(|r| format!("{:.3e}", r.diff_over_y)).collect();
    let pass = report.decreasing == Some(true) && rel < 0.05 && input_error <= 1e-9 && secs < 60.0;
    verdict(
        "1",
        pass,
        format!(
            "diff/Y = [{}], relative gap at 1e5 = {rel:.2e}, residue input error = {input_error:.1e}, {secs:.2}s",
            diffs.join(", ")
        ),
    )
}

fn sieve_corroboration() -> Verdict {
    let start = Instant::now();
    let delta = Rep::delta(100_000);
    let table = PrimeTable::new(100_000);
    let mut values = Vec::new();
    let mut pass = true;
    for y in [1e3, 5e3, 1e4, 2.5e4] {
        let lhs = sieve_lemma_lhs(&delta, &table, y, 5.0, DEFAULT_THRESHOLD).unwrap();
        let scaled = lhs.sum * y.ln() / y;
        pass &= (0.2..=5.0).contains(&scaled);
        values.push(format!("{scaled:.4}"));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 120.0;
    verdict("2", pass, format!("lhs log Y / Y = [{}] in [0.2, 5], {secs:.2}s", values.join(", ")))
}

fn theorem_grade() -> Verdict {
    let q = NumberField::rationals();
    let table = PrimeTable::new(2_000_001);

    let mut bt_cells = 0;
    let mut bt_fail = 0;
    let mut bt_worst: f64 = 0.0;
    for x in log_grid(1e3, 1e6, 12) {
        let mut ys = log_grid(2.0, x, 24);
        *ys.last_mut().unwrap() = x;
        for y in ys {
            let b = table.brun_titchmarsh_margin(&q, x, y).unwrap();
            bt_cells += 1;
            bt_worst = bt_worst.max(b.count as f64 / b.bound);
            if !b.satisfied {
                bt_fail += 1;
            }
        }
    }

    let mut sa_cells = 0;
    let mut sa_fail = 0;
    let mut sa_worst: f64 = 0.0;
    for y in [1e4, 1e5, 1e6] {
        for t in [3.0, 10.0, 30.0] {
            for c in [0.05, 0.1, 0.2] {
                if small_angle_hypotheses(y, t, c).is_err() {
                    continue;
                }
                let s = small_angle_count(&q, &table, y, t, c).unwrap();
                sa_cells += 1;
                sa_worst = sa_worst.max(s.count as f64 / s.claimed_bound);
                if !s.satisfied {
                    sa_fail += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut boring_fail = 0;
    for _ in 0..1_000_000 {
        let mu = Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let mu2 = Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let t = rng.gen_range(-100.0..100.0);
        if !check_boring(t, mu, mu2).satisfied {
            boring_fail += 1;
        }
    }
    verdict(
        "3",
        bt_fail == 0 && sa_fail == 0 && boring_fail == 0 && sa_cells > 0,
        format!(
            "(a) Brun-Titchmarsh {bt_fail}/{bt_cells} failures, max count/bound {bt_worst:.3}; \
             (b) small angle {sa_fail}/{sa_cells} failures, max count/bound {sa_worst:.3e}; \
             (c) boring chain {boring_fail}/1000000 failures"
        ),
    )
}

fn conductor_suite() -> Verdict {
    let cfg = SweepConfig::default();
    let c1 = reduction_sweep(Place::Complex, SweepConfig { seed: 1, ..cfg }).unwrap();
    let r1 = reduction_sweep(Place::Real, SweepConfig { seed: 1, ..cfg }).unwrap();
    let r2 = reduction_sweep(Place::Real, SweepConfig { seed: 2, ..cfg }).unwrap();
    let complex_ok = c1.max_ratio <= 3.0;
    let stable = (r1.max_ratio - r2.max_ratio).abs() <= 0.01 * r1.max_ratio.max(r2.max_ratio);
    let claim_failures = c1.claim_first_failures + c1.claim_second_failures;
    let dims = c1.dimension_failures + r1.dimension_failures + r2.dimension_failures;
    verdict(
        "4",
        complex_ok && stable && claim_failures == 0 && dims == 0,
        format!(
            "complex max ratio {:.6} (<= 3: {complex_ok}); real max ratio {:.6} / {:.6} over two seeds (stable: {stable}); \
             sqrt3-claim failures {} + {} (example {:?}); dimension failures {dims}",
            c1.max_ratio,
            r1.max_ratio,
            r2.max_ratio,
            c1.claim_first_failures,
            c1.claim_second_failures,
            c1.claim_counterexample.map(|p| p.to_string()),
        ),
    )
}

fn pole_orders() -> Verdict {
    let mut cells = Vec::new();
    let mut pass = true;
    for self_dual in [false, true] {
        for t in [0.0, 1.5] {
            for same in [false, true] {
                let pi = Rep::formal("pi", 2, self_dual).unwrap();
                let pi2 = if same { pi.clone() } else { Rep::formal("pi'", 3, true).unwrap() };
                let m = rs_factorize(&build_three_term_pi(&pi, &pi2, t).unwrap()).pole_order;
                let expected = match (self_dual, t == 0.0, same) {
                    (true, true, false) => 5,
                    (true, true, true) => 7,
                    _ => 3,
                };
                pass &= m == expected;
                cells.push(format!(
                    "(sd={self_dual}, t={t}, same={same}) -> {m}{}",
                    if m == expected { String::new() } else { format!(" [expected {expected}]") }
                ));
            }
        }
    }
    let mut aux = Vec::new();
    for rep in [
        Rep::trivial(NumberField::rationals()),
        Rep::delta(100),
        Rep::formal("sigma", 3, false).unwrap(),
    ] {
        let m = rs_factorize(&build_auxiliary_pi(&rep, 7.5).unwrap()).pole_order;
        pass &= m == 2;
        aux.push(m.to_string());
    }
    verdict("5", pass, format!("{}; auxiliary m = [{}]", cells.join(", "), aux.join(", ")))
}

fn nonnegativity() -> Verdict {
    let table = PrimeTable::new(10_000);
    let primes = table.rational_primes().to_vec();
    let reps = [
        Rep::trivial(NumberField::rationals()),
        Rep::character(DirichletCharacter::new(4, 1).unwrap()),
        Rep::delta(10_000),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut small_fail = 0;
    let mut big_fail = 0;
    let mut most_negative: f64 = 0.0;
    let mut cases = 0;
    while cases < 100_000 {
        let rep = &reps[rng.gen_range(0..reps.len())];
        let t = rng.gen_range(-50.0..=50.0);
        let p = primes[rng.gen_range(0..primes.len())];
        let k = rng.gen_range(1..=10);
        if rep.is_ramified_at(p) {
            continue;
        }
        let pi = build_auxiliary_pi(rep, t).unwrap();
        let ideal = PrimeIdeal::rational(p);
        let lam = rs_lambda_prime_power(&pi, &ideal, k).unwrap();
        let big = rs_Lambda_prime_power(&pi, &ideal, k).unwrap();
        if lam < 0.0 {
            small_fail += 1;
            most_negative = most_negative.min(lam);
        }
        if big < 0.0 {
            big_fail += 1;
        }
        cases += 1;
    }
    verdict(
        "6",
        small_fail == 0 && big_fail == 0,
        format!("{cases} cases: lambda < 0 in {small_fail} (min {most_negative:.2e}), Lambda < 0 in {big_fail}"),
    )
}

fn scan_minimum(step: f64) -> (f64, f64) {
    let triv = Rep::trivial(NumberField::rationals());
    let table = PrimeTable::new(100);
    let n = (99.0 / step).round() as usize;
    let ts: Vec<f64> = (0..=n).map(|i| 1.0 + i as f64 * step).collect();
    let scan = lower_bound_scan(&triv, &ts, &[0.0], &table, 100).unwrap();
    let row = scan.min_row.unwrap();
    (row.ratio, row.t)
}

fn lower_bound_scan_criterion() -> Verdict {
    let (coarse, t_coarse) = scan_minimum(0.5);
    let (fine, t_fine) = scan_minimum(0.25);
    let drift = (coarse - fine).abs() / coarse;
    verdict(
        "7",
        coarse >= 0.8 && drift < 0.02,
        format!("min |zeta(1+it)| log(t+3) = {coarse:.6} at t = {t_coarse} (step 0.5), {fine:.6} at t = {t_fine} (step 0.25), drift {drift:.2e}"),
    )
}

fn eigenvalue_oracle() -> Verdict {
    let tau = ramanujan_tau(100_000);
    let small = [tau[2], tau[3], tau[5], tau[7]];
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    for p in PrimeTable::new(100_000).rational_primes() {
        let r = (tau[*p as usize] as f64).abs() / (2.0 * (*p as f64).powf(5.5));
        worst = worst.max(r);
        if r > 1.0 {
            violations += 1;
        }
    }
    verdict(
        "8",
        small == [-24, 252, 4830, -16744] && violations == 0,
        format!("tau(2,3,5,7) = {small:?}; Deligne violations {violations}, max |tau(p)|/(2p^5.5) = {worst:.6}"),
    )
}

fn width_solver_criterion() -> Verdict {
    const L: f64 = 0.01;
    const U: f64 = 1.0;
    let template = BoundTemplate::default();
    let mut residual: f64 = 0.0;
    let mut scaled = Vec::new();
    let mut pass = true;
    for gamma in [10.0, 1e2, 1e3, 1e4] {
        let lq = default_log_q(gamma);
        let w = width_solver(template.c, template.a, lq, gamma, DEFAULT_C0).unwrap();
        if w.status != WidthStatus::Constrained {
            pass = false;
            continue;
        }
        let beta = w.beta_max.unwrap();
        let lower = template.lower(w.sigma, gamma);
        residual = residual.max((lower - template.upper(w.sigma, beta, lq)).abs() / lower.abs());
        let s = w.one_minus_beta.unwrap() * (gamma + 3.0).ln();
        pass &= (L..=U).contains(&s);
        scaled.push(format!("{s:.6}"));
    }
    pass &= residual < 1e-12;
    verdict(
        "9",
        pass,
        format!("residual {residual:.1e}; (1-beta) log(|gamma|+3) = [{}] in [{L}, {U}]", scaled.join(", ")),
    )
}

#[test]
fn acceptance() {
    let results = [
        perron_identity(),
        sieve_corroboration(),
        theorem_grade(),
        conductor_suite(),
        pole_orders(),
        nonnegativity(),
        lower_bound_scan_criterion(),
        eigenvalue_oracle(),
        width_solver_criterion(),
    ];
    let failed: Vec<String> = results
        .iter()
        .filter(|v| !v.pass)
        .map(|v| format!("{} ({})", v.id, v.detail))
        .collect();
    assert!(failed.is_empty(), "failed criteria: {}", failed.join("; "));
}
