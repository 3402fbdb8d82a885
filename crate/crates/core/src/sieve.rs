//! Counting estimates behind the lower bound
//! `Σ_{Y ≤ N(p) ≤ 2Y} |λ_π(p)|² |1 + N(p)^{it}|² ≫ Y / log Y`.
//!
//! Every sum runs over prime ideals with `Y ≤ N(p) ≤ 2Y` and, where a
//! representation is involved, skips primes where it ramifies.

use std::f64::consts::{LN_2, PI};

use crate::error::{arg, Error, Result};
use crate::fields::{NumberField, PrimeIdeal, PrimeTable};
use crate::numeric::CompensatedSum;
use crate::reps::Rep;

/// Default `A` in the threshold `Y >= A (|t| + 3)²`.
pub const DEFAULT_THRESHOLD: f64 = 10.0;

/// Prime ideals with `Y <= N(p) <= 2Y`.
fn dyadic_primes(field: &NumberField, table: &PrimeTable, y: f64) -> Result<Vec<PrimeIdeal>> {
    if !(y.is_finite() && y > 0.0) {
        return arg(format!("Y must be positive and finite (got {y})"));
    }
    let lo = (y.ceil() as u64).max(2);
    let hi = (2.0 * y).floor() as u64;
    if hi < lo {
        return Ok(Vec::new());
    }
    table.primes_in_norm_range(field, lo, hi)
}

fn check_cutoff(rep: &Rep, y: f64) -> Result<()> {
    if let Some(cutoff) = rep.coefficient_cutoff() {
        let needed = (2.0 * y).floor() as u64;
        if needed > cutoff {
            return Err(Error::Resource {
                what: "eigenvalue table",
                requested: needed,
                limit: cutoff,
            });
        }
    }
    Ok(())
}

/// Unramified primes of the dyadic range with `|λ_π(p)|`.
fn dyadic_lambdas(rep: &Rep, table: &PrimeTable, y: f64) -> Result<Vec<(PrimeIdeal, f64)>> {
    check_cutoff(rep, y)?;
    dyadic_primes(rep.field(), table, y)?
        .into_iter()
        .filter(|p| !rep.is_ramified_at(p.p))
        .map(|p| Ok((p, rep.lambda(&p)?.norm())))
        .collect()
}

/// `|1 + N(p)^{it}|`.
pub fn twist_modulus(norm: u64, t: f64) -> f64 {
    2.0 * (0.5 * t * (norm as f64).ln()).cos().abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauberianSum {
    pub sum: f64,
    pub ratio_to_y: f64,
}

/// `Σ |λ_π(p)|² log N(p)`, expected to be `Y + o(Y)`.
pub fn tauberian_sum(rep: &Rep, table: &PrimeTable, y: f64) -> Result<TauberianSum> {
    let sum: CompensatedSum = dyadic_lambdas(rep, table, y)?
        .into_iter()
        .map(|(p, lam)| lam * lam * p.log_norm())
        .collect();
    Ok(TauberianSum {
        sum: sum.value(),
        ratio_to_y: sum.value() / y,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCount {
    pub count: u64,
    /// `(1 − C²) / n² · Y / log Y`
    pub floor: f64,
    pub ratio: f64,
}

/// `#{p : |λ_π(p)| >= C}` against the floor `(1 − C²)/n² · Y/log Y`.
pub fn density_large_lambda(rep: &Rep, table: &PrimeTable, y: f64, c: f64) -> Result<DensityCount> {
    if !(c > 0.0 && c < 1.0) {
        return arg(format!("C must lie in (0, 1) for a positive floor (got {c})"));
    }
    let count = dyadic_lambdas(rep, table, y)?
        .into_iter()
        .filter(|&(_, lam)| lam >= c)
        .count() as u64;
    let n = rep.gl_rank() as f64;
    let floor = (1.0 - c * c) / (n * n) * y / y.ln();
    Ok(DensityCount {
        count,
        floor,
        ratio: count as f64 / floor,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallAngleCount {
    pub count: u64,
    /// `64 C [F:Q] log 2 / π · Y / log(Y / 4t²)`
    pub claimed_bound: f64,
    pub satisfied: bool,
}

/// Checks `1/(2√Y) <= C <= |t| log 2 / 2` and `Y > 4t²`.
pub fn small_angle_hypotheses(y: f64, t: f64, c: f64) -> Result<()> {
    let lower = 1.0 / (2.0 * y.sqrt());
    let upper = t.abs() * LN_2 / 2.0;
    if !(c >= lower) {
        return arg(format!("hypothesis C >= 1/(2 sqrt Y) = {lower} fails (C = {c})"));
    }
    if !(c <= upper) {
        return arg(format!("hypothesis C <= |t| log 2 / 2 = {upper} fails (C = {c}, t = {t})"));
    }
    if !(y > 4.0 * t * t) {
        return arg(format!("hypothesis Y > 4 t^2 = {} fails (Y = {y})", 4.0 * t * t));
    }
    Ok(())
}

/// `#{p : |1 + N(p)^{it}| < C}` over all primes of `F`, with the bound
/// that follows from Brun–Titchmarsh.
pub fn small_angle_count(
    field: &NumberField,
    table: &PrimeTable,
    y: f64,
    t: f64,
    c: f64,
) -> Result<SmallAngleCount> {
    small_angle_hypotheses(y, t, c)?;
    let count = dyadic_primes(field, table, y)?
        .into_iter()
        .filter(|p| twist_modulus(p.norm, t) < c)
        .count() as u64;
    let claimed_bound =
        64.0 * c * field.degree() as f64 * LN_2 / PI * y / (y / (4.0 * t * t)).ln();
    Ok(SmallAngleCount {
        count,
        claimed_bound,
        satisfied: count as f64 <= claimed_bound,
    })
}

/// Split of the dyadic range by the size of `|1 + N(p)^{it}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnglePartition {
    pub below: u64,
    pub at_or_above: u64,
    pub ramified: u64,
    pub total: u64,
}

pub fn angle_partition(rep: &Rep, table: &PrimeTable, y: f64, t: f64, c: f64) -> Result<AnglePartition> {
    let primes = dyadic_primes(rep.field(), table, y)?;
    let total = primes.len() as u64;
    let mut part = AnglePartition {
        below: 0,
        at_or_above: 0,
        ramified: 0,
        total,
    };
    for p in primes {
        if rep.is_ramified_at(p.p) {
            part.ramified += 1;
        } else if twist_modulus(p.norm, t) < c {
            part.below += 1;
        } else {
            part.at_or_above += 1;
        }
    }
    Ok(part)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SieveLhs {
    pub sum: f64,
    pub y_over_log_y: f64,
    pub ratio: f64,
}

/// `Σ |λ_π(p)|² |1 + N(p)^{it}|²` for `Y >= threshold · (|t| + 3)²`.
pub fn sieve_lemma_lhs(rep: &Rep, table: &PrimeTable, y: f64, t: f64, threshold: f64) -> Result<SieveLhs> {
    let floor = (threshold * (t.abs() + 3.0).powi(2)).max(2.0);
    if !(y >= floor) {
        return arg(format!(
            "Y = {y} is below the threshold A (|t| + 3)^2 = {floor} (A = {threshold})"
        ));
    }
    let sum: CompensatedSum = dyadic_lambdas(rep, table, y)?
        .into_iter()
        .map(|(p, lam)| (lam * twist_modulus(p.norm, t)).powi(2))
        .collect();
    let y_over_log_y = y / y.ln();
    Ok(SieveLhs {
        sum: sum.value(),
        y_over_log_y,
        ratio: sum.value() / y_over_log_y,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinedCount {
    pub count: u64,
    /// `C⁴ · count`, a lower bound for the sieve sum.
    pub minorant: f64,
    pub lhs: f64,
    pub satisfied: bool,
}

/// `#{p : |λ_π(p)| |1 + N(p)^{it}| >= C²}` and the inequality
/// `Σ |λ|² |1 + N^{it}|² >= C⁴ · #{…}`.
pub fn combined_count(rep: &Rep, table: &PrimeTable, y: f64, t: f64, c: f64) -> Result<CombinedCount> {
    if !(c > 0.0) {
        return arg(format!("C must be positive (got {c})"));
    }
    let mut lhs = CompensatedSum::new();
    let mut count = 0u64;
    for (p, lam) in dyadic_lambdas(rep, table, y)? {
        let v = lam * twist_modulus(p.norm, t);
        lhs.add(v * v);
        if v >= c * c {
            count += 1;
        }
    }
    let minorant = c.powi(4) * count as f64;
    Ok(CombinedCount {
        count,
        minorant,
        lhs: lhs.value(),
        satisfied: lhs.value() >= minorant,
    })
}

/// One line of a sieve sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveRow {
    pub estimate: &'static str,
    pub y: f64,
    pub t: f64,
    pub c: f64,
    pub value: f64,
    pub bound: f64,
    pub ratio: f64,
    /// `None` where the row is a measurement without a theorem-grade claim.
    pub verdict: Option<bool>,
}

/// All sub-estimates at one `(Y, t, C)` cell. Cells whose hypotheses fail
/// are omitted for the estimates that need them.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveReport {
    pub y: f64,
    pub t: f64,
    pub c: f64,
    pub rows: Vec<SieveRow>,
}

pub fn sieve_report(rep: &Rep, table: &PrimeTable, y: f64, t: f64, c: f64) -> Result<SieveReport> {
    let mut rows = Vec::new();
    let tau = tauberian_sum(rep, table, y)?;
    rows.push(SieveRow {
        estimate: "tauberian",
        y,
        t,
        c,
        value: tau.sum,
        bound: y,
        ratio: tau.ratio_to_y,
        verdict: None,
    });
    if c > 0.0 && c < 1.0 {
        let d = density_large_lambda(rep, table, y, c)?;
        rows.push(SieveRow {
            estimate: "density_large_lambda",
            y,
            t,
            c,
            value: d.count as f64,
            bound: d.floor,
            ratio: d.ratio,
            verdict: None,
        });
    }
    if small_angle_hypotheses(y, t, c).is_ok() {
        let s = small_angle_count(rep.field(), table, y, t, c)?;
        rows.push(SieveRow {
            estimate: "small_angle",
            y,
            t,
            c,
            value: s.count as f64,
            bound: s.claimed_bound,
            ratio: s.count as f64 / s.claimed_bound,
            verdict: Some(s.satisfied),
        });
    }
    let lhs = sieve_lemma_lhs(rep, table, y, t, 0.0)?;
    rows.push(SieveRow {
        estimate: "sieve_lemma_lhs",
        y,
        t,
        c,
        value: lhs.sum,
        bound: lhs.y_over_log_y,
        ratio: lhs.ratio,
        verdict: None,
    });
    if c > 0.0 {
        let comb = combined_count(rep, table, y, t, c)?;
        rows.push(SieveRow {
            estimate: "combined",
            y,
            t,
            c,
            value: comb.lhs,
            bound: comb.minorant,
            ratio: if comb.minorant > 0.0 { comb.lhs / comb.minorant } else { f64::INFINITY },
            verdict: Some(comb.satisfied),
        });
    }
    Ok(SieveReport { y, t, c, rows })
}
