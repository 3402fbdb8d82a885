//! The combining step of the zero-free region argument.
//!
//! An upper template for `−Re L'/L(σ, Π×Π̃)` in the presence of a zero
//! `β + iγ`, a lower template coming from the sieve, the algebraic solve for
//! the largest admissible `β`, and numeric lower bounds for `|L(s, π×π̃)|`
//! on and right of the 1-line.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{arg, Error, Result};
use crate::fields::PrimeTable;
use crate::lseries::{truncated_log_l, zeta, EdgeEvaluator};
use crate::perron::{f_direct, Bump};
use crate::reps::{build_auxiliary_pi, CoefficientSource, Rep};
use crate::fields::FieldKind;

/// The two sides of the comparison trapping a zero `β + iγ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTemplate {
    /// O-constant in front of `log 𝔮(Π×Π̃)`.
    pub a: f64,
    /// Sieve constant.
    pub c: f64,
}

impl Default for BoundTemplate {
    fn default() -> Self {
        Self { a: 1.0, c: 1.0 }
    }
}

impl BoundTemplate {
    /// `−2/(σ−β) + 2/(σ−1) + A log Q`, decreasing in `β < σ`.
    pub fn upper(&self, sigma: f64, beta: f64, log_q: f64) -> f64 {
        -2.0 / (sigma - beta) + 2.0 / (sigma - 1.0) + self.a * log_q
    }

    /// `c (|t|+3)^{2(1−σ)} / (σ−1)`.
    pub fn lower(&self, sigma: f64, t: f64) -> f64 {
        self.c * (t.abs() + 3.0).powf(2.0 * (1.0 - sigma)) / (sigma - 1.0)
    }
}

/// Default `log 𝔮` for the width solver: `2 log(|γ|+3)`.
pub fn default_log_q(gamma: f64) -> f64 {
    2.0 * (gamma.abs() + 3.0).ln()
}

/// Default offset `c₀` in `σ = 1 + c₀/log(|γ|+3)`.
pub const DEFAULT_C0: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthStatus {
    /// `β <= beta_max < 1`.
    Constrained,
    /// The inequality allows every `β <= 1` (including `c = 0`).
    NoConstraint,
    /// `lower > upper` for every `β < σ`: no zero at this height.
    Excluded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthSolution {
    pub sigma: f64,
    /// `2/(σ−1) + A log Q − lower(σ)`.
    pub denominator: f64,
    pub beta_max: Option<f64>,
    pub one_minus_beta: Option<f64>,
    pub status: WidthStatus,
}

/// Solves `lower(σ, γ) <= upper(σ, β)` for `β` at `σ = 1 + c₀/log(|γ|+3)`.
pub fn width_solver(c: f64, a: f64, log_q: f64, gamma: f64, c0: f64) -> Result<WidthSolution> {
    if !(c >= 0.0) {
        return arg(format!("sieve constant c must be nonnegative (got {c})"));
    }
    for (name, v) in [("A", a), ("log Q", log_q), ("c0", c0)] {
        if !(v > 0.0) || !v.is_finite() {
            return arg(format!("{name} must be positive (got {v})"));
        }
    }
    if !gamma.is_finite() {
        return arg("gamma must be finite");
    }
    let sigma = 1.0 + c0 / (gamma.abs() + 3.0).ln();
    let template = BoundTemplate { a, c };
    let denominator = 2.0 / (sigma - 1.0) + a * log_q - template.lower(sigma, gamma);
    if c == 0.0 {
        return Ok(WidthSolution {
            sigma,
            denominator,
            beta_max: None,
            one_minus_beta: None,
            status: WidthStatus::NoConstraint,
        });
    }
    if !(denominator > 0.0) {
        return Ok(WidthSolution {
            sigma,
            denominator,
            beta_max: None,
            one_minus_beta: None,
            status: WidthStatus::Excluded,
        });
    }
    let beta_max = sigma - 2.0 / denominator;
    let status = if beta_max < 1.0 {
        WidthStatus::Constrained
    } else {
        WidthStatus::NoConstraint
    };
    Ok(WidthSolution {
        sigma,
        denominator,
        beta_max: Some(beta_max),
        one_minus_beta: Some(1.0 - beta_max),
        status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub t: f64,
    pub sigma: f64,
    /// Point value of `|L(σ+it, π×π̃)|`.
    pub value: f64,
    /// Half-width of the error bar around `value`.
    pub bar: f64,
    /// `value − bar`, a certified lower bound.
    pub lower: f64,
    /// `1/log(|t|+3)`.
    pub comparator: f64,
    /// `lower / comparator`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundScan {
    pub rows: Vec<ScanRow>,
    /// Row with the smallest `ratio`.
    pub min_row: Option<ScanRow>,
}

/// Tolerance used for `ζ(1+it)` in the scan.
const ZETA_TOL: f64 = 1e-12;

/// `|L(σ+it, π×π̃)|` with `σ = 1 + u/log(|t|+3)` for each `u` in `offsets`.
///
/// `u >= 1` keeps the evaluation inside the region where the truncated
/// Euler product with its tail bound applies; `u = 0` is accepted only for
/// the trivial representation over `Q`, where `ζ(1+it)` is evaluated
/// directly. The truncation uses every prime power up to `cutoff`.
pub fn lower_bound_scan(
    rep: &Rep,
    t_grid: &[f64],
    offsets: &[f64],
    table: &PrimeTable,
    cutoff: u64,
) -> Result<LowerBoundScan> {
    if t_grid.is_empty() || offsets.is_empty() {
        return arg("t grid and offset grid must be nonempty");
    }
    let zeta_ok = matches!(rep.source(), CoefficientSource::Trivial)
        && rep.field().kind() == FieldKind::Rationals;
    for &u in offsets {
        if !(u >= 1.0) && !(u == 0.0 && zeta_ok) {
            return arg(format!(
                "offset {u} puts sigma below 1 + 1/log(|t|+3); only the trivial representation over Q may use sigma = 1"
            ));
        }
    }
    let cells: Vec<(f64, f64)> = t_grid
        .iter()
        .flat_map(|&t| offsets.iter().map(move |&u| (t, u)))
        .collect();
    let rows: Vec<ScanRow> = cells
        .par_iter()
        .map(|&(t, u)| -> Result<ScanRow> {
            if !t.is_finite() {
                return arg("t must be finite");
            }
            let lh = (t.abs() + 3.0).ln();
            let sigma = 1.0 + u / lh;
            let (value, bar) = if u == 0.0 {
                if t == 0.0 {
                    return Err(Error::Pole("1".into()));
                }
                let z = zeta(Complex64::new(1.0, t), ZETA_TOL)?;
                (z.value.norm(), z.error + z.rounding_error)
            } else {
                let s = truncated_log_l(rep, Complex64::new(sigma, t), cutoff, table)?;
                let value = s.value.re.exp();
                (value, value - (s.value.re - s.tail_bound).exp())
            };
            let lower = (value - bar).max(0.0);
            let comparator = 1.0 / lh;
            Ok(ScanRow {
                t,
                sigma,
                value,
                bar,
                lower,
                comparator,
                ratio: lower / comparator,
            })
        })
        .collect::<Result<_>>()?;
    let min_row = rows
        .iter()
        .copied()
        .min_by(|a, b| a.ratio.total_cmp(&b.ratio));
    Ok(LowerBoundScan { rows, min_row })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRow {
    pub y: f64,
    pub f_direct: f64,
    /// `|L(1+it, π×π̃)| Y (log Y)²`.
    pub upper_shape: f64,
    /// `F_direct / (Y (log Y)² K)`.
    pub implied_lower: f64,
    /// `1/(log(|t|+3))³`.
    pub comparator: f64,
    /// `false` when `F_direct = 0`, so the row says nothing.
    pub informative: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumChain {
    pub t: f64,
    pub l_value: f64,
    /// Constant in `F(Y) <= K |L(1+it)| Y (log Y)²`.
    pub k: f64,
    pub rows: Vec<ChainRow>,
}

/// Runs the upper/lower comparison for `F(Y)` on `Π = π|det|^{it/2} ⊞ π|det|^{−it/2}`.
///
/// With `k = None` the constant is the smallest one consistent with every
/// row, `max_Y F_direct / (|L(1+it)| Y (log Y)²)`; the implied lower bound is
/// then exact at the maximizing `Y` and smaller elsewhere.
pub fn theorem2_chain(
    rep: &Rep,
    t: f64,
    y_grid: &[f64],
    psi: &dyn Bump,
    table: &PrimeTable,
    evaluator: &dyn EdgeEvaluator,
    k: Option<f64>,
) -> Result<SumChain> {
    if y_grid.is_empty() {
        return arg("Y grid must be nonempty");
    }
    if y_grid.iter().any(|&y| !(y > 0.0) || y == 1.0 || !y.is_finite()) {
        return arg("every Y must be positive, finite and different from 1");
    }
    let l_value = evaluator.edge(rep, t)?.value.norm();
    let pi = build_auxiliary_pi(rep, t)?;
    let direct: Vec<f64> = y_grid
        .iter()
        .map(|&y| f_direct(&pi, table, y, psi))
        .collect::<Result<_>>()?;
    let shapes: Vec<f64> = y_grid.iter().map(|&y| y * y.ln().powi(2)).collect();
    let k = match k {
        Some(k) if k > 0.0 => k,
        Some(k) => return arg(format!("K must be positive (got {k})")),
        None => direct
            .iter()
            .zip(&shapes)
            .map(|(f, s)| f / (l_value * s))
            .fold(0.0, f64::max),
    };
    let comparator = 1.0 / (t.abs() + 3.0).ln().powi(3);
    let rows = y_grid
        .iter()
        .zip(direct.iter().zip(&shapes))
        .map(|(&y, (&f, &shape))| ChainRow {
            y,
            f_direct: f,
            upper_shape: l_value * shape,
            implied_lower: if f > 0.0 && k > 0.0 { f / (shape * k) } else { 0.0 },
            comparator,
            informative: f > 0.0,
        })
        .collect();
    Ok(SumChain { t, l_value, k, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::NumberField;
    use crate::lseries::ZetaEvaluator;
    use crate::perron::SmoothWeight;

    /// Largest β in (σ − 10, σ) with lower <= upper, by bisection.
    fn bisect_beta(c: f64, a: f64, log_q: f64, gamma: f64, c0: f64) -> f64 {
        let sigma = 1.0 + c0 / (gamma.abs() + 3.0).ln();
        let tpl = BoundTemplate { a, c };
        let ok = |b: f64| tpl.lower(sigma, gamma) <= tpl.upper(sigma, b, log_q);
        let (mut lo, mut hi) = (sigma - 10.0, sigma - 1e-300_f64.max(f64::EPSILON));
        assert!(ok(lo) && !ok(hi));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                lo = mid
            } else {
                hi = mid
            }
        }
        lo
    }

    #[test]
    fn templates() {
        let t = BoundTemplate::default();
        assert!(t.upper(1.1, 0.5, 3.0) > t.upper(1.1, 0.9, 3.0));
        assert!(t.lower(1.05, 10.0) > 0.0);
    }

    #[test]
    fn solver_matches_bisection() {
        let s = width_solver(1.0, 1.0, 10.0, 10.0, 0.1).unwrap();
        assert_eq!(s.status, WidthStatus::Constrained);
        let beta = s.beta_max.unwrap();
        assert!(beta < 1.0);
        assert!((beta - bisect_beta(1.0, 1.0, 10.0, 10.0, 0.1)).abs() < 1e-12);
        let tpl = BoundTemplate { a: 1.0, c: 1.0 };
        let lower = tpl.lower(s.sigma, 10.0);
        let upper = tpl.upper(s.sigma, beta, 10.0);
        assert!((lower - upper).abs() <= 1e-12 * lower.abs());
    }

    #[test]
    fn width_scales_like_inverse_log() {
        let mut scaled = Vec::new();
        for gamma in [10.0, 1e2, 1e3, 1e4] {
            let s = width_solver(1.0, 1.0, default_log_q(gamma), gamma, DEFAULT_C0).unwrap();
            let w = s.one_minus_beta.unwrap();
            assert!((s.beta_max.unwrap() - bisect_beta(1.0, 1.0, default_log_q(gamma), gamma, DEFAULT_C0)).abs() < 1e-12);
            scaled.push(w * (gamma + 3.0).ln());
        }
        // with log Q proportional to log(|γ|+3) the product is constant
        for w in &scaled {
            assert!((w - scaled[0]).abs() < 1e-12, "{scaled:?}");
            assert!(*w > 0.0);
        }
    }

    #[test]
    fn solver_edge_cases() {
        assert_eq!(width_solver(0.0, 1.0, 10.0, 10.0, 0.1).unwrap().status, WidthStatus::NoConstraint);
        assert!(width_solver(-1.0, 1.0, 10.0, 10.0, 0.1).is_err());
        assert!(width_solver(1.0, 0.0, 10.0, 10.0, 0.1).is_err());
        assert_eq!(width_solver(1e3, 1.0, 10.0, 10.0, 0.1).unwrap().status, WidthStatus::Excluded);
        let mut last = f64::INFINITY;
        for a in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let w = width_solver(1.0, a, 10.0, 10.0, 0.1).unwrap().one_minus_beta.unwrap();
            assert!(w < last);
            last = w;
        }
    }

    #[test]
    fn zeta_scan_on_the_line() {
        let triv = Rep::trivial(NumberField::rationals());
        let table = PrimeTable::new(1000);
        let ts: Vec<f64> = (2..=40).map(|i| i as f64 * 0.5).collect();
        let scan = lower_bound_scan(&triv, &ts, &[0.0], &table, 1000).unwrap();
        let min = scan.min_row.unwrap();
        assert_eq!(min.t, 14.0);
        // mpmath: |ζ(1+14i)| log 17 = 0.94826814492990...
        assert!((min.value * 17f64.ln() - 0.9482681449299079).abs() < 1e-10);
        assert!(min.bar < 1e-10);
    }

    #[test]
    fn series_scan_carries_bars_and_is_symmetric() {
        let delta = Rep::delta(20_000);
        let table = PrimeTable::new(20_000);
        let scan = lower_bound_scan(&delta, &[-7.0, 7.0], &[1.0, 2.0], &table, 20_000).unwrap();
        for row in &scan.rows {
            assert!(row.bar > 0.0 && row.lower > 0.0 && row.lower < row.value);
        }
        assert!((scan.rows[0].value - scan.rows[2].value).abs() < 1e-12 * scan.rows[0].value);
        assert!(lower_bound_scan(&delta, &[7.0], &[0.0], &table, 20_000).is_err());
        assert!(lower_bound_scan(&delta, &[7.0], &[0.5], &table, 20_000).is_err());
    }

    #[test]
    fn chain_for_zeta() {
        let triv = Rep::trivial(NumberField::rationals());
        let table = PrimeTable::new(1 << 16);
        let psi = SmoothWeight::default();
        let chain = theorem2_chain(&triv, 1.0, &[1e3, 1e4], &psi, &table, &ZetaEvaluator::default(), None).unwrap();
        // |ζ(1+i)| from mpmath
        assert!((chain.l_value - 1.0945118856076).abs() < 1e-9);
        let best = chain.rows.iter().map(|r| r.implied_lower).fold(0.0, f64::max);
        assert!((best - chain.l_value).abs() < 1e-12);
        assert!(chain.rows.iter().all(|r| r.implied_lower <= chain.l_value * (1.0 + 1e-12)));

        let empty = theorem2_chain(&triv, 1.0, &[0.3], &psi, &table, &ZetaEvaluator::default(), Some(1.0)).unwrap();
        assert_eq!(empty.rows[0].f_direct, 0.0);
        assert!(!empty.rows[0].informative);
        assert_eq!(empty.rows[0].implied_lower, 0.0);
    }
}
