//! Dirichlet coefficients of `L(s, Π × Π̃)` and `−L'/L(s, Π × Π̃)`, truncated
//! series in the half-plane of absolute convergence, and residue data.
//!
//! Everything is built from Satake parameters at unramified primes. For the
//! Satake parameters `β_1, …, β_N` of `Π` at `p` the local factor is
//! `∏_{j,l} (1 − β_j β̄_l X)^{−1}` with `X = N(p)^{−s}`, so
//!
//! - `λ_{Π×Π̃}(p^k)` is the complete homogeneous polynomial `h_k` in the
//!   `N²` products `β_j β̄_l`;
//! - `Λ_{Π×Π̃}(p^k) = |Σ_j β_j^k|² log N(p)`.
//!
//! Ideals touching a ramified prime are skipped throughout.

pub mod residues;
pub mod zeta;

use num_complex::Complex64;

use crate::error::{arg, Error, Result};
use crate::fields::{NumberField, PrimeIdeal, PrimeTable};
use crate::numeric::{CompensatedComplexSum, CompensatedSum};
use crate::reps::{IsobaricSum, Rep};

pub use residues::{
    goli_bound_check, residues, EdgeEvaluator, EdgeValues, GoLiRow, GoLiTable, ResidueData,
    ResidueInputs, ResolvedInputs, SuppliedEvaluator, ZetaEvaluator,
};
pub use zeta::{zeta, zeta_em, ZetaValue, EULER_GAMMA};

/// Largest prime-power exponent expanded.
pub const MAX_POWER: u32 = 40;

/// `ψ(x) < 1.03883 x` for all `x > 0` (Rosser–Schoenfeld).
const CHEBYSHEV_PSI_RATIO: f64 = 1.03883;

/// The products `β_j β̄_l` of Satake parameters of `Π` at `p`.
pub fn rs_local_products(pi: &IsobaricSum, ideal: &PrimeIdeal) -> Result<Vec<Complex64>> {
    let beta = pi.satake(ideal)?;
    Ok(beta
        .iter()
        .flat_map(|b| beta.iter().map(move |c| b * c.conj()))
        .collect())
}

/// Coefficients `h_0, …, h_k` of `∏ (1 − γ X)^{−1}`.
fn complete_homogeneous(products: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); k + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for &g in products {
        for j in 1..=k {
            let prev = h[j - 1];
            h[j] += g * prev;
        }
    }
    h
}

fn check_unramified(pi: &IsobaricSum, ideal: &PrimeIdeal) -> Result<()> {
    if pi.is_ramified_at(ideal.p) {
        return Err(Error::Domain(format!(
            "prime above {} is excluded by S_pi",
            ideal.p
        )));
    }
    Ok(())
}

/// `λ_{Π×Π̃}(p) = |Σ_i λ_{π_i}(p) N(p)^{−iτ_i}|²`.
pub fn rs_lambda_prime(pi: &IsobaricSum, ideal: &PrimeIdeal) -> Result<f64> {
    check_unramified(pi, ideal)?;
    let sum: Complex64 = pi.satake(ideal)?.into_iter().sum();
    Ok(sum.norm_sqr())
}

/// `Λ_{Π×Π̃}(p) = λ_{Π×Π̃}(p) log N(p)`.
#[allow(non_snake_case)]
pub fn rs_Lambda_prime(pi: &IsobaricSum, ideal: &PrimeIdeal) -> Result<f64> {
    Ok(rs_lambda_prime(pi, ideal)? * ideal.log_norm())
}

/// Coefficient of `X^k` in the local Rankin–Selberg factor at `p`.
pub fn rs_lambda_prime_power(pi: &IsobaricSum, ideal: &PrimeIdeal, k: u32) -> Result<f64> {
    check_unramified(pi, ideal)?;
    if k == 0 || k > MAX_POWER {
        return arg(format!("prime power exponent must be in 1..={MAX_POWER} (got {k})"));
    }
    let h = complete_homogeneous(&rs_local_products(pi, ideal)?, k as usize);
    Ok(h[k as usize].re)
}

/// `Λ_{Π×Π̃}(p^k) = |Σ_j β_j^k|² log N(p)`.
#[allow(non_snake_case)]
pub fn rs_Lambda_prime_power(pi: &IsobaricSum, ideal: &PrimeIdeal, k: u32) -> Result<f64> {
    check_unramified(pi, ideal)?;
    if k == 0 || k > MAX_POWER {
        return arg(format!("prime power exponent must be in 1..={MAX_POWER} (got {k})"));
    }
    let sum: Complex64 = pi.satake(ideal)?.iter().map(|b| b.powu(k)).sum();
    Ok(sum.norm_sqr() * ideal.log_norm())
}

/// A truncated series value with an explicit bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: T,
    pub tail_bound: f64,
}

/// One nonzero term of a truncated series, in summation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTerm {
    pub norm: u64,
    pub p: u64,
    pub k: u32,
    pub term: f64,
    pub partial_sum: f64,
}

/// Unramified prime powers `p^k` with `N(p^k) <= cutoff`, ascending by norm.
fn prime_powers(
    field: &NumberField,
    table: &PrimeTable,
    cutoff: u64,
    ramified: impl Fn(u64) -> bool,
) -> Result<Vec<(PrimeIdeal, u32, u64)>> {
    if cutoff < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for ideal in table.primes_in_norm_range(field, 2, cutoff)? {
        if ramified(ideal.p) {
            continue;
        }
        let mut norm = ideal.norm;
        let mut k = 1;
        while k <= MAX_POWER {
            out.push((ideal, k, norm));
            match norm.checked_mul(ideal.norm) {
                Some(n) if n <= cutoff => norm = n,
                _ => break,
            }
            k += 1;
        }
    }
    out.sort_by_key(|(ideal, k, norm)| (*norm, ideal.p, ideal.branch, *k));
    Ok(out)
}

fn check_coefficient_capacity(cutoff: u64, available: Option<u64>) -> Result<()> {
    if let Some(limit) = available {
        if cutoff > limit {
            return Err(Error::Resource {
                what: "eigenvalue table",
                requested: cutoff,
                limit,
            });
        }
    }
    Ok(())
}

/// `Σ_{m > X} Λ(m) m^{−σ} <= 1.03883 σ X^{1−σ} / (σ − 1)`, by partial summation.
pub fn chebyshev_tail(sigma: f64, x: f64) -> f64 {
    CHEBYSHEV_PSI_RATIO * sigma * x.powf(1.0 - sigma) / (sigma - 1.0)
}

/// Terms of `Σ Λ_{Π×Π̃}(p^k) / N(p^k)^σ` over unramified `N(p^k) <= cutoff`.
pub fn neg_logderiv_terms(
    pi: &IsobaricSum,
    sigma: f64,
    cutoff: u64,
    table: &PrimeTable,
) -> Result<Vec<SeriesTerm>> {
    if !(sigma > 1.0) {
        return arg(format!("sigma = {sigma} lies in the divergent region sigma <= 1"));
    }
    check_coefficient_capacity(cutoff, pi.coefficient_cutoff())?;
    let mut acc = CompensatedSum::new();
    let mut terms = Vec::new();
    for (ideal, k, norm) in prime_powers(pi.field(), table, cutoff, |p| pi.is_ramified_at(p))? {
        let term = rs_Lambda_prime_power(pi, &ideal, k)? * (norm as f64).powf(-sigma);
        acc.add(term);
        terms.push(SeriesTerm {
            norm,
            p: ideal.p,
            k,
            term,
            partial_sum: acc.value(),
        });
    }
    Ok(terms)
}

/// Truncation of `−L'/L(σ, Π × Π̃)` to unramified `N(p^k) <= cutoff`.
///
/// The tail bound is `N² [F:Q] Σ_{m > cutoff} Λ(m) m^{−σ}` with `N` the rank
/// of `Π`, valid when every component is tempered.
pub fn truncated_neg_logderiv(
    pi: &IsobaricSum,
    sigma: f64,
    cutoff: u64,
    table: &PrimeTable,
) -> Result<SeriesValue<f64>> {
    let terms = neg_logderiv_terms(pi, sigma, cutoff, table)?;
    let rank = pi.total_rank() as f64;
    Ok(SeriesValue {
        value: terms.last().map_or(0.0, |t| t.partial_sum),
        tail_bound: rank * rank
            * pi.field().degree() as f64
            * chebyshev_tail(sigma, cutoff.max(1) as f64),
    })
}

/// Truncation of `log L(s, π × π̃) = Σ Λ_{π×π̃}(a) / (N(a)^s log N(a))`.
pub fn truncated_log_l(
    rep: &Rep,
    s: Complex64,
    cutoff: u64,
    table: &PrimeTable,
) -> Result<SeriesValue<Complex64>> {
    if !(s.re > 1.0) {
        return arg(format!("Re s = {} lies in the divergent region Re s <= 1", s.re));
    }
    check_coefficient_capacity(cutoff, rep.coefficient_cutoff())?;
    let mut acc = CompensatedComplexSum::new();
    for (ideal, k, norm) in prime_powers(rep.field(), table, cutoff, |p| rep.is_ramified_at(p))? {
        let alpha = rep.satake(&ideal)?;
        let power_sum: Complex64 = alpha.iter().map(|a| a.powu(k)).sum();
        let coefficient = power_sum.norm_sqr() / k as f64;
        let ln = (norm as f64).ln();
        acc.add(coefficient * (-s * ln).exp());
    }
    let n = rep.gl_rank() as f64;
    let x = cutoff.max(2) as f64;
    Ok(SeriesValue {
        value: acc.value(),
        tail_bound: n * n * rep.field().degree() as f64 * chebyshev_tail(s.re, x) / x.ln(),
    })
}

/// Norm-aggregated Dirichlet coefficients `Σ_{N(a) = m} λ_{Π×Π̃}(a)` for all
/// `m <= cutoff`, built multiplicatively over unramified primes.
#[derive(Debug, Clone)]
pub struct RSCoefficients {
    cutoff: u64,
    coefficients: Vec<f64>,
}

impl RSCoefficients {
    pub fn new(pi: &IsobaricSum, table: &PrimeTable, cutoff: u64) -> Result<Self> {
        check_coefficient_capacity(cutoff, pi.coefficient_cutoff())?;
        if cutoff > table.limit() {
            return Err(Error::Resource {
                what: "sieve capacity",
                requested: cutoff,
                limit: table.limit(),
            });
        }
        let len = cutoff as usize + 1;
        let spf = smallest_prime_factors(len);
        let field = *pi.field();

        // local[p] = coefficients of the norm-aggregated local factor at p.
        let mut local: Vec<Vec<f64>> = vec![Vec::new(); len];
        for &p in table.primes_between(2, cutoff)? {
            let mut max_e = 0usize;
            let mut q = 1u64;
            while q <= cutoff / p {
                q *= p;
                max_e += 1;
            }
            let mut series = vec![0.0; max_e + 1];
            series[0] = 1.0;
            if !pi.is_ramified_at(p) {
                for ideal in field.ideals_above(p) {
                    let f = ideal.residue_degree as usize;
                    let k_max = max_e / f;
                    if k_max == 0 {
                        continue;
                    }
                    let h = complete_homogeneous(&rs_local_products(pi, &ideal)?, k_max);
                    let mut next = vec![0.0; max_e + 1];
                    for (e, &a) in series.iter().enumerate() {
                        for (k, hk) in h.iter().enumerate() {
                            let idx = e + k * f;
                            if idx > max_e {
                                break;
                            }
                            next[idx] += a * hk.re;
                        }
                    }
                    series = next;
                }
            } else {
                series.truncate(1);
            }
            local[p as usize] = series;
        }

        let mut coefficients = vec![0.0; len];
        if len > 1 {
            coefficients[1] = 1.0;
        }
        for m in 2..len {
            let p = spf[m] as usize;
            let mut rest = m;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            let series = &local[p];
            let c = series.get(e).copied().unwrap_or(0.0);
            coefficients[m] = coefficients[rest] * c;
        }
        Ok(Self {
            cutoff,
            coefficients,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// `Σ_{N(a) = m} λ_{Π×Π̃}(a)`.
    pub fn norm_coefficient(&self, m: u64) -> f64 {
        self.coefficients.get(m as usize).copied().unwrap_or(0.0)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coefficients
    }
}

fn smallest_prime_factors(len: usize) -> Vec<u32> {
    let mut spf = vec![0u32; len];
    for i in 2..len {
        if spf[i] == 0 {
            let mut j = i;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}
