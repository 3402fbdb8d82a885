//! Euler–Maclaurin evaluation of `ζ(s)` and `ζ'(s)` with truncation bounds.

use num_complex::Complex64;

use crate::error::{arg, Error, Result};

/// Euler's constant `γ₀`, the constant term of `ζ(s)` at `s = 1`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_{2k}` for `k = 1..=15`, as exact rationals.
const BERNOULLI_EVEN: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// Largest number of correction terms supported.
pub const MAX_TERMS: usize = BERNOULLI_EVEN.len() - 1;

/// `B_{2k} / (2k)!`.
fn bernoulli_weight(k: usize) -> f64 {
    let (num, den) = BERNOULLI_EVEN[k - 1];
    let fact: f64 = (1..=2 * k).map(|j| j as f64).product();
    num / den / fact
}

/// `ζ(s)` and `ζ'(s)` with bounds on the truncation error of each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub s: Complex64,
    pub value: Complex64,
    pub derivative: Complex64,
    /// Truncation error bound for `value`.
    pub error: f64,
    /// Truncation error bound for `derivative`.
    pub derivative_error: f64,
    /// Floating-point accumulation bound, shared by both.
    pub rounding_error: f64,
}

/// Bound on the remainder after `m` correction terms:
/// the first omitted term times `|s + 2m + 1| / (σ + 2m + 1)`.
fn remainder_bound(s: Complex64, n: f64, m: usize) -> f64 {
    let mut rising = Complex64::new(1.0, 0.0);
    for j in 0..=(2 * m) {
        rising *= s + j as f64;
    }
    let next = bernoulli_weight(m + 1).abs()
        * rising.norm()
        * n.powf(-s.re - 2.0 * m as f64 - 1.0);
    next * (s + 2.0 * m as f64 + 1.0).norm() / (s.re + 2.0 * m as f64 + 1.0)
}

/// Euler–Maclaurin summation with `n` explicit terms and `m` Bernoulli
/// corrections.
///
/// Valid for `Re s > -2m - 1`, `s != 1`. The derivative error is obtained from
/// the remainder bound on a circle of radius 1/4 around `s` (Cauchy estimate).
pub fn zeta_em(s: Complex64, n: usize, m: usize) -> Result<ZetaValue> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("1".into()));
    }
    if n < 10 || m < 2 {
        return arg(format!("zeta_em needs N >= 10 and M >= 2 (got N = {n}, M = {m})"));
    }
    if m > MAX_TERMS {
        return arg(format!("zeta_em supports at most M = {MAX_TERMS} correction terms"));
    }
    if s.re + 2.0 * m as f64 + 1.0 <= 0.5 {
        return arg(format!("Re s = {} too far left for M = {m}", s.re));
    }
    let big_n = n as f64;
    let log_n = big_n.ln();

    let mut value = Complex64::new(0.0, 0.0);
    let mut derivative = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for k in (1..n).rev() {
        let lk = (k as f64).ln();
        let term = (-s * lk).exp();
        value += term;
        derivative -= term * lk;
        magnitude += term.norm() * (1.0 + lk);
    }

    let n_pow = (-s * log_n).exp(); // N^{-s}
    let s1 = s - 1.0;
    let tail = n_pow * big_n / s1;
    value += tail + n_pow * 0.5;
    derivative += -tail * log_n - n_pow * big_n / (s1 * s1) - n_pow * 0.5 * log_n;

    // T_k = B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut rising_log_derivative = s.inv();
    for k in 1..=m {
        if k > 1 {
            let a = s + (2 * k - 3) as f64;
            let b = s + (2 * k - 2) as f64;
            rising *= a * b;
            rising_log_derivative += a.inv() + b.inv();
        }
        let power = n_pow * big_n.powi(1 - 2 * k as i32);
        let term = rising * power * bernoulli_weight(k);
        value += term;
        derivative += term * (rising_log_derivative - log_n);
    }

    let error = remainder_bound(s, big_n, m);
    let radius = 0.25;
    let derivative_error = (0..32)
        .map(|j| {
            let z = s + Complex64::from_polar(radius, j as f64 * std::f64::consts::TAU / 32.0);
            remainder_bound(z, big_n, m)
        })
        .fold(0.0, f64::max)
        * 1.25
        / radius;

    Ok(ZetaValue {
        s,
        value,
        derivative,
        error,
        derivative_error,
        rounding_error: 8.0 * f64::EPSILON * (magnitude + value.norm() + derivative.norm()),
    })
}

/// `ζ(s)` to absolute accuracy `tol`, choosing `N` from the height of `s`.
pub fn zeta(s: Complex64, tol: f64) -> Result<ZetaValue> {
    let mut n = 20 + (s.im.abs() as usize);
    let m = 12;
    loop {
        let z = zeta_em(s, n, m)?;
        if z.error <= tol && z.derivative_error <= tol {
            return Ok(z);
        }
        if n > 1 << 22 {
            return Err(Error::Numeric(format!(
                "zeta({s}) did not reach tolerance {tol} (error {})",
                z.error
            )));
        }
        n *= 2;
    }
}
