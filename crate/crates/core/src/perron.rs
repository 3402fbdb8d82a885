//! The smoothed sum `F(Y) = Σ λ_{Π×Π̃}(a) ψ(N(a)/Y)` and its prediction from
//! the residues of `L(s, Π × Π̃) ψ̂(s) Y^s`.

use num_complex::Complex64;

use crate::error::{arg, Error, Result};
use crate::fields::{FieldKind, PrimeTable};
use crate::lseries::{residues, EdgeEvaluator, RSCoefficients, ResidueData};
use crate::numeric::CompensatedSum;
use crate::reps::{build_auxiliary_pi, IsobaricSum, Rep};

/// A nonnegative bump equal to 1 on `[1, 2]` and supported in `(a, b)`.
pub trait Bump: Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// `(a, b)` with `0 < a < 1` and `b > 2`.
    fn support(&self) -> (f64, f64);
}

/// The bump glued from `e^{−1/x}` on each transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWeight {
    a: f64,
    b: f64,
}

impl Default for SmoothWeight {
    fn default() -> Self {
        Self { a: 0.5, b: 2.5 }
    }
}

fn glue(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-1.0 / u).exp()
    }
}

/// `S(u) = f(u) / (f(u) + f(1 − u))` and `S'(u)`, with `f(u) = e^{−1/u}`.
fn smooth_step(u: f64) -> (f64, f64) {
    if u <= 0.0 {
        return (0.0, 0.0);
    }
    if u >= 1.0 {
        return (1.0, 0.0);
    }
    let f = glue(u);
    let g = glue(1.0 - u);
    let df = f / (u * u);
    let dg = -g / ((1.0 - u) * (1.0 - u));
    let den = f + g;
    (f / den, (df * g - f * dg) / (den * den))
}

impl SmoothWeight {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0 && b > 2.0 && b.is_finite()) {
            return arg(format!("bump support needs 0 < a < 1 and 2 < b (got a = {a}, b = {b})"));
        }
        Ok(Self { a, b })
    }
}

impl Bump for SmoothWeight {
    fn value(&self, x: f64) -> f64 {
        if x <= 1.0 {
            smooth_step((x - self.a) / (1.0 - self.a)).0
        } else if x <= 2.0 {
            1.0
        } else {
            smooth_step((self.b - x) / (self.b - 2.0)).0
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        if x <= 1.0 {
            smooth_step((x - self.a) / (1.0 - self.a)).1 / (1.0 - self.a)
        } else if x <= 2.0 {
            0.0
        } else {
            -smooth_step((self.b - x) / (self.b - 2.0)).1 / (self.b - 2.0)
        }
    }

    fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

/// `ψ̂(s)` and `ψ̂'(s)` with a quadrature error bound covering both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinValue {
    pub s: Complex64,
    pub value: Complex64,
    pub derivative: Complex64,
    pub error: f64,
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
/// Gauss weights for the odd-indexed Kronrod nodes (7-point rule).
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Gauss–Kronrod 7/15 on `[lo, hi]` for a pair of complex integrands.
fn gk15<F: Fn(f64) -> [Complex64; 2]>(f: &F, lo: f64, hi: f64) -> ([Complex64; 2], f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut kron = [Complex64::new(0.0, 0.0); 2];
    let mut gauss = [Complex64::new(0.0, 0.0); 2];
    for (i, (&x, &wk)) in GK_NODES.iter().zip(&KRONROD_WEIGHTS).enumerate() {
        let points: &[f64] = if x == 0.0 { &[0.0] } else { &[-x, x] };
        for &xi in points {
            let v = f(c + h * xi);
            for j in 0..2 {
                kron[j] += v[j] * wk;
                if i % 2 == 1 {
                    gauss[j] += v[j] * GAUSS_WEIGHTS[i / 2];
                }
            }
        }
    }
    let err = (0..2)
        .map(|j| ((kron[j] - gauss[j]) * h).norm())
        .fold(0.0, f64::max);
    ([kron[0] * h, kron[1] * h], err)
}

/// Bisects until each piece meets `tol` per unit length, or its error is at
/// the rounding level of its own value.
fn adaptive<F: Fn(f64) -> [Complex64; 2]>(
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
    depth: u32,
) -> Result<([Complex64; 2], f64)> {
    let (v, err) = gk15(f, lo, hi);
    let rounding = 64.0 * f64::EPSILON * (v[0].norm() + v[1].norm());
    if err <= tol * (hi - lo) || err <= rounding {
        return Ok((v, err));
    }
    if depth == 0 {
        return Err(Error::Numeric(format!(
            "Mellin quadrature did not converge on [{lo}, {hi}] (estimate {err:e}, target {tol:e})"
        )));
    }
    let mid = 0.5 * (lo + hi);
    let (l, el) = adaptive(f, lo, mid, tol, depth - 1)?;
    let (r, er) = adaptive(f, mid, hi, tol, depth - 1)?;
    Ok(([l[0] + r[0], l[1] + r[1]], el + er))
}

/// `∫_1^2 x^{s−1} dx` and its `s`-derivative.
fn plateau(s: Complex64) -> (Complex64, Complex64) {
    let ln2 = std::f64::consts::LN_2;
    if s.norm() < 1e-6 {
        // Taylor expansion of (2^s − 1)/s around 0.
        let v = ln2 + s * ln2 * ln2 / 2.0 + s * s * ln2.powi(3) / 6.0;
        let d = Complex64::new(ln2 * ln2 / 2.0, 0.0) + s * ln2.powi(3) / 3.0;
        return (v, d);
    }
    let two_s = (s * ln2).exp();
    let v = (two_s - 1.0) / s;
    let d = two_s * ln2 / s - (two_s - 1.0) / (s * s);
    (v, d)
}

/// `ψ̂(s) = ∫ ψ(x) x^{s−1} dx` and `ψ̂'(s) = ∫ ψ(x) x^{s−1} log x dx`.
///
/// The plateau is integrated in closed form; the two transitions by
/// adaptive Gauss–Kronrod.
pub fn mellin(psi: &dyn Bump, s: Complex64) -> Result<MellinValue> {
    let (a, b) = psi.support();
    let integrand = |x: f64| {
        let lx = x.ln();
        let v = (s - 1.0) * lx;
        let w = v.exp() * psi.value(x);
        [w, w * lx]
    };
    let tol = 1e-14;
    let (left, el) = adaptive(&integrand, a, 1.0, tol, 30)?;
    let (right, er) = adaptive(&integrand, 2.0, b, tol, 30)?;
    let (pv, pd) = plateau(s);
    Ok(MellinValue {
        s,
        value: left[0] + right[0] + pv,
        derivative: left[1] + right[1] + pd,
        error: el + er,
    })
}

fn check_t(t: f64) -> Result<()> {
    if t == 0.0 || !t.is_finite() {
        return arg(format!(
            "t must be finite and nonzero (got {t}); at t = 0 the poles collide"
        ));
    }
    Ok(())
}

/// `F(Y) = Σ_a λ_{Π×Π̃}(a) ψ(N(a)/Y)` over ideals built from unramified primes.
pub fn f_direct(pi: &IsobaricSum, table: &PrimeTable, y: f64, psi: &dyn Bump) -> Result<f64> {
    let (a, b) = psi.support();
    let hi = (b * y).floor() as u64;
    let lo = (a * y).floor() as u64 + 1;
    if hi < lo.max(1) {
        return Ok(0.0);
    }
    let coeffs = RSCoefficients::new(pi, table, hi)?;
    let sum: CompensatedSum = (lo.max(1)..=hi)
        .map(|m| coeffs.norm_coefficient(m) * psi.value(m as f64 / y))
        .collect();
    Ok(sum.value())
}

/// `Σ_{Y ≤ N(p) ≤ 2Y} λ_{Π×Π̃}(p)`, a lower bound for `F(Y)`.
pub fn plateau_minorant(pi: &IsobaricSum, table: &PrimeTable, y: f64) -> Result<f64> {
    let lo = (y.ceil() as u64).max(2);
    let hi = (2.0 * y).floor() as u64;
    if hi < lo {
        return Ok(0.0);
    }
    let mut sum = CompensatedSum::new();
    for ideal in table.primes_in_norm_range(pi.field(), lo, hi)? {
        if !pi.is_ramified_at(ideal.p) {
            sum.add(crate::lseries::rs_lambda_prime(pi, &ideal)?);
        }
    }
    Ok(sum.value())
}

/// `Σ_{Y ≤ a^{2n} ≤ 2Y} λ_{Π×Π̃}(a^{2n})` over `Q`, where each term is at least 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerMinorant {
    pub sum: f64,
    pub count: u64,
}

pub fn brumley_minorant(
    pi: &IsobaricSum,
    table: &PrimeTable,
    y: f64,
    n: u32,
) -> Result<PowerMinorant> {
    if pi.field().kind() != FieldKind::Rationals {
        return Err(Error::Domain(
            "the power minorant is implemented over Q only".into(),
        ));
    }
    if n == 0 {
        return arg("n must be at least 1");
    }
    let hi = (2.0 * y).floor() as u64;
    let coeffs = RSCoefficients::new(pi, table, hi.max(1))?;
    let e = 2 * n;
    let mut sum = CompensatedSum::new();
    let mut count = 0;
    let mut a: u64 = 1;
    loop {
        let Some(m) = a.checked_pow(e) else { break };
        if m > hi {
            break;
        }
        if m as f64 >= y && crate::reps::prime_divisors(a).iter().all(|&p| !pi.is_ramified_at(p)) {
            sum.add(coeffs.norm_coefficient(m));
            count += 1;
        }
        a += 1;
    }
    Ok(PowerMinorant {
        sum: sum.value(),
        count,
    })
}

/// The four residue terms and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronPrediction {
    pub value: f64,
    /// `r₋₂ ψ̂(1) Y log Y`
    pub leading: f64,
    /// `(r₋₁ ψ̂(1) + r₋₂ ψ̂'(1)) Y`
    pub linear: f64,
    /// `r₋₁^+ ψ̂(1 + it) Y^{1+it}`
    pub plus: Complex64,
    /// `r₋₁^− ψ̂(1 − it) Y^{1−it}`
    pub minus: Complex64,
}

pub fn f_predicted(res: &ResidueData, y: f64, t: f64, psi: &dyn Bump) -> Result<PerronPrediction> {
    check_t(t)?;
    if res.t != t {
        return Err(Error::Data(format!(
            "residue data was computed for t = {} but the prediction asks for t = {t}",
            res.t
        )));
    }
    let one = mellin(psi, Complex64::new(1.0, 0.0))?;
    let up = mellin(psi, Complex64::new(1.0, t))?;
    let down = mellin(psi, Complex64::new(1.0, -t))?;
    let ly = y.ln();
    let leading = res.r_minus2 * one.value.re * y * ly;
    let linear = (res.r_minus1 * one.value.re + res.r_minus2 * one.derivative.re) * y;
    let y_it = Complex64::from_polar(y, t * ly);
    let plus = res.r_plus * up.value * y_it;
    let minus = res.r_minus * down.value * y_it.conj();
    let total = Complex64::new(leading + linear, 0.0) + plus + minus;
    if total.im.abs() > 1e-8 * total.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::Numeric(format!(
            "prediction is not real (imaginary part {:e} of {:e}); residue data is inconsistent",
            total.im,
            total.re
        )));
    }
    Ok(PerronPrediction {
        value: total.re,
        leading,
        linear,
        plus,
        minus,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronRow {
    pub y: f64,
    pub direct: f64,
    pub predicted: PerronPrediction,
    pub abs_diff: f64,
    pub diff_over_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerronTable {
    pub t: f64,
    pub residues: ResidueData,
    pub rows: Vec<PerronRow>,
    /// Whether `|diff|/Y` strictly decreases along the list; `None` for
    /// fewer than two rows.
    pub decreasing: Option<bool>,
}

/// Direct sum versus residue prediction for `Π = π|det|^{it/2} ⊞ π|det|^{−it/2}`.
pub fn perron_discrepancy(
    rep: &Rep,
    t: f64,
    y_list: &[f64],
    psi: &dyn Bump,
    table: &PrimeTable,
    evaluator: &dyn EdgeEvaluator,
) -> Result<PerronTable> {
    check_t(t)?;
    let res = residues(rep, t, evaluator)?;
    let pi = build_auxiliary_pi(rep, t)?;
    let mut rows = Vec::with_capacity(y_list.len());
    for &y in y_list {
        let direct = f_direct(&pi, table, y, psi)?;
        let predicted = f_predicted(&res, y, t, psi)?;
        let abs_diff = (direct - predicted.value).abs();
        rows.push(PerronRow {
            y,
            direct,
            predicted,
            abs_diff,
            diff_over_y: abs_diff / y,
        });
    }
    let decreasing = (rows.len() >= 2).then(|| {
        rows.windows(2)
            .all(|w| w[1].diff_over_y < w[0].diff_over_y)
    });
    Ok(PerronTable {
        t,
        residues: res,
        rows,
        decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::NumberField;
    use crate::lseries::ZetaEvaluator;

    #[test]
    fn bump_shape() {
        let psi = SmoothWeight::default();
        assert_eq!(psi.value(0.0), 0.0);
        assert_eq!(psi.value(0.5), 0.0);
        assert_eq!(psi.value(2.5), 0.0);
        assert_eq!(psi.value(1.0), 1.0);
        assert_eq!(psi.value(1.7), 1.0);
        assert_eq!(psi.value(2.0), 1.0);
        for i in 0..=1000 {
            let x = 3.0 * i as f64 / 1000.0;
            let v = psi.value(x);
            assert!((0.0..=1.0).contains(&v));
        }
        assert!(SmoothWeight::new(1.2, 3.0).is_err());
        assert!(SmoothWeight::new(0.5, 1.9).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let psi = SmoothWeight::default();
        let h = 1e-6;
        for i in 1..200 {
            let x = 0.5 + 2.0 * i as f64 / 200.0;
            let fd = (psi.value(x + h) - psi.value(x - h)) / (2.0 * h);
            assert!((fd - psi.derivative(x)).abs() < 1e-6, "x = {x}");
        }
        // second differences stay bounded: no kinks at the gluing points
        let h = 1e-4;
        for x in [0.5, 1.0, 2.0, 2.5] {
            let second = (psi.value(x + h) - 2.0 * psi.value(x) + psi.value(x - h)) / (h * h);
            assert!(second.abs() < 100.0, "x = {x}: {second}");
        }
    }

    #[test]
    fn mellin_at_one_is_the_mass() {
        let psi = SmoothWeight::default();
        let m = mellin(&psi, Complex64::new(1.0, 0.0)).unwrap();
        assert!(m.value.re > 1.0 && m.value.re < 2.0);
        // Symmetric transitions of width 1/2 each contribute 1/4.
        assert!((m.value.re - 1.5).abs() < 1e-12, "{}", m.value.re);
        // Midpoint-rule oracle at two resolutions.
        let riemann = |n: usize| -> f64 {
            let h = 2.0 / n as f64;
            (0..n).map(|i| psi.value(0.5 + (i as f64 + 0.5) * h) * h).sum()
        };
        assert!((riemann(200_000) - m.value.re).abs() < 1e-10);
        assert!(m.error < 1e-12);
    }

    #[test]
    fn mellin_derivative_matches_difference_quotient() {
        let psi = SmoothWeight::default();
        let s = Complex64::new(1.0, 3.0);
        let h = 1e-5;
        let up = mellin(&psi, s + h).unwrap().value;
        let down = mellin(&psi, s - h).unwrap().value;
        let d = mellin(&psi, s).unwrap().derivative;
        assert!(((up - down) / (2.0 * h) - d).norm() < 1e-8);
    }

    #[test]
    fn vertical_decay() {
        let psi = SmoothWeight::default();
        let one = mellin(&psi, Complex64::new(1.0, 0.0)).unwrap().value.re;
        // Frozen against an independent 30-digit quadrature. The e^{−1/x}
        // glue with transition width 1/2 decays like exp(−c sqrt τ), so the
        // ratio at τ = 30 is far above 10⁻⁶.
        let at30 = mellin(&psi, Complex64::new(1.0, 30.0)).unwrap();
        assert!((at30.value.norm() / one - 0.026_100_646_086_327_70).abs() < 1e-12);
        assert!(at30.value.norm() / one > 1e-6);

        // |ψ̂(1 + iτ)| <= K_m / (1 + τ)^m: fit K_m on τ <= 250, past the
        // point where exp(−c sqrt τ) τ^4 peaks, then check up to τ = 500.
        let grid: Vec<(f64, f64)> = (0..=1000)
            .map(|k| {
                let tau = k as f64 * 0.5;
                (tau, mellin(&psi, Complex64::new(1.0, tau)).unwrap().value.norm())
            })
            .collect();
        for m in 1..=4 {
            let k_m = grid
                .iter()
                .filter(|(tau, _)| *tau <= 250.0)
                .map(|(tau, v)| v * (1.0 + tau).powi(m))
                .fold(0.0, f64::max);
            for (tau, v) in grid.iter().filter(|(tau, _)| *tau > 250.0) {
                assert!(*v <= k_m / (1.0 + tau).powi(m), "m = {m}, tau = {tau}");
            }
        }
    }

    #[test]
    fn mellin_is_linear() {
        struct Doubled(SmoothWeight);
        impl Bump for Doubled {
            fn value(&self, x: f64) -> f64 {
                2.0 * self.0.value(x)
            }
            fn derivative(&self, x: f64) -> f64 {
                2.0 * self.0.derivative(x)
            }
            fn support(&self) -> (f64, f64) {
                self.0.support()
            }
        }
        let psi = SmoothWeight::default();
        let s = Complex64::new(1.0, 5.0);
        let one = mellin(&psi, s).unwrap();
        let two = mellin(&Doubled(psi), s).unwrap();
        // plateau is added once in closed form; the transitions double
        let (pv, _) = plateau(s);
        assert!(((two.value - pv) - 2.0 * (one.value - pv)).norm() < 1e-13);
    }

    #[test]
    fn f_direct_basic_properties() {
        let table = PrimeTable::new(100_000);
        let psi = SmoothWeight::default();
        let pi = build_auxiliary_pi(&Rep::trivial(NumberField::rationals()), 1.0).unwrap();
        assert_eq!(f_direct(&pi, &table, 0.3, &psi).unwrap(), 0.0);
        for y in [10.0, 100.0, 1000.0] {
            let f = f_direct(&pi, &table, y, &psi).unwrap();
            assert!(f >= plateau_minorant(&pi, &table, y).unwrap());
            assert!(f >= brumley_minorant(&pi, &table, y, 1).unwrap().sum);
        }
    }

    #[test]
    fn power_minorant_terms_are_at_least_one() {
        let table = PrimeTable::new(100_000);
        let pi = build_auxiliary_pi(&Rep::trivial(NumberField::rationals()), 2.0).unwrap();
        let m = brumley_minorant(&pi, &table, 1e4, 1).unwrap();
        assert_eq!(m.count, 42); // 100 <= a <= 141
        assert!(m.sum >= m.count as f64);
    }

    #[test]
    fn prediction_checks() {
        let rep = Rep::trivial(NumberField::rationals());
        let res = residues(&rep, 1.0, &ZetaEvaluator::default()).unwrap();
        let psi = SmoothWeight::default();
        assert!(f_predicted(&res, 1e4, 0.0, &psi).is_err());
        assert!(matches!(f_predicted(&res, 1e4, 2.0, &psi), Err(Error::Data(_))));
        let p = f_predicted(&res, 1e4, 1.0, &psi).unwrap();
        assert!((p.plus - p.minus.conj()).norm() < 1e-9 * p.plus.norm());
        let mut zero = res;
        zero.r_minus2 = 0.0;
        zero.r_minus1 = 0.0;
        zero.r_plus = Complex64::new(0.0, 0.0);
        zero.r_minus = Complex64::new(0.0, 0.0);
        assert_eq!(f_predicted(&zero, 1e4, 1.0, &psi).unwrap().value, 0.0);
        let mut corrupt = res;
        corrupt.r_minus = res.r_plus;
        assert!(matches!(f_predicted(&corrupt, 1e4, 1.0, &psi), Err(Error::Numeric(_))));
    }

    #[test]
    fn leading_term_dominates_as_y_grows() {
        let rep = Rep::trivial(NumberField::rationals());
        let res = residues(&rep, 1.0, &ZetaEvaluator::default()).unwrap();
        let psi = SmoothWeight::default();
        // The Y^{±it} terms oscillate, so the ratio itself need not be
        // monotone; its envelope (|linear| + |plus| + |minus|) / leading is.
        let envelopes: Vec<f64> = [1e4, 1e5, 1e6]
            .iter()
            .map(|&y| {
                let p = f_predicted(&res, y, 1.0, &psi).unwrap();
                assert!((p.value / p.leading - 1.0).abs() <= (p.linear.abs() + p.plus.norm() + p.minus.norm()) / p.leading);
                (p.linear.abs() + p.plus.norm() + p.minus.norm()) / p.leading
            })
            .collect();
        assert!(envelopes[0] > envelopes[1] && envelopes[1] > envelopes[2], "{envelopes:?}");
    }
}
