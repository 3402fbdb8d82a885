//! Residues of `L(s, Π × Π̃)` for `Π = π|det|^{it/2} ⊞ π|det|^{−it/2}` at
//! `s = 1` (double pole) and `s = 1 ± it` (simple poles).
//!
//! With `L(s, π × π̃) = ζ_F(s) L(s, ad π)`, write `A = L(1, ad π)`,
//! `A' = L'(1, ad π)` and `ζ_F(s) = γ₋₁/(s − 1) + γ₀ + O(s − 1)`. Expanding
//! `L(s, π × π̃)² L(s + it, π × π̃) L(s − it, π × π̃)` around `s = 1` gives
//!
//! ```text
//! r₋₂   = γ₋₁² A² |L(1 + it)|²
//! r₋₁   = |L(1 + it)|² (2 γ₋₁ A (γ₀ A + γ₋₁ A') + 2 γ₋₁² A² Re L'/L(1 + it))
//! r₋₁^± = γ₋₁ A L(1 ± it)² L(1 ± 2it)
//! ```
//!
//! where `L(·)` abbreviates `L(·, π × π̃)`.

use num_complex::Complex64;

use super::zeta::{zeta, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::fields::FieldKind;
use crate::numeric::log_height;
use crate::reps::{CoefficientSource, Rep};

/// Edge-line values entering the residue formulas, each with the absolute
/// error bar supplied by the evaluator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ResidueInputs {
    pub gamma_minus1: Option<f64>,
    pub gamma_0: Option<f64>,
    pub l_ad_1: Option<f64>,
    pub l_ad_1_derivative: Option<f64>,
    pub l_plus: Option<Complex64>,
    pub l_minus: Option<Complex64>,
    pub l_2plus: Option<Complex64>,
    pub l_2minus: Option<Complex64>,
    pub logderiv_plus: Option<Complex64>,
    /// Largest absolute error among the supplied values.
    pub error: f64,
}

/// Resolved inputs: every value present.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedInputs {
    pub gamma_minus1: f64,
    pub gamma_0: f64,
    pub l_ad_1: f64,
    pub l_ad_1_derivative: f64,
    pub l_plus: Complex64,
    pub l_minus: Complex64,
    pub l_2plus: Complex64,
    pub l_2minus: Complex64,
    pub logderiv_plus: Complex64,
    pub error: f64,
}

impl ResidueInputs {
    pub fn resolve(&self) -> Result<ResolvedInputs> {
        fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
            v.ok_or_else(|| Error::Data(format!("residue input `{name}` was not supplied")))
        }
        Ok(ResolvedInputs {
            gamma_minus1: need(self.gamma_minus1, "gamma_minus1")?,
            gamma_0: need(self.gamma_0, "gamma_0")?,
            l_ad_1: need(self.l_ad_1, "L(1, ad pi)")?,
            l_ad_1_derivative: need(self.l_ad_1_derivative, "L'(1, ad pi)")?,
            l_plus: need(self.l_plus, "L(1+it)")?,
            l_minus: need(self.l_minus, "L(1-it)")?,
            l_2plus: need(self.l_2plus, "L(1+2it)")?,
            l_2minus: need(self.l_2minus, "L(1-2it)")?,
            logderiv_plus: need(self.logderiv_plus, "L'/L(1+it)")?,
            error: self.error,
        })
    }
}

/// `L(1 + it, π × π̃)` and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeValues {
    pub t: f64,
    pub value: Complex64,
    pub derivative: Complex64,
    pub error: f64,
}

/// Source of values of `L(s, π × π̃)` on the line `Re s = 1`.
pub trait EdgeEvaluator {
    fn edge(&self, rep: &Rep, t: f64) -> Result<EdgeValues>;
    fn residue_inputs(&self, rep: &Rep, t: f64) -> Result<ResidueInputs>;
}

/// Rigorous evaluator for the trivial representation over `Q`, where
/// `L(s, π × π̃) = ζ(s)` and `L(s, ad π) = 1`.
#[derive(Debug, Clone, Copy)]
pub struct ZetaEvaluator {
    pub tolerance: f64,
}

impl Default for ZetaEvaluator {
    fn default() -> Self {
        Self { tolerance: 1e-12 }
    }
}

impl ZetaEvaluator {
    fn check(rep: &Rep) -> Result<()> {
        match (rep.source(), rep.field().kind()) {
            (CoefficientSource::Trivial, FieldKind::Rationals) => Ok(()),
            _ => Err(Error::Domain(format!(
                "edge values of L(s, pi x pi~) are only computed for the trivial rep over Q (got {})",
                rep.label()
            ))),
        }
    }
}

impl EdgeEvaluator for ZetaEvaluator {
    fn edge(&self, rep: &Rep, t: f64) -> Result<EdgeValues> {
        Self::check(rep)?;
        let z = zeta(Complex64::new(1.0, t), self.tolerance)?;
        Ok(EdgeValues {
            t,
            value: z.value,
            derivative: z.derivative,
            error: z.error.max(z.derivative_error) + z.rounding_error,
        })
    }

    fn residue_inputs(&self, rep: &Rep, t: f64) -> Result<ResidueInputs> {
        Self::check(rep)?;
        let tol = self.tolerance;
        let plus = zeta(Complex64::new(1.0, t), tol)?;
        let minus = zeta(Complex64::new(1.0, -t), tol)?;
        let plus2 = zeta(Complex64::new(1.0, 2.0 * t), tol)?;
        let minus2 = zeta(Complex64::new(1.0, -2.0 * t), tol)?;
        let error = [plus, minus, plus2, minus2]
            .iter()
            .map(|z| z.error.max(z.derivative_error) + z.rounding_error)
            .fold(0.0, f64::max);
        Ok(ResidueInputs {
            gamma_minus1: Some(1.0),
            gamma_0: Some(EULER_GAMMA),
            l_ad_1: Some(1.0),
            l_ad_1_derivative: Some(0.0),
            l_plus: Some(plus.value),
            l_minus: Some(minus.value),
            l_2plus: Some(plus2.value),
            l_2minus: Some(minus2.value),
            logderiv_plus: Some(plus.derivative / plus.value),
            error,
        })
    }
}

/// Evaluator that hands back caller-supplied values.
#[derive(Debug, Clone, Default)]
pub struct SuppliedEvaluator {
    pub inputs: ResidueInputs,
    pub edge: Vec<EdgeValues>,
}

impl EdgeEvaluator for SuppliedEvaluator {
    fn edge(&self, _rep: &Rep, t: f64) -> Result<EdgeValues> {
        self.edge
            .iter()
            .find(|e| e.t == t)
            .copied()
            .ok_or_else(|| Error::Data(format!("no supplied edge value at t = {t}")))
    }

    fn residue_inputs(&self, _rep: &Rep, _t: f64) -> Result<ResidueInputs> {
        Ok(self.inputs)
    }
}

/// The four residues of `L(s, Π × Π̃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueData {
    pub t: f64,
    pub r_minus2: f64,
    pub r_minus1: f64,
    pub r_plus: Complex64,
    pub r_minus: Complex64,
    pub inputs: ResolvedInputs,
}

/// Assembles the residues from the evaluator's edge values.
pub fn residues(rep: &Rep, t: f64, evaluator: &dyn EdgeEvaluator) -> Result<ResidueData> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Argument(format!(
            "residues need a finite t != 0 (got {t}); at t = 0 the poles merge"
        )));
    }
    let inp = evaluator.residue_inputs(rep, t)?.resolve()?;
    let g1 = inp.gamma_minus1;
    let a = inp.l_ad_1;
    let l2 = inp.l_plus.norm_sqr();
    let r_minus2 = g1 * g1 * a * a * l2;
    let r_minus1 = l2
        * (2.0 * g1 * a * (inp.gamma_0 * a + g1 * inp.l_ad_1_derivative)
            + 2.0 * g1 * g1 * a * a * inp.logderiv_plus.re);
    let r_plus = inp.l_plus * inp.l_plus * inp.l_2plus * (g1 * a);
    let r_minus = inp.l_minus * inp.l_minus * inp.l_2minus * (g1 * a);
    Ok(ResidueData {
        t,
        r_minus2,
        r_minus1,
        r_plus,
        r_minus,
        inputs: inp,
    })
}

/// One row of the edge-bound sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoLiRow {
    pub t: f64,
    /// `|L(1 + it)| / log(|t| + 3)`
    pub l_ratio: f64,
    /// `|L'(1 + it)| / log(|t| + 3)²`
    pub l_prime_ratio: f64,
    /// `r₋₂ / (|L(1 + it)| log(|t| + 3))`
    pub r_minus2_ratio: f64,
    /// `|r₋₁| / (|L(1 + it)| log(|t| + 3)²)`
    pub r_minus1_ratio: f64,
    /// `max(|r₋₁^+|, |r₋₁^−|) / (|L(1 + it)| log(|t| + 3)²)`
    pub r_pm_ratio: f64,
    /// Set when some ratio in this row is a new running maximum.
    pub new_max: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GoLiTable {
    pub rows: Vec<GoLiRow>,
    pub max_l_ratio: f64,
    pub max_l_prime_ratio: f64,
    pub max_r_minus2_ratio: f64,
    pub max_r_minus1_ratio: f64,
    pub max_r_pm_ratio: f64,
}

/// Sweeps the edge bounds `L(1+it) ≪ log(|t|+3)`, `L'(1+it) ≪ log(|t|+3)²`
/// and the residue bounds derived from them. `t = 0` is skipped.
pub fn goli_bound_check(
    rep: &Rep,
    t_grid: &[f64],
    evaluator: &dyn EdgeEvaluator,
) -> Result<GoLiTable> {
    let mut table = GoLiTable::default();
    for &t in t_grid {
        if t == 0.0 {
            continue;
        }
        let edge = evaluator.edge(rep, t)?;
        let res = residues(rep, t, evaluator)?;
        let lh = log_height(t);
        let l_abs = edge.value.norm();
        let row_values = [
            l_abs / lh,
            edge.derivative.norm() / (lh * lh),
            res.r_minus2 / (l_abs * lh),
            res.r_minus1.abs() / (l_abs * lh * lh),
            res.r_plus.norm().max(res.r_minus.norm()) / (l_abs * lh * lh),
        ];
        let maxima = [
            &mut table.max_l_ratio,
            &mut table.max_l_prime_ratio,
            &mut table.max_r_minus2_ratio,
            &mut table.max_r_minus1_ratio,
            &mut table.max_r_pm_ratio,
        ];
        let mut new_max = false;
        for (m, v) in maxima.into_iter().zip(row_values) {
            if v > *m {
                *m = v;
                new_max = true;
            }
        }
        table.rows.push(GoLiRow {
            t,
            l_ratio: row_values[0],
            l_prime_ratio: row_values[1],
            r_minus2_ratio: row_values[2],
            r_minus1_ratio: row_values[3],
            r_pm_ratio: row_values[4],
            new_max,
        });
    }
    Ok(table)
}
