//! Archimedean conductor calculus.
//!
//! Irreducible representations of the Weil group of `R` or `C`, their
//! Γ-factors, the Iwaniec–Sarnak conductor `∏ (1 + |it + μ|)^{deg}`, tensor
//! products, and the inequalities bounding the conductor of a tensor product
//! by the conductors of its factors.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{arg, Error, Result};
use crate::fields::FieldKind;
use crate::reps::{CoefficientSource, Rep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Complex,
}

impl Place {
    /// `[F_v : R]`
    pub fn degree(self) -> u32 {
        match self {
            Place::Real => 1,
            Place::Complex => 2,
        }
    }
}

/// An irreducible representation of `W_C = C^×` or `W_R = C^× ∪ jC^×`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeilParameter {
    /// `χ_{k,ν}(z) = (z/|z|)^k |z|^{2ν}` of `C^×`.
    ComplexChar { k: i64, nu: Complex64 },
    /// A character of `W_R` restricting to `χ_{0,ν}`, with `ε = φ(j)`.
    RealOneDim { epsilon: i8, nu: Complex64 },
    /// The induction of `χ_{k,ν}` from `C^×` to `W_R`, `k >= 1`.
    RealTwoDim { k: i64, nu: Complex64 },
}

impl fmt::Display for WeilParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::ComplexChar { k, nu } => write!(f, "chi_C(k={k}, nu={nu})"),
            Self::RealOneDim { epsilon, nu } => write!(f, "chi_R(eps={epsilon:+}, nu={nu})"),
            Self::RealTwoDim { k, nu } => write!(f, "Ind(k={k}, nu={nu})"),
        }
    }
}

impl WeilParameter {
    pub fn complex_char(k: i64, nu: Complex64) -> Result<Self> {
        Self::ComplexChar { k, nu }.validated()
    }

    pub fn real_one_dim(epsilon: i8, nu: Complex64) -> Result<Self> {
        Self::RealOneDim { epsilon, nu }.validated()
    }

    pub fn real_two_dim(k: i64, nu: Complex64) -> Result<Self> {
        Self::RealTwoDim { k, nu }.validated()
    }

    /// Checks the structural invariants and `|Re ν| <= 1/2`.
    pub fn validated(self) -> Result<Self> {
        self.check_structure()?;
        if self.nu().re.abs() > 0.5 {
            return arg(format!(
                "{self} violates the Jacquet-Shalika bound |Re nu| <= 1/2"
            ));
        }
        Ok(self)
    }

    fn check_structure(&self) -> Result<()> {
        if !(self.nu().re.is_finite() && self.nu().im.is_finite()) {
            return arg("nu must be finite");
        }
        match *self {
            Self::RealOneDim { epsilon, .. } if epsilon != 1 && epsilon != -1 => {
                arg(format!("epsilon must be +1 or -1 (got {epsilon})"))
            }
            Self::RealTwoDim { k, .. } if k < 1 => {
                arg(format!("two-dimensional parameters need k >= 1 (got {k})"))
            }
            _ => Ok(()),
        }
    }

    pub fn place(&self) -> Place {
        match self {
            Self::ComplexChar { .. } => Place::Complex,
            _ => Place::Real,
        }
    }

    pub fn dim(&self) -> u32 {
        match self {
            Self::RealTwoDim { .. } => 2,
            _ => 1,
        }
    }

    pub fn nu(&self) -> Complex64 {
        match *self {
            Self::ComplexChar { nu, .. } | Self::RealOneDim { nu, .. } | Self::RealTwoDim { nu, .. } => nu,
        }
    }

    /// `k`, with `k = 1 − ε` for one-dimensional real parameters.
    pub fn k(&self) -> i64 {
        match *self {
            Self::ComplexChar { k, .. } | Self::RealTwoDim { k, .. } => k,
            Self::RealOneDim { epsilon, .. } => 1 - epsilon as i64,
        }
    }

    /// The Γ-shift `μ = ν + |k|/2`.
    pub fn mu(&self) -> Complex64 {
        self.nu() + self.k().abs() as f64 / 2.0
    }

    pub fn dual(&self) -> Self {
        match *self {
            Self::ComplexChar { k, nu } => Self::ComplexChar { k: -k, nu: -nu },
            Self::RealOneDim { epsilon, nu } => Self::RealOneDim { epsilon, nu: -nu },
            Self::RealTwoDim { k, nu } => Self::RealTwoDim { k, nu: -nu },
        }
    }

    /// `φ ⊗ |·|^{it}` on the place's norm.
    pub fn twist(&self, t: f64) -> Self {
        let shift = Complex64::new(0.0, t);
        match *self {
            Self::ComplexChar { k, nu } => Self::ComplexChar { k, nu: nu + shift },
            Self::RealOneDim { epsilon, nu } => Self::RealOneDim { epsilon, nu: nu + shift },
            Self::RealTwoDim { k, nu } => Self::RealTwoDim { k, nu: nu + shift },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaKind {
    R,
    C,
}

/// `Γ_R(s + μ)` or `Γ_C(s + μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub kind: GammaKind,
    pub shift: Complex64,
}

impl GammaFactor {
    /// Exponent of `1 + |it + μ|` in the conductor.
    pub fn degree(&self) -> u32 {
        match self.kind {
            GammaKind::R => 1,
            GammaKind::C => 2,
        }
    }

    pub fn conductor(&self, t: f64) -> f64 {
        (1.0 + (Complex64::new(0.0, t) + self.shift).norm()).powi(self.degree() as i32)
    }
}

fn canonical_order(list: &mut [GammaFactor]) {
    list.sort_by(|a, b| {
        a.kind
            .cmp(&b.kind)
            .then(a.shift.re.total_cmp(&b.shift.re))
            .then(a.shift.im.total_cmp(&b.shift.im))
    });
}

pub fn gamma_factors(phi: &WeilParameter) -> Vec<GammaFactor> {
    let kind = match phi {
        WeilParameter::RealOneDim { .. } => GammaKind::R,
        _ => GammaKind::C,
    };
    vec![GammaFactor {
        kind,
        shift: phi.mu(),
    }]
}

/// `∏ (1 + |it + μ|)^{deg}` over a list of Γ-factors.
pub fn conductor_of(t: f64, factors: &[GammaFactor]) -> f64 {
    factors.iter().map(|g| g.conductor(t)).product()
}

pub fn conductor_v(t: f64, phi: &WeilParameter) -> f64 {
    conductor_of(t, &gamma_factors(phi))
}

/// Decomposition of `φ ⊗ φ'` into irreducibles.
///
/// For two-dimensional real parameters with `k >= k'` the product is the
/// induction of `χ_{k+k', ν+ν'}` plus the induction of `χ_{k−k', ν+ν'}`; the
/// latter splits into two characters with signs `±1` when `k = k'`.
pub fn tensor(phi: &WeilParameter, psi: &WeilParameter) -> Result<Vec<WeilParameter>> {
    use WeilParameter::*;
    phi.check_structure()?;
    psi.check_structure()?;
    let nu = phi.nu() + psi.nu();
    Ok(match (*phi, *psi) {
        (ComplexChar { k, .. }, ComplexChar { k: k2, .. }) => vec![ComplexChar { k: k + k2, nu }],
        (RealOneDim { epsilon, .. }, RealOneDim { epsilon: e2, .. }) => {
            vec![RealOneDim { epsilon: epsilon * e2, nu }]
        }
        (RealOneDim { .. }, RealTwoDim { k, .. }) | (RealTwoDim { k, .. }, RealOneDim { .. }) => {
            vec![RealTwoDim { k, nu }]
        }
        (RealTwoDim { k, .. }, RealTwoDim { k: k2, .. }) => {
            let sum = RealTwoDim { k: k + k2, nu };
            if k == k2 {
                vec![sum, RealOneDim { epsilon: 1, nu }, RealOneDim { epsilon: -1, nu }]
            } else {
                vec![sum, RealTwoDim { k: (k - k2).abs(), nu }]
            }
        }
        _ => {
            return arg(format!(
                "cannot tensor parameters of different places: {phi} and {psi}"
            ))
        }
    })
}

/// Γ-factors of `φ ⊗ φ'` in canonical order. The reducible pair arising when
/// `k = k'` is written as the single `Γ_C(s + ν + ν')` it multiplies out to
/// (up to an exponential factor), so the conductor is continuous in `k − k'`.
pub fn tensor_gamma_factors(phi: &WeilParameter, psi: &WeilParameter) -> Result<Vec<GammaFactor>> {
    let parts = tensor(phi, psi)?;
    let mut out = Vec::new();
    let degenerate = matches!(
        (phi, psi),
        (WeilParameter::RealTwoDim { k, .. }, WeilParameter::RealTwoDim { k: k2, .. }) if k == k2
    );
    for part in &parts {
        match part {
            WeilParameter::RealOneDim { epsilon: 1, nu } if degenerate => out.push(GammaFactor {
                kind: GammaKind::C,
                shift: *nu,
            }),
            WeilParameter::RealOneDim { epsilon: -1, .. } if degenerate => {}
            other => out.extend(gamma_factors(other)),
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

pub fn tensor_conductor(t: f64, phi: &WeilParameter, psi: &WeilParameter) -> Result<f64> {
    Ok(conductor_of(t, &tensor_gamma_factors(phi, psi)?))
}

/// Expands each `Γ_C(s + μ)` into `Γ_R(s + μ) Γ_R(s + μ + 1)` and returns the
/// sorted `Γ_R` shifts.
pub fn real_shift_multiset(factors: &[GammaFactor]) -> Vec<Complex64> {
    let mut shifts: Vec<Complex64> = factors
        .iter()
        .flat_map(|g| match g.kind {
            GammaKind::R => vec![g.shift],
            GammaKind::C => vec![g.shift, g.shift + 1.0],
        })
        .collect();
    shifts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    shifts
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionCheck {
    pub lhs: f64,
    /// `q(φ)^{d'} q(φ')^{d} (1 + |t|)^{d d' [F_v:R]}`, without the constant.
    pub rhs: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

/// `q_v(it; φ⊗φ') <= C q_v(φ)^{d'} q_v(φ')^{d} (1 + |t|)^{dd'[F_v:R]}`.
pub fn check_reduction_inequality(
    t: f64,
    phi: &WeilParameter,
    psi: &WeilParameter,
    c: f64,
) -> Result<ReductionCheck> {
    phi.validated()?;
    psi.validated()?;
    let lhs = tensor_conductor(t, phi, psi)?;
    let d = phi.dim() as i32;
    let d2 = psi.dim() as i32;
    let rhs = conductor_v(0.0, phi).powi(d2)
        * conductor_v(0.0, psi).powi(d)
        * (1.0 + t.abs()).powi(d * d2 * phi.place().degree() as i32);
    let ratio = lhs / rhs;
    Ok(ReductionCheck {
        lhs,
        rhs,
        ratio,
        satisfied: lhs <= c * rhs,
    })
}

/// The two inequalities `(|k|/2 + |ν|)² <= 3(k²/4 + |ν|²)` and
/// `k²/4 + |ν|² <= 3|μ|²` used to compare `|k|/2 + |ν|` with `|μ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtThreeClaim {
    pub first_lhs: f64,
    pub first_rhs: f64,
    pub second_lhs: f64,
    pub second_rhs: f64,
    pub first_holds: bool,
    pub second_holds: bool,
}

/// `None` for `k = 0`, where the claim is not needed.
pub fn sqrt3_claim(k: i64, nu: Complex64) -> Option<SqrtThreeClaim> {
    if k == 0 {
        return None;
    }
    let half_k = k.abs() as f64 / 2.0;
    let nu_abs = nu.norm();
    let mid = half_k * half_k + nu.norm_sqr();
    let first_lhs = (half_k + nu_abs).powi(2);
    let second_rhs = 3.0 * (nu + half_k).norm_sqr();
    Some(SqrtThreeClaim {
        first_lhs,
        first_rhs: 3.0 * mid,
        second_lhs: mid,
        second_rhs,
        first_holds: first_lhs <= 3.0 * mid,
        second_holds: mid <= second_rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoringCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `ab + bc + ca + abc` with `a = |μ|, b = |μ'|, c = |t|`: the exact
    /// difference `rhs − lhs`, a sum of nonnegative products.
    pub slack: f64,
    pub satisfied: bool,
}

/// `1 + |t| + |μ| + |μ'| <= (1 + |μ|)(1 + |μ'|)(1 + |t|)`.
pub fn check_boring(t: f64, mu: Complex64, mu2: Complex64) -> BoringCheck {
    let (a, b, c) = (mu.norm(), mu2.norm(), t.abs());
    let slack = a * b + b * c + c * a + a * b * c;
    BoringCheck {
        lhs: 1.0 + c + a + b,
        rhs: (1.0 + a) * (1.0 + b) * (1.0 + c),
        slack,
        satisfied: slack >= 0.0,
    }
}

/// The `k = k'` case computed both ways.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateComparison {
    pub pair_shifts: Vec<Complex64>,
    pub canonical_shifts: Vec<Complex64>,
    pub pair_conductor: f64,
    pub canonical_conductor: f64,
}

pub fn degenerate_comparison(k: i64, nu: Complex64, nu2: Complex64, t: f64) -> Result<DegenerateComparison> {
    let phi = WeilParameter::RealTwoDim { k, nu };
    let psi = WeilParameter::RealTwoDim { k, nu: nu2 };
    let parts = tensor(&phi, &psi)?;
    let small: Vec<GammaFactor> = parts[1..].iter().flat_map(gamma_factors).collect();
    let canonical: Vec<GammaFactor> = tensor_gamma_factors(&phi, &psi)?
        .into_iter()
        .filter(|g| (g.shift - (nu + nu2)).norm() < 1e-15 && g.kind == GammaKind::C)
        .take(1)
        .collect();
    Ok(DegenerateComparison {
        pair_shifts: real_shift_multiset(&small),
        canonical_shifts: real_shift_multiset(&canonical),
        pair_conductor: conductor_of(t, &small),
        canonical_conductor: conductor_of(t, &canonical),
    })
}

/// Archimedean and finite conductor data of a representation of `GL_n(A_F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductorData {
    pub n: u32,
    pub field_degree: u32,
    /// Opaque finite conductor `q_f`.
    pub finite: f64,
    /// Weil parameters at each archimedean place; dimensions sum to `n`.
    pub places: Vec<Vec<WeilParameter>>,
}

impl ConductorData {
    pub fn new(n: u32, field_degree: u32, finite: f64, places: Vec<Vec<WeilParameter>>) -> Result<Self> {
        if places.is_empty() {
            return Err(Error::Data("no archimedean parameters supplied".into()));
        }
        if !(finite >= 1.0) {
            return Err(Error::Data(format!("finite conductor must be >= 1 (got {finite})")));
        }
        let mut degree = 0;
        for (i, params) in places.iter().enumerate() {
            if params.is_empty() {
                return Err(Error::Data(format!("archimedean place {i} has no parameters")));
            }
            let dims: u32 = params.iter().map(|p| p.dim()).sum();
            if dims != n {
                return Err(Error::Data(format!(
                    "parameters at place {i} have total dimension {dims}, expected {n}"
                )));
            }
            let place = params[0].place();
            if params.iter().any(|p| p.place() != place) {
                return Err(Error::Data(format!("place {i} mixes real and complex parameters")));
            }
            for p in params {
                p.validated()?;
            }
            degree += place.degree();
        }
        if degree != field_degree {
            return Err(Error::Data(format!(
                "places account for degree {degree}, field has degree {field_degree}"
            )));
        }
        Ok(Self {
            n,
            field_degree,
            finite,
            places,
        })
    }

    /// Data for the built-in representations.
    pub fn from_rep(rep: &Rep) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        let field = rep.field();
        match rep.source() {
            CoefficientSource::Trivial => {
                let places = match field.kind() {
                    FieldKind::Rationals => vec![vec![WeilParameter::RealOneDim { epsilon: 1, nu: zero }]],
                    FieldKind::Quadratic(d) if d < 0 => {
                        vec![vec![WeilParameter::ComplexChar { k: 0, nu: zero }]]
                    }
                    FieldKind::Quadratic(_) => vec![
                        vec![WeilParameter::RealOneDim { epsilon: 1, nu: zero }],
                        vec![WeilParameter::RealOneDim { epsilon: 1, nu: zero }],
                    ],
                };
                Self::new(1, field.degree(), 1.0, places)
            }
            CoefficientSource::DirichletCharacter(chi) => {
                let epsilon = if chi.value(chi.modulus() - 1).re < 0.0 { -1 } else { 1 };
                Self::new(
                    1,
                    1,
                    chi.modulus() as f64,
                    vec![vec![WeilParameter::RealOneDim { epsilon, nu: zero }]],
                )
            }
            CoefficientSource::HoloNewform(form) => Self::new(
                2,
                1,
                form.level() as f64,
                vec![vec![WeilParameter::RealTwoDim {
                    k: form.weight() as i64 - 1,
                    nu: zero,
                }]],
            ),
            CoefficientSource::Formal { .. } => Err(Error::Data(format!(
                "no conductor data for formal descriptor {}",
                rep.label()
            ))),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            places: self
                .places
                .iter()
                .map(|ps| ps.iter().map(|p| p.dual()).collect())
                .collect(),
            ..self.clone()
        }
    }

    /// `log q_∞(it; π)`.
    pub fn log_q_inf(&self, t: f64) -> f64 {
        self.places
            .iter()
            .flatten()
            .map(|p| conductor_v(t, p).ln())
            .sum()
    }

    /// `log q(π) = log q_f + log q_∞(0; π)`.
    pub fn log_q(&self) -> f64 {
        self.finite.ln() + self.log_q_inf(0.0)
    }
}

/// `log q_∞(it; π × π')`, the sum over places and parameter pairs.
pub fn log_rs_q_inf(t: f64, a: &ConductorData, b: &ConductorData) -> Result<f64> {
    if a.places.len() != b.places.len() {
        return arg("representations live over fields with different archimedean places");
    }
    let mut total = 0.0;
    for (pa, pb) in a.places.iter().zip(&b.places) {
        for x in pa {
            for y in pb {
                total += tensor_conductor(t, x, y)?.ln();
            }
        }
    }
    Ok(total)
}

/// Logarithmic comparison `lhs <= rhs`; `ratio = exp(log lhs − log rhs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

impl BoundCheck {
    fn new(log_lhs: f64, log_rhs: f64) -> Self {
        Self {
            log_lhs,
            log_rhs,
            ratio: (log_lhs - log_rhs).exp(),
            satisfied: log_lhs <= log_rhs + 1e-12 * log_rhs.abs().max(1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalBounds {
    /// Finite part, each Rankin–Selberg factor bounded by `q_f(π)^{n'} q_f(π')^{n}`.
    pub finite: BoundCheck,
    /// Archimedean part against `C₁^{n+n'} (q_∞(π)² q_∞(π'))^{4n+2n'} (1+|t|)^{(4nn'+2n²)[F:Q]}`.
    pub upper_rs: BoundCheck,
    /// Smallest `C₁` for which the archimedean bound holds.
    pub implied_c1: f64,
    /// `q(Π × Π̃) <= q(π)^{8n} (|t|+3)^{2n²[F:Q]}` for `Π = π|·|^{it/2} ⊞ π|·|^{−it/2}`.
    pub auxiliary: BoundCheck,
}

/// Conductor bounds for `Π = π|·|^{it} ⊞ π̃|·|^{−it} ⊞ π'`, with `π'` self-dual,
/// and for the two-term auxiliary sum of `π`.
pub fn global_conductor_bounds(
    pi: &ConductorData,
    pi2: &ConductorData,
    t: f64,
    c1: f64,
) -> Result<GlobalBounds> {
    if pi.field_degree != pi2.field_degree || pi.places.len() != pi2.places.len() {
        return arg("representations must live over the same field");
    }
    let n = pi.n as f64;
    let n2 = pi2.n as f64;
    let deg = pi.field_degree as f64;
    let dual = pi.dual();

    // q(Π×Π̃) = q(π×π̃)² q(π'×π') q(it; π×π')² q(−it; π̃×π')² q(2it; π×π) q(−2it; π̃×π̃)
    let log_inf = 2.0 * log_rs_q_inf(0.0, pi, &dual)?
        + log_rs_q_inf(0.0, pi2, pi2)?
        + 2.0 * log_rs_q_inf(t, pi, pi2)?
        + 2.0 * log_rs_q_inf(-t, &dual, pi2)?
        + log_rs_q_inf(2.0 * t, pi, pi)?
        + log_rs_q_inf(-2.0 * t, &dual, &dual)?;
    let lf = pi.finite.ln();
    let lf2 = pi2.finite.ln();
    let log_finite = 2.0 * (2.0 * n * lf)
        + 2.0 * n2 * lf2
        + 2.0 * (n2 * lf + n * lf2)
        + 2.0 * (n2 * lf + n * lf2)
        + 2.0 * n * lf
        + 2.0 * n * lf;
    let finite = BoundCheck::new(log_finite, (4.0 * n + 2.0 * n2) * (2.0 * lf + lf2));

    let log_rhs_inf = (4.0 * n + 2.0 * n2) * (2.0 * pi.log_q_inf(0.0) + pi2.log_q_inf(0.0))
        + (4.0 * n * n2 + 2.0 * n * n) * deg * (1.0 + t.abs()).ln();
    let implied_c1 = ((log_inf - log_rhs_inf) / (n + n2)).exp();
    let upper_rs = BoundCheck::new(log_inf, (n + n2) * c1.ln() + log_rhs_inf);

    let log_aux = 2.0 * (log_rs_q_inf(0.0, pi, &dual)? + 2.0 * n * lf)
        + log_rs_q_inf(t, pi, &dual)?
        + log_rs_q_inf(-t, pi, &dual)?
        + 2.0 * (n * n * lf);
    let auxiliary = BoundCheck::new(
        log_aux,
        8.0 * n * pi.log_q() + 2.0 * n * n * deg * (t.abs() + 3.0).ln(),
    );
    Ok(GlobalBounds {
        finite,
        upper_rs,
        implied_c1,
        auxiliary,
    })
}

/// Parameter ranges for random sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub k_max: i64,
    pub nu_im_max: f64,
    pub t_max: f64,
    /// Constant `C` the reduction inequality is tested against.
    pub c: f64,
    /// Also evaluate every pair from a small lattice of boundary parameters
    /// (`Re ν ∈ {−1/2, 0, 1/2}`, small `k`, `t = 0`), where the ratio peaks.
    pub boundary_lattice: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 1,
            k_max: 12,
            nu_im_max: 20.0,
            t_max: 50.0,
            c: 9.0,
            boundary_lattice: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub case: &'static str,
    pub phi: WeilParameter,
    pub psi: WeilParameter,
    pub t: f64,
    pub check: ReductionCheck,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub place: Place,
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
    pub max_ratio: f64,
    pub max_ratio_by_case: BTreeMap<&'static str, f64>,
    /// Rows failing the reduction inequality with `C = config.c`.
    pub reduction_failures: usize,
    /// Rows whose tensor dimensions do not add up to `d d'`.
    pub dimension_failures: usize,
    /// Parameters (complex place) failing either inequality of the √3 claim.
    pub claim_first_failures: usize,
    pub claim_second_failures: usize,
    pub claim_counterexample: Option<WeilParameter>,
}

/// Draws `|Re ν| <= 1/2` with the boundary and the imaginary axis given
/// positive probability, so extremal configurations are sampled directly.
fn sample_nu(rng: &mut ChaCha8Rng, im_max: f64) -> Complex64 {
    let re = match rng.gen_range(0..4) {
        0 => if rng.gen::<bool>() { 0.5 } else { -0.5 },
        _ => rng.gen_range(-0.5..=0.5),
    };
    let im = match rng.gen_range(0..4) {
        0 => 0.0,
        _ => rng.gen_range(-im_max..=im_max),
    };
    Complex64::new(re, im)
}

fn sample_param(rng: &mut ChaCha8Rng, place: Place, cfg: &SweepConfig) -> WeilParameter {
    let nu = sample_nu(rng, cfg.nu_im_max);
    match place {
        Place::Complex => WeilParameter::ComplexChar {
            k: rng.gen_range(-cfg.k_max..=cfg.k_max),
            nu,
        },
        Place::Real => {
            if rng.gen::<bool>() {
                WeilParameter::RealOneDim {
                    epsilon: if rng.gen::<bool>() { 1 } else { -1 },
                    nu,
                }
            } else {
                WeilParameter::RealTwoDim {
                    k: rng.gen_range(1..=cfg.k_max),
                    nu,
                }
            }
        }
    }
}

fn boundary_params(place: Place) -> Vec<WeilParameter> {
    let mut out = Vec::new();
    for re in [-0.5, 0.0, 0.5] {
        for im in [0.0, 0.5] {
            let nu = Complex64::new(re, im);
            match place {
                Place::Complex => {
                    out.extend((-3..=3).map(|k| WeilParameter::ComplexChar { k, nu }));
                }
                Place::Real => {
                    out.push(WeilParameter::RealOneDim { epsilon: 1, nu });
                    out.push(WeilParameter::RealOneDim { epsilon: -1, nu });
                    out.extend((1..=3).map(|k| WeilParameter::RealTwoDim { k, nu }));
                }
            }
        }
    }
    out
}

fn case_name(phi: &WeilParameter, psi: &WeilParameter) -> &'static str {
    match (phi.dim(), psi.dim(), phi.place()) {
        (_, _, Place::Complex) => "complex",
        (1, 1, _) => "real 1x1",
        (1, 2, _) | (2, 1, _) => "real 1x2",
        _ if phi.k() == psi.k() => "real 2x2 k=k'",
        _ => "real 2x2",
    }
}

/// Random sweep of the reduction inequality at one place type, followed by the
/// boundary lattice when enabled. Samples are drawn sequentially from the seed
/// and evaluated in parallel.
pub fn reduction_sweep(place: Place, cfg: SweepConfig) -> Result<SweepSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut draws: Vec<(WeilParameter, WeilParameter, f64)> = (0..cfg.samples)
        .map(|_| {
            let phi = sample_param(&mut rng, place, &cfg);
            let psi = sample_param(&mut rng, place, &cfg);
            let t = match rng.gen_range(0..4) {
                0 => 0.0,
                _ => rng.gen_range(-cfg.t_max..=cfg.t_max),
            };
            (phi, psi, t)
        })
        .collect();
    if cfg.boundary_lattice {
        let lattice = boundary_params(place);
        for a in &lattice {
            for b in &lattice {
                draws.push((*a, *b, 0.0));
            }
        }
    }
    let rows: Vec<SweepRow> = draws
        .par_iter()
        .map(|(phi, psi, t)| {
            Ok(SweepRow {
                case: case_name(phi, psi),
                phi: *phi,
                psi: *psi,
                t: *t,
                check: check_reduction_inequality(*t, phi, psi, cfg.c)?,
            })
        })
        .collect::<Result<_>>()?;

    let mut summary = SweepSummary {
        place,
        config: cfg,
        max_ratio: 0.0,
        max_ratio_by_case: BTreeMap::new(),
        reduction_failures: 0,
        dimension_failures: 0,
        claim_first_failures: 0,
        claim_second_failures: 0,
        claim_counterexample: None,
        rows: Vec::new(),
    };
    for row in &rows {
        summary.max_ratio = summary.max_ratio.max(row.check.ratio);
        let entry = summary.max_ratio_by_case.entry(row.case).or_insert(0.0);
        *entry = entry.max(row.check.ratio);
        if !row.check.satisfied {
            summary.reduction_failures += 1;
        }
        let dims: u32 = tensor(&row.phi, &row.psi)?.iter().map(|p| p.dim()).sum();
        if dims != row.phi.dim() * row.psi.dim() {
            summary.dimension_failures += 1;
        }
        if place == Place::Complex {
            for p in [row.phi, row.psi] {
                if let Some(claim) = sqrt3_claim(p.k(), p.nu()) {
                    if !claim.first_holds {
                        summary.claim_first_failures += 1;
                    }
                    if !claim.second_holds {
                        summary.claim_second_failures += 1;
                        summary.claim_counterexample.get_or_insert(p);
                    }
                }
            }
        }
    }
    summary.rows = rows;
    Ok(summary)
}
