//! Representation descriptors, isobaric sums and the symbolic Rankin–Selberg
//! factorization.
//!
//! A [`Rep`] exposes unitary-normalized Hecke eigenvalues and Satake
//! parameters at unramified primes. Numeric sources are the trivial
//! representation (over any supported field), Dirichlet characters and
//! holomorphic newforms (over the rationals). [`CoefficientSource::Formal`]
//! descriptors carry no coefficients at all; they exist for the pole-order
//! bookkeeping, which only needs equality and duality.
//!
//! Duality and equality are decided on descriptors: the trivial
//! representation, real characters and newforms (trivial nebentypus) are
//! self-dual, a complex character is dual to its conjugate.

pub mod aptable;
pub mod character;
pub mod delta;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{arg, Error, Result};
use crate::fields::{NumberField, PrimeIdeal};

pub use character::DirichletCharacter;

/// A holomorphic newform of trivial nebentypus, given by its Hecke
/// eigenvalues `a_p` at every prime up to `cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloNewform {
    weight: u32,
    level: u64,
    label: String,
    cutoff: u64,
    /// `(p, a_p)` for every prime `p <= cutoff`, ascending.
    ap: Vec<(u64, i128)>,
}

impl HoloNewform {
    /// Builds a newform table, rejecting eigenvalues that violate
    /// `|a_p| <= 2 p^{(k-1)/2}` at primes not dividing the level.
    pub fn new(weight: u32, level: u64, label: impl Into<String>, ap: Vec<(u64, i128)>) -> Result<Self> {
        if weight < 2 || weight % 2 == 1 {
            return Err(Error::Data(format!("weight must be even and >= 2 (got {weight})")));
        }
        if level == 0 {
            return Err(Error::Data("level must be positive".into()));
        }
        for w in ap.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Data(format!(
                    "eigenvalue table not strictly ascending at p = {}",
                    w[1].0
                )));
            }
        }
        let half = (weight as f64 - 1.0) / 2.0;
        for &(p, a) in &ap {
            if level % p == 0 {
                continue;
            }
            let lambda = a as f64 / (p as f64).powf(half);
            if lambda.abs() > 2.0 + 1e-12 {
                return Err(Error::Data(format!(
                    "a_{p} = {a} violates the Ramanujan bound (|lambda| = {lambda})"
                )));
            }
        }
        let cutoff = ap.last().map_or(0, |&(p, _)| p);
        Ok(Self {
            weight,
            level,
            label: label.into(),
            cutoff,
            ap,
        })
    }

    /// The discriminant modular form, with eigenvalues generated from the
    /// eta-product expansion up to `cutoff`.
    pub fn delta(cutoff: u64) -> Self {
        let tau = delta::ramanujan_tau(cutoff as usize);
        let ap = crate::fields::segmented_primes(2, cutoff)
            .into_iter()
            .map(|p| (p, tau[p as usize]))
            .collect();
        let mut form = Self::new(12, 1, "Delta", ap).expect("tau(p) satisfies Deligne's bound");
        form.cutoff = cutoff;
        form
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Every prime up to this bound has an eigenvalue in the table.
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn ap_table(&self) -> &[(u64, i128)] {
        &self.ap
    }

    pub fn ap(&self, p: u64) -> Option<i128> {
        self.ap
            .binary_search_by_key(&p, |&(q, _)| q)
            .ok()
            .map(|i| self.ap[i].1)
    }
}

/// Where a representation's eigenvalues come from.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSource {
    Trivial,
    DirichletCharacter(DirichletCharacter),
    HoloNewform(Arc<HoloNewform>),
    /// Coefficient-free descriptor for symbolic work on `GL_rank`.
    Formal {
        rank: u32,
        /// Set on the contragredient of a non-self-dual formal descriptor.
        conjugated: bool,
    },
}

/// Identity of a representation up to isomorphism, as far as the
/// descriptors can tell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RepKey {
    Trivial(NumberField),
    Character { modulus: u64, index: u64 },
    Newform { weight: u32, level: u64, label: String },
    Formal { label: String, conjugated: bool },
}

/// A unitary cuspidal representation descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct Rep {
    gl_rank: u32,
    field: NumberField,
    source: CoefficientSource,
    ramified_primes: BTreeSet<u64>,
    self_dual: bool,
    label: String,
}

impl Rep {
    pub fn trivial(field: NumberField) -> Self {
        Self {
            gl_rank: 1,
            field,
            source: CoefficientSource::Trivial,
            ramified_primes: BTreeSet::new(),
            self_dual: true,
            label: format!("1_{field}"),
        }
    }

    pub fn character(chi: DirichletCharacter) -> Self {
        let ramified_primes = chi.ramified_primes().into_iter().collect();
        Self {
            gl_rank: 1,
            field: NumberField::rationals(),
            self_dual: chi.is_real(),
            label: format!("chi_{}[{}]", chi.modulus(), chi.index()),
            source: CoefficientSource::DirichletCharacter(chi),
            ramified_primes,
        }
    }

    pub fn newform(form: Arc<HoloNewform>) -> Self {
        let ramified_primes = prime_divisors(form.level()).into_iter().collect();
        Self {
            gl_rank: 2,
            field: NumberField::rationals(),
            self_dual: true,
            label: form.label().to_string(),
            source: CoefficientSource::HoloNewform(form),
            ramified_primes,
        }
    }

    /// The discriminant form with eigenvalues up to `cutoff`.
    pub fn delta(cutoff: u64) -> Self {
        Self::newform(Arc::new(HoloNewform::delta(cutoff)))
    }

    /// A coefficient-free descriptor of `GL_rank`.
    pub fn formal(label: impl Into<String>, rank: u32, self_dual: bool) -> Result<Self> {
        if rank == 0 {
            return arg("rank must be >= 1");
        }
        Ok(Self {
            gl_rank: rank,
            field: NumberField::rationals(),
            source: CoefficientSource::Formal {
                rank,
                conjugated: false,
            },
            ramified_primes: BTreeSet::new(),
            self_dual,
            label: label.into(),
        })
    }

    pub fn gl_rank(&self) -> u32 {
        self.gl_rank
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn source(&self) -> &CoefficientSource {
        &self.source
    }

    pub fn ramified_primes(&self) -> &BTreeSet<u64> {
        &self.ramified_primes
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_ramified_at(&self, p: u64) -> bool {
        self.ramified_primes.contains(&p)
    }

    /// Largest norm up to which eigenvalues are available.
    pub fn coefficient_cutoff(&self) -> Option<u64> {
        match &self.source {
            CoefficientSource::HoloNewform(f) => Some(f.cutoff()),
            _ => None,
        }
    }

    pub fn key(&self) -> RepKey {
        match &self.source {
            CoefficientSource::Trivial => RepKey::Trivial(self.field),
            CoefficientSource::DirichletCharacter(chi) => RepKey::Character {
                modulus: chi.modulus(),
                index: chi.index(),
            },
            CoefficientSource::HoloNewform(f) => RepKey::Newform {
                weight: f.weight(),
                level: f.level(),
                label: f.label().to_string(),
            },
            CoefficientSource::Formal { conjugated, .. } => RepKey::Formal {
                label: self.label.clone(),
                conjugated: *conjugated,
            },
        }
    }

    /// The contragredient representation.
    pub fn dual(&self) -> Rep {
        if self.self_dual {
            return self.clone();
        }
        let mut out = self.clone();
        match &self.source {
            CoefficientSource::DirichletCharacter(chi) => {
                let conj = chi.conjugate();
                out.label = format!("chi_{}[{}]", conj.modulus(), conj.index());
                out.source = CoefficientSource::DirichletCharacter(conj);
            }
            CoefficientSource::Formal { rank, conjugated } => {
                out.source = CoefficientSource::Formal {
                    rank: *rank,
                    conjugated: !conjugated,
                };
            }
            CoefficientSource::Trivial | CoefficientSource::HoloNewform(_) => {}
        }
        out
    }

    /// Whether `self` is isomorphic to `other`.
    pub fn same_as(&self, other: &Rep) -> bool {
        self.key() == other.key()
    }

    /// Whether `other` is isomorphic to the contragredient of `self`.
    pub fn is_dual_of(&self, other: &Rep) -> bool {
        self.dual().key() == other.key()
    }

    fn check_unramified(&self, ideal: &PrimeIdeal) -> Result<()> {
        if self.is_ramified_at(ideal.p) {
            return Err(Error::Domain(format!(
                "prime above {} is excluded by S_pi for {}",
                ideal.p, self.label
            )));
        }
        Ok(())
    }

    /// Unitary-normalized Hecke eigenvalue at an unramified prime ideal.
    pub fn lambda(&self, ideal: &PrimeIdeal) -> Result<Complex64> {
        self.check_unramified(ideal)?;
        match &self.source {
            CoefficientSource::Trivial => Ok(Complex64::new(1.0, 0.0)),
            CoefficientSource::DirichletCharacter(chi) => Ok(chi.value(ideal.p)),
            CoefficientSource::HoloNewform(f) => {
                let a = f.ap(ideal.p).ok_or_else(|| {
                    Error::Data(format!("no eigenvalue for p = {} in table {}", ideal.p, f.label()))
                })?;
                let half = (f.weight() as f64 - 1.0) / 2.0;
                Ok(Complex64::new(a as f64 / (ideal.p as f64).powf(half), 0.0))
            }
            CoefficientSource::Formal { .. } => Err(Error::Domain(format!(
                "formal descriptor {} has no numeric coefficients",
                self.label
            ))),
        }
    }

    /// Satake parameters at an unramified prime ideal.
    pub fn satake(&self, ideal: &PrimeIdeal) -> Result<Vec<Complex64>> {
        let lambda = self.lambda(ideal)?;
        match &self.source {
            CoefficientSource::HoloNewform(_) => Ok(quadratic_roots(lambda.re)),
            _ => Ok(vec![lambda]),
        }
    }
}

/// Roots of `X^2 - lambda X + 1`.
fn quadratic_roots(lambda: f64) -> Vec<Complex64> {
    let disc = lambda * lambda - 4.0;
    if disc <= 0.0 {
        let im = (-disc).sqrt() / 2.0;
        vec![Complex64::new(lambda / 2.0, im), Complex64::new(lambda / 2.0, -im)]
    } else {
        let r = disc.sqrt();
        // Avoid cancellation: compute the larger root, then use the product 1.
        let big = (lambda + lambda.signum() * r) / 2.0;
        vec![Complex64::new(big, 0.0), Complex64::new(1.0 / big, 0.0)]
    }
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A formal isobaric sum `⊞ π_i ⊗ |det|^{i τ_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsobaricSum {
    components: Vec<(Rep, f64)>,
}

impl IsobaricSum {
    pub fn new(components: Vec<(Rep, f64)>) -> Result<Self> {
        if components.is_empty() {
            return arg("isobaric sum needs at least one component");
        }
        if let Some((_, tau)) = components.iter().find(|(_, tau)| !tau.is_finite()) {
            return arg(format!("shift must be finite (got {tau})"));
        }
        let field = *components[0].0.field();
        if components.iter().any(|(r, _)| *r.field() != field) {
            return arg("all components must live over the same field");
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(Rep, f64)] {
        &self.components
    }

    pub fn total_rank(&self) -> u32 {
        self.components.iter().map(|(r, _)| r.gl_rank()).sum()
    }

    pub fn field(&self) -> &NumberField {
        self.components[0].0.field()
    }

    /// Primes at which some component is ramified.
    pub fn ramified_primes(&self) -> BTreeSet<u64> {
        self.components
            .iter()
            .flat_map(|(r, _)| r.ramified_primes().iter().copied())
            .collect()
    }

    pub fn is_ramified_at(&self, p: u64) -> bool {
        self.components.iter().any(|(r, _)| r.is_ramified_at(p))
    }

    /// Smallest eigenvalue cutoff among the components.
    pub fn coefficient_cutoff(&self) -> Option<u64> {
        self.components
            .iter()
            .filter_map(|(r, _)| r.coefficient_cutoff())
            .min()
    }

    /// Satake parameters of the sum at an unramified prime: each component's
    /// parameters times `N(p)^{-i τ}`.
    pub fn satake(&self, ideal: &PrimeIdeal) -> Result<Vec<Complex64>> {
        let log_norm = ideal.log_norm();
        let mut out = Vec::with_capacity(self.total_rank() as usize);
        for (rep, tau) in &self.components {
            let twist = Complex64::from_polar(1.0, -tau * log_norm);
            out.extend(rep.satake(ideal)?.into_iter().map(|a| a * twist));
        }
        Ok(out)
    }
}

/// `Π = π ⊗ |det|^{it/2} ⊞ π ⊗ |det|^{-it/2}`.
pub fn build_auxiliary_pi(rep: &Rep, t: f64) -> Result<IsobaricSum> {
    if !t.is_finite() {
        return arg(format!("t must be finite (got {t})"));
    }
    IsobaricSum::new(vec![(rep.clone(), t / 2.0), (rep.clone(), -t / 2.0)])
}

/// `Π = π ⊗ |det|^{it} ⊞ π̃ ⊗ |det|^{-it} ⊞ π'`, the three-component sum used
/// for zero-free regions of `L(s, π × π')`.
pub fn build_three_term_pi(rep: &Rep, rep_prime: &Rep, t: f64) -> Result<IsobaricSum> {
    if !t.is_finite() {
        return arg(format!("t must be finite (got {t})"));
    }
    IsobaricSum::new(vec![
        (rep.clone(), t),
        (rep.dual(), -t),
        (rep_prime.clone(), 0.0),
    ])
}

/// One factor `L(s + i·net_shift, left × right)` of `L(s, Π × Π̃)`; `right` is
/// already the contragredient of the second component.
#[derive(Debug, Clone, PartialEq)]
pub struct RSFactor {
    pub left: Rep,
    pub right: Rep,
    pub net_shift: f64,
    pub contributes_pole: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RSFactorization {
    pub factors: Vec<RSFactor>,
    /// Order of the pole of `L(s, Π × Π̃)` at `s = 1`.
    pub pole_order: u32,
}

impl RSFactorization {
    /// Net shifts of the factors, sorted.
    pub fn shifts(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.factors.iter().map(|f| f.net_shift).collect();
        s.sort_by(|a, b| a.total_cmp(b));
        s
    }
}

/// Expands `L(s, Π × Π̃)` into `Π_{i,j} L(s + i(τ_i − τ_j), π_i × π̃_j)`.
///
/// A factor has a pole at `s = 1` exactly when its right member is the
/// contragredient of its left member and its net shift vanishes.
pub fn rs_factorize(pi: &IsobaricSum) -> RSFactorization {
    let comps = pi.components();
    let mut factors = Vec::with_capacity(comps.len() * comps.len());
    for (rep_i, tau_i) in comps {
        for (rep_j, tau_j) in comps {
            let right = rep_j.dual();
            let net_shift = tau_i - tau_j;
            let contributes_pole = rep_i.is_dual_of(&right) && net_shift == 0.0;
            factors.push(RSFactor {
                left: rep_i.clone(),
                right,
                net_shift,
                contributes_pole,
            });
        }
    }
    let pole_order = factors.iter().filter(|f| f.contributes_pole).count() as u32;
    RSFactorization { factors, pole_order }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCountRange {
    pub lower_sigma: f64,
    pub max_real_zeros: u32,
}

/// Interval `1 − κ / ((n + n')² (m + 1) log q) < σ < 1` holding at most `m`
/// real zeros, for `m` the pole order of the factorization.
pub fn zero_count_range(
    fact: &RSFactorization,
    n: u32,
    n_prime: u32,
    log_conductor: f64,
    kappa: f64,
) -> Result<ZeroCountRange> {
    if !(log_conductor > 0.0) {
        return arg(format!("log conductor must be positive (got {log_conductor})"));
    }
    if !(kappa > 0.0) {
        return arg(format!("kappa must be positive (got {kappa})"));
    }
    if n == 0 || n_prime == 0 {
        return arg("ranks must be positive");
    }
    let m = fact.pole_order;
    let width = (n + n_prime) as f64;
    Ok(ZeroCountRange {
        lower_sigma: 1.0 - kappa / (width * width * (m as f64 + 1.0) * log_conductor),
        max_real_zeros: m,
    })
}
