//! Base fields, prime ideals and prime counting.
//!
//! Only the rationals and quadratic fields are supported, and for quadratic
//! fields only the splitting data of rational primes is modelled: every sum in
//! the crate runs over prime ideals and needs nothing but their norms.
//!
//! Rational primes come from a segmented sieve of Eratosthenes whose working
//! memory is `O(sqrt(hi) + SEGMENT)`; the resulting [`PrimeTable`] is built
//! once and shared read-only by all queries.

use crate::error::{arg, Error, Result};

/// Default sieve capacity: largest norm a [`PrimeTable`] answers for.
pub const DEFAULT_CAPACITY: u64 = 10_000_000;

const SEGMENT: u64 = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    /// `Q(sqrt(d))` with `d` squarefree, `d != 0, 1`.
    Quadratic(i64),
}

/// A base number field of degree one or two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumberField {
    kind: FieldKind,
}

/// How a rational prime decomposes in a quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl NumberField {
    pub fn rationals() -> Self {
        Self {
            kind: FieldKind::Rationals,
        }
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return arg(format!("quadratic field needs d != 0, 1 (got {d})"));
        }
        if !is_squarefree(d.unsigned_abs()) {
            return arg(format!("d = {d} is not squarefree"));
        }
        Ok(Self {
            kind: FieldKind::Quadratic(d),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// `[F : Q]`.
    pub fn degree(&self) -> u32 {
        match self.kind {
            FieldKind::Rationals => 1,
            FieldKind::Quadratic(_) => 2,
        }
    }

    pub fn discriminant(&self) -> i64 {
        match self.kind {
            FieldKind::Rationals => 1,
            FieldKind::Quadratic(d) => {
                if d.rem_euclid(4) == 1 {
                    d
                } else {
                    4 * d
                }
            }
        }
    }

    /// Decomposition type of the rational prime `p` in a quadratic field;
    /// `None` for the rationals. [`NumberField::ideals_above`] gives a uniform view.
    pub fn splitting(&self, p: u64) -> Option<Splitting> {
        match self.kind {
            FieldKind::Rationals => None,
            FieldKind::Quadratic(_) => Some(match kronecker(self.discriminant(), p) {
                0 => Splitting::Ramified,
                1 => Splitting::Split,
                _ => Splitting::Inert,
            }),
        }
    }

    /// All prime ideals lying over the rational prime `p`.
    pub fn ideals_above(&self, p: u64) -> Vec<PrimeIdeal> {
        let degree_one = |branch: u8, ramified: bool| PrimeIdeal {
            p,
            residue_degree: 1,
            norm: p,
            ramified,
            branch,
        };
        match self.splitting(p) {
            None => vec![degree_one(0, false)],
            Some(Splitting::Ramified) => vec![degree_one(0, true)],
            Some(Splitting::Split) => vec![degree_one(0, false), degree_one(1, false)],
            Some(Splitting::Inert) => vec![PrimeIdeal {
                p,
                residue_degree: 2,
                norm: p * p,
                ramified: false,
                branch: 0,
            }],
        }
    }
}

impl std::fmt::Display for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// A prime ideal, described by its residue characteristic and degree.
///
/// The two conjugate ideals above a split prime differ only in `branch`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub p: u64,
    pub residue_degree: u32,
    pub norm: u64,
    pub ramified: bool,
    pub branch: u8,
}

impl PrimeIdeal {
    /// The prime ideal `(p)` of the rationals.
    pub fn rational(p: u64) -> Self {
        Self {
            p,
            residue_degree: 1,
            norm: p,
            ramified: false,
            branch: 0,
        }
    }

    pub fn log_norm(&self) -> f64 {
        (self.norm as f64).ln()
    }
}

/// Outcome of one Brun–Titchmarsh comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrunTitchmarsh {
    pub count: u64,
    pub bound: f64,
    pub satisfied: bool,
}

/// Sorted rational primes up to a fixed limit, built by a segmented sieve.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            primes: segmented_primes(2, limit),
        }
    }

    pub fn with_default_capacity() -> Self {
        Self::new(DEFAULT_CAPACITY)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn rational_primes(&self) -> &[u64] {
        &self.primes
    }

    fn check_capacity(&self, requested: u64) -> Result<()> {
        if requested > self.limit {
            return Err(Error::Resource {
                what: "sieve capacity",
                requested,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// Rational primes in `[lo, hi]`.
    pub fn primes_between(&self, lo: u64, hi: u64) -> Result<&[u64]> {
        self.check_capacity(hi)?;
        let start = self.primes.partition_point(|&p| p < lo);
        let end = self.primes.partition_point(|&p| p <= hi);
        Ok(&self.primes[start..end.max(start)])
    }

    /// Number of rational primes `<= x`.
    pub fn rational_pi(&self, x: u64) -> Result<u64> {
        self.check_capacity(x)?;
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// Prime ideals of `field` with `lo <= N(p) <= hi`, ordered by norm and
    /// then residue characteristic.
    pub fn primes_in_norm_range(
        &self,
        field: &NumberField,
        lo: u64,
        hi: u64,
    ) -> Result<Vec<PrimeIdeal>> {
        if lo < 2 {
            return arg(format!("lower norm bound must be >= 2 (got {lo})"));
        }
        if lo > hi {
            return arg(format!("empty norm range [{lo}, {hi}]"));
        }
        self.check_capacity(hi)?;
        let mut out = Vec::new();
        match field.kind() {
            FieldKind::Rationals => {
                out.extend(self.primes_between(lo, hi)?.iter().map(|&p| PrimeIdeal::rational(p)));
            }
            FieldKind::Quadratic(_) => {
                for &p in self.primes_between(2, hi)? {
                    for ideal in field.ideals_above(p) {
                        if ideal.norm >= lo && ideal.norm <= hi {
                            out.push(ideal);
                        }
                    }
                }
                out.sort_by_key(|i| (i.norm, i.p, i.branch));
            }
        }
        Ok(out)
    }

    /// `#{p : N(p) <= x}`, counting both ideals above a split prime.
    pub fn prime_count(&self, field: &NumberField, x: f64) -> Result<u64> {
        if !(x >= 0.0) {
            return arg(format!("prime_count needs x >= 0 (got {x})"));
        }
        let x = x.floor() as u64;
        self.check_capacity(x)?;
        if x < 2 {
            return Ok(0);
        }
        match field.kind() {
            FieldKind::Rationals => self.rational_pi(x),
            FieldKind::Quadratic(_) => {
                let mut count = 0;
                for &p in self.primes_between(2, x)? {
                    count += field
                        .ideals_above(p)
                        .iter()
                        .filter(|ideal| ideal.norm <= x)
                        .count() as u64;
                }
                Ok(count)
            }
        }
    }

    /// Compares `pi_F(x + y) - pi_F(x)` with `4 [F:Q] y / log y`.
    pub fn brun_titchmarsh_margin(
        &self,
        field: &NumberField,
        x: f64,
        y: f64,
    ) -> Result<BrunTitchmarsh> {
        if !(y >= 2.0) || !(y <= x) {
            return arg(format!("Brun-Titchmarsh needs 2 <= y <= x (got x = {x}, y = {y})"));
        }
        let count = self.prime_count(field, x + y)? - self.prime_count(field, x)?;
        let bound = 4.0 * field.degree() as f64 * y / y.ln();
        Ok(BrunTitchmarsh {
            count,
            bound,
            satisfied: (count as f64) <= bound,
        })
    }
}

/// Primes in `[lo, hi]` by a segmented sieve of Eratosthenes.
pub fn segmented_primes(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(2);
    if hi < lo {
        return Vec::new();
    }
    let root = isqrt(hi);
    let base = simple_sieve(root);
    let mut out = Vec::new();
    let mut seg_lo = lo;
    let mut composite = vec![false; SEGMENT as usize];
    while seg_lo <= hi {
        let seg_hi = (seg_lo + SEGMENT - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        composite[..len].iter_mut().for_each(|c| *c = false);
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let first = (p * p).max(seg_lo.div_ceil(p) * p);
            let mut m = first;
            while m <= seg_hi {
                composite[(m - seg_lo) as usize] = true;
                m += p;
            }
        }
        out.extend(
            (0..len)
                .filter(|&i| !composite[i])
                .map(|i| seg_lo + i as u64),
        );
        seg_lo = seg_hi + 1;
    }
    out
}

fn simple_sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut m = i * i;
            while m <= n {
                composite[m] = true;
                m += i;
            }
        }
    }
    primes
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m % (q * q) == 0 {
            return false;
        }
        if m % q == 0 {
            m /= q;
        }
        q += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Kronecker symbol `(d | p)` for a prime `p`.
pub fn kronecker(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            return 0;
        }
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let a = d.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}
