//! Dirichlet characters on moduli with a cyclic unit group.

use num_complex::Complex64;

use crate::error::{arg, Result};

/// A Dirichlet character `χ_j` modulo `q`, where `(Z/q)^×` is cyclic with
/// generator `g` and `χ_j(g^a) = exp(2πi j a / φ(q))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    order: u64,
    values: Vec<Complex64>,
}

impl DirichletCharacter {
    /// Character of index `index` modulo `modulus`; the modulus must be one of
    /// `2, 4, p^k, 2p^k` with `p` an odd prime.
    pub fn new(modulus: u64, index: u64) -> Result<Self> {
        if modulus < 2 {
            return arg(format!("modulus must be >= 2 (got {modulus})"));
        }
        if modulus > 1_000_000 {
            return arg(format!("modulus {modulus} too large for a value table"));
        }
        let phi = (1..modulus).filter(|&n| gcd(n, modulus) == 1).count() as u64;
        let generator = (1..modulus)
            .filter(|&g| gcd(g, modulus) == 1)
            .find(|&g| multiplicative_order(g, modulus) == phi)
            .ok_or_else(|| {
                crate::error::Error::Argument(format!(
                    "(Z/{modulus})^x is not cyclic; only moduli 2, 4, p^k, 2p^k are supported"
                ))
            })?;
        if index >= phi {
            return arg(format!("character index must be < phi({modulus}) = {phi}"));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); modulus as usize];
        let mut power = 1 % modulus;
        for a in 0..phi {
            let angle = 2.0 * std::f64::consts::PI * ((index * a) % phi) as f64 / phi as f64;
            values[power as usize] = exact_unit(index * a % phi, phi, angle);
            power = power * generator % modulus;
        }
        Ok(Self {
            modulus,
            index,
            order: phi,
            values,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        (2 * self.index) % self.order == 0
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    pub fn conjugate(&self) -> Self {
        let index = (self.order - self.index) % self.order;
        Self {
            modulus: self.modulus,
            index,
            order: self.order,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        super::prime_divisors(self.modulus)
    }
}

/// `exp(2πi k / order)` with exact values at the quarter turns, so that real
/// characters have exactly real values.
fn exact_unit(k: u64, order: u64, angle: f64) -> Complex64 {
    if k == 0 {
        Complex64::new(1.0, 0.0)
    } else if 2 * k == order {
        Complex64::new(-1.0, 0.0)
    } else if 4 * k == order {
        Complex64::new(0.0, 1.0)
    } else if 4 * k == 3 * order {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::from_polar(1.0, angle)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * g % m;
        k += 1;
        if k > m {
            return 0;
        }
    }
    k
}
