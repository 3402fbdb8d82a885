//! Ramanujan's tau function from the eta-product expansion.
//!
//! `Δ = q ∏(1 − q^n)^24 = q · (η³)^8` where, by Jacobi's identity,
//! `∏(1 − q^n)^3 = Σ_{k≥0} (−1)^k (2k + 1) q^{k(k+1)/2}` has only
//! `O(sqrt(N))` nonzero terms below `N`. Raising it to the eighth power is
//! done as seven dense-by-sparse products, each `O(N^{3/2})`.

use rayon::prelude::*;

/// Nonzero terms `(exponent, coefficient)` of `∏(1 − q^n)^3` below `len`.
pub fn eta_cubed_sparse(len: usize) -> Vec<(usize, i128)> {
    let mut out = Vec::new();
    let mut k: usize = 0;
    loop {
        let e = k * (k + 1) / 2;
        if e >= len {
            break;
        }
        let c = (2 * k + 1) as i128;
        out.push((e, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    out
}

fn mul_dense_sparse(dense: &[i128], sparse: &[(usize, i128)]) -> Vec<i128> {
    let len = dense.len();
    let mut out = vec![0i128; len];
    out.par_chunks_mut(4096).enumerate().for_each(|(chunk, slot)| {
        let base = chunk * 4096;
        for (offset, v) in slot.iter_mut().enumerate() {
            let n = base + offset;
            let mut acc = 0i128;
            for &(e, c) in sparse {
                if e > n {
                    break;
                }
                acc += c * dense[n - e];
            }
            *v = acc;
        }
    });
    out
}

/// `τ(n)` for `0 <= n <= cutoff` (with `τ(0) = 0`).
pub fn ramanujan_tau(cutoff: usize) -> Vec<i128> {
    let len = cutoff.max(1);
    let sparse = eta_cubed_sparse(len);
    let mut dense = vec![0i128; len];
    for &(e, c) in &sparse {
        dense[e] = c;
    }
    for _ in 1..8 {
        dense = mul_dense_sparse(&dense, &sparse);
    }
    let mut tau = vec![0i128; cutoff + 1];
    tau[1..].copy_from_slice(&dense[..cutoff]);
    tau
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive oracle: multiply out ∏_{n<N} (1 − q^n)^24 term by term.
    fn tau_by_product(n_max: usize) -> Vec<i128> {
        let mut series = vec![0i128; n_max];
        series[0] = 1;
        for n in 1..n_max {
            for _ in 0..24 {
                for i in (n..n_max).rev() {
                    series[i] -= series[i - n];
                }
            }
        }
        let mut tau = vec![0i128; n_max + 1];
        tau[1..].copy_from_slice(&series);
        tau
    }

    #[test]
    fn jacobi_identity_small_terms() {
        let s = eta_cubed_sparse(20);
        assert_eq!(s, vec![(0, 1), (1, -3), (3, 5), (6, -7), (10, 9), (15, -11)]);
    }

    #[test]
    fn first_tau_values() {
        let tau = ramanujan_tau(10);
        assert_eq!(
            &tau[1..],
            &[1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]
        );
    }

    #[test]
    fn matches_direct_product_expansion() {
        let n = 300;
        assert_eq!(ramanujan_tau(n), tau_by_product(n));
    }

    #[test]
    fn tau_is_multiplicative_and_satisfies_hecke_recursion() {
        let tau = ramanujan_tau(2000);
        assert_eq!(tau[6], tau[2] * tau[3]);
        assert_eq!(tau[35 * 11], tau[35] * tau[11]);
        // τ(p²) = τ(p)² − p^11
        for p in [2i128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            let p2 = (p * p) as usize;
            assert_eq!(tau[p2], tau[p as usize].pow(2) - p.pow(11));
        }
    }
}
