use num_complex::Complex64;
use proptest::prelude::*;

use zfr_core::conductor::{
    check_reduction_inequality, conductor_v, real_shift_multiset, tensor, tensor_conductor,
    tensor_gamma_factors, WeilParameter,
};
use zfr_core::fields::{NumberField, PrimeIdeal, PrimeTable};
use zfr_core::lseries::{rs_lambda_prime_power, RSCoefficients};
use zfr_core::reps::{build_auxiliary_pi, rs_factorize, DirichletCharacter, IsobaricSum, Rep};
use zfr_core::zerofree::{width_solver, BoundTemplate, WidthStatus};

fn nu() -> impl Strategy<Value = Complex64> {
    (-0.5f64..=0.5, -30.0f64..30.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn real_param() -> impl Strategy<Value = WeilParameter> {
    prop_oneof![
        (prop_oneof![Just(1i8), Just(-1i8)], nu()).prop_map(|(epsilon, nu)| WeilParameter::RealOneDim { epsilon, nu }),
        (1i64..20, nu()).prop_map(|(k, nu)| WeilParameter::RealTwoDim { k, nu }),
    ]
}

fn complex_param() -> impl Strategy<Value = WeilParameter> {
    (-20i64..20, nu()).prop_map(|(k, nu)| WeilParameter::ComplexChar { k, nu })
}

proptest! {
    #[test]
    fn tensor_is_symmetric_and_dimensional(a in real_param(), b in real_param(), t in -50.0f64..50.0) {
        let dims: u32 = tensor(&a, &b).unwrap().iter().map(|p| p.dim()).sum();
        prop_assert_eq!(dims, a.dim() * b.dim());
        let x = tensor_conductor(t, &a, &b).unwrap();
        let y = tensor_conductor(t, &b, &a).unwrap();
        prop_assert!((x - y).abs() <= 1e-12 * x);
        let shifts_ab = real_shift_multiset(&tensor_gamma_factors(&a, &b).unwrap());
        let shifts_ba = real_shift_multiset(&tensor_gamma_factors(&b, &a).unwrap());
        prop_assert_eq!(shifts_ab.len(), shifts_ba.len());
        for (p, q) in shifts_ab.iter().zip(&shifts_ba) {
            prop_assert!((p - q).norm() < 1e-12);
        }
    }

    #[test]
    fn reduction_holds_with_constant_nine(a in real_param(), b in real_param(), t in -50.0f64..50.0) {
        prop_assert!(check_reduction_inequality(t, &a, &b, 9.0).unwrap().satisfied);
    }

    #[test]
    fn complex_reduction_never_exceeds_four(a in complex_param(), b in complex_param(), t in -50.0f64..50.0) {
        prop_assert!(check_reduction_inequality(t, &a, &b, 4.0).unwrap().satisfied);
    }

    #[test]
    fn conductor_grows_with_height(a in complex_param(), t in 0.0f64..50.0, dt in 0.0f64..10.0) {
        // |it + μ| is increasing in t >= 0 once Im μ >= 0
        prop_assume!(a.mu().im >= 0.0);
        prop_assert!(conductor_v(t + dt, &a) >= conductor_v(t, &a));
    }

    #[test]
    fn pole_order_is_permutation_invariant(
        shifts in proptest::collection::vec(prop_oneof![Just(0.0f64), Just(1.5), Just(-2.0)], 1..5),
        perm_seed in any::<u64>(),
    ) {
        let reps = [
            Rep::formal("a", 2, true).unwrap(),
            Rep::formal("b", 1, false).unwrap(),
        ];
        let comps: Vec<(Rep, f64)> = shifts
            .iter()
            .enumerate()
            .map(|(i, s)| (reps[i % 2].clone(), *s))
            .collect();
        let mut permuted = comps.clone();
        let n = permuted.len();
        let mut state = perm_seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            permuted.swap(i, (state >> 33) as usize % (i + 1));
        }
        let m1 = rs_factorize(&IsobaricSum::new(comps).unwrap()).pole_order;
        let m2 = rs_factorize(&IsobaricSum::new(permuted).unwrap()).pole_order;
        prop_assert_eq!(m1, m2);
    }

    #[test]
    fn auxiliary_sum_has_double_pole_off_zero(t in prop_oneof![-80.0f64..-1e-3, 1e-3f64..80.0]) {
        for rep in [Rep::trivial(NumberField::rationals()), Rep::delta(50)] {
            prop_assert_eq!(rs_factorize(&build_auxiliary_pi(&rep, t).unwrap()).pole_order, 2);
        }
    }

    #[test]
    fn width_solution_back_substitutes(c in 0.01f64..3.0, a in 0.1f64..5.0, gamma in 1.0f64..1e6, c0 in 0.01f64..1.0) {
        let log_q = 2.0 * (gamma + 3.0).ln();
        let w = width_solver(c, a, log_q, gamma, c0).unwrap();
        if let (WidthStatus::Constrained, Some(beta)) = (w.status, w.beta_max) {
            let tpl = BoundTemplate { a, c };
            let lower = tpl.lower(w.sigma, gamma);
            let upper = tpl.upper(w.sigma, beta, log_q);
            prop_assert!((lower - upper).abs() <= 1e-10 * lower.abs().max(upper.abs()));
        }
    }

    #[test]
    fn rankin_selberg_coefficients_nonnegative(t in -50.0f64..50.0, k in 1u32..=10, idx in 0usize..100) {
        let table = PrimeTable::new(600);
        let p = table.rational_primes()[idx];
        let chi = Rep::character(DirichletCharacter::new(5, 1).unwrap());
        if !chi.is_ramified_at(p) {
            let pi = build_auxiliary_pi(&chi, t).unwrap();
            prop_assert!(rs_lambda_prime_power(&pi, &PrimeIdeal::rational(p), k).unwrap() >= 0.0);
        }
    }
}

#[test]
fn satake_sums_match_eigenvalues() {
    let table = PrimeTable::new(10_000);
    let q = NumberField::rationals();
    for rep in [
        Rep::trivial(q),
        Rep::character(DirichletCharacter::new(4, 1).unwrap()),
        Rep::character(DirichletCharacter::new(7, 2).unwrap()),
        Rep::delta(10_000),
    ] {
        for &p in table.rational_primes() {
            if rep.is_ramified_at(p) {
                continue;
            }
            let ideal = PrimeIdeal::rational(p);
            let sum: Complex64 = rep.satake(&ideal).unwrap().iter().sum();
            assert!((sum - rep.lambda(&ideal).unwrap()).norm() < 1e-12, "{} at {p}", rep.label());
        }
    }
}

#[test]
fn dense_coefficients_are_nonnegative() {
    let table = PrimeTable::new(20_000);
    for t in [0.0, 3.7, 25.0] {
        let pi = build_auxiliary_pi(&Rep::delta(20_000), t).unwrap();
        let coeffs = RSCoefficients::new(&pi, &table, 20_000).unwrap();
        assert!(coeffs.as_slice().iter().all(|&c| c >= 0.0), "t = {t}");
    }
}
