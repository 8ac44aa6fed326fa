use hydrogen_dirac::quantum::{derive_gamma, kappa_from_l_j, orbital_l, total_j, PhysicsConfig, QuantumState};
use hydrogen_dirac::spectrum::{energy, quantization_a};
use hydrogen_dirac::verify::{certify, round_trip_ulps, DerivativeOracle, ResidualOptions};
use hydrogen_dirac::wavefn::{conjugate_transform, normalize, sign_changes, QuadratureSpec, RadialGrid, RadialSolution};
use proptest::prelude::*;
use statrs::function::gamma::gamma;

fn kappa_strategy() -> impl Strategy<Value = i32> {
    (1i32..=12, any::<bool>()).prop_map(|(k, neg)| if neg { -k } else { k })
}

/// A valid `(n, κ)` with `n ≤ n_max`.
fn state_strategy(n_max: i64) -> impl Strategy<Value = (i64, i64)> {
    (1..=n_max)
        .prop_flat_map(|n| (Just(n), 1..=n, any::<bool>()))
        .prop_filter_map("kappa > 0 needs n_r >= 1", |(n, k, neg)| {
            let kappa = if neg { -k } else { k };
            (kappa < 0 || n > k).then_some((n, kappa))
        })
}

proptest! {
    #[test]
    fn gamma_closes_with_alpha(kappa in kappa_strategy(), alpha in 0.0..0.9_f64) {
        let g = derive_gamma(kappa, alpha).unwrap();
        let k2 = f64::from(kappa * kappa);
        prop_assert!((g * g + alpha * alpha - k2).abs() <= 4.0 * f64::EPSILON * k2);
    }

    #[test]
    fn energy_and_lambda_on_unit_circle((n, kappa) in state_strategy(12), alpha in 1e-6..0.5_f64) {
        let cfg = PhysicsConfig::with_alpha(alpha).unwrap();
        let s = QuantumState::stretched(n, kappa, &cfg).unwrap();
        let e = energy(&s, &cfg);
        prop_assert!(e.value() > 0.0 && e.value() < 1.0);
        prop_assert!((e.value().powi(2) + e.lambda().powi(2) - 1.0).abs() <= 4.0 * f64::EPSILON);
        let a = quantization_a(&s, &e, &cfg);
        prop_assert!((a + f64::from(s.n_r())).abs() <= 1e-12 * (1.0 + f64::from(s.n())));
    }

    #[test]
    fn levels_degenerate_in_sign_of_kappa(n in 2i64..12, k in 1i64..11, alpha in 1e-4..0.3_f64) {
        prop_assume!(k < n);
        let cfg = PhysicsConfig::with_alpha(alpha).unwrap();
        let a = energy(&QuantumState::stretched(n, -k, &cfg).unwrap(), &cfg);
        let b = energy(&QuantumState::stretched(n, k, &cfg).unwrap(), &cfg);
        prop_assert_eq!(a.value().to_bits(), b.value().to_bits());
    }

    #[test]
    fn energy_rises_with_n_and_with_abs_kappa(n in 1i64..10, k in 1i64..10, alpha in 1e-2..0.3_f64) {
        prop_assume!(k <= n);
        let cfg = PhysicsConfig::with_alpha(alpha).unwrap();
        let e = |n: i64, k: i64| energy(&QuantumState::stretched(n, -k, &cfg).unwrap(), &cfg).value();
        prop_assert!(e(n + 1, k) > e(n, k));
        if k < n {
            prop_assert!(e(n, k + 1) > e(n, k));
        }
    }

    #[test]
    fn l_j_kappa_round_trip(kappa in kappa_strategy()) {
        prop_assert_eq!(kappa_from_l_j(orbital_l(kappa), total_j(kappa)), Some(kappa));
    }

    #[test]
    fn conjugate_transform_inverts(psi_a in -1e3..1e3_f64, psi_b in -1e3..1e3_f64, alpha in 1e-4..0.3_f64, n in 1i64..6) {
        let cfg = PhysicsConfig::with_alpha(alpha).unwrap();
        let s = QuantumState::stretched(n, -1, &cfg).unwrap();
        let e = energy(&s, &cfg);
        let (g, gt) = conjugate_transform(psi_a, psi_b, &e).unwrap();
        let sp = (1.0 + e.value()).sqrt();
        let sm = e.lambda() / sp;
        let back_a = sp * (g + gt);
        let back_b = sm * (g - gt);
        prop_assert!((back_a - psi_a).abs() <= 8.0 * f64::EPSILON * (psi_a.abs() + psi_b.abs() * sp / sm));
        prop_assert!((back_b - psi_b).abs() <= 8.0 * f64::EPSILON * (psi_b.abs() + psi_a.abs() * sm / sp));
    }

    #[test]
    fn exact_solutions_certify_at_any_coupling((n, kappa) in state_strategy(3), alpha in 1e-4..0.2_f64) {
        let cfg = PhysicsConfig::with_alpha(alpha).unwrap();
        let s = QuantumState::stretched(n, kappa, &cfg).unwrap();
        let sol = RadialSolution::for_state(&s, &cfg).unwrap();
        let grid = RadialGrid::log_spaced(1e-3 / alpha, 40.0 * (n * n) as f64 / alpha, 300).unwrap();
        for report in certify(&sol, &grid, DerivativeOracle::Analytic, &ResidualOptions::default()).unwrap() {
            prop_assert!(report.passed, "{} {}", report.equation, report.relative_norm);
        }
        prop_assert!(round_trip_ulps(&sol, &grid).unwrap() <= 8.0);
    }
}

#[test]
fn node_counts() {
    let cfg = PhysicsConfig::default();
    for s in QuantumState::enumerate(5, &cfg).unwrap() {
        let sol = RadialSolution::for_state(&s, &cfg).unwrap();
        let grid = RadialGrid::log_spaced(1e-4 / cfg.alpha(), 60.0 * f64::from(s.n() * s.n()) / cfg.alpha(), 6000).unwrap();
        let phi: Vec<f64> = grid.points().iter().map(|&r| sol.phi(r).unwrap()).collect();
        let upper: Vec<f64> = grid.points().iter().map(|&r| sol.bispinor(r).unwrap().psi_a).collect();
        assert_eq!(sign_changes(&phi), s.n_r() as usize, "{}", s.label());
        assert_eq!(sign_changes(&upper), (s.n() - s.l() - 1) as usize, "{}", s.label());
        let finer: Vec<f64> = grid.refined().points().iter().map(|&r| sol.bispinor(r).unwrap().psi_a).collect();
        assert_eq!(sign_changes(&finer), sign_changes(&upper));
    }
}

#[test]
fn ground_state_normalization_closed_form() {
    // ψ_a² + ψ_b² = 2 r^{2γ−2} e^{−2λr}, so ∫(…) r² dr = 2Γ(2γ+1)/(2λ)^{2γ+1}
    for alpha in [1e-3, 7.297_352_569_3e-3, 0.05, 0.3] {
        let cfg = PhysicsConfig::with_alpha(alpha).unwrap();
        let s = QuantumState::stretched(1, -1, &cfg).unwrap();
        let sol = RadialSolution::for_state(&s, &cfg).unwrap();
        let norm = normalize(&sol, &QuadratureSpec::default_for(&s, &cfg).unwrap()).unwrap();
        let g = sol.gamma();
        let expected = 2.0 * gamma(2.0 * g + 1.0) / (2.0 * sol.lambda()).powf(2.0 * g + 1.0);
        assert!((norm.integral / expected - 1.0).abs() < 1e-11, "alpha {alpha}: {} vs {expected}", norm.integral);
    }
}
