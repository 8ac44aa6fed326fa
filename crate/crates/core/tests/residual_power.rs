//! The residual checks must reject near-miss functions, not only accept the
//! exact ones.

use hydrogen_dirac::quantum::{PhysicsConfig, QuantumState};
use hydrogen_dirac::verify::{
    conjugate_first_order_from_samples, conjugate_samples, dirac_radial_from_samples, dirac_samples,
    phi_tilde_relation_from_samples, residual_conjugate_first_order, residual_second_order,
    residual_second_order_without_gamma, second_order_from_samples, DerivativeOracle, EquationScalars,
    ResidualOptions,
};
use hydrogen_dirac::wavefn::{RadialGrid, RadialJet, RadialSolution};

const ORACLES: [DerivativeOracle; 2] = [DerivativeOracle::Analytic, DerivativeOracle::FiniteDifference];

fn setup(n: i64, kappa: i64) -> (RadialSolution, RadialGrid) {
    let cfg = PhysicsConfig::default();
    let s = QuantumState::stretched(n, kappa, &cfg).unwrap();
    (RadialSolution::for_state(&s, &cfg).unwrap(), RadialGrid::default_for(&s, &cfg).unwrap())
}

/// `1 + 0.01·αr`.
fn perturbation(alpha: f64) -> impl Fn(f64) -> RadialJet {
    move |r| RadialJet {
        value: 1.0 + 0.01 * alpha * r,
        d1: 0.01 * alpha,
        d2: 0.0,
    }
}

#[test]
fn perturbed_phi_fails_every_family() {
    let opts = ResidualOptions::default();
    for (n, kappa) in [(1, -1), (2, 1), (3, -2), (4, 3)] {
        let (sol, grid) = setup(n, kappa);
        let scalars = EquationScalars::from(&sol);
        for oracle in ORACLES {
            let (phi, phi_tilde) = conjugate_samples(&sol, &grid, oracle).unwrap();
            let bent = phi.multiplied_by(&grid, perturbation(sol.alpha()));
            let exact = conjugate_first_order_from_samples(&scalars, sol.state(), &grid, &phi, &phi_tilde, oracle, &opts).unwrap();
            let wrong = conjugate_first_order_from_samples(&scalars, sol.state(), &grid, &bent, &phi_tilde, oracle, &opts).unwrap();
            // the verdict flips at the analytic tolerance; the finite-difference
            // tolerance is looser than some of these signals, the ratio is not
            let strict = oracle == DerivativeOracle::Analytic;
            assert!(exact[0].passed && (!wrong[0].passed || !strict), "{n} {kappa} {oracle:?}");
            assert!(wrong[0].relative_norm > 1e3 * exact[0].relative_norm);

            assert!(wrong[1].relative_norm > 1e3 * exact[1].relative_norm || n == 1);

            let exact = second_order_from_samples(&scalars, sol.state(), &grid, &phi, true, oracle, &opts).unwrap();
            let wrong = second_order_from_samples(&scalars, sol.state(), &grid, &bent, true, oracle, &opts).unwrap();
            assert!(exact.passed && (!wrong.passed || !strict), "{n} {kappa} {oracle:?}");
            assert!(wrong.relative_norm > 1e3 * exact.relative_norm);

            let exact = phi_tilde_relation_from_samples(&scalars, sol.state(), &grid, &phi, &phi_tilde, oracle, &opts).unwrap();
            let wrong = phi_tilde_relation_from_samples(&scalars, sol.state(), &grid, &bent, &phi_tilde, oracle, &opts).unwrap();
            assert!(exact.passed && (!wrong.passed || !strict));
            assert!(wrong.relative_norm > 1e3 * exact.relative_norm);
        }
    }
}

#[test]
fn perturbed_upper_component_fails_dirac_system() {
    let opts = ResidualOptions::default();
    for (n, kappa) in [(1, -1), (2, 1), (4, -3)] {
        let (sol, grid) = setup(n, kappa);
        let scalars = EquationScalars::from(&sol);
        for oracle in ORACLES {
            let (upper, lower) = dirac_samples(&sol, &grid, oracle).unwrap();
            let bent = upper.multiplied_by(&grid, perturbation(sol.alpha()));
            let exact = dirac_radial_from_samples(&scalars, sol.state(), &grid, &upper, &lower, oracle, &opts).unwrap();
            let wrong = dirac_radial_from_samples(&scalars, sol.state(), &grid, &bent, &lower, oracle, &opts).unwrap();
            for (e, w) in exact.iter().zip(&wrong) {
                assert!(e.passed && (!w.passed || oracle == DerivativeOracle::FiniteDifference), "{n} {kappa} {oracle:?} {}", e.equation);
                assert!(w.relative_norm > 1e3 * e.relative_norm);
            }
        }
    }
}

#[test]
fn relative_norm_is_scale_invariant() {
    let opts = ResidualOptions::default();
    let (sol, grid) = setup(2, -1);
    let scalars = EquationScalars::from(&sol);
    let oracle = DerivativeOracle::Analytic;
    let (phi, phi_tilde) = conjugate_samples(&sol, &grid, oracle).unwrap();
    let bent = phi.multiplied_by(&grid, perturbation(sol.alpha()));
    let base = phi_tilde_relation_from_samples(&scalars, sol.state(), &grid, &bent, &phi_tilde, oracle, &opts).unwrap();
    let tenfold =
        phi_tilde_relation_from_samples(&scalars, sol.state(), &grid, &bent.scaled(10.0), &phi_tilde.scaled(10.0), oracle, &opts)
            .unwrap();
    assert!((base.relative_norm / tenfold.relative_norm - 1.0).abs() < 1e-12);
}

#[test]
fn flipped_kappa_fails() {
    let opts = ResidualOptions::default();
    for (n, kappa) in [(1, -1), (2, 1), (3, -2)] {
        let (sol, grid) = setup(n, kappa);
        let mut scalars = EquationScalars::from(&sol);
        scalars.kappa = -scalars.kappa;
        let oracle = DerivativeOracle::Analytic;
        let (phi, phi_tilde) = conjugate_samples(&sol, &grid, oracle).unwrap();
        let (upper, lower) = dirac_samples(&sol, &grid, oracle).unwrap();
        let conj = conjugate_first_order_from_samples(&scalars, sol.state(), &grid, &phi, &phi_tilde, oracle, &opts).unwrap();
        assert!(conj.iter().any(|r| !r.passed));
        let dirac = dirac_radial_from_samples(&scalars, sol.state(), &grid, &upper, &lower, oracle, &opts).unwrap();
        assert!(dirac.iter().all(|r| !r.passed));
    }
}

#[test]
fn wrong_lower_sign_fails_dirac_system() {
    let opts = ResidualOptions::default();
    let (sol, grid) = setup(2, -1);
    let scalars = EquationScalars::from(&sol);
    let (upper, lower) = dirac_samples(&sol, &grid, DerivativeOracle::Analytic).unwrap();
    let flipped = lower.scaled(-1.0);
    let reports = dirac_radial_from_samples(&scalars, sol.state(), &grid, &upper, &flipped, DerivativeOracle::Analytic, &opts).unwrap();
    assert!(reports.iter().all(|r| !r.passed));
}

#[test]
fn gamma_term_is_needed() {
    let opts = ResidualOptions::default();
    for (n, kappa) in [(1, -1), (2, -1), (2, 1), (3, 2)] {
        let (sol, grid) = setup(n, kappa);
        for oracle in ORACLES {
            let with = residual_second_order(&sol, &grid, oracle, &opts).unwrap();
            let without = residual_second_order_without_gamma(&sol, &grid, oracle, &opts).unwrap();
            assert!(with.passed && !without.passed, "{n} {kappa} {oracle:?}");
        }
    }
    let (sol, grid) = setup(1, -1);
    let without = residual_second_order_without_gamma(&sol, &grid, DerivativeOracle::Analytic, &opts).unwrap();
    assert!(without.relative_norm > 1e-3, "{}", without.relative_norm);
}

#[test]
fn finite_difference_residual_converges_under_refinement() {
    let opts = ResidualOptions::default();
    let (sol, coarse) = setup(3, -2);
    let fine = coarse.refined();
    let a = residual_conjugate_first_order(&sol, &coarse, DerivativeOracle::FiniteDifference, &opts).unwrap();
    let b = residual_conjugate_first_order(&sol, &fine, DerivativeOracle::FiniteDifference, &opts).unwrap();
    for (x, y) in a.iter().zip(&b) {
        let ratio = x.relative_norm / y.relative_norm;
        assert!(ratio > 10.0, "{} ratio {ratio}", x.equation);
    }
}

#[test]
fn edge_exclusion_only_for_finite_differences() {
    let opts = ResidualOptions::default();
    let (sol, grid) = setup(1, -1);
    let a = residual_second_order(&sol, &grid, DerivativeOracle::Analytic, &opts).unwrap();
    let f = residual_second_order(&sol, &grid, DerivativeOracle::FiniteDifference, &opts).unwrap();
    assert_eq!(a.evaluated, (0, grid.len()));
    assert_eq!(f.evaluated, (40, grid.len() - 40));
}
