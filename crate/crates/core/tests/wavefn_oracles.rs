use hydrogen_dirac::quantum::{PhysicsConfig, QuantumState};
use hydrogen_dirac::wavefn::{normalize, QuadratureSpec, RadialGrid, RadialSolution};

fn setup(n: i64, kappa: i64) -> (RadialSolution, PhysicsConfig) {
    let cfg = PhysicsConfig::default();
    let s = QuantumState::stretched(n, kappa, &cfg).unwrap();
    (RadialSolution::for_state(&s, &cfg).unwrap(), cfg)
}

/// Least-squares slope of `y` against `x`.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn upper_component_decays_at_rate_lambda() {
    // ψ_a ~ r^{n_r+γ−1} e^{−λr} for large r; fit ln|ψ_a| − (n_r+γ−1) ln r over the last decade
    for (n, kappa) in [(1, -1), (2, -1), (2, 1), (3, -3), (4, 2)] {
        let (sol, cfg) = setup(n, kappa);
        let grid = RadialGrid::default_for(sol.state(), &cfg).unwrap();
        let r_max = *grid.points().last().unwrap();
        let power = f64::from(sol.state().n_r()) + sol.gamma() - 1.0;
        let (x, y): (Vec<f64>, Vec<f64>) = grid
            .points()
            .iter()
            .filter(|&&r| r >= 0.1 * r_max)
            .map(|&r| (r, sol.bispinor(r).unwrap().psi_a.abs().ln() - power * r.ln()))
            .unzip();
        let fitted = slope(&x, &y);
        assert!((fitted / -sol.lambda() - 1.0).abs() < 1e-3, "{n} {kappa}: {fitted} vs {}", -sol.lambda());
    }
}

#[test]
fn normalization_insensitive_to_cutoff() {
    let (sol, cfg) = setup(1, -1);
    let spec = QuadratureSpec::default_for(sol.state(), &cfg).unwrap();
    let a = normalize(&sol, &spec).unwrap();
    let b = normalize(&sol, &QuadratureSpec { r_max: 2.0 * spec.r_max, ..spec }).unwrap();
    assert!(a.constant > 0.0 && a.constant.is_finite());
    assert!((a.constant / b.constant - 1.0).abs() < 1e-10);
}

#[test]
fn excited_s_state_reintegrates_to_one() {
    let (sol, cfg) = setup(2, -1);
    let norm = normalize(&sol, &QuadratureSpec::default_for(sol.state(), &cfg).unwrap()).unwrap();
    // trapezoid in ln r on a fine log grid, independent of the adaptive rule
    let grid = RadialGrid::log_spaced(1e-7 / cfg.alpha(), 400.0 / cfg.alpha(), 200_001).unwrap();
    let f: Vec<f64> = grid
        .points()
        .iter()
        .map(|&r| {
            let b = sol.bispinor(r).unwrap();
            (b.psi_a * b.psi_a + b.psi_b * b.psi_b) * r.powi(3)
        })
        .collect();
    let h = (grid.points()[1] / grid.points()[0]).ln();
    let integral = h * (f.iter().sum::<f64>() - 0.5 * (f[0] + f[f.len() - 1]));
    let total = norm.constant * norm.constant * integral;
    assert!((total - 1.0).abs() < 1e-9, "{total}");
}

#[test]
fn normalized_profiles_scale() {
    let (sol, cfg) = setup(3, 1);
    let grid = RadialGrid::log_spaced(1.0, 100.0, 10).unwrap();
    let norm = normalize(&sol, &QuadratureSpec::default_for(sol.state(), &cfg).unwrap()).unwrap();
    let kind = hydrogen_dirac::wavefn::ProfileKind::PsiA;
    let raw = sol.profile(kind, &grid, 1.0).unwrap();
    let scaled = sol.profile(kind, &grid, norm.constant).unwrap();
    for (a, b) in raw.values.iter().zip(&scaled.values) {
        assert_eq!(a * norm.constant, *b);
    }
    assert_eq!(scaled.normalization, norm.constant);
}
