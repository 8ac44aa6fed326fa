//! Residuals of every radial equation for a few states, with analytic and
//! finite-difference derivatives, and what happens when the spin term is
//! dropped.

use hydrogen_dirac::verify::{certify, residual_second_order_without_gamma, DerivativeOracle, ResidualOptions};
use hydrogen_dirac::{PhysicsConfig, QuantumState, RadialGrid, RadialSolution};

fn main() -> hydrogen_dirac::Result<()> {
    let cfg = PhysicsConfig::default();
    let opts = ResidualOptions::default();
    for (n, kappa) in [(1, -1), (2, 1), (3, -2), (4, 3)] {
        let state = QuantumState::stretched(n, kappa, &cfg)?;
        let sol = RadialSolution::for_state(&state, &cfg)?;
        let grid = RadialGrid::default_for(&state, &cfg)?;
        println!("{}", state.label());
        for oracle in [DerivativeOracle::Analytic, DerivativeOracle::FiniteDifference] {
            for report in certify(&sol, &grid, oracle, &opts)? {
                println!(
                    "  {:<24} {:<18} {:.3e} {}",
                    report.equation.as_str(),
                    oracle.as_str(),
                    report.relative_norm,
                    if report.passed { "ok" } else { "FAIL" }
                );
            }
        }
    }

    let ground = QuantumState::stretched(1, -1, &cfg)?;
    let sol = RadialSolution::for_state(&ground, &cfg)?;
    let grid = RadialGrid::default_for(&ground, &cfg)?;
    let kg = residual_second_order_without_gamma(&sol, &grid, DerivativeOracle::Analytic, &opts)?;
    println!("\n1s1/2 without the spin term: {:.3e}", kg.relative_norm);
    Ok(())
}
