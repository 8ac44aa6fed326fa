//! The conjugate radial functions g, g̃ of one state, the bi-spinor
//! components built from them, and the round trip back.

use hydrogen_dirac::verify::round_trip_ulps;
use hydrogen_dirac::wavefn::conjugate_transform;
use hydrogen_dirac::{PhysicsConfig, QuantumState, RadialGrid, RadialSolution};

fn main() -> hydrogen_dirac::Result<()> {
    let cfg = PhysicsConfig::default();
    let state = QuantumState::stretched(3, 1, &cfg)?;
    let sol = RadialSolution::for_state(&state, &cfg)?;
    let eta = sol.eta();
    println!("{}: E = {:.12}, lambda = {:.6e}", state.label(), sol.energy().value(), sol.lambda());
    println!("eta1 = {:.6e}, eta2 = {:.6e} (direct form {:.6e})", eta.eta1, eta.eta2, eta.eta2_direct);

    println!("\n{:>12} {:>14} {:>14} {:>14} {:>14}", "r (a0)", "g", "g~", "psi_a", "psi_b");
    for r_bohr in [0.1, 1.0, 3.0, 10.0, 30.0] {
        let r = r_bohr * cfg.bohr_radius();
        let b = sol.bispinor(r)?;
        println!(
            "{r_bohr:>12} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
            sol.phi(r)?,
            sol.phi_tilde(r)?,
            b.psi_a,
            b.psi_b
        );
        let (g, gt) = conjugate_transform(b.psi_a, b.psi_b, sol.energy())?;
        assert!((g - sol.phi(r)?).abs() <= 1e-14 * (g.abs() + gt.abs()));
    }

    let grid = RadialGrid::default_for(&state, &cfg)?;
    println!("\nworst round trip over {} points: {:.2} ulp", grid.len(), round_trip_ulps(&sol, &grid)?);
    Ok(())
}
