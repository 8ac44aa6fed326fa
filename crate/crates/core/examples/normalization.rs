//! Normalization constants and orthogonality of same-κ states.

use hydrogen_dirac::wavefn::{normalize, overlap, QuadratureSpec};
use hydrogen_dirac::{PhysicsConfig, QuantumState, RadialSolution};

fn main() -> hydrogen_dirac::Result<()> {
    let cfg = PhysicsConfig::default();
    let kappa = -1;
    let mut states = Vec::new();
    for n in 1..=4 {
        let state = QuantumState::stretched(n, kappa, &cfg)?;
        let sol = RadialSolution::for_state(&state, &cfg)?;
        let spec = QuadratureSpec::default_for(&state, &cfg)?;
        let norm = normalize(&sol, &spec)?;
        println!(
            "{}: N = {:.10e}  (integral {:.6e}, error bound {:.1e})",
            state.label(),
            norm.constant,
            norm.integral,
            norm.error_bound
        );
        states.push((sol, norm, spec));
    }
    println!("\noverlaps:");
    for (i, (a, na, _)) in states.iter().enumerate() {
        for (b, nb, spec) in &states[i..] {
            let ov = overlap(a, na, b, nb, spec);
            println!("  <{}|{}> = {:+.3e}", a.state().label(), b.state().label(), ov.value);
        }
    }
    Ok(())
}
