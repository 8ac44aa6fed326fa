//! Fine-structure splittings and the α⁴ expansion of the spectrum.

use hydrogen_dirac::quantum::convert_energy;
use hydrogen_dirac::spectrum::{energy, fine_structure_splitting, sommerfeld_expansion};
use hydrogen_dirac::{PhysicsConfig, QuantumState};

fn main() -> hydrogen_dirac::Result<()> {
    let cfg = PhysicsConfig::default();
    let alpha = cfg.alpha();

    let split = fine_structure_splitting(2, -2, 1, &cfg)?;
    println!("E(2p3/2) - E(2p1/2) = {split:.6e} eV");
    println!("m c^2 alpha^4 / 32  = {:.6e} eV", cfg.rest_energy_ev() * alpha.powi(4) / 32.0);

    let s = energy(&QuantumState::stretched(2, -1, &cfg)?, &cfg);
    let p = energy(&QuantumState::stretched(2, 1, &cfg)?, &cfg);
    println!("2s1/2 and 2p1/2 identical: {}", s.value() == p.value());

    println!("\nexact vs expansion through alpha^4 (in units of alpha^6):");
    for state in QuantumState::enumerate(3, &cfg)? {
        let e = energy(&state, &cfg);
        let approx = sommerfeld_expansion(state.n(), state.j(), &cfg)?;
        println!(
            "  {:<7} binding {:>12.8} eV   (E - E_exp)/alpha^6 = {:+.4}",
            state.label(),
            convert_energy(&e, &cfg).binding,
            (e.value() - approx) / alpha.powi(6)
        );
    }

    // hydrogen-like ions: α → Zα
    let uranium = cfg.with_nuclear_charge(92)?;
    let ground = energy(&QuantumState::stretched(1, -1, &uranium)?, &uranium);
    println!("\nZ = 92 ground state: E/mc^2 = {:.8}", ground.value());
    Ok(())
}
