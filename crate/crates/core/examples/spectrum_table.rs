//! Bound-state energies for n ≤ 4 at the CODATA coupling.

use hydrogen_dirac::spectrum::spectrum_table;
use hydrogen_dirac::PhysicsConfig;

fn main() -> hydrogen_dirac::Result<()> {
    let cfg = PhysicsConfig::default();
    println!("{:<8} {:>4} {:>4} {:>18} {:>14}", "level", "kappa", "n_r", "E/mc^2", "binding (eV)");
    for row in spectrum_table(4, &cfg)? {
        println!(
            "{:<8} {:>4} {:>4} {:>18.10} {:>14.10}",
            row.label, row.kappa, row.n_r, row.energy, row.binding_ev
        );
    }
    Ok(())
}
