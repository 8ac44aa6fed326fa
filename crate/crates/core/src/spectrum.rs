//! Bound-state energies from the polynomial-termination condition of the
//! Kummer series, `αE/λ = γ + n_r`.

use serde::Serialize;

use crate::quantum::{convert_energy, derive_gamma, EnergyValue, HalfInt, PhysicsConfig, QuantumState};
use crate::{Error, Result};

/// `E/m₀c² = [1 + α²/(n_r + γ)²]^{−1/2}`, evaluated as
/// `(n_r + γ)/√((n_r + γ)² + α²)` with `λ = α/√((n_r + γ)² + α²)`, which avoids
/// the cancellation in `1 + α²/(…)²` and in `1 − E²`.
pub fn energy(state: &QuantumState, config: &PhysicsConfig) -> EnergyValue {
    let alpha = config.alpha();
    let gamma = derive_gamma(state.kappa(), alpha).expect("state validated against |kappa| >= 1 > alpha");
    let shifted = f64::from(state.n_r()) + gamma;
    let root = shifted.hypot(alpha);
    EnergyValue::from_parts(shifted / root, alpha / root)
}

/// The Kummer parameter `a = γ − αE/λ`; equals `−n_r` for a bound state.
/// Requires `α > 0` (otherwise `λ = 0`).
pub fn quantization_a(state: &QuantumState, energy: &EnergyValue, config: &PhysicsConfig) -> f64 {
    let gamma = derive_gamma(state.kappa(), config.alpha()).expect("validated state");
    gamma - config.alpha() * energy.value() / energy.lambda()
}

/// `E(n, κ_a) − E(n, κ_b)` in eV.
pub fn fine_structure_splitting(n: u32, kappa_a: i32, kappa_b: i32, config: &PhysicsConfig) -> Result<f64> {
    let a = QuantumState::stretched(n.into(), kappa_a.into(), config)?;
    let b = QuantumState::stretched(n.into(), kappa_b.into(), config)?;
    let ea = convert_energy(&energy(&a, config), config).total;
    let eb = convert_energy(&energy(&b, config), config).total;
    Ok(ea - eb)
}

/// Expansion of the exact spectrum through `α⁴`:
/// `1 − α²/2n² − (α⁴/2n⁴)(n/(j+½) − ¾)`.
pub fn sommerfeld_expansion(n: u32, j: HalfInt, config: &PhysicsConfig) -> Result<f64> {
    if n == 0 || j.twice() < 1 || !j.is_half_odd() || j.twice() > 2 * n as i32 - 1 {
        return Err(Error::InvalidArgument(format!("no level with n = {n}, j = {j}")));
    }
    let a2 = config.alpha().powi(2);
    let nf = f64::from(n);
    let n2 = nf * nf;
    Ok(1.0 - a2 / (2.0 * n2) - a2 * a2 / (2.0 * n2 * n2) * (nf / (j.value() + 0.5) - 0.75))
}

/// One line of the spectrum table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub kappa: i32,
    pub l: u32,
    pub j: HalfInt,
    pub label: String,
    pub n_r: u32,
    pub energy: f64,
    pub lambda: f64,
    pub binding_ev: f64,
}

impl SpectrumRow {
    pub fn new(state: &QuantumState, config: &PhysicsConfig) -> Self {
        let e = energy(state, config);
        Self {
            n: state.n(),
            kappa: state.kappa(),
            l: state.l(),
            j: state.j(),
            label: state.label(),
            n_r: state.n_r(),
            energy: e.value(),
            lambda: e.lambda(),
            binding_ev: convert_energy(&e, config).binding,
        }
    }
}

/// All levels with `n ≤ n_max`, ordered by `(n, |κ|, κ)`.
pub fn spectrum_table(n_max: u32, config: &PhysicsConfig) -> Result<Vec<SpectrumRow>> {
    Ok(QuantumState::enumerate(n_max, config)?
        .iter()
        .map(|s| SpectrumRow::new(s, config))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::CODATA_ALPHA;

    fn state(n: i64, kappa: i64) -> QuantumState {
        QuantumState::stretched(n, kappa, &PhysicsConfig::default()).unwrap()
    }

    #[test]
    fn ground_state_closed_form() {
        let cfg = PhysicsConfig::default();
        let e = energy(&state(1, -1), &cfg);
        let direct = (1.0 - CODATA_ALPHA * CODATA_ALPHA).sqrt();
        assert!((e.value() - direct).abs() <= 2.0 * f64::EPSILON);
        // the printed form, evaluated literally
        let gamma = direct;
        let literal = (1.0 + CODATA_ALPHA * CODATA_ALPHA / (gamma * gamma)).powf(-0.5);
        assert!((e.value() - literal).abs() < 1e-15);
        assert!((e.lambda().powi(2) + e.value().powi(2) - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn zero_coupling_limit() {
        let cfg = PhysicsConfig::with_alpha(0.0).unwrap();
        for s in QuantumState::enumerate(3, &cfg).unwrap() {
            let e = energy(&s, &cfg);
            assert_eq!((e.value(), e.lambda()), (1.0, 0.0));
        }
    }

    #[test]
    fn kummer_parameter_is_minus_n_r() {
        let cfg = PhysicsConfig::default();
        for (n, k, expected) in [(1, -1, 0.0), (2, -1, -1.0), (3, 2, -1.0), (4, -1, -3.0)] {
            let s = state(n, k);
            let a = quantization_a(&s, &energy(&s, &cfg), &cfg);
            assert!((a - expected).abs() < 1e-12, "{n} {k}: {a}");
        }
    }

    #[test]
    fn splitting_signs() {
        let cfg = PhysicsConfig::default();
        let d = fine_structure_splitting(2, -2, 1, &cfg).unwrap();
        assert!((d - 4.53e-5).abs() < 0.02 * 4.53e-5, "{d}");
        assert_eq!(fine_structure_splitting(2, -1, 1, &cfg).unwrap(), 0.0);
        assert!(fine_structure_splitting(3, -3, 2, &cfg).unwrap() > 0.0);
        assert!(fine_structure_splitting(2, 2, 1, &cfg).is_err());
    }

    #[test]
    fn expansion_ground_state() {
        let cfg = PhysicsConfig::default();
        let a2 = CODATA_ALPHA * CODATA_ALPHA;
        let e = sommerfeld_expansion(1, HalfInt::from_twice(1), &cfg).unwrap();
        assert!((e - (1.0 - a2 / 2.0 - a2 * a2 / 8.0)).abs() < 1e-16);
        let free = PhysicsConfig::with_alpha(0.0).unwrap();
        assert_eq!(sommerfeld_expansion(3, HalfInt::from_twice(5), &free).unwrap(), 1.0);
        assert!(sommerfeld_expansion(1, HalfInt::from_twice(3), &cfg).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = spectrum_table(2, &PhysicsConfig::default()).unwrap();
        let labels: Vec<_> = rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["1s1/2", "2s1/2", "2p1/2", "2p3/2"]);
        assert_eq!(rows[1].energy, rows[2].energy);
    }
}
