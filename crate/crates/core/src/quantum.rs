//! Physical constants, quantum-number bookkeeping and the derived scalars
//! `γ = √(κ² − α²)` and `λ = √(1 − E²)`.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// CODATA 2018 fine-structure constant.
pub const CODATA_ALPHA: f64 = 7.297_352_569_3e-3;

/// Electron rest energy `m₀c²` in eV.
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.95;

/// Dimensional context. Internally `ħ = c = m₀ = 1`; `rest_energy_ev` is only
/// used when converting energies to eV at output boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicsConfig {
    alpha: f64,
    rest_energy_ev: f64,
}

impl PhysicsConfig {
    /// `alpha = 0` is accepted as the free-particle limit: energies are then
    /// exactly `m₀c²` and no normalizable wave function exists.
    pub fn new(alpha: f64, rest_energy_ev: f64) -> Result<Self> {
        if !(alpha.is_finite() && (0.0..1.0).contains(&alpha)) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if !(rest_energy_ev.is_finite() && rest_energy_ev > 0.0) {
            return Err(Error::InvalidRestEnergy(rest_energy_ev));
        }
        Ok(Self {
            alpha,
            rest_energy_ev,
        })
    }

    pub fn with_alpha(alpha: f64) -> Result<Self> {
        Self::new(alpha, ELECTRON_REST_ENERGY_EV)
    }

    /// Hydrogen-like ion with nuclear charge `z`: the coupling becomes `Zα`.
    pub fn with_nuclear_charge(self, z: u32) -> Result<Self> {
        Self::new(self.alpha * f64::from(z), self.rest_energy_ev)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rest_energy_ev(&self) -> f64 {
        self.rest_energy_ev
    }

    /// Bohr radius in reduced Compton wavelengths.
    pub fn bohr_radius(&self) -> f64 {
        1.0 / self.alpha
    }
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self {
            alpha: CODATA_ALPHA,
            rest_energy_ev: ELECTRON_REST_ENERGY_EV,
        }
    }
}

/// A half-integer (or integer) stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_twice(twice: i32) -> Self {
        Self(twice)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_half_odd(self) -> bool {
        self.0 % 2 != 0
    }

    pub const fn abs(self) -> Self {
        Self(self.0.abs())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `γ = √(κ² − α²)`.
pub fn derive_gamma(kappa: i32, alpha: f64) -> Result<f64> {
    if kappa == 0 {
        return Err(Error::InvalidArgument("kappa = 0 is not a Dirac state".into()));
    }
    let k = f64::from(kappa.abs());
    if !(alpha.is_finite() && alpha >= 0.0 && alpha < k) {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must lie in [0, |kappa| = {k})"
        )));
    }
    // (k − α)(k + α) keeps the relative accuracy when α ≪ k.
    Ok(((k - alpha) * (k + alpha)).sqrt())
}

/// Orbital angular momentum carried by the spinor with quantum number `kappa`.
pub fn orbital_l(kappa: i32) -> u32 {
    if kappa > 0 {
        kappa as u32
    } else {
        (-kappa - 1) as u32
    }
}

/// Total angular momentum `j = |κ| − 1/2`.
pub fn total_j(kappa: i32) -> HalfInt {
    HalfInt::from_twice(2 * kappa.abs() - 1)
}

/// Inverse of `(l, j) ↦ κ`: `κ = −(l+1)` for `j = l + 1/2`, `κ = l` for `j = l − 1/2`.
pub fn kappa_from_l_j(l: u32, j: HalfInt) -> Option<i32> {
    let l2 = 2 * l as i32;
    match j.twice() - l2 {
        1 => Some(-(l as i32) - 1),
        -1 if l > 0 => Some(l as i32),
        _ => None,
    }
}

/// One bound state `(n, κ, m_j)` with its derived labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumState {
    n: u32,
    kappa: i32,
    m_j: HalfInt,
    n_r: u32,
    l: u32,
    j: HalfInt,
    gamma: f64,
}

impl QuantumState {
    pub fn new(n: i64, kappa: i64, m_j: HalfInt, config: &PhysicsConfig) -> Result<Self> {
        let invalid = |reason| Error::InvalidState {
            n,
            kappa,
            m_j: m_j.to_string(),
            reason,
        };
        if n < 1 {
            return Err(invalid("n must be at least 1"));
        }
        if kappa == 0 {
            return Err(invalid("kappa must be nonzero"));
        }
        if kappa.abs() > n {
            return Err(invalid("|kappa| must not exceed n"));
        }
        if n > i64::from(i32::MAX / 2) {
            return Err(invalid("n out of range"));
        }
        let (n, kappa) = (n as u32, kappa as i32);
        let n_r = n - kappa.unsigned_abs();
        if kappa > 0 && n_r == 0 {
            return Err(invalid("kappa > 0 requires n_r >= 1"));
        }
        let j = total_j(kappa);
        if !m_j.is_half_odd() {
            return Err(invalid("m_j must be half-odd-integer"));
        }
        if m_j.abs() > j {
            return Err(invalid("|m_j| must not exceed j"));
        }
        let gamma = derive_gamma(kappa, config.alpha())?;
        Ok(Self {
            n,
            kappa,
            m_j,
            n_r,
            l: orbital_l(kappa),
            j,
            gamma,
        })
    }

    /// The state with `m_j = +j`; radial quantities do not depend on `m_j`.
    pub fn stretched(n: i64, kappa: i64, config: &PhysicsConfig) -> Result<Self> {
        let m_j = if kappa == 0 {
            HalfInt::from_twice(1)
        } else {
            HalfInt::from_twice((2 * kappa.abs() - 1).min(i64::from(i32::MAX)) as i32)
        };
        Self::new(n, kappa, m_j, config)
    }

    /// Every `(n, κ)` with `n ≤ n_max`, ordered by `(n, |κ|, κ)`.
    pub fn enumerate(n_max: u32, config: &PhysicsConfig) -> Result<Vec<Self>> {
        let mut states = Vec::new();
        for n in 1..=i64::from(n_max) {
            for k in 1..=n {
                for kappa in [-k, k] {
                    if kappa > 0 && k == n {
                        continue;
                    }
                    states.push(Self::stretched(n, kappa, config)?);
                }
            }
        }
        Ok(states)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn m_j(&self) -> HalfInt {
        self.m_j
    }

    pub fn n_r(&self) -> u32 {
        self.n_r
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Spectroscopic label such as `2p3/2`.
    pub fn label(&self) -> String {
        const LETTERS: &[u8] = b"spdfghiklmnoqrtuvwxyz";
        let letter = LETTERS
            .get(self.l as usize)
            .map(|&c| char::from(c).to_string())
            .unwrap_or_else(|| format!("[l={}]", self.l));
        format!("{}{}{}/2", self.n, letter, self.j.twice())
    }
}

/// Total energy `E/m₀c²` together with `λ = √(1 − E²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyValue {
    value: f64,
    lambda: f64,
}

impl EnergyValue {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0 && value <= 1.0) {
            return Err(Error::InvalidEnergy(value));
        }
        Ok(Self {
            value,
            lambda: ((1.0 - value) * (1.0 + value)).sqrt(),
        })
    }

    /// Caller guarantees `value² + lambda² = 1`.
    pub(crate) fn from_parts(value: f64, lambda: f64) -> Self {
        Self { value, lambda }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Total and binding energy in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyEv {
    pub total: f64,
    pub binding: f64,
}

pub fn convert_energy(energy: &EnergyValue, config: &PhysicsConfig) -> EnergyEv {
    EnergyEv {
        total: energy.value * config.rest_energy_ev,
        binding: (1.0 - energy.value) * config.rest_energy_ev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn gamma_limits_and_errors() {
        assert_eq!(derive_gamma(-1, 0.0).unwrap(), 1.0);
        let g = derive_gamma(-1, CODATA_ALPHA).unwrap();
        assert!((g - 0.999_973_373_968_266_9).abs() < 1e-15);
        assert!(derive_gamma(0, CODATA_ALPHA).is_err());
        assert!(derive_gamma(1, 1.0).is_err());
        assert!(derive_gamma(2, 1.5).is_ok());
    }

    #[test]
    fn ground_state_bookkeeping() {
        let cfg = PhysicsConfig::default();
        let s = QuantumState::new(1, -1, half(1), &cfg).unwrap();
        assert_eq!((s.n_r(), s.l(), s.j()), (0, 0, half(1)));
        assert_eq!(s.label(), "1s1/2");

        let p = QuantumState::new(2, -2, half(3), &cfg).unwrap();
        assert_eq!((p.n_r(), p.l(), p.j()), (0, 1, half(3)));
        assert_eq!(p.label(), "2p3/2");
    }

    #[test]
    fn rejected_states() {
        let cfg = PhysicsConfig::default();
        for (n, kappa, mj) in [(1, 1, 1), (0, -1, 1), (2, 0, 1), (1, -2, 1), (2, -1, 3), (2, -2, 2)] {
            assert!(QuantumState::new(n, kappa, half(mj), &cfg).is_err(), "{n} {kappa} {mj}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let cfg = PhysicsConfig::default();
        let labels: Vec<_> = QuantumState::enumerate(2, &cfg)
            .unwrap()
            .iter()
            .map(QuantumState::label)
            .collect();
        assert_eq!(labels, ["1s1/2", "2s1/2", "2p1/2", "2p3/2"]);
        // 2n − 1 states per shell
        assert_eq!(QuantumState::enumerate(5, &cfg).unwrap().len(), 25);
    }

    #[test]
    fn l_j_reconstruct_kappa() {
        for kappa in (-30..=30).filter(|&k| k != 0) {
            assert_eq!(kappa_from_l_j(orbital_l(kappa), total_j(kappa)), Some(kappa));
        }
    }

    #[test]
    fn energy_conversion() {
        let cfg = PhysicsConfig::default();
        let one = convert_energy(&EnergyValue::new(1.0).unwrap(), &cfg);
        assert_eq!(one.binding, 0.0);
        let half = convert_energy(&EnergyValue::new(0.5).unwrap(), &cfg);
        assert!((half.binding - 255_499.475).abs() < 1e-9);
        let ground = convert_energy(&EnergyValue::new(0.999_973_374_4).unwrap(), &cfg);
        assert!((ground.binding - 13.6057).abs() < 5e-4);
        assert!(EnergyValue::new(1.5).is_err());
        assert!(EnergyValue::new(0.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(PhysicsConfig::with_alpha(1.0).is_err());
        assert!(PhysicsConfig::with_alpha(-0.1).is_err());
        assert!(PhysicsConfig::with_alpha(0.0).is_ok());
        assert!(PhysicsConfig::new(0.01, 0.0).is_err());
        let u = PhysicsConfig::default().with_nuclear_charge(92).unwrap();
        assert!((u.alpha() - 92.0 * CODATA_ALPHA).abs() < 1e-15);
        assert!(PhysicsConfig::default().with_nuclear_charge(140).is_err());
    }
}
