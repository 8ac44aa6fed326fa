//! Closed-form radial parts of the conjugate spinors `Φ = g(r)𝒴_{κm}`,
//! `Φ̃ = g̃(r)𝒴_{κm}` and of the bi-spinor components built from them.
//!
//! In natural units, with `ρ = 2λr`, `a = −n_r`, `b = 2γ + 1`:
//!
//! ```text
//! g(r)  = e^{−λr} r^{γ−1} M(a, b, ρ)
//! g̃(r)  = (η₂/η₁) e^{−λr} r^{γ−1} M(a+1, b, ρ)
//! η₁ = α − κλ,   η₂ = γλ − αE = λa
//! ```
//!
//! Both are un-normalized. The bi-spinor components are
//! `Ψ_a = √(1+E)(Φ + Φ̃)` and `Ψ_b = i√(1−E)(σ·r̂)(Φ − Φ̃)`. Since
//! `(σ·r̂)𝒴_{κm} = −𝒴_{−κm}`, this is `Ψ_b = −i·ψ_b(r)·𝒴_{−κm}` with the real
//! radial factor `ψ_b = √(1−E)(g − g̃)`. Only real radial amplitudes are
//! stored; the `−i` and the flipped spinor are carried by [`ProfileKind`].

use num_complex::Complex64;
use serde::Serialize;

use crate::quad::{Integrator, QuadResult};
use crate::quantum::{derive_gamma, EnergyValue, PhysicsConfig, QuantumState};
use crate::specfun::{kummer_m, kummer_m_derivative, kummer_m_second_derivative, DEFAULT_TOLERANCE};
use crate::spectrum::{energy, quantization_a};
use crate::{Error, Result};

/// Largest acceptable relative quadrature error bound for a normalization.
pub const NORMALIZATION_ERROR_LIMIT: f64 = 1e-9;

/// Value and first two radial derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RadialJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl RadialJet {
    fn scale(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            d1: c * self.d1,
            d2: c * self.d2,
        }
    }

    fn combine(self, other: Self, sign: f64) -> Self {
        Self {
            value: self.value + sign * other.value,
            d1: self.d1 + sign * other.d1,
            d2: self.d2 + sign * other.d2,
        }
    }
}

/// `η₁ = α − κλ` and `η₂ = γλ − αE`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaCoefficients {
    pub eta1: f64,
    /// Evaluated as `λ·a` with the exact `a = −n_r`, so it is exactly zero
    /// for `n_r = 0`.
    pub eta2: f64,
    /// `γλ − αE` evaluated literally, for cross-checking `eta2`.
    pub eta2_direct: f64,
}

/// The upper and lower radial amplitudes at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BispinorRadials {
    pub psi_a: f64,
    pub psi_b: f64,
}

/// Everything needed to evaluate one bound state's radial functions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSolution {
    state: QuantumState,
    alpha: f64,
    energy: EnergyValue,
    gamma: f64,
    a: f64,
    b: f64,
    eta: EtaCoefficients,
    sqrt_one_plus_e: f64,
    sqrt_one_minus_e: f64,
}

impl RadialSolution {
    /// `energy` must be the bound-state energy of `state` (as returned by
    /// [`energy`]); any other value is rejected.
    pub fn new(state: &QuantumState, energy: &EnergyValue, config: &PhysicsConfig) -> Result<Self> {
        let alpha = config.alpha();
        if alpha <= 0.0 || energy.lambda() <= 0.0 {
            return Err(Error::InvalidArgument(
                "wave functions need alpha > 0 (no bound state otherwise)".into(),
            ));
        }
        let a_measured = quantization_a(state, energy, config);
        let n_r = f64::from(state.n_r());
        if (a_measured + n_r).abs() > 1e-9 * (1.0 + n_r) {
            return Err(Error::InvalidEnergy(energy.value()));
        }
        let gamma = derive_gamma(state.kappa(), alpha)?;
        let lambda = energy.lambda();
        let e = energy.value();
        let a = -n_r;
        let sqrt_one_plus_e = (1.0 + e).sqrt();
        Ok(Self {
            state: *state,
            alpha,
            energy: *energy,
            gamma,
            a,
            b: 2.0 * gamma + 1.0,
            eta: EtaCoefficients {
                eta1: alpha - f64::from(state.kappa()) * lambda,
                eta2: lambda * a,
                eta2_direct: gamma * lambda - alpha * e,
            },
            sqrt_one_plus_e,
            // √(1−E) = λ/√(1+E) without the cancellation in 1 − E
            sqrt_one_minus_e: lambda / sqrt_one_plus_e,
        })
    }

    pub fn for_state(state: &QuantumState, config: &PhysicsConfig) -> Result<Self> {
        Self::new(state, &energy(state, config), config)
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    pub fn energy(&self) -> &EnergyValue {
        &self.energy
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.energy.lambda()
    }

    pub fn kappa(&self) -> f64 {
        f64::from(self.state.kappa())
    }

    /// Kummer parameters `(a, b)` of `g`.
    pub fn kummer_params(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn eta(&self) -> &EtaCoefficients {
        &self.eta
    }

    /// `√(1 + E)` and `√(1 − E)`.
    pub fn energy_factors(&self) -> (f64, f64) {
        (self.sqrt_one_plus_e, self.sqrt_one_minus_e)
    }

    fn check_radius(r: f64) -> Result<()> {
        if r.is_finite() && r > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("radius {r} must be positive")))
        }
    }

    /// `e^{−λr} r^{γ−1}`.
    fn envelope(&self, r: f64) -> f64 {
        (-self.lambda() * r + (self.gamma - 1.0) * r.ln()).exp()
    }

    fn envelope_jet(&self, r: f64) -> RadialJet {
        let u = self.envelope(r);
        let p = (self.gamma - 1.0) / r - self.lambda();
        RadialJet {
            value: u,
            d1: p * u,
            d2: (p * p - (self.gamma - 1.0) / (r * r)) * u,
        }
    }

    /// `M(a', b, 2λr)` and its first two `r`-derivatives.
    fn kummer_jet(&self, a: f64, r: f64) -> Result<RadialJet> {
        let two_lambda = 2.0 * self.lambda();
        let rho = two_lambda * r;
        Ok(RadialJet {
            value: kummer_m(a, self.b, rho, DEFAULT_TOLERANCE)?,
            d1: two_lambda * kummer_m_derivative(a, self.b, rho, DEFAULT_TOLERANCE)?,
            d2: two_lambda * two_lambda * kummer_m_second_derivative(a, self.b, rho, DEFAULT_TOLERANCE)?,
        })
    }

    fn product_jet(u: RadialJet, f: RadialJet) -> RadialJet {
        RadialJet {
            value: u.value * f.value,
            d1: u.d1 * f.value + u.value * f.d1,
            d2: u.d2 * f.value + 2.0 * u.d1 * f.d1 + u.value * f.d2,
        }
    }

    /// `η₂/η₁`, the weight of `M(a+1, b, ρ)` in `g̃`.
    fn tilde_ratio(&self) -> f64 {
        self.eta.eta2 / self.eta.eta1
    }

    /// `g(r)`, the radial factor of `Φ`.
    pub fn phi(&self, r: f64) -> Result<f64> {
        Self::check_radius(r)?;
        Ok(self.envelope(r) * kummer_m(self.a, self.b, 2.0 * self.lambda() * r, DEFAULT_TOLERANCE)?)
    }

    /// `g̃(r)`, the radial factor of `Φ̃`; identically zero when `n_r = 0`.
    pub fn phi_tilde(&self, r: f64) -> Result<f64> {
        Self::check_radius(r)?;
        if self.state.n_r() == 0 {
            return Ok(0.0);
        }
        let m = kummer_m(self.a + 1.0, self.b, 2.0 * self.lambda() * r, DEFAULT_TOLERANCE)?;
        Ok(self.tilde_ratio() * self.envelope(r) * m)
    }

    pub fn phi_jet(&self, r: f64) -> Result<RadialJet> {
        Self::check_radius(r)?;
        Ok(Self::product_jet(self.envelope_jet(r), self.kummer_jet(self.a, r)?))
    }

    pub fn phi_tilde_jet(&self, r: f64) -> Result<RadialJet> {
        Self::check_radius(r)?;
        if self.state.n_r() == 0 {
            return Ok(RadialJet::default());
        }
        let jet = Self::product_jet(self.envelope_jet(r), self.kummer_jet(self.a + 1.0, r)?);
        Ok(jet.scale(self.tilde_ratio()))
    }

    /// `ψ_a = √(1+E)(g + g̃)`, `ψ_b = √(1−E)(g − g̃)`.
    pub fn bispinor(&self, r: f64) -> Result<BispinorRadials> {
        let g = self.phi(r)?;
        let gt = self.phi_tilde(r)?;
        Ok(BispinorRadials {
            psi_a: self.sqrt_one_plus_e * (g + gt),
            psi_b: self.sqrt_one_minus_e * (g - gt),
        })
    }

    /// The same amplitudes from the η-weighted Kummer functions
    /// `[η₁M(a,b,ρ) ± η₂M(a+1,b,ρ)]/η₁`.
    pub fn bispinor_via_eta(&self, r: f64) -> Result<BispinorRadials> {
        Self::check_radius(r)?;
        let rho = 2.0 * self.lambda() * r;
        let u = self.envelope(r);
        let m0 = kummer_m(self.a, self.b, rho, DEFAULT_TOLERANCE)?;
        let m1 = if self.eta.eta2 == 0.0 {
            0.0
        } else {
            kummer_m(self.a + 1.0, self.b, rho, DEFAULT_TOLERANCE)?
        };
        let EtaCoefficients { eta1, eta2, .. } = self.eta;
        Ok(BispinorRadials {
            psi_a: self.sqrt_one_plus_e * u * (eta1 * m0 + eta2 * m1) / eta1,
            psi_b: self.sqrt_one_minus_e * u * (eta1 * m0 - eta2 * m1) / eta1,
        })
    }

    /// Jets of `ψ_a` and `ψ_b`.
    pub fn bispinor_jets(&self, r: f64) -> Result<(RadialJet, RadialJet)> {
        let g = self.phi_jet(r)?;
        let gt = self.phi_tilde_jet(r)?;
        Ok((
            g.combine(gt, 1.0).scale(self.sqrt_one_plus_e),
            g.combine(gt, -1.0).scale(self.sqrt_one_minus_e),
        ))
    }

    pub fn evaluate(&self, kind: ProfileKind, r: f64) -> Result<f64> {
        match kind {
            ProfileKind::Phi => self.phi(r),
            ProfileKind::PhiTilde => self.phi_tilde(r),
            ProfileKind::PsiA => Ok(self.bispinor(r)?.psi_a),
            ProfileKind::PsiB => Ok(self.bispinor(r)?.psi_b),
        }
    }

    /// Samples one radial function on `grid`, multiplied by `normalization`.
    pub fn profile(&self, kind: ProfileKind, grid: &RadialGrid, normalization: f64) -> Result<RadialProfile> {
        let values = grid
            .points()
            .iter()
            .map(|&r| Ok(normalization * self.evaluate(kind, r)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(RadialProfile {
            state: self.state,
            kind,
            grid: grid.clone(),
            values,
            normalization,
        })
    }
}

/// Inverse of the bi-spinor assembly, in radial form:
/// `g = [ψ_a/√(1+E) + ψ_b/√(1−E)]/2`, `g̃ = [ψ_a/√(1+E) − ψ_b/√(1−E)]/2`.
pub fn conjugate_transform(psi_a: f64, psi_b: f64, energy: &EnergyValue) -> Result<(f64, f64)> {
    let e = energy.value();
    let lambda = energy.lambda();
    if !(e > 0.0 && e < 1.0 && lambda > 0.0) {
        return Err(Error::InvalidEnergy(e));
    }
    let sp = (1.0 + e).sqrt();
    let sm = lambda / sp;
    let upper = psi_a / sp;
    let lower = psi_b / sm;
    Ok((0.5 * (upper + lower), 0.5 * (upper - lower)))
}

/// Which radial function a profile holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProfileKind {
    Phi,
    PhiTilde,
    PsiA,
    PsiB,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::PhiTilde => "phi_tilde",
            Self::PsiA => "psi_a",
            Self::PsiB => "psi_b",
        }
    }

    /// The `κ` of the spherical spinor that multiplies this radial factor.
    pub fn angular_kappa(self, kappa: i32) -> i32 {
        match self {
            Self::PsiB => -kappa,
            _ => kappa,
        }
    }

    /// Constant phase multiplying `radial × 𝒴` in the full spinor.
    pub fn phase(self) -> Complex64 {
        match self {
            Self::PsiB => Complex64::new(0.0, -1.0),
            _ => Complex64::new(1.0, 0.0),
        }
    }
}

/// Strictly increasing positive radii (reduced Compton wavelengths).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    points: Vec<f64>,
}

impl RadialGrid {
    pub const DEFAULT_POINTS: usize = 2000;

    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("no points".into()));
        }
        if points.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::InvalidGrid("radii must be positive and finite".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("radii must be strictly increasing".into()));
        }
        Ok(Self { points })
    }

    fn check_range(r_min: f64, r_max: f64, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("{n} points; need at least 2")));
        }
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_max > r_min) {
            return Err(Error::InvalidGrid(format!("bad range [{r_min}, {r_max}]")));
        }
        Ok(())
    }

    pub fn log_spaced(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        Self::check_range(r_min, r_max, n)?;
        let step = (r_max / r_min).ln() / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| r_min * (step * i as f64).exp()).collect();
        points[n - 1] = r_max;
        Self::new(points)
    }

    pub fn linear(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        Self::check_range(r_min, r_max, n)?;
        let step = (r_max - r_min) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| r_min + step * i as f64).collect();
        points[n - 1] = r_max;
        Self::new(points)
    }

    /// 2000 log-spaced points from `10⁻³/α` to `50n²/α`.
    pub fn default_for(state: &QuantumState, config: &PhysicsConfig) -> Result<Self> {
        let (r_min, r_max) = default_range(state, config)?;
        Self::log_spaced(r_min, r_max, Self::DEFAULT_POINTS)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Inserts the geometric mean between each pair of neighbours.
    pub fn refined(&self) -> Self {
        let mut points = Vec::with_capacity(2 * self.points.len());
        for w in self.points.windows(2) {
            points.push(w[0]);
            points.push((w[0] * w[1]).sqrt());
        }
        points.extend(self.points.last());
        Self { points }
    }
}

/// Default `[r_min, r_max]` for a state: `[10⁻³/α, 50n²/α]`.
pub fn default_range(state: &QuantumState, config: &PhysicsConfig) -> Result<(f64, f64)> {
    if config.alpha() <= 0.0 {
        return Err(Error::InvalidGrid("alpha = 0 has no length scale".into()));
    }
    let bohr = config.bohr_radius();
    let n = f64::from(state.n());
    Ok((1e-3 * bohr, 50.0 * n * n * bohr))
}

/// One sampled radial function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProfile {
    pub state: QuantumState,
    pub kind: ProfileKind,
    pub grid: RadialGrid,
    pub values: Vec<f64>,
    pub normalization: f64,
}

impl RadialProfile {
    /// Number of sign changes, skipping exact zeros.
    pub fn sign_changes(&self) -> usize {
        sign_changes(&self.values)
    }
}

pub fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for &v in values.iter().filter(|v| **v != 0.0) {
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// Integration range and accuracy for normalization integrals over `[0, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub r_max: f64,
    pub rel_tol: f64,
}

impl QuadratureSpec {
    pub fn default_for(state: &QuantumState, config: &PhysicsConfig) -> Result<Self> {
        Ok(Self {
            r_max: default_range(state, config)?.1,
            rel_tol: 1e-13,
        })
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut points = vec![0.0];
        points.extend((0..=40).rev().map(|k| self.r_max * 0.5_f64.powi(k)));
        points
    }
}

/// `𝒩` with `𝒩² ∫₀^∞ (ψ_a² + ψ_b²) r² dr = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    pub constant: f64,
    /// The un-normalized integral.
    pub integral: f64,
    /// Bound on the absolute quadrature error of `integral`.
    pub error_bound: f64,
}

/// Normalizes an arbitrary pair of radial amplitudes `r ↦ (ψ_a, ψ_b)`.
pub fn normalize_amplitudes<F>(amplitudes: F, spec: &QuadratureSpec) -> Result<Normalization>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    if !(spec.r_max.is_finite() && spec.r_max > 0.0 && spec.rel_tol > 0.0) {
        return Err(Error::InvalidGrid(format!("bad quadrature spec {spec:?}")));
    }
    let density = |r: f64| match amplitudes(r) {
        Ok((a, b)) => (a * a + b * b) * r * r,
        Err(_) => f64::NAN,
    };
    let QuadResult { value, error } = Integrator::new(spec.rel_tol).integrate(density, &spec.breakpoints());
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::Quadrature {
            estimate: value,
            error_bound: error,
            limit: NORMALIZATION_ERROR_LIMIT,
        });
    }
    // the dropped tail beyond r_max is roughly density(r_max)/(2λ) ≲ r_max·density(r_max)
    let tail = density(spec.r_max) * spec.r_max;
    if tail.is_nan() || tail > 1e-14 * value {
        return Err(Error::InvalidGrid(format!(
            "r_max = {} truncates the density (tail/integral = {:e})",
            spec.r_max,
            tail / value
        )));
    }
    if error > NORMALIZATION_ERROR_LIMIT * value {
        return Err(Error::Quadrature {
            estimate: value,
            error_bound: error,
            limit: NORMALIZATION_ERROR_LIMIT,
        });
    }
    Ok(Normalization {
        constant: value.sqrt().recip(),
        integral: value,
        error_bound: error,
    })
}

pub fn normalize(solution: &RadialSolution, spec: &QuadratureSpec) -> Result<Normalization> {
    normalize_amplitudes(
        |r| {
            let b = solution.bispinor(r)?;
            Ok((b.psi_a, b.psi_b))
        },
        spec,
    )
}

/// `𝒩_a𝒩_b ∫ (ψ_a ψ_a' + ψ_b ψ_b') r² dr`.
pub fn overlap(
    a: &RadialSolution,
    norm_a: &Normalization,
    b: &RadialSolution,
    norm_b: &Normalization,
    spec: &QuadratureSpec,
) -> QuadResult {
    let integrand = |r: f64| match (a.bispinor(r), b.bispinor(r)) {
        (Ok(x), Ok(y)) => (x.psi_a * y.psi_a + x.psi_b * y.psi_b) * r * r,
        _ => f64::NAN,
    };
    let res = Integrator::new(spec.rel_tol).integrate(integrand, &spec.breakpoints());
    let scale = norm_a.constant * norm_b.constant;
    QuadResult {
        value: res.value * scale,
        error: res.error * scale,
    }
}
