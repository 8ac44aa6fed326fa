//! Spherical harmonics, spin-½ coupling and the spherical spinors `𝒴_{κm}`.
//!
//! Conventions: Condon-Shortley phase for `Y_lm`, the standard ½⊗l
//! Clebsch-Gordan table, and spinor component order (m_s = +½, m_s = −½).
//! With these choices `(σ·r̂) 𝒴_{κm} = −𝒴_{−κm}` holds with the printed sign.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::quad::gauss_legendre;
use crate::quantum::{orbital_l, total_j, HalfInt};
use crate::{Error, Result};

/// Largest orbital angular momentum accepted by [`spherical_harmonic`].
pub const MAX_L: u32 = 25;

/// Two-component complex spinor value (upper = spin up).
pub type Spinor2 = [Complex64; 2];

/// Orthonormal `P̄_l^m(cos θ)` for `m ≥ 0`, including `1/√(4π)` and the
/// Condon-Shortley phase, by the stable upward recurrence in `l`.
fn normalized_legendre(l: u32, m: u32, theta: f64) -> f64 {
    let (s, x) = theta.sin_cos();
    let mut pmm = 1.0 / (4.0 * PI).sqrt();
    for k in 1..=m {
        let k = f64::from(k);
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = f64::from(m);
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = f64::from(ll);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let b = ((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Y_lm(θ, φ)`, orthonormal on the unit sphere.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if l > MAX_L {
        return Err(Error::InvalidArgument(format!("l = {l} exceeds {MAX_L}")));
    }
    if m.unsigned_abs() > l {
        return Err(Error::InvalidArgument(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    let p = normalized_legendre(l, m.unsigned_abs(), theta);
    let y = Complex64::from_polar(1.0, f64::from(m.abs()) * phi) * p;
    Ok(if m >= 0 {
        y
    } else if m % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    })
}

/// `⟨l m_l; ½ m_s | j m_j⟩` for `j = l ± ½`.
pub fn cg_coefficient(l: u32, j: HalfInt, m_j: HalfInt, m_s: HalfInt) -> Result<f64> {
    let two_l = 2 * l as i32;
    if (j.twice() - two_l).abs() != 1 || j.twice() < 1 {
        return Err(Error::InvalidArgument(format!("j = {j} cannot couple with l = {l}")));
    }
    if !m_j.is_half_odd() || m_j.abs() > j {
        return Err(Error::InvalidArgument(format!("m_j = {m_j} invalid for j = {j}")));
    }
    if m_s.twice().abs() != 1 {
        return Err(Error::InvalidArgument(format!("m_s = {m_s} must be ±1/2")));
    }
    let denom = f64::from(two_l + 1);
    // (l + m_j + ½) and (l − m_j + ½), in units of ½ → divide by 2 below.
    let plus = f64::from(two_l + m_j.twice() + 1) / 2.0;
    let minus = f64::from(two_l - m_j.twice() + 1) / 2.0;
    let up = m_s.twice() > 0;
    let stretched = j.twice() > two_l;
    Ok(match (stretched, up) {
        (true, true) => (plus / denom).sqrt(),
        (true, false) => (minus / denom).sqrt(),
        (false, true) => -(minus / denom).sqrt(),
        (false, false) => (plus / denom).sqrt(),
    })
}

/// `𝒴_{κm}` as a function of angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SphericalSpinor {
    kappa: i32,
    m_j: HalfInt,
}

impl SphericalSpinor {
    pub fn new(kappa: i32, m_j: HalfInt) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidArgument("kappa must be nonzero".into()));
        }
        if orbital_l(kappa) > MAX_L {
            return Err(Error::InvalidArgument(format!("|kappa| = {} too large", kappa.abs())));
        }
        let j = total_j(kappa);
        if !m_j.is_half_odd() || m_j.abs() > j {
            return Err(Error::InvalidArgument(format!("m_j = {m_j} invalid for j = {j}")));
        }
        Ok(Self { kappa, m_j })
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn m_j(&self) -> HalfInt {
        self.m_j
    }

    pub fn l(&self) -> u32 {
        orbital_l(self.kappa)
    }

    pub fn j(&self) -> HalfInt {
        total_j(self.kappa)
    }

    /// The partner `𝒴_{−κm}` (opposite parity, same `j` and `m_j`).
    pub fn flipped(&self) -> Self {
        Self {
            kappa: -self.kappa,
            m_j: self.m_j,
        }
    }

    /// Upper and lower Clebsch-Gordan weights, paired with the `m_l` they multiply.
    fn components(&self) -> [(f64, i32); 2] {
        let l = self.l();
        let j = self.j();
        let up = cg_coefficient(l, j, self.m_j, HalfInt::from_twice(1)).expect("validated");
        let down = cg_coefficient(l, j, self.m_j, HalfInt::from_twice(-1)).expect("validated");
        [
            (up, (self.m_j.twice() - 1) / 2),
            (down, (self.m_j.twice() + 1) / 2),
        ]
    }

    pub fn eval(&self, theta: f64, phi: f64) -> Spinor2 {
        let l = self.l();
        self.components().map(|(c, m_l)| {
            if c == 0.0 || m_l.unsigned_abs() > l {
                Complex64::new(0.0, 0.0)
            } else {
                spherical_harmonic(l, m_l, theta, phi).expect("validated") * c
            }
        })
    }

    /// Coefficients in the product basis `|l m_l⟩|½ m_s⟩`.
    pub fn expansion(&self) -> AngularExpansion {
        let l = self.l();
        let mut coefficients = BTreeMap::new();
        for ((c, m_l), twice_ms) in self.components().into_iter().zip([1, -1]) {
            if c != 0.0 && m_l.unsigned_abs() <= l {
                coefficients.insert((m_l, twice_ms), c);
            }
        }
        AngularExpansion { l, coefficients }
    }
}

pub fn spherical_spinor(kappa: i32, m_j: HalfInt, theta: f64, phi: f64) -> Result<Spinor2> {
    Ok(SphericalSpinor::new(kappa, m_j)?.eval(theta, phi))
}

/// Multiplies by `σ·r̂ = [[cos θ, sin θ e^{−iφ}], [sin θ e^{iφ}, −cos θ]]`.
pub fn apply_sigma_dot_rhat(v: Spinor2, theta: f64, phi: f64) -> Spinor2 {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    [v[0] * c + v[1] * e.conj() * s, v[0] * e * s - v[1] * c]
}

/// Eigenvalue of `σ·L` (units of ħ) on `𝒴_{κm}`: `σ·L = −ħ − K̂` ⇒ `−(1 + κ)`.
pub fn sigma_dot_l_eigenvalue(kappa: i32) -> f64 {
    f64::from(-1 - kappa)
}

/// `κ² = l(l+1) + (σ·L) + 1` in exact integer arithmetic.
pub fn k_squared_relation_holds(kappa: i32) -> bool {
    let k = i64::from(kappa);
    let l = i64::from(orbital_l(kappa));
    k * k == l * (l + 1) + (-1 - k) + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AngularOperator {
    LSquared,
    Lz,
    Jz,
    JSquared,
    SigmaDotL,
    K,
    KSquared,
}

impl fmt::Display for AngularOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::LSquared => "L^2",
            Self::Lz => "L_z",
            Self::Jz => "J_z",
            Self::JSquared => "J^2",
            Self::SigmaDotL => "sigma.L",
            Self::K => "K",
            Self::KSquared => "K^2",
        })
    }
}

/// A spinor written in the `|l m_l⟩|½ m_s⟩` basis; keys are `(m_l, 2·m_s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularExpansion {
    l: u32,
    coefficients: BTreeMap<(i32, i32), f64>,
}

impl AngularExpansion {
    pub fn coefficients(&self) -> &BTreeMap<(i32, i32), f64> {
        &self.coefficients
    }

    fn add(&mut self, key: (i32, i32), value: f64) {
        if value != 0.0 {
            *self.coefficients.entry(key).or_insert(0.0) += value;
        }
    }

    fn empty(&self) -> Self {
        Self {
            l: self.l,
            coefficients: BTreeMap::new(),
        }
    }

    fn ladder(&self, m: i32, up: bool) -> f64 {
        let l = f64::from(self.l);
        let m = f64::from(m);
        let shift = if up { m + 1.0 } else { m - 1.0 };
        (l * (l + 1.0) - m * shift).max(0.0).sqrt()
    }

    fn sigma_dot_l(&self) -> Self {
        let l = self.l as i32;
        let mut out = self.empty();
        for (&(m, s), &c) in &self.coefficients {
            // 2 L_z S_z
            out.add((m, s), f64::from(m * s) * c);
            // L₊S₋ and L₋S₊
            if s > 0 && m < l {
                out.add((m + 1, -1), self.ladder(m, true) * c);
            }
            if s < 0 && m > -l {
                out.add((m - 1, 1), self.ladder(m, false) * c);
            }
        }
        out
    }

    fn scaled_by(&self, f: impl Fn(i32, i32) -> f64) -> Self {
        let mut out = self.empty();
        for (&(m, s), &c) in &self.coefficients {
            out.add((m, s), f(m, s) * c);
        }
        out
    }

    fn axpy(&self, a: f64, other: &Self, b: f64) -> Self {
        let mut out = self.scaled_by(|_, _| a);
        for (&k, &c) in &other.coefficients {
            out.add(k, b * c);
        }
        out
    }

    pub fn apply(&self, op: AngularOperator) -> Self {
        let ll = f64::from(self.l * (self.l + 1));
        match op {
            AngularOperator::LSquared => self.scaled_by(|_, _| ll),
            AngularOperator::Lz => self.scaled_by(|m, _| f64::from(m)),
            AngularOperator::Jz => self.scaled_by(|m, s| f64::from(m) + f64::from(s) / 2.0),
            AngularOperator::SigmaDotL => self.sigma_dot_l(),
            // J² = L² + S² + 2L·S
            AngularOperator::JSquared => self.scaled_by(|_, _| ll + 0.75).axpy(1.0, &self.sigma_dot_l(), 1.0),
            // K̂ = −1 − σ·L
            AngularOperator::K => self.axpy(-1.0, &self.sigma_dot_l(), -1.0),
            AngularOperator::KSquared => self.apply(AngularOperator::K).apply(AngularOperator::K),
        }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coefficients
            .iter()
            .filter_map(|(k, c)| other.coefficients.get(k).map(|d| c * d))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// Outcome of one eigen-relation check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularOperatorResult {
    pub operator: AngularOperator,
    pub expected: f64,
    pub measured: f64,
    /// `‖Oψ − expected·ψ‖ / ‖ψ‖`.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// The eigenvalue `𝒴_{κm}` is expected to have under `op`; `None` for `L_z`,
/// which mixes the two spin components unless one of them vanishes.
pub fn expected_eigenvalue(spinor: &SphericalSpinor, op: AngularOperator) -> Option<f64> {
    let l = f64::from(spinor.l());
    let j = spinor.j().value();
    let k = f64::from(spinor.kappa());
    match op {
        AngularOperator::LSquared => Some(l * (l + 1.0)),
        AngularOperator::Lz => None,
        AngularOperator::Jz => Some(spinor.m_j().value()),
        AngularOperator::JSquared => Some(j * (j + 1.0)),
        AngularOperator::SigmaDotL => Some(sigma_dot_l_eigenvalue(spinor.kappa())),
        AngularOperator::K => Some(k),
        AngularOperator::KSquared => Some(k * k),
    }
}

/// Applies `op` to the coefficient expansion of `spinor` and compares with
/// the expected eigenvalue (or, for `L_z`, its Rayleigh quotient).
pub fn check_eigen_relation(
    spinor: &SphericalSpinor,
    op: AngularOperator,
    tolerance: f64,
) -> AngularOperatorResult {
    let psi = spinor.expansion();
    let applied = psi.apply(op);
    let norm2 = psi.dot(&psi);
    let measured = psi.dot(&applied) / norm2;
    let expected = expected_eigenvalue(spinor, op).unwrap_or(measured);
    let residual = applied.axpy(1.0, &psi, -expected).norm() / norm2.sqrt();
    AngularOperatorResult {
        operator: op,
        expected,
        measured,
        residual,
        tolerance,
        passed: residual <= tolerance && (measured - expected).abs() <= tolerance,
    }
}

/// Max over an `n × n` grid in `(θ, φ)` of `|(σ·r̂)𝒴_{κm} + 𝒴_{−κm}|`.
pub fn parity_residual(spinor: &SphericalSpinor, n: usize) -> f64 {
    let partner = spinor.flipped();
    let mut worst = 0.0_f64;
    for i in 0..n {
        let theta = PI * (i as f64 + 0.5) / n as f64;
        for k in 0..n {
            let phi = 2.0 * PI * k as f64 / n as f64;
            let lhs = apply_sigma_dot_rhat(spinor.eval(theta, phi), theta, phi);
            let rhs = partner.eval(theta, phi);
            let diff = ((lhs[0] + rhs[0]).norm_sqr() + (lhs[1] + rhs[1]).norm_sqr()).sqrt();
            worst = worst.max(diff);
        }
    }
    worst
}

/// `∮ 𝒴†_{a} 𝒴_{b} dΩ` by Gauss-Legendre in `cos θ` and the trapezoid rule
/// in `φ` (exact for band-limited integrands when `n_phi` exceeds the
/// azimuthal bandwidth).
pub fn spinor_overlap(
    a: &SphericalSpinor,
    b: &SphericalSpinor,
    n_theta: usize,
    n_phi: usize,
) -> Complex64 {
    let rule = gauss_legendre(n_theta);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in &rule {
        let theta = x.acos();
        for k in 0..n_phi {
            let phi = dphi * k as f64;
            let ya = a.eval(theta, phi);
            let yb = b.eval(theta, phi);
            acc += (ya[0].conj() * yb[0] + ya[1].conj() * yb[1]) * (w * dphi);
        }
    }
    acc
}
