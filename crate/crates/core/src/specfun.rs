//! Kummer's confluent hypergeometric function `M(a, b, ρ) = ₁F₁(a; b; ρ)`.
//!
//! Only the real series around `ρ = 0` is provided. Bound states always hit
//! the terminating case `a = −n_r`, where the series is a polynomial of degree
//! `n_r` and is summed exactly.

use thiserror::Error;

/// Hard cap on the number of series terms for non-terminating parameters.
pub const MAX_TERMS: usize = 500;

/// Default relative truncation tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-16;

const INTEGER_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("series did not converge after {terms} terms (partial sum {partial_sum:e})")]
    NonConvergence { partial_sum: f64, terms: usize },
    #[error("Pochhammer symbol overflowed at factor {index} (partial product {partial:e})")]
    Overflow { partial: f64, index: u32 },
    #[error("domain error: {0}")]
    Domain(&'static str),
}

/// Rising factorial `(a)_n = a(a+1)⋯(a+n−1)`, `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: u32) -> Result<f64, SpecFunError> {
    let mut product = 1.0;
    for k in 0..n {
        let next = product * (a + f64::from(k));
        if !next.is_finite() {
            return Err(SpecFunError::Overflow {
                partial: product,
                index: k,
            });
        }
        product = next;
    }
    Ok(product)
}

/// `Some(n)` when `a` is the nonpositive integer `−n`, within
/// `10⁻¹²·(1 + |a|)`.
pub fn terminating_degree(a: f64) -> Option<u32> {
    if !a.is_finite() || a > INTEGER_TOLERANCE {
        return None;
    }
    let rounded = a.round();
    if (a - rounded).abs() < INTEGER_TOLERANCE * (1.0 + a.abs()) && -rounded <= f64::from(u32::MAX) {
        Some((-rounded) as u32)
    } else {
        None
    }
}

/// Parameters `(a, b)` of one Kummer function, with the polynomial degree
/// recorded when the series terminates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub polynomial_degree: Option<u32>,
}

impl KummerParams {
    pub fn new(a: f64, b: f64) -> Result<Self, SpecFunError> {
        if !(b.is_finite() && b > 0.0) {
            return Err(SpecFunError::Domain("b must be positive"));
        }
        if !a.is_finite() {
            return Err(SpecFunError::Domain("a must be finite"));
        }
        Ok(Self {
            a,
            b,
            polynomial_degree: terminating_degree(a),
        })
    }

    /// Terminating parameters `a = −n` exactly.
    pub fn polynomial(degree: u32, b: f64) -> Result<Self, SpecFunError> {
        let mut p = Self::new(-f64::from(degree), b)?;
        p.polynomial_degree = Some(degree);
        Ok(p)
    }

    pub fn eval(&self, rho: f64, tol: f64) -> Result<f64, SpecFunError> {
        check_args(rho, tol)?;
        match self.polynomial_degree {
            Some(degree) => Ok(sum_terms(self.a, self.b, rho, degree as usize + 1)),
            None => sum_series(self.a, self.b, rho, tol),
        }
    }
}

fn check_args(rho: f64, tol: f64) -> Result<(), SpecFunError> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(SpecFunError::Domain("rho must be nonnegative"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpecFunError::Domain("tolerance must be positive"));
    }
    Ok(())
}

/// Sums `count` terms via `t_{k+1} = t_k·(a+k)ρ / ((b+k)(k+1))`.
fn sum_terms(a: f64, b: f64, rho: f64, count: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..count {
        let k0 = (k - 1) as f64;
        term *= (a + k0) * rho / ((b + k0) * k as f64);
        sum += term;
    }
    sum
}

fn sum_series(a: f64, b: f64, rho: f64, tol: f64) -> Result<f64, SpecFunError> {
    let mut term = 1.0;
    let mut sum = 1.0_f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * rho / ((b + kf) * (kf + 1.0));
        term *= ratio;
        if !sum.is_finite() || !term.is_finite() {
            return Err(SpecFunError::NonConvergence {
                partial_sum: sum,
                terms: k + 1,
            });
        }
        sum += term;
        // Stop only once every factor (a + k) is positive and the ratio has
        // dropped below one, so later terms cannot grow back.
        if a + kf + 1.0 > 0.0 && ratio.abs() < 1.0 && term.abs() <= tol * sum.abs() {
            return Ok(sum);
        }
        if term == 0.0 && rho == 0.0 {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NonConvergence {
        partial_sum: sum,
        terms: MAX_TERMS,
    })
}

/// `M(a, b, ρ)` by direct series summation.
pub fn kummer_m(a: f64, b: f64, rho: f64, tol: f64) -> Result<f64, SpecFunError> {
    KummerParams::new(a, b)?.eval(rho, tol)
}

/// `dM/dρ = (a/b)·M(a+1, b+1, ρ)`.
pub fn kummer_m_derivative(a: f64, b: f64, rho: f64, tol: f64) -> Result<f64, SpecFunError> {
    KummerParams::new(a, b)?;
    check_args(rho, tol)?;
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(a / b * kummer_m(a + 1.0, b + 1.0, rho, tol)?)
}

/// `d²M/dρ² = a(a+1)/(b(b+1))·M(a+2, b+2, ρ)`.
pub fn kummer_m_second_derivative(
    a: f64,
    b: f64,
    rho: f64,
    tol: f64,
) -> Result<f64, SpecFunError> {
    KummerParams::new(a, b)?;
    check_args(rho, tol)?;
    let prefactor = a * (a + 1.0);
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    Ok(prefactor / (b * (b + 1.0)) * kummer_m(a + 2.0, b + 2.0, rho, tol)?)
}
