//! Kummer's function M(a, b, ρ): terminating and infinite series, derivatives.

use hydrogen_dirac::specfun::{kummer_m, kummer_m_derivative, KummerParams, DEFAULT_TOLERANCE};

fn main() -> Result<(), hydrogen_dirac::specfun::SpecFunError> {
    let tol = DEFAULT_TOLERANCE;
    println!("M(1, 1, 1)   = {:.15} (e = {:.15})", kummer_m(1.0, 1.0, 1.0, tol)?, std::f64::consts::E);
    println!("M(-1, 3, 2)  = {:.15} (1/3)", kummer_m(-1.0, 3.0, 2.0, tol)?);
    println!("M'(-1, 3, 2) = {:.15} (-1/3)", kummer_m_derivative(-1.0, 3.0, 2.0, tol)?);

    let laguerre_like = KummerParams::polynomial(3, 2.5)?;
    for rho in [0.0, 1.0, 5.0, 20.0] {
        println!("M(-3, 2.5, {rho:>4}) = {:+.12e}", laguerre_like.eval(rho, tol)?);
    }

    match kummer_m(0.5, 1.5, 1e4, tol) {
        Ok(v) => println!("M(0.5, 1.5, 1e4) = {v}"),
        Err(e) => println!("M(0.5, 1.5, 1e4): {e}"),
    }
    Ok(())
}
