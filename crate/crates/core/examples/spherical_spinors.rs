//! Spherical spinors: eigenvalues, the parity relation under σ·r̂, and
//! orthonormality by quadrature.

use hydrogen_dirac::angular::{
    check_eigen_relation, parity_residual, sigma_dot_l_eigenvalue, spinor_overlap, AngularOperator, SphericalSpinor,
};
use hydrogen_dirac::HalfInt;

fn main() -> hydrogen_dirac::Result<()> {
    let ops = [
        AngularOperator::JSquared,
        AngularOperator::Jz,
        AngularOperator::LSquared,
        AngularOperator::SigmaDotL,
        AngularOperator::K,
        AngularOperator::KSquared,
    ];
    for kappa in [-1, 1, -2, 2, 3] {
        let y = SphericalSpinor::new(kappa, HalfInt::from_twice(1))?;
        print!("kappa {kappa:+}, l = {}, j = {}:", y.l(), y.j());
        for op in ops {
            let r = check_eigen_relation(&y, op, 1e-12);
            print!(" {op:?}={:.6}", r.measured + 0.0);
        }
        println!("  sigma.L = {}", sigma_dot_l_eigenvalue(kappa));
        println!("  |sigma.r Y + Y(-kappa)| max on 32x32: {:.2e}", parity_residual(&y, 32));
    }

    let a = SphericalSpinor::new(-2, HalfInt::from_twice(1))?;
    let b = SphericalSpinor::new(2, HalfInt::from_twice(1))?;
    println!("<Y(-2)|Y(-2)> = {:.12}", spinor_overlap(&a, &a, 16, 16).re);
    println!("<Y(-2)|Y(+2)> = {:.2e}", spinor_overlap(&a, &b, 16, 16).norm());
    Ok(())
}
