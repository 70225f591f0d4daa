//! Periodic points from eigenvectors at roots of unity.
//!
//! Run: cargo run --example periodic_points

use linchaos::spectral::{eigenvector, periodic_approximant, RootOfUnity};
use linchaos::{ShiftOperator, TruncatedVector, WeightForm};
use num_complex::Complex64;

fn main() -> linchaos::Result<()> {
    let t = ShiftOperator::constant(2.0)?;
    let target = eigenvector(&t, Complex64::new(0.0, 1.0), 200)?.vector;
    for (p, q) in [(0, 1), (1, 4), (1, 3), (2, 5)] {
        let root = RootOfUnity::new(p, q)?;
        let a = periodic_approximant(&t, root, 1, &target, 200)?;
        println!(
            "s = e^(2πi·{p}/{q}): period {:>2}, dist to target {:.4}, ‖T^period x - x‖ = {:.1e} (tol {:.1e})",
            a.period, a.dist_to_target, a.residual, a.tolerance
        );
    }

    // the unit circle is the boundary of this disk, so no root of unity is an eigenvalue
    let ratio = ShiftOperator::from_form(WeightForm::RatioPlusOne)?;
    match periodic_approximant(&ratio, RootOfUnity::new(0, 1)?, 1, &TruncatedVector::basis(0), 50) {
        Ok(_) => println!("unexpected periodic point"),
        Err(e) => println!("w_n = (n+1)/n: {e}"),
    }
    Ok(())
}
