//! Strong mixing: a point near x whose k-th iterate lands near y.
//!
//! Run: cargo run --example mixing

use linchaos::spectral::mixing_witness;
use linchaos::ShiftOperator;
use num_complex::Complex64;

fn main() -> linchaos::Result<()> {
    let t = ShiftOperator::constant(2.0)?;
    let one = Complex64::new(1.0, 0.0);
    let x = [(Complex64::new(0.5, 0.0), one), (Complex64::new(0.0, -0.3), Complex64::new(0.0, 2.0))];
    let y = [(Complex64::new(1.5, 0.0), one), (Complex64::new(-1.2, 0.6), Complex64::new(0.5, 0.0))];

    let w = mixing_witness(&t, &x, &y, 0.01, 400)?;
    println!("λ̄ = {:?}, ρ̄ = {:?}, M = {:.6}, N = {}", w.lambda_bar, w.rho_bar, w.m_bound, w.threshold);
    for c in &w.checks {
        println!("  k = {:>2}: ‖u(k) - x‖ = {:.3e}   ‖T^k u(k) - y‖ = {:.3e}", c.k, c.d_in, c.d_out);
    }
    println!("certified: {}", w.certified());
    Ok(())
}
