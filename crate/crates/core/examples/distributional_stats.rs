//! Distributional functions of two orbits.
//!
//! Run: cargo run --example distributional_stats

use linchaos::scramble::{distance_series, f_bounds};
use linchaos::spectral::eigenvector;
use linchaos::{ShiftOperator, TruncatedVector};
use num_complex::Complex64;

fn main() -> linchaos::Result<()> {
    let t = ShiftOperator::constant(2.0)?;
    let x = TruncatedVector::basis(3);
    let y = TruncatedVector::zero();
    let d: Vec<f64> = distance_series(&t, &x, &y, 6).iter().map(|v| v.to_f64()).collect();
    println!("distances for x - y = e_3: {d:?}");

    let window: Vec<usize> = (1..=10).map(|i| 4 * i).collect();
    for tau in [0.5, 1.5, 10.0] {
        let s = f_bounds(&t, &x, &y, tau, &window)?;
        println!("τ = {tau:>4}: F ≈ {:.3}, F* ≈ {:.3}", s.f_lower_est, s.f_upper_est);
    }

    // an eigenvector at |ω| < 1 shrinks geometrically
    let k = eigenvector(&t, Complex64::new(0.9, 0.0), 200)?.vector;
    let s = f_bounds(&t, &k, &y, 0.1, &window)?;
    println!("x = k_0.9, y = 0, τ = 0.1: samples {:?}", s.samples.iter().map(|p| p.f).collect::<Vec<_>>());
    Ok(())
}
