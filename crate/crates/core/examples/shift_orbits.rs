//! Weighted backward shifts and their orbits.
//!
//! Run: cargo run --example shift_orbits

use linchaos::{LinearOperator, ShiftOperator, TruncatedVector, WeightForm};

fn main() -> linchaos::Result<()> {
    let t = ShiftOperator::constant(2.0)?;
    let x = TruncatedVector::basis(5);
    println!("T = 2B, x = e_5");
    for (i, n) in t.orbit_norms(&x, 7).iter().enumerate() {
        println!("  ‖T^{i} x‖ = {}", n.to_f64());
    }

    // w_n = (n+1)/n telescopes: w_1⋯w_n = n + 1
    let t = ShiftOperator::from_form(WeightForm::RatioPlusOne)?;
    let y = TruncatedVector::from_real(&[1.0, 1.0, 1.0, 1.0]);
    println!("\nw_n = (n+1)/n, y = (1, 1, 1, 1)");
    println!("  T y      = {:?}", t.apply(&y).to_complex_vec(4).iter().map(|c| c.re).collect::<Vec<_>>());
    println!("  T^3 y    = {:?}", t.power_apply(3, &y).to_complex_vec(1).iter().map(|c| c.re).collect::<Vec<_>>());
    println!("  T^4 y = 0: {}", t.power_apply(4, &y).is_zero());

    // norms far outside the f64 range stay exact in the extended representation
    let big = ShiftOperator::constant(2.0)?.orbit_norms(&TruncatedVector::basis(5000), 5000);
    println!("\n‖T^5000 e_5000‖ for T = 2B: {} (= 2^{})", big[5000], big[5000].log2());
    Ok(())
}
