//! Norm-unimodal witnesses: growth at rate γ for m steps, then exact decay.
//!
//! Run: cargo run --example unimodal_witness

use linchaos::unimodal::{nu_witness, wnu_profile};
use linchaos::ShiftOperator;

fn main() -> linchaos::Result<()> {
    let t = ShiftOperator::constant(2.0)?;
    for m in [2, 5, 20, 60] {
        let cert = nu_witness(&t, 1.5, m)?;
        let worst = cert.growth_ratios().into_iter().fold(f64::INFINITY, f64::min);
        println!(
            "m = {m:>2}: {:?}, support {}, decays at {}, min ‖T^i x‖/(1.5^i ‖x‖) = {worst:.4}",
            cert.kind,
            cert.witness.support_len(),
            cert.decay_index
        );
    }

    let cert = nu_witness(&t, 1.5, 20)?;
    let p = wnu_profile(&t, &cert.witness, 1.0, 30)?;
    println!("share of i <= 30 with ‖T^i x‖ >= ‖x‖: {}/{}", p.count, p.n);

    if let Err(e) = nu_witness(&t, 3.0, 5) {
        println!("γ = 3: {e}");
    }
    Ok(())
}
