//! The scrambled-set construction at depth 6 and one distributionally chaotic pair.
//!
//! Run: cargo run --release --example scrambled_pair

use linchaos::scramble::{build_construction, check_invariants, verify_dc_pair, EpsRule, SymbolSequence, DEFAULT_N1};
use linchaos::ShiftOperator;

fn main() -> linchaos::Result<()> {
    let t = ShiftOperator::constant(2.0)?;
    let c = build_construction(&t, 1.5, 6, &EpsRule::Halving, DEFAULT_N1)?;
    println!(" k        N'_k        N_k        M_k   log2 ‖x_k‖");
    for s in &c.stages {
        println!("{:>2} {:>11} {:>10} {:>10}   {:>10.1}", s.k, s.n_prime, s.n, s.m, s.target_norm.log2());
    }
    println!("all construction conditions hold: {}", check_invariants(&t, &c).all_pass);

    let xi = SymbolSequence::indicator(&[1, 3, 5], 6)?;
    let xi_prime = SymbolSequence::indicator(&[1], 6)?;
    let r = verify_dc_pair(&t, &c, &xi, &xi_prime, 1.0)?;
    println!("\nθ = {:?}", r.theta);
    for b in &r.lower_checks {
        println!("  block {}: min ‖T^n z‖ = {} > {}", b.k, b.value, b.bound);
    }
    for b in &r.upper_checks {
        println!("  block {}: max ‖T^n z‖ = {:.3e} <= {}", b.k, b.value.to_f64(), b.bound);
    }
    for b in r.separation_bounds.iter().chain(&r.proximity_bounds) {
        println!("  F^{}({}) = {:.5} against {:.5}", b.n, b.tau, b.f, b.bound);
    }
    println!("pair verified: {}", r.all_pass);
    Ok(())
}
