//! Eigen disks, eigenvectors and generalized eigenvectors.
//!
//! Run: cargo run --example eigen_disk

use linchaos::spectral::{
    default_grid, eigen_approximate, eigen_disk_radius, eigen_residual, eigenvector, gen_eigenvector, kernel_residual,
    DEFAULT_PROBE_LEN,
};
use linchaos::{ShiftOperator, TruncatedVector, WeightForm};
use num_complex::Complex64;

fn main() -> linchaos::Result<()> {
    for form in [WeightForm::Constant(2.0), WeightForm::RatioPlusOne, WeightForm::ScaledRatio(3.0)] {
        let t = ShiftOperator::from_form(form.clone())?;
        let disk = eigen_disk_radius(&t, DEFAULT_PROBE_LEN)?;
        println!(
            "{form:<18} r ≈ {:.6} (± {:.1e}), unit circle inside: {}",
            disk.radius,
            disk.estimate_error,
            disk.contains(1.0)
        );
    }

    let t = ShiftOperator::constant(2.0)?;
    let omega = Complex64::new(0.8, 0.9);
    let k = eigenvector(&t, omega, 80)?;
    println!(
        "\nk_ω at ω = {omega}: ‖k‖ = {:.6}, ‖Tk - ωk‖ = {:.2e}, tail bound {:.2e}",
        k.vector.norm(),
        eigen_residual(&t, &k),
        k.tail_bound
    );

    for order in 1..=3 {
        let v = gen_eigenvector(&t, omega, order, 120)?;
        println!("order {order}: ‖(T - ω)^{} v‖ = {:.2e}", order + 1, kernel_residual(&t, &v));
    }

    let target = TruncatedVector::basis(1);
    let fit = eigen_approximate(&t, &target, &default_grid(1.0, 16), 40)?;
    println!("\ne_1 from eigenvectors on 48 grid points: residual {:.2e}, rank {}", fit.residual, fit.rank);
    Ok(())
}
