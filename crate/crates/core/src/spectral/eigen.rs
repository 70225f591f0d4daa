use num_complex::Complex64;
use serde::Serialize;

use super::radius::{eigen_disk_radius, EigenDisk, DEFAULT_PROBE_LEN};
use crate::error::{Error, Result};
use crate::ext::{ExtComplex, ExtReal};
use crate::seqspace::TruncatedVector;
use crate::shiftops::{apply_shifted, LinearOperator, ShiftOperator};

/// Truncated eigenvector (`order = 0`) or ω-derivative of the eigenvector field.
#[derive(Clone, Debug, Serialize)]
pub struct EigenVector {
    pub omega: Complex64,
    pub order: usize,
    pub vector: TruncatedVector,
    /// ℓ² norm bound for the discarded coordinates `n >= trunc_len`; `inf` when no geometric bound applies.
    pub tail_bound: f64,
    /// Bound on `|c_{n+1} / c_n|` over the discarded tail.
    pub tail_ratio: f64,
}

pub(crate) fn check_in_disk(disk: &EigenDisk, omega: Complex64) -> Result<()> {
    if disk.contains(omega.norm()) {
        Ok(())
    } else {
        Err(Error::OutsideEigenDisk {
            omega: format!("{}{:+}i", omega.re, omega.im),
            modulus: omega.norm(),
            radius: disk.usable_radius(),
        })
    }
}

/// `k_ω` truncated to `trunc_len` coordinates: `c_n = ωⁿ / (w_1 ⋯ w_n)`.
pub fn eigenvector(op: &ShiftOperator, omega: Complex64, trunc_len: usize) -> Result<EigenVector> {
    gen_eigenvector(op, omega, 0, trunc_len)
}

/// The `order`-th ω-derivative of `k_ω`, spanning `ker(T - ω)^{order+1}` together with the lower orders.
///
/// Coordinates are `n (n-1) ⋯ (n-order+1) ω^{n-order} / (w_1 ⋯ w_n)` for `n >= order`.
pub fn gen_eigenvector(op: &ShiftOperator, omega: Complex64, order: usize, trunc_len: usize) -> Result<EigenVector> {
    let disk = eigen_disk_radius(op, DEFAULT_PROBE_LEN)?;
    gen_eigenvector_in(op, &disk, omega, order, trunc_len)
}

pub(crate) fn gen_eigenvector_in(
    op: &ShiftOperator,
    disk: &EigenDisk,
    omega: Complex64,
    order: usize,
    trunc_len: usize,
) -> Result<EigenVector> {
    if trunc_len <= order {
        return Err(Error::param("trunc_len", format!("must exceed the order {order}, got {trunc_len}")));
    }
    check_in_disk(disk, omega)?;
    let vector = field_coords(op, omega, order, trunc_len);

    // past the truncation |c_{n+1}/c_n| = (n+1)/(n+1-order) · |ω| / w_{n+1}, largest at n = trunc_len - 1
    let growth = trunc_len as f64 / (trunc_len - order) as f64;
    let tail_ratio = growth * omega.norm() / op.weights().form().tail_inf(trunc_len + 1);
    let last = vector.coord(trunc_len - 1).abs().to_f64();
    let tail_bound = if tail_ratio == 0.0 || last == 0.0 {
        0.0
    } else if tail_ratio < 1.0 {
        last * tail_ratio / (1.0 - tail_ratio)
    } else {
        f64::INFINITY
    };
    Ok(EigenVector { omega, order, vector, tail_bound, tail_ratio })
}

/// Field coordinates without any disk check; also used by tests away from the disk.
pub(crate) fn field_coords(op: &ShiftOperator, omega: Complex64, order: usize, trunc_len: usize) -> TruncatedVector {
    let prefix = op.weights().prefix_products(trunc_len.saturating_sub(1));
    let omega_x = ExtComplex::from(omega);
    let mut coords = vec![ExtComplex::ZERO; trunc_len];
    let mut power = ExtComplex::ONE; // ω^{n-order}
    for (n, slot) in coords.iter_mut().enumerate().skip(order) {
        let falling: ExtReal = (0..order).fold(ExtReal::ONE, |acc, t| acc * (n - t) as f64);
        *slot = (power / ExtComplex::from_real(prefix[n])).scale(falling);
        power = power * omega_x;
    }
    TruncatedVector::from_ext(coords)
}

/// `‖(T - ω)^{order+1} v‖`, which vanishes up to truncation for a generalized eigenvector.
pub fn kernel_residual(op: &ShiftOperator, ev: &EigenVector) -> f64 {
    let mut v = ev.vector.clone();
    for _ in 0..=ev.order {
        v = apply_shifted(op, ev.omega, &v);
    }
    v.norm()
}

/// `‖T k - ω k‖` for an order-0 eigenvector.
pub fn eigen_residual(op: &ShiftOperator, ev: &EigenVector) -> f64 {
    op.apply(&ev.vector).sub(&ev.vector.scale(ev.omega)).norm()
}
