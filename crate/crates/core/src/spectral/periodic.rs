use num_complex::Complex64;
use serde::Serialize;

use super::approx::lstsq;
use super::eigen::gen_eigenvector_in;
use super::radius::{eigen_disk_radius, DEFAULT_PROBE_LEN};
use crate::error::{Error, Result};
use crate::seqspace::TruncatedVector;
use crate::shiftops::{LinearOperator, ShiftOperator};

/// Root of unity `e^{2πi p/q}`, kept as the reduced fraction so the period is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootOfUnity {
    pub p: i64,
    pub q: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RootOfUnity {
    /// Reduces `p/q` to lowest terms.
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::param("q", "denominator must be positive"));
        }
        let p = p.rem_euclid(q as i64);
        let g = gcd(p as u64, q).max(1);
        Ok(RootOfUnity { p: p / g as i64, q: q / g })
    }

    pub fn value(&self) -> Complex64 {
        // quarter turns exactly
        match (4 * self.p as u64).is_multiple_of(self.q).then(|| 4 * self.p as u64 / self.q) {
            Some(0) => Complex64::new(1.0, 0.0),
            Some(1) => Complex64::new(0.0, 1.0),
            Some(2) => Complex64::new(-1.0, 0.0),
            Some(3) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, std::f64::consts::TAU * self.p as f64 / self.q as f64),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicApproximant {
    pub point: TruncatedVector,
    pub period: u64,
    pub dist_to_target: f64,
    /// `‖T^period point - point‖`
    pub residual: f64,
    pub tolerance: f64,
    pub coefficients: Vec<Complex64>,
}

/// `‖T^period v - v‖` may not exceed this for a truncated periodic vector:
/// the exact relation holds on all but the last `period` coordinates.
fn truncation_tolerance(point: &TruncatedVector, period: usize) -> f64 {
    let cut = point.support_len().saturating_sub(period);
    2.0 * point.tail_norm(cut).to_f64() + 1e-10 * point.norm()
}

/// Projects `target` onto the generalized eigenvectors at `s` of orders `< depth`
/// and returns the projection with the least period found among `q, 2q, …, depth·q`.
///
/// Only the order-0 component is genuinely periodic: on a Jordan block
/// `(T - s)² = 0`, `Tⁿ = sⁿ(1 + n s⁻¹(T - s))` is never the identity. A
/// projection with a non-negligible higher-order component therefore fails
/// with [`Error::NotPeriodic`].
pub fn periodic_approximant(
    op: &ShiftOperator,
    root: RootOfUnity,
    depth: usize,
    target: &TruncatedVector,
    trunc_len: usize,
) -> Result<PeriodicApproximant> {
    if depth == 0 {
        return Err(Error::param("depth", "must be at least 1"));
    }
    let disk = eigen_disk_radius(op, DEFAULT_PROBE_LEN)?;
    if !disk.contains(1.0) {
        return Err(Error::RootOutsideDisk { radius: disk.usable_radius() });
    }
    let s = root.value();
    let basis = (0..depth)
        .map(|j| gen_eigenvector_in(op, &disk, s, j, trunc_len).map(|ev| ev.vector))
        .collect::<Result<Vec<_>>>()?;
    let columns: Vec<Vec<Complex64>> = basis.iter().map(|v| v.to_complex_vec(trunc_len)).collect();
    let fit = lstsq(&columns, &target.to_complex_vec(trunc_len));
    let point = basis.iter().zip(&fit.coefficients).fold(TruncatedVector::zero(), |acc, (v, &c)| acc.axpy(c, v));
    let dist_to_target = point.sub(target).norm();

    let mut best = f64::INFINITY;
    for t in 1..=depth as u64 {
        let period = t * root.q;
        let residual = op.power_apply(period as usize, &point).sub(&point).norm();
        let tolerance = truncation_tolerance(&point, period as usize);
        if residual <= tolerance {
            return Ok(PeriodicApproximant {
                point,
                period,
                dist_to_target,
                residual,
                tolerance,
                coefficients: fit.coefficients,
            });
        }
        best = best.min(residual);
    }
    Err(Error::NotPeriodic { max_period: depth as u64 * root.q, residual: best })
}
