use serde::Serialize;

use crate::error::{Error, Result};
use crate::shiftops::ShiftOperator;

/// Probe length used when an operation needs the disk implicitly.
pub const DEFAULT_PROBE_LEN: usize = 512;

/// Open disk `|ω| < radius` of eigenvalues of a weighted backward shift.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenDisk {
    pub radius: f64,
    pub estimate_error: f64,
}

impl EigenDisk {
    /// Radius minus its error margin; membership tests use this.
    pub fn usable_radius(&self) -> f64 {
        (self.radius - self.estimate_error).max(0.0)
    }

    pub fn contains(&self, modulus: f64) -> bool {
        modulus < self.usable_radius()
    }
}

/// Estimates `liminf (w_1 ⋯ w_n)^{1/n}` from the first `probe_len` weights.
///
/// With `g(n) = ln(P_n)/n`, the estimate is the smallest first-order Richardson
/// extrapolation `2 g(2m) - g(m)`, `m = ⌊n/2⌋`, over the last quartile of probes. The error
/// reports both the spread of `exp(g)` over that quartile and the gap between
/// the raw and extrapolated values, so slowly converging weights get a wide margin.
pub fn eigen_disk_radius(op: &ShiftOperator, probe_len: usize) -> Result<EigenDisk> {
    if probe_len < 16 {
        return Err(Error::param("probe_len", format!("must be at least 16, got {probe_len}")));
    }
    let logs = op.weights().log_prefix_products(probe_len);
    let g = |n: usize| logs[n] / n as f64;
    let start = probe_len - probe_len / 4;
    let quartile = start..=probe_len;

    let extrapolated = quartile.clone().map(|n| 2.0 * g(n / 2 * 2) - g(n / 2)).fold(f64::INFINITY, f64::min);
    let raw_lo = quartile.clone().map(g).fold(f64::INFINITY, f64::min);
    let raw_hi = quartile.map(g).fold(f64::NEG_INFINITY, f64::max);

    let radius = extrapolated.exp();
    let spread = raw_hi.exp() - raw_lo.exp();
    let gap = (raw_lo.exp() - radius).abs();
    // floor for rounding noise, so a boundary point never tests as inside
    let noise = 1e-12 * radius;
    Ok(EigenDisk { radius, estimate_error: spread.max(gap).max(noise) })
}
