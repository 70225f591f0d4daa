//! Norm-unimodal witnesses: vectors whose orbit grows at rate `γ` for `m` steps
//! and then vanishes.
//!
//! For a weighted backward shift both halves are exact. Growth comes from a
//! truncated eigenvector `k_β` with `γ < β < r`, and decay comes for free
//! because the shift annihilates every finitely supported vector.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::seqspace::TruncatedVector;
use crate::shiftops::{LinearOperator, ShiftOperator};
use crate::spectral::{eigen_disk_radius, field_coords, DEFAULT_PROBE_LEN};

/// Relative slack allowed in `‖Tⁱx‖ >= γⁱ‖x‖` for rounding in `γⁱ`.
pub const RATIO_TOL: f64 = 1e-12;

/// How many extra coordinates past `m + 1` the eigenvector truncation may use.
const MAX_BUFFER: usize = 256;

/// Where a witness came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessKind {
    /// Truncated eigenvector `k_β`.
    Eigen { beta: f64, trunc_len: usize },
    /// Basis vector `e_m`.
    Basis,
    /// Supplied by the caller.
    Given,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnimodalCertificate {
    pub gamma: f64,
    pub m: usize,
    pub witness: TruncatedVector,
    /// `‖Tⁱx‖` for `i = 0..=decay_index`.
    pub orbit: Vec<ExtReal>,
    /// First index from which the orbit is exactly zero.
    pub decay_index: usize,
    pub kind: WitnessKind,
}

impl UnimodalCertificate {
    /// `‖Tⁱx‖ / (γⁱ‖x‖)` for `i = 1..=m`.
    pub fn growth_ratios(&self) -> Vec<f64> {
        growth_ratios(&self.orbit, self.gamma, self.m)
    }
}

/// Why a candidate failed: the first violating index and its growth ratio.
///
/// `index == 0` marks the zero vector or an orbit that never reaches zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NuFailure {
    pub index: usize,
    pub ratio: f64,
}

fn growth_ratios(orbit: &[ExtReal], gamma: f64, m: usize) -> Vec<f64> {
    let base = orbit[0];
    let g = ExtReal::new(gamma);
    let mut scale = base;
    (1..=m)
        .map(|i| {
            scale = scale * g;
            let norm = orbit.get(i).copied().unwrap_or(ExtReal::ZERO);
            (norm / scale).to_f64()
        })
        .collect()
}

/// Checks growth `‖Tⁱx‖ >= γⁱ‖x‖` for `i = 1..=m` and exact decay by direct orbit computation.
pub fn certify_nu<T: LinearOperator + ?Sized>(
    op: &T,
    x: &TruncatedVector,
    gamma: f64,
    m: usize,
) -> std::result::Result<UnimodalCertificate, NuFailure> {
    certify_with_kind(op, x, gamma, m, WitnessKind::Given)
}

fn certify_with_kind<T: LinearOperator + ?Sized>(
    op: &T,
    x: &TruncatedVector,
    gamma: f64,
    m: usize,
    kind: WitnessKind,
) -> std::result::Result<UnimodalCertificate, NuFailure> {
    if x.is_zero() {
        return Err(NuFailure { index: 0, ratio: 0.0 });
    }
    let horizon = m.max(x.support_len());
    let orbit = op.orbit_norms(x, horizon);
    let ratios = growth_ratios(&orbit, gamma, m);
    if let Some((i, &ratio)) = ratios.iter().enumerate().find(|(_, &r)| r < 1.0 - RATIO_TOL) {
        return Err(NuFailure { index: i + 1, ratio });
    }
    let Some(decay_index) = orbit.iter().position(ExtReal::is_zero) else {
        return Err(NuFailure { index: 0, ratio: f64::NAN });
    };
    let mut orbit = orbit;
    orbit.truncate(decay_index + 1);
    Ok(UnimodalCertificate { gamma, m, witness: x.clone(), orbit, decay_index, kind })
}

/// Produces a certified norm-unimodal witness for `(γ, m)`.
///
/// Two candidates are tried: the truncated eigenvector `k_β` with
/// `β = (γ + r)/2`, where `r` is the usable eigen-disk radius and the truncation
/// length is the least `L >= m + 1` that passes, and the basis vector `e_m`.
/// The one with the shorter support wins. Ties go to `k_β`.
pub fn nu_witness(op: &ShiftOperator, gamma: f64, m: usize) -> Result<UnimodalCertificate> {
    if !(gamma > 1.0 && gamma.is_finite()) {
        return Err(Error::param("gamma", format!("must exceed 1, got {gamma}")));
    }
    if m == 0 {
        return Err(Error::param("m", "must be at least 1"));
    }
    let disk = eigen_disk_radius(op, DEFAULT_PROBE_LEN)?;
    let radius = disk.usable_radius();

    let eigen = if radius > gamma {
        let beta = 0.5 * (gamma + radius);
        let longest = field_coords(op, Complex64::new(beta, 0.0), 0, m + 1 + MAX_BUFFER);
        (m + 1..=m + 1 + MAX_BUFFER).find_map(|len| {
            let kind = WitnessKind::Eigen { beta, trunc_len: len };
            certify_with_kind(op, &longest.truncated(len), gamma, m, kind).ok()
        })
    } else {
        None
    };
    let basis = certify_with_kind(op, &TruncatedVector::basis(m), gamma, m, WitnessKind::Basis).ok();

    match (eigen, basis) {
        (Some(e), Some(b)) => Ok(if b.decay_index < e.decay_index { b } else { e }),
        (Some(e), None) => Ok(e),
        (None, Some(b)) => Ok(b),
        (None, None) => Err(Error::GammaExceedsRadius { gamma, radius }),
    }
}

/// Finite probe of the weak criterion: the share of `0 <= i <= N` with `‖Tⁱx‖ >= C‖x‖`.
#[derive(Clone, Debug, Serialize)]
pub struct WnuProfile {
    pub c: f64,
    pub n: usize,
    pub count: usize,
    /// `count / N`; can reach `(N+1)/N` because both ends are counted.
    pub fraction: f64,
    pub witness: TruncatedVector,
}

pub fn wnu_profile<T: LinearOperator + ?Sized>(op: &T, x: &TruncatedVector, c: f64, n: usize) -> Result<WnuProfile> {
    if x.is_zero() {
        return Err(Error::param("x", "must be nonzero"));
    }
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param("c", format!("must be positive, got {c}")));
    }
    let orbit = op.orbit_norms(x, n);
    let level = orbit[0] * c;
    let count = orbit.iter().filter(|&&v| v >= level).count();
    Ok(WnuProfile { c, n, count, fraction: count as f64 / n as f64, witness: x.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shiftops::WeightForm;

    fn two() -> ShiftOperator {
        ShiftOperator::constant(2.0).unwrap()
    }

    #[test]
    fn e5_qualifies_for_constant_two() {
        let cert = certify_nu(&two(), &TruncatedVector::basis(5), 1.5, 5).unwrap();
        assert_eq!(cert.decay_index, 6);
        let expected: Vec<f64> = (0..=6).map(|i| if i <= 5 { 2f64.powi(i) } else { 0.0 }).collect();
        assert_eq!(cert.orbit.iter().map(|x| x.to_f64()).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn generated_witness_for_constant_two() {
        let cert = nu_witness(&two(), 1.5, 5).unwrap();
        assert!(cert.growth_ratios().iter().all(|&r| r >= 1.0 - RATIO_TOL));
        assert_eq!(cert.decay_index, 6);
        assert!(certify_nu(&two(), &cert.witness, 1.5, 5).is_ok());
    }

    #[test]
    fn short_horizon_prefers_basis_vector() {
        // k_1.75 needs four coordinates to grow twice at rate 1.5; e_2 needs three
        let cert = nu_witness(&two(), 1.5, 2).unwrap();
        assert_eq!(cert.kind, WitnessKind::Basis);
        assert_eq!(cert.decay_index, 3);
    }

    #[test]
    fn long_horizon_uses_eigenvector() {
        let cert = nu_witness(&two(), 1.5, 40).unwrap();
        assert!(matches!(cert.kind, WitnessKind::Eigen { trunc_len: 41, .. }), "{:?}", cert.kind);
    }

    #[test]
    fn gamma_above_radius_fails() {
        let err = nu_witness(&two(), 3.0, 5).unwrap_err();
        assert!(err.to_string().contains("gamma exceeds eigen disk radius"), "{err}");
        assert!(nu_witness(&two(), 1.0, 5).is_err());
        assert!(nu_witness(&two(), 1.5, 0).is_err());
    }

    #[test]
    fn scaled_ratio_at_its_radius() {
        let op = ShiftOperator::from_form(WeightForm::ScaledRatio(2.0)).unwrap();
        let cert = nu_witness(&op, 2.0, 10).unwrap();
        let ratios = cert.growth_ratios();
        assert_eq!(ratios.len(), 10);
        assert!(ratios.iter().all(|&r| r >= 1.0), "{ratios:?}");
    }

    #[test]
    fn certify_failures() {
        let fail = certify_nu(&two(), &TruncatedVector::basis(0), 1.1, 1).unwrap_err();
        assert_eq!(fail, NuFailure { index: 1, ratio: 0.0 });
        let fail = certify_nu(&two(), &TruncatedVector::basis(5), 2.5, 3).unwrap_err();
        assert_eq!(fail.index, 1);
        assert!((fail.ratio - 0.8).abs() < 1e-15);
        assert_eq!(certify_nu(&two(), &TruncatedVector::zero(), 1.5, 1).unwrap_err().index, 0);
    }

    #[test]
    fn wnu_profile_examples() {
        let p = wnu_profile(&two(), &TruncatedVector::basis(7), 1.2, 7).unwrap();
        assert_eq!(p.count, 7);
        assert_eq!(p.fraction, 1.0);
        let p = wnu_profile(&two(), &TruncatedVector::basis(0), 2.0, 5).unwrap();
        assert_eq!(p.fraction, 0.0);
        let p = wnu_profile(&two(), &TruncatedVector::from_real(&[0.3, -1.0]), 0.9, 1).unwrap();
        assert!(p.fraction >= 1.0);
        assert!(wnu_profile(&two(), &TruncatedVector::zero(), 1.0, 1).is_err());
    }
}
