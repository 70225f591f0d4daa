use num_complex::Complex64;
use serde::Serialize;

use super::eigen::{gen_eigenvector_in, EigenVector};
use super::radius::{eigen_disk_radius, DEFAULT_PROBE_LEN};
use crate::error::{Error, Result};
use crate::seqspace::TruncatedVector;
use crate::shiftops::{LinearOperator, ShiftOperator};

/// Number of consecutive `k >= N` checked by direct evaluation.
pub const MIXING_CHECK_SPAN: usize = 10;

/// Hard cap on the threshold search.
const MAX_THRESHOLD: usize = 10_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct MixingCheck {
    pub k: usize,
    /// `‖u(k) - x‖`
    pub d_in: f64,
    /// `‖Tᵏu(k) - y‖`
    pub d_out: f64,
}

/// One eigen-part `coeff · k_ω` of `x` or `y`.
#[derive(Clone, Debug, Serialize)]
pub struct EigenPart {
    pub eigenvalue: Complex64,
    pub coeff: Complex64,
    pub eigenvector: EigenVector,
}

impl EigenPart {
    pub fn vector(&self) -> TruncatedVector {
        self.eigenvector.vector.scale(self.coeff)
    }
}

/// Strong-mixing certificate for the ε-balls around `x` and `y`.
#[derive(Clone, Debug, Serialize)]
pub struct MixingWitness {
    /// `u(N)`
    pub u_k: TruncatedVector,
    pub k: usize,
    /// Least `N` with `λ^N < ε/M` and `ρ^{-N} < ε/M`.
    pub threshold: usize,
    pub eps: f64,
    pub x_part: Vec<EigenPart>,
    pub y_part: Vec<EigenPart>,
    /// `max |λ_i|`, absent when `x` has no parts.
    pub lambda_bar: Option<f64>,
    /// `min |ρ_j|`, absent when `y` has no parts.
    pub rho_bar: Option<f64>,
    /// `max(Σ‖x_i‖, Σ‖y_j‖)`
    pub m_bound: f64,
    pub checks: Vec<MixingCheck>,
}

impl MixingWitness {
    pub fn x(&self) -> TruncatedVector {
        self.x_part.iter().fold(TruncatedVector::zero(), |acc, p| acc.add(&p.vector()))
    }

    pub fn y(&self) -> TruncatedVector {
        self.y_part.iter().fold(TruncatedVector::zero(), |acc, p| acc.add(&p.vector()))
    }

    /// Both ε-inequalities hold at every checked `k`.
    pub fn certified(&self) -> bool {
        self.checks.iter().all(|c| c.d_in < self.eps && c.d_out < self.eps)
    }
}

/// `u(k) = x + Σ ρ_j^{-k} y_j`
pub fn mixing_point(x: &TruncatedVector, y_part: &[EigenPart], k: usize) -> TruncatedVector {
    y_part.iter().fold(x.clone(), |acc, p| acc.axpy(p.eigenvalue.powi(-(k as i32)), &p.vector()))
}

/// Builds and certifies the strong-mixing witness `u(k)` for `x = Σ a_i k_{λ_i}`, `y = Σ b_j k_{ρ_j}`.
pub fn mixing_witness(
    op: &ShiftOperator,
    x_part: &[(Complex64, Complex64)],
    y_part: &[(Complex64, Complex64)],
    eps: f64,
    trunc_len: usize,
) -> Result<MixingWitness> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param("eps", format!("must be positive, got {eps}")));
    }
    if let Some((l, _)) = x_part.iter().find(|(l, _)| l.norm() >= 1.0) {
        return Err(Error::ModulusConstraint(format!("x eigenvalue {l} has modulus {} >= 1", l.norm())));
    }
    if let Some((r, _)) = y_part.iter().find(|(r, _)| r.norm() <= 1.0) {
        return Err(Error::ModulusConstraint(format!("y eigenvalue {r} has modulus {} <= 1", r.norm())));
    }
    let disk = eigen_disk_radius(op, DEFAULT_PROBE_LEN)?;
    let parts = |list: &[(Complex64, Complex64)]| -> Result<Vec<EigenPart>> {
        list.iter()
            .map(|&(eigenvalue, coeff)| {
                Ok(EigenPart {
                    eigenvalue,
                    coeff,
                    eigenvector: gen_eigenvector_in(op, &disk, eigenvalue, 0, trunc_len)?,
                })
            })
            .collect()
    };
    let x_part = parts(x_part)?;
    let y_part = parts(y_part)?;

    let lambda_bar = x_part.iter().map(|p| p.eigenvalue.norm()).reduce(f64::max);
    let rho_bar = y_part.iter().map(|p| p.eigenvalue.norm()).reduce(f64::min);
    let x_sum: f64 = x_part.iter().map(|p| p.vector().norm()).sum();
    let y_sum: f64 = y_part.iter().map(|p| p.vector().norm()).sum();
    let m_bound = x_sum.max(y_sum);

    let threshold = if m_bound == 0.0 {
        0
    } else {
        let level = eps / m_bound;
        (0..=MAX_THRESHOLD)
            .find(|&n| {
                lambda_bar.is_none_or(|l| l.powi(n as i32) < level)
                    && rho_bar.is_none_or(|r| r.powi(-(n as i32)) < level)
            })
            .ok_or_else(|| Error::param("eps", "threshold search exceeded its cap"))?
    };

    let x = x_part.iter().fold(TruncatedVector::zero(), |acc, p| acc.add(&p.vector()));
    let y = y_part.iter().fold(TruncatedVector::zero(), |acc, p| acc.add(&p.vector()));
    let checks = (threshold..=threshold + MIXING_CHECK_SPAN)
        .map(|k| {
            let u = mixing_point(&x, &y_part, k);
            MixingCheck { k, d_in: u.sub(&x).norm(), d_out: op.power_apply(k, &u).sub(&y).norm() }
        })
        .collect();

    Ok(MixingWitness {
        u_k: mixing_point(&x, &y_part, threshold),
        k: threshold,
        threshold,
        eps,
        x_part,
        y_part,
        lambda_bar,
        rho_bar,
        m_bound,
        checks,
    })
}
