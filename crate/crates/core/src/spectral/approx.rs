use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::eigen::gen_eigenvector_in;
use super::radius::{eigen_disk_radius, DEFAULT_PROBE_LEN};
use crate::error::{Error, Result};
use crate::seqspace::TruncatedVector;
use crate::shiftops::ShiftOperator;

/// Least-squares fit of a target by a combination of eigenvectors.
#[derive(Clone, Debug, Serialize)]
pub struct EigenApproximation {
    pub coefficients: Vec<Complex64>,
    /// ℓ² distance between the fit and the full target.
    pub residual: f64,
    pub rank: usize,
    pub rank_deficient: bool,
}

pub(crate) struct LstsqFit {
    pub coefficients: Vec<Complex64>,
    pub rank: usize,
}

/// Minimum-norm least-squares solution via SVD with a relative singular-value cut.
pub(crate) fn lstsq(columns: &[Vec<Complex64>], rhs: &[Complex64]) -> LstsqFit {
    let rows = rhs.len();
    let cols = columns.len();
    let a = DMatrix::from_fn(rows, cols, |i, j| columns[j][i]);
    let b = DVector::from_column_slice(rhs);
    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = sigma_max * f64::EPSILON * rows.max(cols) as f64;
    let rank = svd.singular_values.iter().filter(|&&s| s > cut).count();
    let x = svd.solve(&b, cut).expect("SVD computed with both factors");
    LstsqFit { coefficients: x.iter().copied().collect(), rank }
}

/// Equally spaced points on circles of radii `0.3, 0.5, 0.7` times `lambda_max`.
pub fn default_grid(lambda_max: f64, points_per_circle: usize) -> Vec<Complex64> {
    [0.3, 0.5, 0.7]
        .iter()
        .flat_map(|&frac| {
            (0..points_per_circle).map(move |k| {
                let angle = std::f64::consts::TAU * k as f64 / points_per_circle as f64;
                Complex64::from_polar(frac * lambda_max, angle)
            })
        })
        .collect()
}

/// Fits `target` by `Σ c_j k_{λ_j}` over the first `trunc_len` coordinates.
///
/// Rank deficiency is not an error: the singular-value cut picks the
/// minimum-norm solution and `rank_deficient` is set.
pub fn eigen_approximate(
    op: &ShiftOperator,
    target: &TruncatedVector,
    grid: &[Complex64],
    trunc_len: usize,
) -> Result<EigenApproximation> {
    if grid.is_empty() {
        return Err(Error::param("grid", "must be nonempty"));
    }
    let disk = eigen_disk_radius(op, DEFAULT_PROBE_LEN)?;
    let columns = grid
        .iter()
        .map(|&lambda| Ok(gen_eigenvector_in(op, &disk, lambda, 0, trunc_len)?.vector.to_complex_vec(trunc_len)))
        .collect::<Result<Vec<_>>>()?;
    let rhs = target.to_complex_vec(trunc_len);
    let fit = lstsq(&columns, &rhs);

    let mut fitted = vec![Complex64::new(0.0, 0.0); trunc_len];
    for (col, c) in columns.iter().zip(&fit.coefficients) {
        for (slot, x) in fitted.iter_mut().zip(col) {
            *slot += c * x;
        }
    }
    let inside: f64 = fitted.iter().zip(&rhs).map(|(f, t)| (f - t).norm_sqr()).sum();
    let outside = target.tail_norm(trunc_len).to_f64();
    Ok(EigenApproximation {
        residual: (inside + outside * outside).sqrt(),
        rank: fit.rank,
        rank_deficient: fit.rank < grid.len(),
        coefficients: fit.coefficients,
    })
}
