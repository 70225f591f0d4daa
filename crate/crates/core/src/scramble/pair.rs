use serde::Serialize;

use super::construction::ScrambleConstruction;
use super::stats::{distance_series, CloseCounts, DistributionalStats};
use super::symbols::{signed_combination, theta, SymbolSequence};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::shiftops::LinearOperator;

/// The proof's separation threshold; it works because `‖x_1‖ = 1`.
pub const SEPARATION_TAU: f64 = 0.5;

/// Extremum of `‖Tⁿz‖` over `n ∈ [N'_k, N_k]` against its bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockCheck {
    pub k: usize,
    pub n_prime: usize,
    pub n: usize,
    /// Minimum on nonzero blocks, maximum on zero blocks.
    pub value: ExtReal,
    /// `1 - ε_{k-1} - ε_k` (strictly exceeded) or `ε_{k-1} + ε_k` (not exceeded).
    pub bound: f64,
    pub pass: bool,
}

/// `F^{N_k}` against the block bound derived from the orbit plateau.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockFBound {
    pub k: usize,
    pub tau: f64,
    pub n: usize,
    /// Exclusive count, `0 <= i < N_k`.
    pub f: f64,
    /// Inclusive count, `0 <= i <= N_k`.
    pub f_inclusive: f64,
    /// `N'_k/N_k` (upper) or `(N_k - N'_k)/N_k` (lower) for the exclusive count.
    pub bound: f64,
    /// `(N'_k + 1)/N_k` (upper) or `(N_k - N'_k + 1)/N_k` (lower) for the inclusive count.
    pub bound_plus_one: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    /// `θ_k = ξ_k - ξ'_k`, `k = 1..=K`.
    pub theta: Vec<i8>,
    pub nonzero_blocks: Vec<usize>,
    pub zero_blocks: Vec<usize>,
    pub lower_checks: Vec<BlockCheck>,
    pub upper_checks: Vec<BlockCheck>,
    /// `F^{N_k}(1/2) <= N'_k/N_k` on nonzero blocks with `1 - ε_{k-1} - ε_k > 1/2`.
    pub separation_bounds: Vec<BlockFBound>,
    /// `F^{N_k}(τ) >= (N_k - N'_k)/N_k` on zero blocks with `ε_{k-1} + ε_k < τ`.
    pub proximity_bounds: Vec<BlockFBound>,
    /// `F^{N_k}(τ)` at `n = N_1..=N_K`.
    pub f_samples: DistributionalStats,
    /// `F^{N_k}(1/2)` at the same `n`.
    pub f_samples_separation: DistributionalStats,
    pub all_pass: bool,
}

/// Verifies that `f(ξ)` and `f(ξ')` form a distributionally chaotic pair at finite depth.
///
/// All bounds are evaluated on the single orbit of `z = f(ξ) - f(ξ') = Σ θ_k x_k`.
pub fn verify_dc_pair<T: LinearOperator + ?Sized>(
    op: &T,
    c: &ScrambleConstruction,
    xi: &SymbolSequence,
    xi_prime: &SymbolSequence,
    tau: f64,
) -> Result<PairReport> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::param("tau", format!("must be positive, got {tau}")));
    }
    let depth = c.depth();
    let theta = theta(xi, xi_prime, depth);
    if theta.iter().all(|&t| t == 0) {
        return Err(Error::param("symbols", format!("sequences agree on 1..={depth}")));
    }
    let z = signed_combination(c, &theta);

    let horizon = c.stages.last().expect("depth >= 1").n;
    let zero = crate::seqspace::TruncatedVector::zero();
    let series = distance_series(op, &z, &zero, horizon);

    let close_tau = CloseCounts::new(&series, tau);
    let close_half = CloseCounts::new(&series, SEPARATION_TAU);

    let mut report = PairReport {
        nonzero_blocks: Vec::new(),
        zero_blocks: Vec::new(),
        lower_checks: Vec::new(),
        upper_checks: Vec::new(),
        separation_bounds: Vec::new(),
        proximity_bounds: Vec::new(),
        f_samples: DistributionalStats::from_series(&series, tau, &block_window(c))?,
        f_samples_separation: DistributionalStats::from_series(&series, SEPARATION_TAU, &block_window(c))?,
        theta,
        all_pass: false,
    };

    for s in &c.stages {
        let k = s.k;
        let eps_sum = c.eps(k - 1) + c.eps(k);
        let block = &series[s.n_prime..=s.n];
        let (n, n_prime) = (s.n as f64, s.n_prime as f64);
        if report.theta[k - 1] != 0 {
            report.nonzero_blocks.push(k);
            let value = block.iter().copied().reduce(ExtReal::min).expect("block is nonempty");
            let bound = 1.0 - eps_sum;
            report.lower_checks.push(BlockCheck { k, n_prime: s.n_prime, n: s.n, value, bound, pass: value > bound });
            if bound > SEPARATION_TAU {
                let f = close_half.f_n(s.n);
                let f_inclusive = close_half.f_n_inclusive(s.n);
                let bound = n_prime / n;
                let bound_plus_one = (n_prime + 1.0) / n;
                report.separation_bounds.push(BlockFBound {
                    k,
                    tau: SEPARATION_TAU,
                    n: s.n,
                    f,
                    f_inclusive,
                    bound,
                    bound_plus_one,
                    pass: f <= bound && f_inclusive <= bound_plus_one,
                });
            }
        } else {
            report.zero_blocks.push(k);
            let value = block.iter().copied().fold(ExtReal::ZERO, ExtReal::max);
            report.upper_checks.push(BlockCheck {
                k,
                n_prime: s.n_prime,
                n: s.n,
                value,
                bound: eps_sum,
                pass: value <= eps_sum,
            });
            if eps_sum < tau {
                let f = close_tau.f_n(s.n);
                let f_inclusive = close_tau.f_n_inclusive(s.n);
                let bound = (n - n_prime) / n;
                let bound_plus_one = (n - n_prime + 1.0) / n;
                report.proximity_bounds.push(BlockFBound {
                    k,
                    tau,
                    n: s.n,
                    f,
                    f_inclusive,
                    bound,
                    bound_plus_one,
                    pass: f >= bound && f_inclusive >= bound_plus_one,
                });
            }
        }
    }
    report.all_pass = report.lower_checks.iter().all(|b| b.pass)
        && report.upper_checks.iter().all(|b| b.pass)
        && report.separation_bounds.iter().all(|b| b.pass)
        && report.proximity_bounds.iter().all(|b| b.pass);
    Ok(report)
}

/// `N_1 < N_2 < … < N_K`
fn block_window(c: &ScrambleConstruction) -> Vec<usize> {
    c.stages.iter().map(|s| s.n).collect()
}
