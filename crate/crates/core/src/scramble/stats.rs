use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::seqspace::TruncatedVector;
use crate::shiftops::LinearOperator;

/// `‖Tⁱx - Tⁱy‖` for `i = 0..=n_max`, computed as the orbit of `x - y`.
pub fn distance_series<T: LinearOperator + ?Sized>(
    op: &T,
    x: &TruncatedVector,
    y: &TruncatedVector,
    n_max: usize,
) -> Vec<ExtReal> {
    op.orbit_norms(&x.sub(y), n_max)
}

/// Running counts of `series[i] < τ`: entry `n` counts `i < n`.
#[derive(Clone, Debug)]
pub struct CloseCounts {
    prefix: Vec<usize>,
}

impl CloseCounts {
    pub fn new(series: &[ExtReal], tau: f64) -> Self {
        let mut prefix = Vec::with_capacity(series.len() + 1);
        prefix.push(0);
        let mut count = 0;
        for d in series {
            count += usize::from(*d < tau);
            prefix.push(count);
        }
        CloseCounts { prefix }
    }

    /// Largest `n` for which [`CloseCounts::f_n_inclusive`] is available.
    pub fn n_max(&self) -> usize {
        self.prefix.len() - 2
    }

    /// `#{0 <= i < n : d_i < τ} / n`
    pub fn f_n(&self, n: usize) -> f64 {
        self.prefix[n] as f64 / n as f64
    }

    /// `#{0 <= i <= n : d_i < τ} / n`; may exceed 1.
    pub fn f_n_inclusive(&self, n: usize) -> f64 {
        self.prefix[n + 1] as f64 / n as f64
    }
}

fn check_f_args(tau: f64, n: usize) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::param("tau", format!("must be positive, got {tau}")));
    }
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    Ok(())
}

/// `Fⁿ(τ)`: the share of `0 <= i < n` with `‖Tⁱx - Tⁱy‖ < τ`.
pub fn f_n<T: LinearOperator + ?Sized>(
    op: &T,
    x: &TruncatedVector,
    y: &TruncatedVector,
    tau: f64,
    n: usize,
) -> Result<f64> {
    check_f_args(tau, n)?;
    Ok(CloseCounts::new(&distance_series(op, x, y, n), tau).f_n(n))
}

/// Like [`f_n`] but counting `0 <= i <= n`, so the value lies in `[0, (n+1)/n]`.
pub fn f_n_inclusive<T: LinearOperator + ?Sized>(
    op: &T,
    x: &TruncatedVector,
    y: &TruncatedVector,
    tau: f64,
    n: usize,
) -> Result<f64> {
    check_f_args(tau, n)?;
    Ok(CloseCounts::new(&distance_series(op, x, y, n), tau).f_n_inclusive(n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FSample {
    pub n: usize,
    pub f: f64,
}

/// `Fⁿ(τ)` over a sampling window with finite stand-ins for liminf and limsup.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionalStats {
    pub tau: f64,
    pub samples: Vec<FSample>,
    /// Minimum over the last half of the window (estimate of `F(τ)`).
    pub f_lower_est: f64,
    /// Maximum over the last half of the window (estimate of `F*(τ)`).
    pub f_upper_est: f64,
    /// `"exclusive"`: counts `0 <= i < n`, so every sample lies in `[0, 1]`.
    pub convention: &'static str,
}

impl DistributionalStats {
    pub fn from_series(series: &[ExtReal], tau: f64, window: &[usize]) -> Result<Self> {
        check_window(tau, window)?;
        let last = *window.last().expect("window checked nonempty");
        if series.len() < last + 1 {
            return Err(Error::param("window", format!("series has {} entries, window needs {last}", series.len())));
        }
        let counts = CloseCounts::new(series, tau);
        let samples: Vec<FSample> = window.iter().map(|&n| FSample { n, f: counts.f_n(n) }).collect();
        let tail = &samples[samples.len() / 2..];
        let f_lower_est = tail.iter().map(|s| s.f).fold(f64::INFINITY, f64::min);
        let f_upper_est = tail.iter().map(|s| s.f).fold(f64::NEG_INFINITY, f64::max);
        Ok(DistributionalStats { tau, samples, f_lower_est, f_upper_est, convention: "exclusive" })
    }
}

fn check_window(tau: f64, window: &[usize]) -> Result<()> {
    let Some(&first) = window.first() else {
        return Err(Error::param("window", "must be nonempty"));
    };
    check_f_args(tau, first)?;
    if window.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("window", "must be strictly increasing"));
    }
    Ok(())
}

/// Samples `Fⁿ(τ)` at each `n` of `window`.
pub fn f_bounds<T: LinearOperator + ?Sized>(
    op: &T,
    x: &TruncatedVector,
    y: &TruncatedVector,
    tau: f64,
    window: &[usize],
) -> Result<DistributionalStats> {
    check_window(tau, window)?;
    let series = distance_series(op, x, y, *window.last().expect("window checked nonempty"));
    DistributionalStats::from_series(&series, tau, window)
}
