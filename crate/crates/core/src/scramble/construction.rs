use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::seqspace::TruncatedVector;
use crate::shiftops::{LinearOperator, ShiftOperator};
use crate::unimodal::{nu_witness, WitnessKind, RATIO_TOL};

/// Growth horizon of the first stage.
pub const DEFAULT_N1: usize = 2;

/// The sequence `ε_1 > ε_2 > … > 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum EpsRule {
    /// `ε_k = 2^{-k}`
    Halving,
    /// Explicit values for `k = 1, 2, …`.
    List(Vec<f64>),
}

impl EpsRule {
    /// `ε_1..=ε_depth`, validated strictly decreasing and positive.
    pub fn values(&self, depth: usize) -> Result<Vec<f64>> {
        let values: Vec<f64> = match self {
            EpsRule::Halving => (1..=depth).map(|k| 0.5f64.powi(k as i32)).collect(),
            EpsRule::List(v) => {
                if v.len() < depth {
                    return Err(Error::param("eps", format!("{} values given for depth {depth}", v.len())));
                }
                v[..depth].to_vec()
            }
        };
        if values.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(Error::param("eps", "values must be positive"));
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::param("eps", "values must be strictly decreasing"));
        }
        Ok(values)
    }
}

impl fmt::Display for EpsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsRule::Halving => write!(f, "halving"),
            EpsRule::List(v) => {
                let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "list({})", items.join(", "))
            }
        }
    }
}

impl FromStr for EpsRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "halving" {
            return Ok(EpsRule::Halving);
        }
        let inner = s
            .strip_prefix("list(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::param("eps", format!("expected `halving` or `list(a, b, …)`, got {s:?}")))?;
        let values = inner
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::param("eps", format!("not a number: {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(EpsRule::List(values))
    }
}

/// One stage `k` of the construction.
#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub k: usize,
    pub eps: f64,
    /// Prescribed `‖x_k‖`: 1 for `k = 1`, else `R^{-M_{k-1}} 2^{-k} ε_{k-1}`.
    pub target_norm: ExtReal,
    pub n: usize,
    pub n_prime: usize,
    pub m: usize,
    #[serde(skip)]
    pub point: TruncatedVector,
    pub support_len: usize,
    pub witness_kind: WitnessKind,
}

/// The points `x_k` with their integer schedules `N_k`, `N'_k`, `M_k`.
#[derive(Clone, Debug, Serialize)]
pub struct ScrambleConstruction {
    pub gamma: f64,
    /// `R >= ‖T‖`
    pub r_bound: f64,
    pub stages: Vec<Stage>,
}

impl ScrambleConstruction {
    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    /// Stage `k`, 1-based.
    pub fn stage(&self, k: usize) -> &Stage {
        &self.stages[k - 1]
    }

    /// `ε_k` with `ε_0 = 0`: at `k = 1` the sum over earlier points is empty.
    pub fn eps(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.stage(k).eps
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &TruncatedVector> {
        self.stages.iter().map(|s| &s.point)
    }

    /// `M_K`, past which every orbit in the construction vanishes.
    pub fn horizon(&self) -> usize {
        self.stages.last().map_or(0, |s| s.m)
    }
}

/// `R^{-M} 2^{-k} ε`
pub fn stage_norm(r_bound: f64, m_prev: usize, k: usize, eps_prev: f64) -> ExtReal {
    ExtReal::new(r_bound).powi(-(m_prev as i64)) * ExtReal::pow2(-(k as i64)) * ExtReal::new(eps_prev)
}

/// Least `n` with `γⁿ · norm > 1`.
pub fn least_n_prime(gamma: f64, norm: ExtReal) -> usize {
    let estimate = (-norm.log2() / gamma.log2()).floor().max(0.0) as usize;
    let g = ExtReal::new(gamma);
    let mut n = estimate.saturating_sub(2);
    while g.powi(n as i64) * norm <= ExtReal::ONE {
        n += 1;
    }
    n
}

/// Least `N > N'` with `(N - N')/N > (k-1)/k`, i.e. `N > k N'`.
pub fn least_n(k: usize, n_prime: usize) -> usize {
    k * n_prime + 1
}

/// Runs the induction to depth `depth` with `N_1 = n1`, `N'_1 = 0`, `‖x_1‖ = 1`.
///
/// `M_k` is the least integer past `N_k` that bounds every support so far,
/// so the tail sums in condition (V) vanish exactly.
pub fn build_construction(
    op: &ShiftOperator,
    gamma: f64,
    depth: usize,
    eps_rule: &EpsRule,
    n1: usize,
) -> Result<ScrambleConstruction> {
    if depth == 0 {
        return Err(Error::param("depth", "must be at least 1"));
    }
    if n1 == 0 {
        return Err(Error::param("n1", "must be at least 1"));
    }
    let eps = eps_rule.values(depth)?;
    let r_bound = op.norm_bound();
    let mut stages: Vec<Stage> = Vec::with_capacity(depth);

    for k in 1..=depth {
        let (target_norm, n_prime, n) = match stages.last() {
            None => (ExtReal::ONE, 0, n1),
            Some(prev) => {
                let target = stage_norm(r_bound, prev.m, k, prev.eps);
                let n_prime = least_n_prime(gamma, target);
                (target, n_prime, least_n(k, n_prime))
            }
        };
        let cert = nu_witness(op, gamma, n).map_err(|e| Error::WitnessStage { stage: k, source: Box::new(e) })?;
        let mut point = cert.witness.rescale_to(target_norm)?;
        // (VIII) is an equality at N'_1 = 0, so the norm must not round below its target
        while point.norm_ext() < target_norm {
            point = point.scale_ext(ExtReal::new(1.0 + 2.0 * f64::EPSILON));
        }
        let support_len = point.support_len();
        let m_prev = stages.last().map_or(0, |s| s.m);
        let m = m_prev.max(support_len).max(n + 1);
        stages.push(Stage {
            k,
            eps: eps[k - 1],
            target_norm,
            n,
            n_prime,
            m,
            point,
            support_len,
            witness_kind: cert.kind,
        });
    }
    Ok(ScrambleConstruction { gamma, r_bound, stages })
}

/// Condition checks for one stage, each recomputed from the stored points.
#[derive(Clone, Debug, Serialize)]
pub struct StageChecks {
    pub k: usize,
    /// (I) `‖x_k‖` matches its prescribed value.
    pub norm_rule: bool,
    /// (II) `‖Tⁱx_k‖ >= γⁱ‖x_k‖` for `i = 1..=N_k`.
    pub growth: bool,
    /// (III) `γ^{N'_k} R^{-M_{k-1}} 2^{-k} ε_{k-1} > 1`.
    pub threshold: bool,
    /// (IV) `(N_k - N'_k)/N_k > (k-1)/k`.
    pub density: bool,
    /// (V) `Σ_{j<=k} ‖Tⁿx_j‖` is exactly zero for `n >= M_k`.
    pub tail_vanishes: bool,
    /// (VIII) `‖Tⁱx_k‖ >= 1` for `i = N'_k..=N_k`.
    pub plateau: bool,
    /// `M_k > N_k > N'_k > M_{k-1}`; the last link is skipped at `k = 1`.
    pub ordering: bool,
    /// (VII′) `Σ_{j>k} ‖Tⁿx_j‖ < ε_k` for `n = N'_k..=N_k`.
    pub later_terms_small: bool,
}

impl StageChecks {
    pub fn all(&self) -> bool {
        self.norm_rule
            && self.growth
            && self.threshold
            && self.density
            && self.tail_vanishes
            && self.plateau
            && self.ordering
            && self.later_terms_small
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub stages: Vec<StageChecks>,
    pub all_pass: bool,
}

/// Re-verifies every construction condition by direct orbit computation.
pub fn check_invariants<T: LinearOperator + ?Sized>(op: &T, c: &ScrambleConstruction) -> InvariantReport {
    let depth = c.depth();
    let gamma = ExtReal::new(c.gamma);
    let orbits: Vec<Vec<ExtReal>> = c.stages.iter().map(|s| op.orbit_norms(&s.point, s.n.max(c.horizon()))).collect();

    let stages: Vec<StageChecks> = c
        .stages
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let k = s.k;
            let orbit = &orbits[idx];
            let norm = orbit[0];
            let prev = idx.checked_sub(1).map(|p| &c.stages[p]);

            let norm_rule = match prev {
                None => norm.rel_diff(ExtReal::ONE) <= 1e-12,
                Some(p) => norm.rel_diff(stage_norm(c.r_bound, p.m, k, p.eps)) <= 1e-12,
            };
            let mut scale = norm;
            let growth = (1..=s.n).all(|i| {
                scale = scale * gamma;
                orbit[i] >= scale * (1.0 - RATIO_TOL)
            });
            let threshold = match prev {
                None => true,
                Some(p) => gamma.powi(s.n_prime as i64) * stage_norm(c.r_bound, p.m, k, p.eps) > 1.0,
            };
            let density = (s.n - s.n_prime) * k > (k - 1) * s.n;
            let tail_vanishes = c.stages[..=idx]
                .iter()
                .all(|earlier| earlier.point.support_len() <= s.m && op.power_apply(s.m, &earlier.point).is_zero());
            let plateau = (s.n_prime..=s.n).all(|i| orbit[i] >= 1.0);
            let ordering = s.m > s.n && s.n > s.n_prime && prev.is_none_or(|p| s.n_prime > p.m);
            let later_terms_small = (s.n_prime..=s.n).all(|n| {
                let later: ExtReal = orbits[idx + 1..].iter().map(|o| o[n]).sum();
                later < s.eps
            });
            StageChecks {
                k,
                norm_rule,
                growth,
                threshold,
                density,
                tail_vanishes,
                plateau,
                ordering,
                later_terms_small,
            }
        })
        .collect();
    debug_assert_eq!(stages.len(), depth);
    let all_pass = stages.iter().all(StageChecks::all);
    InvariantReport { stages, all_pass }
}
