use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scramble::EpsRule;
use crate::shiftops::{ShiftOperator, WeightConfig};

use super::vector::VectorSpec;

/// One experiment: the operator, an output directory, and a parameter block per command.
///
/// Stored as TOML; top-level keys describe the operator, each command reads its own table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_weights")]
    pub weights: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_sup: Option<f64>,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Drives randomized sweeps only.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub orbit: OrbitParams,
    #[serde(default)]
    pub eigen: EigenParams,
    #[serde(default)]
    pub radius: RadiusParams,
    #[serde(default)]
    pub mixing: MixingParams,
    #[serde(default)]
    pub periodic: PeriodicParams,
    #[serde(default)]
    pub witness: WitnessParams,
    #[serde(default)]
    pub scramble: ScrambleParams,
    #[serde(default)]
    pub stats: StatsParams,
}

fn default_weights() -> String {
    "constant(2)".to_string()
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            weights: default_weights(),
            declared_sup: None,
            out_dir: default_out_dir(),
            seed: 0,
            orbit: OrbitParams::default(),
            eigen: EigenParams::default(),
            radius: RadiusParams::default(),
            mixing: MixingParams::default(),
            periodic: PeriodicParams::default(),
            witness: WitnessParams::default(),
            scramble: ScrambleParams::default(),
            stats: StatsParams::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitParams {
    pub vector: String,
    pub n_max: usize,
}

impl Default for OrbitParams {
    fn default() -> Self {
        OrbitParams { vector: "basis(3)".into(), n_max: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EigenParams {
    pub omega_re: f64,
    pub omega_im: f64,
    pub trunc_len: usize,
    pub order: usize,
    /// Random `ω` with `|ω| <= 0.9 r` whose residual bound is also checked.
    pub sweep: usize,
}

impl Default for EigenParams {
    fn default() -> Self {
        EigenParams { omega_re: 0.5, omega_im: 0.0, trunc_len: 64, order: 0, sweep: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadiusParams {
    pub probe_len: usize,
}

impl Default for RadiusParams {
    fn default() -> Self {
        RadiusParams { probe_len: 512 }
    }
}

/// Eigen-parts are `[Re λ, Im λ, Re a, Im a]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MixingParams {
    pub x_part: Vec<[f64; 4]>,
    pub y_part: Vec<[f64; 4]>,
    pub eps: f64,
    pub trunc_len: usize,
}

impl Default for MixingParams {
    fn default() -> Self {
        MixingParams {
            x_part: vec![[0.5, 0.0, 1.0, 0.0]],
            y_part: vec![[1.5, 0.0, 1.0, 0.0]],
            eps: 0.01,
            trunc_len: 400,
        }
    }
}

/// The root of unity is `exp(2πi p/q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PeriodicParams {
    pub p: i64,
    pub q: u64,
    pub depth: usize,
    pub target: String,
    pub trunc_len: usize,
}

impl Default for PeriodicParams {
    fn default() -> Self {
        PeriodicParams { p: 0, q: 1, depth: 1, target: "eigen(1, 0, 200)".into(), trunc_len: 200 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WitnessParams {
    pub gamma: f64,
    pub m: usize,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams { gamma: 1.5, m: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScrambleParams {
    pub gamma: f64,
    pub depth: usize,
    /// `halving` or `list(ε_1, ε_2, …)`.
    pub eps: String,
    pub pairs: usize,
    pub taus: Vec<f64>,
    pub n1: usize,
}

impl Default for ScrambleParams {
    fn default() -> Self {
        ScrambleParams { gamma: 1.5, depth: 4, eps: "halving".into(), pairs: 2, taus: vec![1.0], n1: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsParams {
    pub x: String,
    pub y: String,
    pub tau: f64,
    pub window: Vec<usize>,
}

impl Default for StatsParams {
    fn default() -> Self {
        StatsParams { x: "basis(3)".into(), y: "zero".into(), tau: 0.5, window: vec![2, 4, 8, 16] }
    }
}

fn invalid(field: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { field: field.to_string(), reason: reason.into() }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, format!("must be positive and finite, got {v}")))
    }
}

fn at_least(field: &str, v: usize, min: usize) -> Result<()> {
    if v >= min {
        Ok(())
    } else {
        Err(invalid(field, format!("must be at least {min}, got {v}")))
    }
}

fn above_one(field: &str, v: f64) -> Result<()> {
    if v > 1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, format!("must exceed 1, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| invalid("config", e.to_string()))
    }

    /// Fails only for values TOML cannot hold, e.g. a seed above `i64::MAX`.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| invalid("config", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn operator(&self) -> Result<ShiftOperator> {
        WeightConfig { weights: self.weights.clone(), declared_sup: self.declared_sup }.build()
    }

    /// Checks every numeric field against the preconditions of the operation that consumes it.
    pub fn validate(&self) -> Result<()> {
        self.operator()?;
        if let Some(s) = self.declared_sup {
            positive("declared_sup", s)?;
        }

        if i64::try_from(self.seed).is_err() {
            return Err(invalid("seed", format!("must not exceed {} to stay representable in TOML", i64::MAX)));
        }

        self.orbit.vector.parse::<VectorSpec>()?;

        let e = &self.eigen;
        if !(e.omega_re.is_finite() && e.omega_im.is_finite()) {
            return Err(invalid("eigen.omega", "must be finite"));
        }
        at_least("eigen.trunc_len", e.trunc_len, e.order + 1)?;

        at_least("radius.probe_len", self.radius.probe_len, 16)?;

        let m = &self.mixing;
        positive("mixing.eps", m.eps)?;
        at_least("mixing.trunc_len", m.trunc_len, 1)?;
        for (name, part) in [("mixing.x_part", &m.x_part), ("mixing.y_part", &m.y_part)] {
            if part.iter().flatten().any(|v| !v.is_finite()) {
                return Err(invalid(name, "entries must be finite"));
            }
        }

        let p = &self.periodic;
        at_least("periodic.q", p.q as usize, 1)?;
        at_least("periodic.depth", p.depth, 1)?;
        at_least("periodic.trunc_len", p.trunc_len, p.depth)?;
        p.target.parse::<VectorSpec>()?;

        above_one("witness.gamma", self.witness.gamma)?;
        at_least("witness.m", self.witness.m, 1)?;

        let s = &self.scramble;
        above_one("scramble.gamma", s.gamma)?;
        at_least("scramble.depth", s.depth, 1)?;
        at_least("scramble.pairs", s.pairs, 2)?;
        at_least("scramble.n1", s.n1, 1)?;
        s.eps.parse::<EpsRule>()?.values(s.depth).map_err(|e| invalid("scramble.eps", e.to_string()))?;
        if s.taus.is_empty() {
            return Err(invalid("scramble.taus", "must be nonempty"));
        }
        for &t in &s.taus {
            positive("scramble.taus", t)?;
        }

        let st = &self.stats;
        st.x.parse::<VectorSpec>()?;
        st.y.parse::<VectorSpec>()?;
        positive("stats.tau", st.tau)?;
        if st.window.is_empty() || st.window[0] == 0 || st.window.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("stats.window", "must be nonempty, positive and strictly increasing"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let c = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::from_toml(&c.to_toml().unwrap()).unwrap(), c);
        c.validate().unwrap();
    }

    #[test]
    fn partial_file_fills_defaults() {
        let c = ExperimentConfig::from_toml("weights = \"scaled_ratio(3)\"\n[witness]\ngamma = 2.5\n").unwrap();
        assert_eq!(c.witness.m, 5);
        assert_eq!(c.witness.gamma, 2.5);
        assert_eq!(c.weights, "scaled_ratio(3)");
    }

    #[test]
    fn errors_name_the_field() {
        let err = ExperimentConfig::from_toml("[witness]\ngama = 2\n").unwrap_err();
        assert!(err.to_string().contains("gama"), "{err}");
        let mut c = ExperimentConfig::default();
        c.scramble.gamma = 0.9;
        assert!(c.validate().unwrap_err().to_string().contains("scramble.gamma"));
        let mut c = ExperimentConfig::default();
        c.stats.window = vec![4, 2];
        assert!(c.validate().unwrap_err().to_string().contains("stats.window"));
        let c = ExperimentConfig { weights: "constant(-1)".into(), ..ExperimentConfig::default() };
        assert!(c.validate().is_err());
    }
}
