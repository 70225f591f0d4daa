//! Batch front end: one command, one experiment, one output directory.
//!
//! Every run writes `report.json` (with `schema_version`, the effective config
//! and the command result) and `data.csv`. The exit status is 0 exactly when
//! every check in the report passes.
//!
//! CSV columns per command:
//!
//! | command    | columns          |
//! |------------|------------------|
//! | `orbit`    | `i,norm`         |
//! | `eigen`    | `index,re,im`    |
//! | `radius`   | `n,root`         |
//! | `mixing`   | `k,d_in,d_out`   |
//! | `periodic` | `index,re,im`    |
//! | `witness`  | `i,norm`         |
//! | `scramble` | `n,tau,F`        |
//! | `stats`    | `n,tau,F`        |

mod commands;
mod config;
mod vector;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use commands::CommandOutput;
pub use config::{
    EigenParams, ExperimentConfig, MixingParams, OrbitParams, PeriodicParams, RadiusParams, ScrambleParams,
    StatsParams, WitnessParams,
};
pub use vector::VectorSpec;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "linchaos", version, about = "Chaos certificates for weighted backward shifts")]
pub struct Cli {
    /// TOML experiment file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Weight form, e.g. `constant(2)`, `ratio_plus_one`, `scaled_ratio(3)`.
    #[arg(long, global = true)]
    pub weights: Option<String>,
    #[arg(long, global = true)]
    pub declared_sup: Option<f64>,
    /// Output directory for report.json and data.csv.
    #[arg(long = "out", global = true)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norms ‖Tⁱx‖ for i = 0..=n_max.
    Orbit(OrbitArgs),
    /// Eigenvector or generalized eigenvector at ω.
    Eigen(EigenArgs),
    /// Eigen disk radius estimate.
    Radius(RadiusArgs),
    /// Strong-mixing witness between eigen-combinations.
    Mixing(MixingArgs),
    /// Periodic point from generalized eigenvectors at a root of unity.
    Periodic(PeriodicArgs),
    /// Norm-unimodal witness for (γ, m).
    Witness(WitnessArgs),
    /// Scrambled-set construction and pair verification.
    Scramble(ScrambleArgs),
    /// Distributional function samples for a pair of vectors.
    Stats(StatsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orbit(_) => "orbit",
            Command::Eigen(_) => "eigen",
            Command::Radius(_) => "radius",
            Command::Mixing(_) => "mixing",
            Command::Periodic(_) => "periodic",
            Command::Witness(_) => "witness",
            Command::Scramble(_) => "scramble",
            Command::Stats(_) => "stats",
        }
    }
}

fn parse_part(s: &str) -> std::result::Result<[f64; 4], String> {
    let values: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect::<std::result::Result<_, _>>()?;
    values.try_into().map_err(|_| "expected `re_eig,im_eig,re_coeff,im_coeff`".to_string())
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// `zero`, `basis(m)`, `eigen(re, im, len)`, `[[re, im], …]` or `file:path`.
    #[arg(long)]
    pub vector: Option<String>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub omega_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_im: Option<f64>,
    #[arg(long)]
    pub trunc_len: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Number of random ω whose residual bound is also checked.
    #[arg(long)]
    pub sweep: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long)]
    pub probe_len: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MixingArgs {
    /// `re_eig,im_eig,re_coeff,im_coeff`; repeat for several parts.
    #[arg(long = "x-part", value_parser = parse_part, allow_negative_numbers = true)]
    pub x_part: Vec<[f64; 4]>,
    #[arg(long = "y-part", value_parser = parse_part, allow_negative_numbers = true)]
    pub y_part: Vec<[f64; 4]>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub trunc_len: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PeriodicArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub trunc_len: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScrambleArgs {
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// `halving` or `list(ε_1, ε_2, …)`.
    #[arg(long)]
    pub eps: Option<String>,
    /// Size P of the symbol family.
    #[arg(long)]
    pub pairs: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub taus: Option<Vec<f64>>,
    #[arg(long)]
    pub n1: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub window: Option<Vec<usize>>,
}

fn set<T: Clone>(slot: &mut T, value: &Option<T>) {
    if let Some(v) = value {
        *slot = v.clone();
    }
}

impl Cli {
    /// The config file (or defaults) with every given flag applied.
    pub fn effective_config(&self) -> Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        set(&mut c.weights, &self.weights);
        if self.declared_sup.is_some() {
            c.declared_sup = self.declared_sup;
        }
        set(&mut c.out_dir, &self.out_dir);
        set(&mut c.seed, &self.seed);
        match &self.command {
            Command::Orbit(a) => {
                set(&mut c.orbit.vector, &a.vector);
                set(&mut c.orbit.n_max, &a.n_max);
            }
            Command::Eigen(a) => {
                set(&mut c.eigen.omega_re, &a.omega_re);
                set(&mut c.eigen.omega_im, &a.omega_im);
                set(&mut c.eigen.trunc_len, &a.trunc_len);
                set(&mut c.eigen.order, &a.order);
                set(&mut c.eigen.sweep, &a.sweep);
            }
            Command::Radius(a) => set(&mut c.radius.probe_len, &a.probe_len),
            Command::Mixing(a) => {
                if !a.x_part.is_empty() {
                    c.mixing.x_part = a.x_part.clone();
                }
                if !a.y_part.is_empty() {
                    c.mixing.y_part = a.y_part.clone();
                }
                set(&mut c.mixing.eps, &a.eps);
                set(&mut c.mixing.trunc_len, &a.trunc_len);
            }
            Command::Periodic(a) => {
                set(&mut c.periodic.p, &a.p);
                set(&mut c.periodic.q, &a.q);
                set(&mut c.periodic.depth, &a.depth);
                set(&mut c.periodic.target, &a.target);
                set(&mut c.periodic.trunc_len, &a.trunc_len);
            }
            Command::Witness(a) => {
                set(&mut c.witness.gamma, &a.gamma);
                set(&mut c.witness.m, &a.m);
            }
            Command::Scramble(a) => {
                set(&mut c.scramble.gamma, &a.gamma);
                set(&mut c.scramble.depth, &a.depth);
                set(&mut c.scramble.eps, &a.eps);
                set(&mut c.scramble.pairs, &a.pairs);
                set(&mut c.scramble.taus, &a.taus);
                set(&mut c.scramble.n1, &a.n1);
            }
            Command::Stats(a) => {
                set(&mut c.stats.x, &a.x);
                set(&mut c.stats.y, &a.y);
                set(&mut c.stats.tau, &a.tau);
                set(&mut c.stats.window, &a.window);
            }
        }
        Ok(c)
    }
}

/// Runs one command against an already merged config without touching the filesystem.
pub fn execute(command: &str, config: &ExperimentConfig) -> Result<CommandOutput> {
    config.validate()?;
    let op = config.operator()?;
    match command {
        "orbit" => commands::orbit(config, &op),
        "eigen" => commands::eigen(config, &op),
        "radius" => commands::radius(config, &op),
        "mixing" => commands::mixing(config, &op),
        "periodic" => commands::periodic(config, &op),
        "witness" => commands::witness(config, &op),
        "scramble" => commands::scramble(config, &op),
        "stats" => commands::stats(config, &op),
        other => Err(Error::InvalidParameter { field: "command".into(), reason: format!("unknown command {other:?}") }),
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub pass: bool,
    pub report_path: PathBuf,
    pub data_path: PathBuf,
}

/// The full `report.json` document.
pub fn report_document(command: &str, config: &ExperimentConfig, output: &CommandOutput) -> serde_json::Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "pass": output.pass,
        "config": config,
        "result": output.result,
    })
}

/// Writes through a sibling temp file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("output");
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<RunOutcome> {
    let config = cli.effective_config()?;
    let command = cli.command.name();
    let output = execute(command, &config)?;

    fs::create_dir_all(&config.out_dir)?;
    let report_path = config.out_dir.join("report.json");
    let data_path = config.out_dir.join("data.csv");
    let mut report = serde_json::to_string_pretty(&report_document(command, &config, &output))?;
    report.push('\n');
    write_atomic(&report_path, report.as_bytes())?;
    write_atomic(&data_path, output.csv.as_bytes())?;
    Ok(RunOutcome { pass: output.pass, report_path, data_path })
}
