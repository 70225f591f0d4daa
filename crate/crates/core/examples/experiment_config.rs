//! Running experiments programmatically through the config layer used by the binary.
//!
//! Run: cargo run --example experiment_config

use linchaos::cli::{execute, report_document, ExperimentConfig};

fn main() -> linchaos::Result<()> {
    let config = ExperimentConfig::from_toml(
        r#"
weights = "constant(2)"
seed = 7

[witness]
gamma = 1.5
m = 20

[scramble]
depth = 5
pairs = 3
taus = [0.5, 1.0]
"#,
    )?;
    for command in ["radius", "witness", "scramble"] {
        let out = execute(command, &config)?;
        let doc = report_document(command, &config, &out);
        println!("{command:<9} pass = {:<5} csv rows = {}", doc["pass"], out.csv.lines().count() - 1);
    }
    println!("\neffective config:\n{}", config.to_toml()?);
    Ok(())
}
