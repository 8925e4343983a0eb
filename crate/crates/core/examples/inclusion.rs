//! Floquet spectra of periodic words tested against the approximate
//! spectrum of a finite section at the base point.
//!
//! Run with `cargo run --release --example inclusion [N]`.

use specband::experiments::{inclusion_experiment, ExperimentConfig, ModelSpec};

fn main() -> specband::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(256);
    for name in ["shift", "fibonacci"] {
        let mut cfg = ExperimentConfig::new(ModelSpec::from_name(name, None)?);
        cfg.scale.n = n;
        cfg.scale.n_theta = 64;
        let report = inclusion_experiment(&cfg)?;
        println!("{name}:");
        for c in &report.checks {
            println!("  {:<32} {:>8.4}  {}", c.name, c.measured, if c.pass { "ok" } else { "FAIL" });
        }
    }
    Ok(())
}
