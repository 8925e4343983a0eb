//! The concatenation point of the full shift: word coverage and spectral
//! containment of periodic limit operators.
//!
//! Run with `cargo run --release --example pseudoergodic [N]`.

use specband::dynsys::Word;
use specband::experiments::{pseudoergodic_experiment, ExperimentConfig, ModelSpec};

fn main() -> specband::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(256);
    let mut cfg = ExperimentConfig::new(ModelSpec::from_name("full-shift", Some(1.0))?);
    cfg.scale.n = n;
    cfg.scale.n_theta = 64;
    cfg.scale.words = ["0", "1", "01", "001", "0111"].iter().map(|w| w.parse::<Word>().unwrap()).collect();
    let report = pseudoergodic_experiment(&cfg)?;
    for c in &report.checks {
        let extra = c.detail.as_deref().unwrap_or("");
        println!("{:<28} {:>8.4}  {} {extra}", c.name, c.measured, if c.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}
