//! Operator systems induced by a family: a constant family over two fixed
//! points, and diagonal families over two periodic subshifts on disjoint
//! alphabets.
//!
//! Run with `cargo run --release --example induced_system`.

use specband::experiments::{induced_system_check, ExperimentConfig, ModelSpec};

fn main() -> specband::Result<()> {
    for spec in [ModelSpec::Example71 {}, ModelSpec::Example72 {}] {
        let mut cfg = ExperimentConfig::new(spec);
        cfg.scale.n = 128;
        let report = induced_system_check(&cfg)?;
        println!("{}:", cfg.model.id());
        for c in &report.checks {
            let extra = c.detail.as_deref().unwrap_or("");
            println!("  {:<28} {:>6}  {} {extra}", c.name, c.measured, if c.pass { "ok" } else { "FAIL" });
        }
    }
    Ok(())
}
