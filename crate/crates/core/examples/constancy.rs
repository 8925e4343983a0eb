//! Spectral constancy over the hull: pseudospectra of sections at several
//! points of the Fibonacci subshift compared in Hausdorff distance.
//!
//! The default scale here is small so the example finishes quickly; pass
//! `512` as the first argument for the full-size run. At the default size the
//! pairwise distances are already 0, but the 2N trend check can still move
//! by one grid cell and be reported as failing.
//!
//! Run with `cargo run --release --example constancy [N]`.

use specband::experiments::{constancy_experiment, ExperimentConfig, ModelSpec, SampleSpec};

fn main() -> specband::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(96);
    let mut cfg = ExperimentConfig::new(ModelSpec::from_name("sturmian-golden", Some(1.0))?);
    cfg.scale.n = n;
    cfg.scale.grid_step = 0.05;
    cfg.scale.eps = vec![1e-1, 1e-2];
    cfg.samples = Some(vec![
        SampleSpec::Shift { k: 0 },
        SampleSpec::Offset { value: 0.5 },
        SampleSpec::Offset { value: 0.25 },
    ]);
    let report = constancy_experiment(&cfg)?;
    for c in &report.checks {
        println!("{:<40} {:>10.4}  {}", c.name, c.measured, if c.pass { "ok" } else { "FAIL" });
    }
    println!("max pairwise Hausdorff: {}", report.summary["max_pairwise_hausdorff"]);
    Ok(())
}
