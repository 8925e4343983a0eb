//! Pseudospectra on a grid around the Wiener-norm disc, written as CSV.
//!
//! Run with `cargo run --release --example pseudospectrum [OUT_DIR]`.

use std::fs::File;
use std::path::PathBuf;

use specband::experiments::ModelSpec;
use specband::opfamily::BoundaryMode;
use specband::spectral::{family_pseudospectrum, GridSpec};

fn main() -> specband::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&out)?;

    let model = ModelSpec::from_name("fibonacci", Some(1.0))?.build()?;
    let radius = model.family.wiener_norm(&model.base, 1000)? + 0.5;
    let grid = GridSpec::centered_square(radius, 0.05);
    let eps = [1e-1, 1e-2];
    let ps = family_pseudospectrum(&model.family, &model.base, 128, BoundaryMode::Zero, &grid, &eps)?;
    println!("{}x{} grid on [-{radius}, {radius}]^2", ps.nx, ps.ny);
    for (k, e) in eps.iter().enumerate() {
        println!("  eps = {e}: {} nodes with sigma_min <= eps", ps.indicators[k].len());
    }

    let csv = out.join("fibonacci_pseudospec.csv");
    ps.write_csv(File::create(&csv)?)?;
    std::fs::write(out.join("fibonacci_pseudospec.json"), ps.header_json()?)?;
    println!("wrote {}", csv.display());
    Ok(())
}
