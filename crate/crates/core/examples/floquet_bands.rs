//! Floquet–Bloch spectra of periodic approximants of the Fibonacci model.
//!
//! Run with `cargo run --example floquet_bands`.

use specband::dynsys::{DynPoint, SubshiftPoint};
use specband::experiments::ModelSpec;
use specband::spectral::{floquet_spectrum, hausdorff, spectrum_union};

fn main() -> specband::Result<()> {
    for name in ["fibonacci", "fibonacci-hamiltonian"] {
        let model = ModelSpec::from_name(name, None)?.build()?;
        let base = model.base.as_subshift().expect("Sturmian models are subshifts");
        let mut sets = Vec::new();
        for q in [1, 2, 3, 5, 8, 13, 21] {
            let word = base.window(1, q)?;
            let p: DynPoint = SubshiftPoint::periodic(&word)?.into();
            let s = floquet_spectrum(&model.family, &p, 64)?.relabel(&format!("q={q}"));
            let (lo, hi) = s.points().iter().fold((f64::MAX, f64::MIN), |(a, b), z| (a.min(z.re), b.max(z.re)));
            println!("{name}, word {word}: {} points, real parts in [{lo:.3}, {hi:.3}]", s.len());
            sets.push(s);
        }
        let n = sets.len();
        let d = hausdorff(sets[n - 2].points(), sets[n - 1].points())?;
        println!("  Hausdorff distance between the q = 13 and q = 21 bands: {d:.4}");
        println!("  union of all approximants: {} points", spectrum_union(&sets)?.len());
    }
    Ok(())
}
