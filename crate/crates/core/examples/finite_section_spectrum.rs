//! Eigenvalues of finite sections against the spectrum of the full operator.
//!
//! The zero-truncated section of the shift is nilpotent, while the shift
//! itself has the unit circle as spectrum. Smallest singular values expose
//! what the eigenvalues miss.
//!
//! Run with `cargo run --example finite_section_spectrum`.

use specband::experiments::ModelSpec;
use specband::opfamily::BoundaryMode;
use specband::spectral::{eig_dense, sigma_min};
use specband::Complex64;

fn main() -> specband::Result<()> {
    let shift = ModelSpec::from_name("shift", None)?.build()?;
    for n in [4, 16, 64] {
        let w = shift.family.window_matrix(&shift.base, n, BoundaryMode::Zero)?;
        let largest = eig_dense(w.entries())?.points().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let s = sigma_min(&w.entries().shifted(Complex64::new(0.5, 0.0)));
        println!("shift, N = {n:>2}: max |eigenvalue| = {largest:.1e}, sigma_min(A_N - 0.5) = {s:.1e}");
    }

    let periodic = shift.family.window_matrix(&shift.base, 0, BoundaryMode::Periodic { q: 6 })?;
    let eig = eig_dense(periodic.entries())?;
    println!("cyclic 6x6 section: {:?}", eig.points().iter().map(|z| format!("{z:.3}")).collect::<Vec<_>>());

    let fib = ModelSpec::from_name("fibonacci-hamiltonian", None)?.build()?;
    let w = fib.family.window_matrix(&fib.base, 100, BoundaryMode::Zero)?;
    let mut eig: Vec<f64> = eig_dense(w.entries())?.points().iter().map(|z| z.re).collect();
    eig.sort_by(f64::total_cmp);
    println!(
        "Fibonacci Hamiltonian, N = 100: {} eigenvalues in [{:.4}, {:.4}]",
        eig.len(),
        eig[0],
        eig[eig.len() - 1]
    );
    Ok(())
}
