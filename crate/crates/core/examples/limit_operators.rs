//! Band-operator families, equivariance and limit-operator windows.
//!
//! Run with `cargo run --example limit_operators`.

use specband::dynsys::{Alphabet, DynPoint, SubshiftPoint};
use specband::opfamily::{
    ad_u, equivariance_check, limit_operator_windows, self_similar_check, BandFamily, BoundaryMode, LocalRule,
    SystemKind,
};
use specband::Complex64;

fn main() -> specband::Result<()> {
    let kind = SystemKind::Subshift {
        alphabet: Alphabet::BINARY,
    };
    // A(x) = U + V_x with (V_x f)(n) = x(n) f(n).
    let potential = BandFamily::new(
        kind,
        vec![LocalRule::symbol_diagonal(Alphabet::BINARY, 0, &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])],
    )?;
    let a = BandFamily::shift(kind).add(&potential)?;

    let x: DynPoint = SubshiftPoint::fibonacci().into();
    let w = a.window_matrix(&x, 3, BoundaryMode::Zero)?;
    println!("window of A(x) on [-3, 3]:");
    w.write_csv(std::io::stdout())?;
    println!("Wiener norm: {}", a.wiener_norm(&x, 100)?);

    let rep = equivariance_check(&a, &x, 37, 100, 1, 7)?;
    println!("A(T^37 x) against shifted entries of A(x): deviation {}", rep.max_deviation);

    let moved = ad_u(&w);
    println!("ad_u keeps the entries and moves the offset from {} to {}", w.offset, moved.offset);

    for r in 0..=4 {
        let ws = limit_operator_windows(&a, &x, r, 1000, 100_000)?;
        println!("radius {r}: {} distinct limit-operator windows", ws.len());
    }
    println!("A(x) self-similar: {}", self_similar_check(&a, &x, 3, 1000, 100_000)?);

    let delta: DynPoint = SubshiftPoint::explicit(&[1], 0, 0)?.into();
    let ws = limit_operator_windows(&potential, &delta, 1, 1000, 100_000)?;
    println!(
        "single-1 point: {} limit window(s), self-similar = {}",
        ws.len(),
        self_similar_check(&potential, &delta, 1, 1000, 100_000)?
    );
    Ok(())
}
