//! Words, factor complexity, coverage and limit-set witnesses.
//!
//! Run with `cargo run --example orbit_combinatorics`.

use specband::dynsys::{all_words, Alphabet, DynPoint, Phase, SubshiftPoint, WitnessScan};

fn main() -> specband::Result<()> {
    let fib = SubshiftPoint::fibonacci();
    println!("Fibonacci coding on [-10, 10]: {}", fib.window(-10, 10)?);
    for n in 1..=8 {
        let f = fib.factors(n, 10_000)?;
        println!("  n = {n}: {} factors {:?}", f.len(), f.to_strings());
    }

    for (name, alpha) in [("sqrt(2)-1", Phase::sqrt2_minus_1()), ("pi-3", Phase::pi_minus_3())] {
        let x = SubshiftPoint::sturmian(alpha, Phase::ZERO)?;
        let counts: Vec<usize> = (1..=10).map(|n| x.complexity(n, 100_000)).collect::<Result<_, _>>()?;
        println!("complexity for alpha = {name}: {counts:?}");
    }

    // The concatenation of all binary words sees every word of length 8 early.
    let cat = SubshiftPoint::concatenation(Alphabet::BINARY);
    println!("concatenation point on [0, 30]: {}", cat.window(0, 30)?);
    for n in [4, 8, 12] {
        let missing = cat.coverage(n, 10_000, &all_words(Alphabet::BINARY, n))?;
        println!("  words of length {n} missing from [-10^4, 10^4]: {}", missing.len());
    }

    // Shifts h with T^h x close to y, i.e. agreeing on [-r, r].
    let x: DynPoint = fib.clone().into();
    let y: DynPoint = SubshiftPoint::sturmian(Phase::golden(), Phase::from_f64(0.375)?)?.into();
    let hs = specband::dynsys::limit_witness(&x, &y, &WitnessScan::new(10, 1000, 100_000))?;
    let forward: Vec<_> = hs.iter().filter(|h| **h > 0).take(5).collect();
    println!("{} witnesses from the Fibonacci point to omega = 0.375; first forward: {forward:?}", hs.len());

    let delta: DynPoint = SubshiftPoint::explicit(&[1], 0, 0)?.into();
    let self_hits = specband::dynsys::limit_witness(&delta, &delta, &WitnessScan::new(1, 1, 100_000))?;
    println!("the single-1 point returns to itself {} times", self_hits.len());
    Ok(())
}
