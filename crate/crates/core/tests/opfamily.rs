use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specband::dynsys::{Alphabet, DynPoint, SubshiftPoint, TorusPoint};
use specband::experiments::ModelSpec;
use specband::opfamily::{
    ad_u, ad_u_inverse, equivariance_check, hull_windows, limit_operator_windows, self_similar_check, BandFamily,
    BandWindow, BoundaryMode, LocalRule, OperatorFamily, RuleBody, SymbolTable, SystemKind,
};
use specband::{Complex64, ComplexMatrix, Result};

const CATALOG: &[&str] = &[
    "shift",
    "fibonacci",
    "sturmian-sqrt2m1",
    "sturmian-pim3",
    "fibonacci-hamiltonian",
    "almost-mathieu",
    "full-shift",
    "example-7-1",
    "example-7-2",
    "delta-point",
];

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn binary() -> SystemKind {
    SystemKind::Subshift {
        alphabet: Alphabet::BINARY,
    }
}

fn potential(lambda: f64) -> BandFamily {
    BandFamily::new(binary(), vec![LocalRule::symbol_diagonal(Alphabet::BINARY, 0, &[c(0.0), c(lambda)])]).unwrap()
}

fn u_plus_v() -> BandFamily {
    BandFamily::shift(binary()).add(&potential(1.0)).unwrap()
}

fn fib() -> DynPoint {
    SubshiftPoint::fibonacci().into()
}

fn keys(ws: &[BandWindow]) -> BTreeSet<Vec<(u64, u64)>> {
    ws.iter().map(BandWindow::key).collect()
}

#[test]
fn entry_examples() {
    let x = fib();
    let f = u_plus_v();
    let p = x.as_subshift().unwrap();
    for n in -50..50 {
        assert_eq!(f.entry(&x, n, n).unwrap(), c(p.eval(n).unwrap() as f64));
        assert_eq!(f.entry(&x, n + 1, n).unwrap(), c(1.0));
        assert_eq!(f.entry(&x, n, n + 1).unwrap(), c(0.0));
    }

    let am = ModelSpec::from_name("almost-mathieu", Some(2.0)).unwrap().build().unwrap();
    let t = am.base.as_torus().unwrap();
    for n in [-100, -1, 0, 1, 7, 1000] {
        let want = 2.0 * (2.0 * std::f64::consts::PI * (t.v()[0] + n as f64 * t.beta()[0])).cos();
        let got = am.family.entry(&am.base, n, n).unwrap();
        assert!((got.re - want).abs() < 1e-9 && got.im.abs() < 1e-12, "n = {n}: {got} vs {want}");
    }
}

#[test]
fn band_condition_and_boundedness() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in CATALOG {
        let model = ModelSpec::from_name(name, None).unwrap().build().unwrap();
        let f = &model.family;
        let w = f.band_width() as i64;
        let bound = f.sup_bound();
        let points: Vec<DynPoint> = (0..10).map(|k| model.base.shift(rng.gen_range(-500..500) + k)).collect();
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let x = &points[rng.gen_range(0..points.len())];
            let i = rng.gen_range(-1000..=1000);
            let j = i + rng.gen_range(-(w + 3)..=(w + 3));
            let e = f.entry(x, i, j).unwrap();
            if (i - j).abs() > w {
                assert_eq!(e, c(0.0), "{name}: off-band entry at ({i}, {j})");
            }
            worst = worst.max(e.norm());
        }
        assert!(worst <= bound + 1e-12, "{name}: {worst} exceeds {bound}");
    }
}

#[test]
fn equivariance_on_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in CATALOG {
        let model = ModelSpec::from_name(name, None).unwrap().build().unwrap();
        for x in model.listed_points() {
            for _ in 0..5 {
                let n = rng.gen_range(-1000..=1000);
                let rep = equivariance_check(&model.family, &x, n, 100, model.family.band_width(), rng.gen()).unwrap();
                assert!(rep.holds, "{name}, n = {n}: deviation {}", rep.max_deviation);
                if matches!(x, DynPoint::Subshift(_)) {
                    assert_eq!(rep.max_deviation, 0.0);
                }
            }
        }
    }
    let am = ModelSpec::from_name("almost-mathieu", None).unwrap().build().unwrap();
    let rep = equivariance_check(&am.family, &am.base, 10_000, 200, 1, 3).unwrap();
    assert!(rep.max_deviation <= 1e-10, "{}", rep.max_deviation);
}

/// A family whose diagonal depends on the absolute row index instead of on
/// the translated point.
struct Corrupted;

impl OperatorFamily for Corrupted {
    fn entry(&self, x: &DynPoint, i: i64, j: i64) -> Result<Complex64> {
        let s = x.as_subshift().unwrap().eval(0)? as f64;
        Ok(if i == j { c(s + i as f64) } else { c(0.0) })
    }
}

#[test]
fn corrupted_family_is_detected() {
    let rep = equivariance_check(&Corrupted, &fib(), 3, 100, 0, 1).unwrap();
    assert!(!rep.holds);
    assert!(rep.max_deviation > 0.0);
}

#[test]
fn window_examples() {
    let x = fib();
    let u = BandFamily::shift(binary());
    let w = u.window_matrix(&x, 1, BoundaryMode::Zero).unwrap();
    assert_eq!(w.entries, ComplexMatrix::from_fn(3, |i, j| c(if i == j + 1 { 1.0 } else { 0.0 })));

    let p0: DynPoint = SubshiftPoint::periodic(&[0]).unwrap().into();
    let w = u.window_matrix(&p0, 0, BoundaryMode::Periodic { q: 4 }).unwrap();
    assert_eq!(w.entries, ComplexMatrix::from_fn(4, |i, j| c(if (i + 4 - j) % 4 == 1 { 1.0 } else { 0.0 })));

    let p01: DynPoint = SubshiftPoint::periodic(&[0, 1]).unwrap().into();
    let w = u_plus_v().window_matrix(&p01, 0, BoundaryMode::Periodic { q: 2 }).unwrap();
    assert_eq!(w.entries, ComplexMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(1.0), c(1.0)]]).unwrap());

    assert!(u_plus_v().window_matrix(&x, 4, BoundaryMode::Periodic { q: 4 }).is_err());
    assert!(u_plus_v().window_matrix(&p01, 0, BoundaryMode::Periodic { q: 3 }).is_err());
}

#[test]
fn wiener_norm_examples() {
    let x = fib();
    assert_eq!(BandFamily::shift(binary()).wiener_norm(&x, 10).unwrap(), 1.0);
    assert_eq!(u_plus_v().wiener_norm(&x, 100).unwrap(), 2.0);
    assert_eq!(BandFamily::zero(binary()).wiener_norm(&x, 10).unwrap(), 0.0);
}

#[test]
fn wiener_norm_is_monotone_and_stabilises() {
    for name in ["fibonacci", "fibonacci-hamiltonian", "full-shift", "almost-mathieu", "delta-point"] {
        let model = ModelSpec::from_name(name, None).unwrap().build().unwrap();
        let norms: Vec<f64> = [1, 2, 5, 10, 50, 200, 1000, 2000]
            .iter()
            .map(|&l| model.family.wiener_norm(&model.base, l).unwrap())
            .collect();
        assert!(norms.windows(2).all(|p| p[0] <= p[1]), "{name}: {norms:?}");
        let last = norms[norms.len() - 1];
        assert!((norms[norms.len() - 2] - last).abs() <= 1e-6 * last.max(1.0), "{name}: {norms:?}");
    }
}

#[test]
fn ad_u_matches_the_shifted_window() {
    let x = fib();
    let f = u_plus_v();
    let n = 20;
    let a = ad_u(&f.window_matrix(&x, n, BoundaryMode::Zero).unwrap());
    let b = f.window_matrix(&x.shift(1), n, BoundaryMode::Zero).unwrap();
    let m = 2 * n + 1;
    // ad_u(A(x)) lives on [-N-1, N-1]; A(Tx) on [-N, N]. Compare on the overlap.
    for i in 0..m - 1 {
        for j in 0..m - 1 {
            assert_eq!(a.entries[(i + 1, j + 1)], b.entries[(i, j)]);
        }
    }
    assert_eq!(a.offset, -(n as i64) - 1);

    let example = ModelSpec::from_name("example-7-1", None).unwrap().build().unwrap();
    for x in example.listed_points() {
        let w = example.family.window_matrix(&x, 5, BoundaryMode::Zero).unwrap();
        assert_eq!(ad_u(&w).entries, w.entries);
        let shifted = example.family.window_matrix(&x.shift(1), 5, BoundaryMode::Zero).unwrap();
        assert_eq!(shifted.entries, w.entries);
    }
}

#[test]
fn limit_window_examples() {
    let p01: DynPoint = SubshiftPoint::periodic(&[0, 1]).unwrap().into();
    assert_eq!(limit_operator_windows(&u_plus_v(), &p01, 3, 1000, 100_000).unwrap().len(), 2);

    let delta: DynPoint = SubshiftPoint::explicit(&[1], 0, 0).unwrap().into();
    let ws = limit_operator_windows(&potential(1.0), &delta, 3, 1000, 100_000).unwrap();
    assert_eq!(ws.len(), 1);
    assert!(ws[0].entries.as_slice().iter().all(|z| *z == c(0.0)));

    assert!(self_similar_check(&u_plus_v(), &p01, 3, 1000, 100_000).unwrap());
    assert!(self_similar_check(&u_plus_v(), &fib(), 3, 1000, 100_000).unwrap());
    assert!(!self_similar_check(&potential(1.0), &delta, 1, 1000, 100_000).unwrap());
}

/// Hull words of the Fibonacci subshift of a given length, taken from a
/// long symmetric window of an unrelated point of the hull.
fn fibonacci_hull_words(len: usize) -> specband::dynsys::WordSet {
    SubshiftPoint::fibonacci().shift(123_457).factors(len, 200_000).unwrap()
}

#[test]
fn limit_windows_equal_hull_windows() {
    let fams = [
        u_plus_v(),
        BandFamily::new(
            binary(),
            vec![
                LocalRule {
                    diagonal: 0,
                    body: RuleBody::SymbolTable(SymbolTable::from_fn(Alphabet::BINARY, 1, |w| {
                        c((w[0] + 2 * w[1] + 4 * w[2]) as f64)
                    })),
                },
                LocalRule::symbol_diagonal(Alphabet::BINARY, -1, &[c(1.0), c(-0.5)]),
            ],
        )
        .unwrap(),
    ];
    for f in &fams {
        for r_idx in 0..=5 {
            let limit = limit_operator_windows(f, &fib(), r_idx, 1000, 100_000).unwrap();
            let words = fibonacci_hull_words(2 * (r_idx + f.radius()) + 1);
            let hull = hull_windows(f, &words, r_idx).unwrap();
            assert_eq!(keys(&limit), keys(&hull), "r_idx = {r_idx}");
        }
    }
}

#[test]
fn torus_family_has_no_exact_window_enumeration() {
    let am = ModelSpec::from_name("almost-mathieu", None).unwrap().build().unwrap();
    assert!(limit_operator_windows(&am.family, &am.base, 1, 10, 100).is_err());
    let t: DynPoint = TorusPoint::new(vec![0.0], vec![0.5]).unwrap().into();
    assert!(self_similar_check(&am.family, &t, 1, 1, 10).unwrap());
}

#[test]
fn families_serialize_and_reject_mismatched_points() {
    for name in CATALOG {
        let model = ModelSpec::from_name(name, None).unwrap().build().unwrap();
        let json = serde_json::to_string(&model.family).unwrap();
        let back: BandFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model.family, "{name}");
    }
    let t: DynPoint = TorusPoint::new(vec![0.0], vec![0.3]).unwrap().into();
    assert!(u_plus_v().entry(&t, 0, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ad_u_round_trips(offset in -1000i64..1000, n in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = ComplexMatrix::from_fn(n, |_, _| Complex64::new(rng.gen(), rng.gen()));
        let w = BandWindow { offset, entries, mode: BoundaryMode::Zero };
        prop_assert_eq!(&ad_u_inverse(&ad_u(&w)), &w);
        prop_assert_eq!(&ad_u(&ad_u_inverse(&w)), &w);
        prop_assert_eq!(ad_u(&w).offset, offset - 1);
    }

    #[test]
    fn equivariance_holds_for_random_tables(
        values in proptest::collection::vec(-3i32..=3, 8),
        d in -2i64..=2,
        n in -1000i64..=1000,
        seed in any::<u64>(),
    ) {
        let table = SymbolTable::new(Alphabet::BINARY, 1, values.iter().map(|&v| c(v as f64)).collect()).unwrap();
        let f = BandFamily::new(binary(), vec![LocalRule { diagonal: d, body: RuleBody::SymbolTable(table) }]).unwrap();
        let rep = equivariance_check(&f, &fib(), n, 100, 2, seed).unwrap();
        prop_assert!(rep.holds);
        prop_assert_eq!(rep.max_deviation, 0.0);
    }
}
