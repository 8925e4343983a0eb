use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command as Process, Output};

use proptest::prelude::*;
use specband::cli::{exit_code, parse_config, CliConfig, Command, ExperimentKind, Format, OrbitParams};
use specband::dynsys::Word;
use specband::experiments::{IrrationalSpec, ModelSpec, SampleSpec, Scale};
use specband::Error;

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_specband"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

/// All regular files below `root`, relative to it.
fn tree(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

#[test]
fn spectrum_of_shift_section() {
    let out = run(&["spectrum", "--model", "shift", "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,source"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 17);
    for r in rows {
        let f: Vec<&str> = r.split(',').collect();
        let re: f64 = f[0].parse().unwrap();
        let im: f64 = f[1].parse().unwrap();
        assert_eq!((re, im), (0.0, 0.0), "{r}");
    }
}

#[test]
fn floquet_of_shift() {
    let out = run(&["floquet", "--model", "shift", "--q", "1", "--ntheta", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    for r in rows {
        let f: Vec<f64> = r.split(',').take(2).map(|v| v.parse().unwrap()).collect();
        assert!((f[0].hypot(f[1]) - 1.0).abs() < 1e-12, "{r}");
    }
}

#[test]
fn csv_values_round_trip_losslessly() {
    let out = run(&["floquet", "--model", "fibonacci", "--q", "5", "--ntheta", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for r in text.lines().skip(1) {
        for v in r.split(',').take(2) {
            let x: f64 = v.parse().unwrap();
            assert_eq!(specband::spectral::fmt_f64(x), v);
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["spectrum", "--model", "shift", "--N", "2"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["spectrum", "--model", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--model", "shift", "--N", "-4"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--model", "shift", "--N", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["experiment", "pseudoergodic", "--model", "fibonacci"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.json");
    fs::write(
        &cfg,
        r#"{"command": "experiment", "model": {"id": "shift"},
            "scale": {"N": 16, "n_theta": 8, "tol_incl": 0.0}}"#,
    )
    .unwrap();
    let out = run(&["experiment", "inclusion", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("check failed"));

    assert_eq!(exit_code(&Error::Numerical("no convergence".into())), 3);
    assert_eq!(exit_code(&Error::Inconclusive { index: 4 }), 3);
    assert_eq!(exit_code(&Error::Config(vec!["bad".into()])), 2);
}

#[test]
fn config_file_errors_list_every_violation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(
        &cfg,
        r#"{"command": "spectrum", "model": {"id": "shift"}, "scale": {"N": 0, "n_theta": 1, "eps": []}}"#,
    )
    .unwrap();
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    for needle in ["N must be positive", "n_theta", "eps"] {
        assert!(err.contains(needle), "{err}");
    }
}

#[test]
fn decimal_alpha_is_rejected() {
    let text = r#"{"command": "orbit", "model": {"id": "sturmian", "alpha": 0.5}}"#;
    match parse_config(text) {
        Err(Error::Config(v)) => assert!(v.iter().any(|m| m.contains("α must be irrational")), "{v:?}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn outputs_stay_inside_the_output_directory() {
    let root = tempfile::tempdir().unwrap();
    let out = root.path().join("results");
    let out_s = out.to_str().unwrap();
    let cwd_before = tree(Path::new("."));
    let cases: Vec<Vec<&str>> = vec![
        vec!["orbit", "--model", "fibonacci", "--n", "4"],
        vec!["spectrum", "--model", "fibonacci", "--N", "8"],
        vec!["spectrum", "--model", "fibonacci", "--N", "8", "--format", "json"],
        vec!["pseudospec", "--model", "fibonacci", "--N", "8", "--step", "0.2"],
        vec!["floquet", "--model", "fibonacci", "--q", "3", "--ntheta", "8"],
        vec!["witness", "--model", "fibonacci", "--H", "3000"],
        vec!["experiment", "induced", "--model", "example-7-2", "--N", "8", "--H", "3000"],
        vec!["experiment", "constancy", "--model", "fibonacci", "--N", "8", "--step", "0.2", "--no-doubling"],
    ];
    for args in cases {
        let mut full = args.clone();
        full.extend(["--out", out_s]);
        let o = run(&full);
        // a tiny constancy run may fail its checks (exit 1) but still writes its report
        assert!(matches!(o.status.code(), Some(0 | 1)), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
    }
    let files = tree(root.path());
    assert!(files.iter().all(|f| f.starts_with("results")), "{files:?}");
    for name in [
        "orbit.json",
        "spectrum.csv",
        "spectrum.json",
        "pseudospec.csv",
        "pseudospec.json",
        "floquet.csv",
        "witness.json",
        "induced_report.json",
        "constancy_report.json",
        "pseudospec_point0_N8.csv",
    ] {
        assert!(out.join(name).is_file(), "{name} missing: {files:?}");
    }
    assert_eq!(tree(Path::new(".")), cwd_before);
}

#[test]
fn identical_invocations_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = d.path().to_str().unwrap();
        for args in [
            vec!["pseudospec", "--model", "fibonacci-hamiltonian", "--N", "12", "--step", "0.25"],
            vec!["experiment", "inclusion", "--model", "fibonacci", "--N", "32", "--ntheta", "16", "--H", "5000"],
        ] {
            let mut full = args.clone();
            full.extend(["--out", out]);
            run(&full);
        }
    }
    let files = tree(a.path());
    assert_eq!(files, tree(b.path()));
    assert!(!files.is_empty());
    for f in files {
        let x = fs::read_to_string(a.path().join(&f)).unwrap();
        let y = fs::read_to_string(b.path().join(&f)).unwrap();
        if f.to_str().unwrap().ends_with("_report.json") {
            let strip = |s: &str| {
                let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
                v["timestamp"] = serde_json::Value::Null;
                v.to_string()
            };
            assert_eq!(strip(&x), strip(&y), "{f:?}");
        } else {
            assert_eq!(x, y, "{f:?}");
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["pseudospec", "--model", "fibonacci", "--N", "16", "--step", "0.2"];
    let one = bin().args(args).env("SPECBAND_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("SPECBAND_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

fn arb_irrational() -> impl Strategy<Value = IrrationalSpec> {
    prop_oneof![
        prop_oneof![Just("golden"), Just("sqrt2m1"), Just("pim3")].prop_map(IrrationalSpec::named),
        (proptest::collection::vec(1u64..20, 0..4), proptest::collection::vec(1u64..20, 1..4))
            .prop_map(|(mut cf, repeat)| {
                cf.insert(0, 0);
                IrrationalSpec::ContinuedFraction { cf, repeat }
            }),
    ]
}

fn arb_model() -> impl Strategy<Value = ModelSpec> {
    let lambda = -10.0f64..10.0;
    prop_oneof![
        Just(ModelSpec::Shift {}),
        (arb_irrational(), lambda.clone(), any::<bool>())
            .prop_map(|(alpha, lambda, selfadjoint)| ModelSpec::Sturmian { alpha, lambda, selfadjoint }),
        (arb_irrational(), lambda.clone()).prop_map(|(beta, lambda)| ModelSpec::AlmostMathieu { beta, lambda }),
        lambda.prop_map(|lambda| ModelSpec::FullShiftConcatenation { lambda }),
        Just(ModelSpec::Example71 {}),
        Just(ModelSpec::Example72 {}),
        Just(ModelSpec::DeltaPoint {}),
    ]
}

fn arb_scale() -> impl Strategy<Value = Scale> {
    (
        (1usize..2000, any::<bool>(), proptest::collection::vec(1usize..40, 1..6), 8usize..512),
        (1e-3f64..1.0, 0.0f64..2.0, proptest::collection::vec(1e-6f64..1.0, 1..4)),
        (1i64..5000, 0i64..200_000, 1usize..6),
        (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0),
        (1usize..10, proptest::collection::vec(proptest::collection::vec(0u8..2, 1..5), 1..4)),
    )
        .prop_map(|((n, dbl, q_list, n_theta), (step, pad, eps), (h_min, extra, r_idx), tols, (cov, words))| Scale {
            n,
            n_doubling: dbl,
            q_list,
            n_theta,
            grid_step: step,
            grid_pad: pad,
            eps,
            h_min,
            h_max: h_min + extra,
            torus_h_max: h_min + 2 * extra,
            r_idx,
            tol_incl: tols.0,
            tol_hausdorff: tols.1,
            trend_slack: tols.2,
            coverage_n_max: cov,
            coverage_l: 10_000,
            words: words.into_iter().map(Word::new).collect(),
        })
}

fn arb_config() -> impl Strategy<Value = CliConfig> {
    let command = prop_oneof![
        Just((Command::Orbit, None)),
        Just((Command::Spectrum, None)),
        Just((Command::Pseudospec, None)),
        Just((Command::Floquet, None)),
        Just((Command::Witness, None)),
        prop_oneof![
            Just(ExperimentKind::Constancy),
            Just(ExperimentKind::Inclusion),
            Just(ExperimentKind::Pseudoergodic),
            Just(ExperimentKind::Induced),
        ]
        .prop_map(|k| (Command::Experiment, Some(k))),
    ];
    let sample = prop_oneof![
        (-1000i64..1000).prop_map(|k| SampleSpec::Shift { k }),
        (0u32..1024).prop_map(|v| SampleSpec::Offset { value: v as f64 / 1024.0 }),
        (0usize..5).prop_map(|index| SampleSpec::Listed { index }),
    ];
    (
        command,
        arb_model(),
        arb_scale(),
        proptest::option::of(proptest::collection::vec(sample, 1..5)),
        proptest::option::of("[a-z]{1,8}".prop_map(PathBuf::from)),
        any::<bool>(),
        (-500i64..0, 0i64..500, 1usize..6),
        proptest::option::of(1usize..20),
        proptest::option::of(proptest::collection::vec(0u8..2, 1..6).prop_map(Word::new)),
    )
        .prop_map(|((command, experiment), model, scale, samples, output_dir, json, (a, b, n), q, word)| CliConfig {
            command,
            experiment,
            model,
            scale,
            samples,
            output_dir,
            format: if json { Format::Json } else { Format::Csv },
            orbit: OrbitParams { a, b, n, l: 1000 },
            q,
            word,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn config_round_trip(cfg in arb_config()) {
        prop_assert!(cfg.violations().is_empty(), "{:?}", cfg.violations());
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        parse_config(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 5);
}
