//! Command-line front end.
//!
//! Every subcommand accepts either flags or a JSON configuration file
//! (`--config`); flags given alongside a file override its values. Output
//! goes to standard output unless `--out DIR` is given, in which case files
//! are written into `DIR` and nowhere else.
//!
//! Exit codes: 0 success, 1 a check failed, 2 configuration or input error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dynsys::{all_words, limit_witness, DynPoint, SubshiftPoint, WitnessScan, Word};
use crate::experiments::{
    constancy_experiment, emit_report, induced_system_check, inclusion_experiment, pseudoergodic_experiment,
    ExperimentConfig, ExperimentReport, Model, ModelSpec, SampleSpec, Scale,
};
use crate::opfamily::{limit_operator_windows, self_similar_check, BoundaryMode, SystemKind};
use crate::spectral::{eig_dense, family_pseudospectrum, floquet_spectrum, fmt_f64, GridSpec, SpectrumSet};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Orbit,
    Spectrum,
    Pseudospec,
    Floquet,
    Witness,
    Experiment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Constancy,
    Inclusion,
    Pseudoergodic,
    Induced,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Parameters of the `orbit` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitParams {
    pub a: i64,
    pub b: i64,
    /// Factor length.
    pub n: usize,
    /// Factors are collected from `[-L, L]`.
    #[serde(rename = "L")]
    pub l: i64,
}

impl Default for OrbitParams {
    fn default() -> Self {
        OrbitParams {
            a: -20,
            b: 20,
            n: 3,
            l: 1000,
        }
    }
}

/// A validated request for one subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentKind>,
    pub model: ModelSpec,
    #[serde(default)]
    pub scale: Scale,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub orbit: OrbitParams,
    /// Period of the Floquet approximant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Explicit periodic word for `floquet`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Word>,
}

impl CliConfig {
    pub fn new(command: Command, model: ModelSpec) -> Self {
        CliConfig {
            command,
            experiment: None,
            model,
            scale: Scale::default(),
            samples: None,
            output_dir: None,
            format: Format::default(),
            orbit: OrbitParams::default(),
            q: None,
            word: None,
        }
    }

    pub fn experiment_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            model: self.model.clone(),
            scale: self.scale.clone(),
            samples: self.samples.clone(),
        }
    }

    /// Every problem with the request.
    pub fn violations(&self) -> Vec<String> {
        let mut v = self.experiment_config().violations();
        if self.command == Command::Experiment && self.experiment.is_none() {
            v.push("experiment command needs an experiment name".into());
        }
        if self.command != Command::Experiment && self.experiment.is_some() {
            v.push("experiment name given for a non-experiment command".into());
        }
        if self.orbit.a > self.orbit.b {
            v.push("orbit window needs a <= b".into());
        }
        if self.orbit.n < 1 || self.orbit.l < self.orbit.n as i64 {
            v.push("orbit factors need 1 <= n <= L".into());
        }
        if self.q == Some(0) {
            v.push("q must be positive".into());
        }
        if matches!(&self.word, Some(w) if w.is_empty()) {
            v.push("word must be nonempty".into());
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(v))
        }
    }
}

/// Parses and validates a JSON configuration, reporting every violation.
pub fn parse_config(text: &str) -> Result<CliConfig> {
    let cfg: CliConfig = serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Parser, Debug)]
#[command(name = "specband", version, about = "Spectra of equivariant band-operator families")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Window, factors, complexity and coverage of the base point.
    Orbit(Common),
    /// Eigenvalues of the finite section on [-N, N].
    Spectrum(Common),
    /// Smallest singular values on a grid around the Wiener disc.
    Pseudospec(Common),
    /// Floquet–Bloch spectrum of a periodic approximant.
    Floquet(Common),
    /// Limit-set and self-similarity witnesses.
    Witness(Common),
    /// A named experiment, written as a JSON report.
    Experiment {
        name: ExperimentKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog model: shift, fibonacci, sturmian-sqrt2m1, sturmian-pim3,
    /// fibonacci-hamiltonian, almost-mathieu, full-shift, example-7-1,
    /// example-7-2 or delta-point.
    #[arg(long)]
    model: Option<String>,
    /// Coupling constant λ of the potential term.
    #[arg(long)]
    lambda: Option<f64>,
    /// Section radius: the finite section lives on [-N, N].
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Number of Floquet phases.
    #[arg(long)]
    ntheta: Option<usize>,
    /// Period of the Floquet approximant.
    #[arg(long)]
    q: Option<usize>,
    /// Explicit periodic word for floquet, e.g. 10110.
    #[arg(long)]
    word: Option<Word>,
    /// Grid spacing of the pseudospectrum grid.
    #[arg(long)]
    step: Option<f64>,
    /// Pseudospectrum levels.
    #[arg(long, num_args = 1..)]
    eps: Option<Vec<f64>>,
    /// Smallest return time accepted by the witness search.
    #[arg(long = "h-min")]
    h_min: Option<i64>,
    /// Largest return time scanned by the witness search.
    #[arg(long = "H")]
    big_h: Option<i64>,
    /// Window radius for limit-operator comparisons.
    #[arg(long = "r-idx")]
    r_idx: Option<usize>,
    /// Left end of the printed orbit window.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Right end of the printed orbit window.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Factor length for orbit.
    #[arg(long)]
    n: Option<usize>,
    /// Factors are collected from [-L, L].
    #[arg(long = "L")]
    big_l: Option<i64>,
    /// Skip the 2N run of the constancy experiment.
    #[arg(long)]
    no_doubling: bool,
    /// Output format.
    #[arg(long)]
    format: Option<Format>,
    /// Output directory; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn into_config(self, command: Command, experiment: Option<ExperimentKind>) -> Result<CliConfig> {
        let mut cfg = match (&self.config, &self.model) {
            (Some(path), _) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
                let mut cfg: CliConfig =
                    serde_json::from_str(&text).map_err(|e| Error::config(e.to_string()))?;
                cfg.command = command;
                if experiment.is_some() {
                    cfg.experiment = experiment;
                }
                if let Some(name) = &self.model {
                    cfg.model = ModelSpec::from_name(name, self.lambda)?;
                }
                cfg
            }
            (None, Some(name)) => {
                let mut cfg = CliConfig::new(command, ModelSpec::from_name(name, self.lambda)?);
                cfg.experiment = experiment;
                cfg
            }
            (None, None) => return Err(Error::config("either --model or --config is required")),
        };
        let s = &mut cfg.scale;
        macro_rules! set {
            ($src:expr, $dst:expr) => {
                if let Some(v) = $src {
                    $dst = v;
                }
            };
        }
        set!(self.big_n, s.n);
        set!(self.ntheta, s.n_theta);
        set!(self.step, s.grid_step);
        set!(self.eps, s.eps);
        set!(self.h_min, s.h_min);
        set!(self.big_h, s.h_max);
        set!(self.r_idx, s.r_idx);
        if self.no_doubling {
            s.n_doubling = false;
        }
        set!(self.a, cfg.orbit.a);
        set!(self.b, cfg.orbit.b);
        set!(self.n, cfg.orbit.n);
        set!(self.big_l, cfg.orbit.l);
        set!(self.format, cfg.format);
        if self.q.is_some() {
            cfg.q = self.q;
        }
        if self.word.is_some() {
            cfg.word = self.word;
        }
        if self.out.is_some() {
            cfg.output_dir = self.out;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Numerical(_) | Error::Inconclusive { .. } => 3,
        _ => 2,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match dispatch(cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("specband: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("SPECBAND_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process finds the pool already built
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = match cli.command {
        Sub::Orbit(c) => c.into_config(Command::Orbit, None)?,
        Sub::Spectrum(c) => c.into_config(Command::Spectrum, None)?,
        Sub::Pseudospec(c) => c.into_config(Command::Pseudospec, None)?,
        Sub::Floquet(c) => c.into_config(Command::Floquet, None)?,
        Sub::Witness(c) => c.into_config(Command::Witness, None)?,
        Sub::Experiment { name, common } => common.into_config(Command::Experiment, Some(name))?,
    };
    execute(&cfg, out)
}

/// Runs a validated configuration, writing to `out` or the configured
/// output directory. Returns the exit code.
pub fn execute(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    cfg.validate()?;
    let sink = Sink {
        dir: cfg.output_dir.as_deref(),
        out,
    };
    match cfg.command {
        Command::Orbit => orbit(cfg, sink),
        Command::Spectrum => spectrum(cfg, sink),
        Command::Pseudospec => pseudospec(cfg, sink),
        Command::Floquet => floquet(cfg, sink),
        Command::Witness => witness(cfg, sink),
        Command::Experiment => experiment(cfg, sink),
    }
}

struct Sink<'a> {
    dir: Option<&'a Path>,
    out: &'a mut dyn Write,
}

impl Sink<'_> {
    /// Writes `contents` as `name` inside the output directory, or to the
    /// stream when there is none.
    fn emit(&mut self, name: &str, contents: &str) -> Result<()> {
        match self.dir {
            Some(d) => {
                fs::create_dir_all(d)?;
                fs::write(d.join(name), contents)?;
            }
            None => self.out.write_all(contents.as_bytes())?,
        }
        Ok(())
    }

    fn extra(&mut self, name: &str, contents: &str) -> Result<()> {
        if self.dir.is_some() {
            self.emit(name, contents)?;
        }
        Ok(())
    }
}

fn build(cfg: &CliConfig) -> Result<Model> {
    cfg.model.build()
}

fn subshift_base(model: &Model) -> Result<&SubshiftPoint> {
    model
        .base
        .as_subshift()
        .ok_or_else(|| Error::Mode(format!("model {} is not a subshift", model.spec.id())))
}

fn orbit(cfg: &CliConfig, mut sink: Sink) -> Result<i32> {
    let model = build(cfg)?;
    let x = subshift_base(&model)?;
    let p = &cfg.orbit;
    let factors = x.factors(p.n, p.l)?;
    let missing = x.coverage(p.n, p.l, &all_words(x.alphabet(), p.n))?;
    let doc = serde_json::json!({
        "model": cfg.model,
        "window": { "a": p.a, "b": p.b, "word": x.window(p.a, p.b)? },
        "n": p.n,
        "L": p.l,
        "factors": factors.to_strings(),
        "complexity": factors.len(),
        "missing": missing.to_strings(),
    });
    sink.emit("orbit.json", &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(0)
}

fn spectrum_text(set: &SpectrumSet, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            set.write_csv(&mut buf)?;
            Ok(String::from_utf8(buf).expect("ASCII"))
        }
        Format::Json => {
            let pts: Vec<[f64; 2]> = set.points().iter().map(|z| [z.re, z.im]).collect();
            Ok(serde_json::to_string_pretty(&serde_json::json!({ "points": pts }))? + "\n")
        }
    }
}

fn spectrum(cfg: &CliConfig, mut sink: Sink) -> Result<i32> {
    let model = build(cfg)?;
    let w = model.family.window_matrix(&model.base, cfg.scale.n, BoundaryMode::Zero)?;
    let set = eig_dense(w.entries())?.relabel(model.spec.id());
    let ext = if cfg.format == Format::Csv { "csv" } else { "json" };
    sink.emit(&format!("spectrum.{ext}"), &spectrum_text(&set, cfg.format)?)?;
    Ok(0)
}

fn pseudospec(cfg: &CliConfig, mut sink: Sink) -> Result<i32> {
    let model = build(cfg)?;
    let s = &cfg.scale;
    let w = model.family.wiener_norm(&model.base, 1000)?;
    let grid = GridSpec::centered_square(w + s.grid_pad, s.grid_step);
    let g = family_pseudospectrum(&model.family, &model.base, s.n, BoundaryMode::Zero, &grid, &s.eps)?;
    let mut buf = Vec::new();
    g.write_csv(&mut buf)?;
    sink.emit("pseudospec.csv", std::str::from_utf8(&buf).expect("ASCII"))?;
    sink.extra("pseudospec.json", &(g.header_json()? + "\n"))?;
    Ok(0)
}

/// The periodic point used by `floquet`: an explicit word, or the
/// model's approximant of period `q`.
fn floquet_point(cfg: &CliConfig, model: &Model) -> Result<SubshiftPoint> {
    let SystemKind::Subshift { alphabet } = model.family.kind() else {
        return Err(Error::Mode(format!("model {} has no periodic points", model.spec.id())));
    };
    let word = match (&cfg.word, cfg.q) {
        (Some(w), _) => w.clone(),
        (None, q) => {
            let q = q.unwrap_or(1);
            match &model.spec {
                ModelSpec::Sturmian { .. } => subshift_base(model)?.window(1, q as i64)?,
                _ => match subshift_base(model)?.period() {
                    Some(_) => subshift_base(model)?.window(0, q as i64 - 1)?,
                    None => {
                        return Err(Error::config(format!(
                            "model {} needs an explicit --word for floquet",
                            model.spec.id()
                        )))
                    }
                },
            }
        }
    };
    SubshiftPoint::periodic(&word)?.with_alphabet(alphabet)
}

fn floquet(cfg: &CliConfig, mut sink: Sink) -> Result<i32> {
    let model = build(cfg)?;
    let p = floquet_point(cfg, &model)?;
    let set = floquet_spectrum(&model.family, &DynPoint::Subshift(p), cfg.scale.n_theta)?.relabel(model.spec.id());
    let ext = if cfg.format == Format::Csv { "csv" } else { "json" };
    sink.emit(&format!("floquet.{ext}"), &spectrum_text(&set, cfg.format)?)?;
    Ok(0)
}

fn witness(cfg: &CliConfig, mut sink: Sink) -> Result<i32> {
    let model = build(cfg)?;
    let s = &cfg.scale;
    let h_max = match model.base {
        DynPoint::Subshift(_) => s.h_max,
        DynPoint::Torus(_) => s.torus_h_max,
    };
    let radius = s.r_idx + model.family.radius();
    let scan = WitnessScan::new(radius, s.h_min, h_max);
    let samples = cfg.samples.clone().unwrap_or_else(|| model.default_samples());
    let mut targets = Vec::new();
    for sample in &samples {
        let y = model.point(sample)?;
        let hs = limit_witness(&model.base, &y, &scan)?;
        targets.push(serde_json::json!({
            "sample": sample,
            "count": hs.len(),
            "positive": hs.iter().filter(|h| **h > 0).count(),
            "negative": hs.iter().filter(|h| **h < 0).count(),
            "first": hs.iter().filter(|h| **h > 0).take(10).collect::<Vec<_>>(),
        }));
    }
    let self_similar = self_similar_check(&model.family, &model.base, s.r_idx, s.h_min, h_max)?;
    let windows = match model.base {
        DynPoint::Subshift(_) => Some(limit_operator_windows(&model.family, &model.base, s.r_idx, s.h_min, s.h_max)?.len()),
        DynPoint::Torus(_) => None,
    };
    let doc = serde_json::json!({
        "model": cfg.model,
        "radius": radius,
        "h_min": s.h_min,
        "H": h_max,
        "self_similar": self_similar,
        "limit_operator_windows": windows,
        "witnesses": targets,
    });
    sink.emit("witness.json", &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(0)
}

fn experiment(cfg: &CliConfig, mut sink: Sink) -> Result<i32> {
    let ecfg = cfg.experiment_config();
    let kind = cfg.experiment.expect("validated");
    let report: ExperimentReport = match kind {
        ExperimentKind::Constancy => constancy_experiment(&ecfg)?,
        ExperimentKind::Inclusion => inclusion_experiment(&ecfg)?,
        ExperimentKind::Pseudoergodic => pseudoergodic_experiment(&ecfg)?,
        ExperimentKind::Induced => induced_system_check(&ecfg)?,
    };
    match sink.dir {
        Some(d) => emit_report(&report, &d.join(format!("{}_report.json", report.experiment)))?,
        None => sink.emit("", &report.to_json()?)?,
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "check failed: {} measured {} tolerance {}",
            c.name,
            fmt_f64(c.measured),
            c.tolerance.map(fmt_f64).unwrap_or_else(|| "exact".into())
        );
    }
    Ok(if report.passed() { 0 } else { 1 })
}
