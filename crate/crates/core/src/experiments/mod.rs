//! Reproducible numerical checks assembled from the other modules.
//!
//! Each experiment takes an [`ExperimentConfig`] and returns an
//! [`ExperimentReport`] listing named checks with their measured values and
//! tolerances. Reports are plain data; [`emit_report`] writes them as JSON
//! next to their CSV artifacts.

mod catalog;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use catalog::{IrrationalSpec, Model, ModelSpec, SampleSpec};

use crate::dynsys::{all_words, limit_witness, DynPoint, SubshiftPoint, WitnessScan, Word};
use crate::opfamily::{ad_u, self_similar_check, BandFamily, BandWindow, BoundaryMode, SystemKind};
use crate::spectral::{
    family_pseudospectrum, floquet_spectrum, hausdorff, pseudospectrum_indicators, spectrum_union, BandMatrix, GridSpec, PseudospecGrid,
    SpectrumSet,
};
use crate::{Error, Result};

/// Scale parameters shared by all experiments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scale {
    /// Half-width of the finite sections `[-N, N]`.
    #[serde(rename = "N")]
    pub n: usize,
    /// Also run at `2N` and report the trend.
    pub n_doubling: bool,
    pub q_list: Vec<usize>,
    pub n_theta: usize,
    pub grid_step: f64,
    /// Padding added to the Wiener-norm disc radius.
    pub grid_pad: f64,
    pub eps: Vec<f64>,
    pub h_min: i64,
    #[serde(rename = "H")]
    pub h_max: i64,
    /// Scan bound for torus recurrence, where returns within `delta` are rare.
    pub torus_h_max: i64,
    pub r_idx: usize,
    pub tol_incl: f64,
    pub tol_hausdorff: f64,
    pub trend_slack: f64,
    pub coverage_n_max: usize,
    pub coverage_l: i64,
    /// Periodic words for the full-shift experiments.
    pub words: Vec<Word>,
}

impl Default for Scale {
    fn default() -> Self {
        Scale {
            n: 512,
            n_doubling: true,
            q_list: vec![1, 2, 3, 5, 8, 13],
            n_theta: 256,
            grid_step: 0.02,
            grid_pad: 0.5,
            eps: vec![1e-1, 10f64.powf(-1.5), 1e-2],
            h_min: 1000,
            h_max: 100_000,
            torus_h_max: 1_000_000,
            r_idx: 3,
            tol_incl: 0.05,
            tol_hausdorff: 0.1,
            trend_slack: 0.02,
            coverage_n_max: 8,
            coverage_l: 10_000,
            words: ["0", "1", "01"].iter().map(|s| s.parse().unwrap()).collect(),
        }
    }
}

impl Scale {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let mut need = |ok: bool, msg: &str| {
            if !ok {
                v.push(msg.to_string());
            }
        };
        need(self.n >= 1, "N must be positive");
        need(self.q_list.iter().all(|&q| q >= 1), "q_list entries must be positive");
        need(self.n_theta >= 8, "n_theta must be at least 8");
        need(self.grid_step > 0.0 && self.grid_step.is_finite(), "grid_step must be positive");
        need(self.grid_pad >= 0.0 && self.grid_pad.is_finite(), "grid_pad must be nonnegative");
        need(
            !self.eps.is_empty() && self.eps.iter().all(|e| *e > 0.0 && e.is_finite()),
            "eps must be a nonempty list of positive values",
        );
        need(self.h_min >= 1, "h_min must be positive");
        need(self.h_max >= self.h_min, "H must be at least h_min");
        need(self.torus_h_max >= self.h_min, "torus_h_max must be at least h_min");
        need(self.r_idx >= 1, "r_idx must be positive");
        for (name, t) in [
            ("tol_incl", self.tol_incl),
            ("tol_hausdorff", self.tol_hausdorff),
            ("trend_slack", self.trend_slack),
        ] {
            if !(t >= 0.0 && t.is_finite()) {
                v.push(format!("{name} must be nonnegative"));
            }
        }
        if self.coverage_n_max < 1 || self.coverage_l < self.coverage_n_max as i64 {
            v.push("coverage needs 1 <= coverage_n_max <= coverage_l".into());
        }
        if self.words.iter().any(|w| w.is_empty()) {
            v.push("words must be nonempty".into());
        }
        v
    }

    fn witness_bound(&self, x: &DynPoint) -> i64 {
        match x {
            DynPoint::Subshift(_) => self.h_max,
            DynPoint::Torus(_) => self.torus_h_max,
        }
    }
}

/// A model, its scale parameters and optional hull samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub scale: Scale,
    /// Hull points to sample; the model's defaults when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleSpec>>,
}

impl ExperimentConfig {
    pub fn new(model: ModelSpec) -> Self {
        ExperimentConfig {
            model,
            scale: Scale::default(),
            samples: None,
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = self.model.violations();
        v.extend(self.scale.violations());
        if matches!(&self.samples, Some(s) if s.is_empty()) {
            v.push("samples must be nonempty when given".into());
        }
        v
    }

    fn build(&self) -> Result<(Model, Vec<DynPoint>)> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::Config(v));
        }
        let model = self.model.build()?;
        let samples = self.samples.clone().unwrap_or_else(|| model.default_samples());
        let points = samples.iter().map(|s| model.point(s)).collect::<Result<Vec<_>>>()?;
        Ok((model, points))
    }
}

/// The outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    /// `None` for exact checks.
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A CSV artifact held in memory until the report is written.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub checks: Vec<Check>,
    pub summary: BTreeMap<String, f64>,
    /// File names relative to the report's directory.
    pub artifacts: Vec<String>,
    /// Seconds since the Unix epoch; the only nondeterministic field.
    pub timestamp: u64,
    #[serde(skip)]
    pub files: Vec<Artifact>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ExperimentReport {
            experiment: experiment.to_string(),
            config: config.clone(),
            checks: Vec::new(),
            summary: BTreeMap::new(),
            artifacts: Vec::new(),
            timestamp,
            files: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: String, measured: f64, tolerance: Option<f64>, pass: bool, detail: Option<String>) {
        debug_assert!(self.check(&name).is_none(), "duplicate check {name}");
        self.checks.push(Check {
            name,
            pass,
            measured,
            tolerance,
            detail,
        });
    }

    /// `measured ≤ tolerance`.
    fn push_bound(&mut self, name: String, measured: f64, tolerance: f64) {
        self.push(name, measured, Some(tolerance), measured <= tolerance, None);
    }

    fn push_exact(&mut self, name: String, pass: bool, measured: f64, detail: Option<String>) {
        self.push(name, measured, None, pass, detail);
    }

    fn attach(&mut self, file_name: String, contents: String) {
        self.artifacts.push(file_name.clone());
        self.files.push(Artifact { file_name, contents });
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Writes the report as JSON at `path` and its artifacts in the same
/// directory.
pub fn emit_report(report: &ExperimentReport, path: &Path) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    for a in &report.files {
        fs::write(dir.join(&a.file_name), &a.contents)?;
    }
    fs::write(path, report.to_json()?)?;
    Ok(())
}

fn csv_string(write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

fn fmt_eps(e: f64) -> String {
    format!("{e:.3e}")
}

/// Square grid around the Wiener-norm disc of `A(x)`.
fn wiener_grid(family: &BandFamily, x: &DynPoint, scale: &Scale) -> Result<(GridSpec, f64)> {
    let w = family.wiener_norm(x, 1000)?;
    Ok((GridSpec::centered_square(w + scale.grid_pad, scale.grid_step), w))
}

/// Hausdorff distance between two indicator sets. An empty set against a
/// nonempty one is reported as the grid diameter, the largest distance the
/// grid can express.
fn indicator_distance(a: &[Complex64], b: &[Complex64], grid: &GridSpec) -> Result<f64> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Ok(0.0),
        (false, false) => hausdorff(a, b),
        _ => Ok(((grid.re_hi - grid.re_lo).powi(2) + (grid.im_hi - grid.im_lo).powi(2)).sqrt()),
    }
}

fn grid_node(grid: &GridSpec, idx: usize) -> Complex64 {
    let (nx, _) = grid.shape().expect("grid validated by the indicator computation");
    grid.node(idx % nx, idx / nx)
}

/// Largest pairwise indicator-set distance for each ε. `sets[p][k]` is
/// the indicator set of point `p` at the `k`-th ε.
fn pairwise_max(sets: &[Vec<Vec<Complex64>>], grid: &GridSpec) -> Result<Vec<f64>> {
    let eps_count = sets[0].len();
    let mut out = vec![0.0f64; eps_count];
    for (k, slot) in out.iter_mut().enumerate() {
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                *slot = slot.max(indicator_distance(&sets[a][k], &sets[b][k], grid)?);
            }
        }
    }
    Ok(out)
}

fn indicator_points(grids: &[PseudospecGrid]) -> Vec<Vec<Vec<Complex64>>> {
    grids
        .iter()
        .map(|g| (0..g.eps.len()).map(|k| g.indicator_points(k)).collect())
        .collect()
}

fn check_distinct_samples(model: &Model, points: &[DynPoint]) -> Result<()> {
    if !matches!(model.spec, ModelSpec::Sturmian { .. } | ModelSpec::AlmostMathieu { .. }) {
        return Ok(());
    }
    if points.len() < 3 {
        return Err(Error::config(format!(
            "constancy needs at least 3 hull samples, got {}",
            points.len()
        )));
    }
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let same = match (&points[a], &points[b]) {
                (DynPoint::Subshift(p), DynPoint::Subshift(q)) => p.window(-16, 16)? == q.window(-16, 16)?,
                (DynPoint::Torus(p), DynPoint::Torus(q)) => p.distance(q) <= 1e-9,
                _ => false,
            };
            if same {
                return Err(Error::config(format!(
                    "degenerate sampling: samples {a} and {b} have the same central word or angle"
                )));
            }
        }
    }
    Ok(())
}

/// Pseudospectra of `N`-sections at several hull points and the pairwise
/// Hausdorff distances between their ε-indicator sets.
pub fn constancy_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (model, points) = cfg.build()?;
    check_distinct_samples(&model, &points)?;
    let scale = &cfg.scale;
    let (grid, wiener) = wiener_grid(&model.family, &model.base, scale)?;
    let mut report = ExperimentReport::new("constancy", cfg);
    report.summary.insert("wiener_norm".into(), wiener);
    report.summary.insert("sample_count".into(), points.len() as f64);
    report.summary.insert("minimal".into(), if model.minimal { 1.0 } else { 0.0 });

    let mut sizes = vec![scale.n];
    if scale.n_doubling {
        sizes.push(2 * scale.n);
    }
    let mut per_size = Vec::new();
    for (s, &n) in sizes.iter().enumerate() {
        let sets = if s == 0 {
            // full σ grids at the base scale, kept as artifacts
            let grids = points
                .iter()
                .map(|x| family_pseudospectrum(&model.family, x, n, BoundaryMode::Zero, &grid, &scale.eps))
                .collect::<Result<Vec<_>>>()?;
            for (i, g) in grids.iter().enumerate() {
                report.attach(format!("pseudospec_point{i}_N{n}.csv"), csv_string(|b| g.write_csv(b))?);
            }
            report.attach("pseudospec_grid.json".into(), grids[0].header_json()?);
            indicator_points(&grids)
        } else {
            points
                .iter()
                .map(|x| {
                    let w = model.family.window_matrix(x, n, BoundaryMode::Zero)?;
                    let ind = pseudospectrum_indicators(w.entries(), &grid, &scale.eps)?;
                    Ok(ind
                        .iter()
                        .map(|set| set.iter().map(|&i| grid_node(&grid, i)).collect())
                        .collect())
                })
                .collect::<Result<Vec<_>>>()?
        };
        per_size.push(pairwise_max(&sets, &grid)?);
    }

    let base = &per_size[0];
    for (k, &e) in scale.eps.iter().enumerate() {
        let name = format!("hausdorff[eps={},N={}]", fmt_eps(e), scale.n);
        report.push_bound(name, base[k], scale.tol_hausdorff);
        report.summary.insert(format!("max_pairwise_hausdorff[eps={}]", fmt_eps(e)), base[k]);
        if let Some(doubled) = per_size.get(1) {
            report.summary.insert(
                format!("max_pairwise_hausdorff_2N[eps={}]", fmt_eps(e)),
                doubled[k],
            );
            report.push_bound(
                format!("trend[eps={},N={}->{}]", fmt_eps(e), scale.n, 2 * scale.n),
                doubled[k] - base[k],
                scale.trend_slack,
            );
        }
    }
    report
        .summary
        .insert("max_pairwise_hausdorff".into(), base.iter().copied().fold(0.0, f64::max));
    Ok(report)
}

/// The periodic words whose operators are tested as limit operators.
fn approximant_words(model: &Model, scale: &Scale) -> Result<Vec<SubshiftPoint>> {
    let alphabet = match model.family.kind() {
        SystemKind::Subshift { alphabet } => alphabet,
        SystemKind::Torus { .. } => {
            return Err(Error::config(format!(
                "model {} has no periodic approximants",
                model.spec.id()
            )))
        }
    };
    let periodic = |w: &Word| SubshiftPoint::periodic(w)?.with_alphabet(alphabet);
    match &model.spec {
        ModelSpec::Shift {} => Ok(vec![periodic(&Word::new(vec![0]))?]),
        ModelSpec::Sturmian { .. } => {
            let x = model.base.as_subshift().expect("Sturmian base is a subshift point");
            scale
                .q_list
                .iter()
                .map(|&q| periodic(&x.window(1, q as i64)?))
                .collect()
        }
        ModelSpec::FullShiftConcatenation { .. } => scale.words.iter().map(periodic).collect(),
        _ => Err(Error::config(format!(
            "model {} has no periodic approximants",
            model.spec.id()
        ))),
    }
}

/// Largest `σ_min(A_N(x) − z)` over the Floquet points of each word.
fn containment_checks(
    report: &mut ExperimentReport,
    model: &Model,
    words: &[SubshiftPoint],
    scale: &Scale,
) -> Result<()> {
    let section = model.family.window_matrix(&model.base, scale.n, BoundaryMode::Zero)?;
    let band = BandMatrix::from_dense(section.entries());
    let mut sets: Vec<SpectrumSet> = Vec::new();
    let mut overall: f64 = 0.0;
    let mut total_points = 0usize;
    for p in words {
        let word = match p.rule() {
            crate::dynsys::SubshiftRule::Periodic { word } => word.to_string(),
            _ => unreachable!("approximants are periodic"),
        };
        let spec = floquet_spectrum(&model.family, &DynPoint::Subshift(p.clone()), scale.n_theta)?
            .relabel(&format!("word={word}"));
        let worst = spec
            .points()
            .iter()
            .map(|&z| band.sigma_min_shifted(z))
            .fold(0.0, f64::max);
        total_points += spec.len();
        overall = overall.max(worst);
        report.push_bound(format!("inclusion[word={word},N={}]", scale.n), worst, scale.tol_incl);
        sets.push(spec);
    }
    let union = spectrum_union(&sets)?;
    report.attach("floquet_union.csv".into(), csv_string(|b| union.write_csv(b))?);
    report.summary.insert("max_violation".into(), overall);
    report.summary.insert("floquet_points".into(), total_points as f64);
    Ok(())
}

/// Checks that Floquet spectra of periodic approximants lie in the
/// approximate spectrum of a finite section of `A(x)`.
pub fn inclusion_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (model, _) = cfg.build()?;
    let words = approximant_words(&model, &cfg.scale)?;
    let mut report = ExperimentReport::new("inclusion", cfg);
    if matches!(model.spec, ModelSpec::Sturmian { .. }) {
        let ok = self_similar_check(
            &model.family,
            &model.base,
            cfg.scale.r_idx,
            cfg.scale.h_min,
            cfg.scale.h_max,
        )?;
        report.push_exact("self_similar[base]".into(), ok, if ok { 1.0 } else { 0.0 }, None);
    }
    containment_checks(&mut report, &model, &words, &cfg.scale)?;
    Ok(report)
}

/// Word coverage and spectral containment at the concatenation point.
pub fn pseudoergodic_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if !matches!(cfg.model, ModelSpec::FullShiftConcatenation { .. }) {
        return Err(Error::config(format!(
            "pseudo-ergodic experiment needs the full-shift-concatenation model, not {} (its points are not pseudo-ergodic in the full shift)",
            cfg.model.id()
        )));
    }
    let (model, _) = cfg.build()?;
    let scale = &cfg.scale;
    let x = model.base.as_subshift().expect("concatenation base is a subshift point");
    let mut report = ExperimentReport::new("pseudoergodic", cfg);
    let mut total_missing = 0usize;
    for n in 1..=scale.coverage_n_max {
        let missing = x.coverage(n, scale.coverage_l, &all_words(x.alphabet(), n))?;
        total_missing += missing.len();
        let detail = (!missing.is_empty()).then(|| format!("missing: {}", missing.to_strings().join(" ")));
        report.push_exact(
            format!("coverage[n={n},L={}]", scale.coverage_l),
            missing.is_empty(),
            missing.len() as f64,
            detail,
        );
    }
    report.summary.insert("missing_words".into(), total_missing as f64);
    let words = approximant_words(&model, scale)?;
    containment_checks(&mut report, &model, &words, scale)?;
    Ok(report)
}

fn windows_equal(a: &BandWindow, b: &BandWindow) -> f64 {
    a.entries()
        .as_slice()
        .iter()
        .zip(b.entries().as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Witnesses from `x` to `y` at the configured scale.
fn witnesses(x: &DynPoint, y: &DynPoint, radius: usize, scale: &Scale) -> Result<Vec<i64>> {
    limit_witness(x, y, &WitnessScan::new(radius, scale.h_min, scale.witness_bound(x)))
}

/// Structural checks on the operator systems built from several periodic
/// orbits.
pub fn induced_system_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if !matches!(cfg.model, ModelSpec::Example71 {} | ModelSpec::Example72 {}) {
        return Err(Error::config(format!(
            "induced-system check needs example-7-1 or example-7-2, not {}",
            cfg.model.id()
        )));
    }
    let (model, _) = cfg.build()?;
    let scale = &cfg.scale;
    let components = model.components.clone().expect("fixture models list their components");
    let points: Vec<DynPoint> = components.iter().flatten().cloned().collect();
    let radius = scale.r_idx + model.family.radius();
    let mut report = ExperimentReport::new("induced", cfg);

    let r = scale.r_idx;
    let windows = points
        .iter()
        .map(|x| model.family.window_matrix(x, r, BoundaryMode::Zero))
        .collect::<Result<Vec<_>>>()?;

    // pairs of points in different components never witness each other
    let mut cross = 0usize;
    for (a, ca) in components.iter().enumerate() {
        for cb in components.iter().skip(a + 1) {
            for x in ca {
                for y in cb {
                    cross += witnesses(x, y, radius, scale)?.len() + witnesses(y, x, radius, scale)?.len();
                }
            }
        }
    }

    match model.spec {
        ModelSpec::Example71 {} => {
            for (i, (x, w)) in points.iter().zip(&windows).enumerate() {
                let conj = ad_u(w);
                let mut dev = windows_equal(&conj, w);
                let shifted = model.family.window_matrix(&x.shift(1), r, BoundaryMode::Zero)?;
                dev = dev.max(windows_equal(&shifted, w));
                report.push_exact(format!("ad_u_fixed[point={i}]"), dev == 0.0, dev, None);
            }
            let spread = windows.iter().map(|w| windows_equal(w, &windows[0])).fold(0.0, f64::max);
            report.push_exact("single_operator".into(), spread == 0.0, spread, None);

            // indicator sets per distinct section; equal sections share one computation
            let (grid, _) = wiener_grid(&model.family, &points[0], scale)?;
            let mut cache: BTreeMap<Vec<(u64, u64)>, Vec<Vec<Complex64>>> = BTreeMap::new();
            let mut sets = Vec::with_capacity(points.len());
            for x in &points {
                let w = model.family.window_matrix(x, scale.n, BoundaryMode::Zero)?;
                let key = w.key();
                if !cache.contains_key(&key) {
                    let ind = pseudospectrum_indicators(w.entries(), &grid, &scale.eps)?;
                    let pts = ind
                        .iter()
                        .map(|set| set.iter().map(|&i| grid_node(&grid, i)).collect())
                        .collect();
                    cache.insert(key.clone(), pts);
                }
                sets.push(cache[&key].clone());
            }
            report.summary.insert("distinct_sections".into(), cache.len() as f64);
            let worst = pairwise_max(&sets, &grid)?.into_iter().fold(0.0, f64::max);
            report.push_exact(format!("hausdorff_zero[N={}]", scale.n), worst == 0.0, worst, None);
            report.summary.insert("max_pairwise_hausdorff".into(), worst);

            report.push_exact(
                "orbit_classes".into(),
                components.len() >= 2 && cross == 0,
                components.len() as f64,
                Some(format!("{cross} witnesses between classes")),
            );
        }
        ModelSpec::Example72 {} => {
            for (i, x) in points.iter().enumerate() {
                let ok = self_similar_check(&model.family, x, r, scale.h_min, scale.h_max)?;
                report.push_exact(format!("self_similar[point={i}]"), ok, if ok { 1.0 } else { 0.0 }, None);
            }
            let distinct: BTreeSet<_> = windows.iter().map(BandWindow::key).collect();
            report.push_exact(
                "injective_windows".into(),
                distinct.len() == points.len(),
                distinct.len() as f64,
                None,
            );
            report.push_exact("cross_component_witnesses".into(), cross == 0, cross as f64, None);
            let unreachable = points
                .iter()
                .map(|y| witnesses(&model.base, y, radius, scale).map(|w| w.is_empty()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|&u| u)
                .count();
            report.push_exact(
                "non_minimal".into(),
                unreachable > 0,
                unreachable as f64,
                Some("sampled points not in the limit set of the base point".into()),
            );
        }
        _ => unreachable!(),
    }
    report.summary.insert("points".into(), points.len() as f64);
    report.summary.insert("orbit_classes".into(), components.len() as f64);
    Ok(report)
}
