//! Dense spectral computations on windows.

mod eig;
mod hausdorff;
mod pseudospec;
mod svd;

use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use hausdorff::hausdorff;
pub use pseudospec::{
    family_pseudospectrum, pseudospectrum, pseudospectrum_indicators, GridSpec, PseudospecGrid, MAX_GRID_NODES,
};
pub use svd::{sigma_min, BandMatrix};

use crate::dynsys::{DynPoint, SubshiftPoint};
use crate::opfamily::{BandFamily, BoundaryMode, OperatorFamily};
use crate::{ComplexMatrix, Error, Result};

/// Largest matrix the dense routines accept.
pub const MAX_DENSE: usize = 4096;

/// Where a set of spectral points came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectrumSource {
    Dense { label: String },
    FiniteSection { n: usize, mode: BoundaryMode, label: String },
    Floquet { q: usize, n_theta: usize, label: String },
}

impl fmt::Display for SpectrumSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumSource::Dense { label } => write!(f, "dense:{label}"),
            SpectrumSource::FiniteSection { n, mode, label } => {
                write!(f, "finite-section(N={n},{mode}):{label}")
            }
            SpectrumSource::Floquet { q, n_theta, label } => {
                write!(f, "floquet(q={q},ntheta={n_theta}):{label}")
            }
        }
    }
}

/// A finite multiset of complex points, each tagged with its source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSet {
    points: Vec<Complex64>,
    tags: Vec<usize>,
    sources: Vec<SpectrumSource>,
}

impl SpectrumSet {
    pub fn new(points: Vec<Complex64>, source: SpectrumSource) -> Self {
        SpectrumSet {
            tags: vec![0; points.len()],
            points,
            sources: vec![source],
        }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sources(&self) -> &[SpectrumSource] {
        &self.sources
    }

    pub fn source_of(&self, idx: usize) -> &SpectrumSource {
        &self.sources[self.tags[idx]]
    }

    pub fn relabel(mut self, label: &str) -> Self {
        for s in &mut self.sources {
            match s {
                SpectrumSource::Dense { label: l }
                | SpectrumSource::FiniteSection { label: l, .. }
                | SpectrumSource::Floquet { label: l, .. } => *l = label.to_string(),
            }
        }
        self
    }

    /// CSV rows `re,im,source` with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "re,im,source")?;
        for (i, z) in self.points.iter().enumerate() {
            writeln!(out, "{},{},{}", fmt_f64(z.re), fmt_f64(z.im), self.source_of(i))?;
        }
        Ok(())
    }
}

/// 17 significant digits, `.` as decimal separator.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Eigenvalues of a dense matrix.
pub fn eig_dense(m: &ComplexMatrix) -> Result<SpectrumSet> {
    if m.size() == 0 || m.size() > MAX_DENSE {
        return Err(Error::Argument(format!(
            "dense eigensolver needs 1 <= m <= {MAX_DENSE}, got {}",
            m.size()
        )));
    }
    Ok(SpectrumSet::new(
        eig::eigenvalues(m)?,
        SpectrumSource::Dense { label: String::new() },
    ))
}

/// Multiset union, keeping every point's source.
pub fn spectrum_union(sets: &[SpectrumSet]) -> Result<SpectrumSet> {
    if sets.is_empty() {
        return Err(Error::Argument("spectrum union of an empty list".into()));
    }
    let mut out = SpectrumSet {
        points: Vec::new(),
        tags: Vec::new(),
        sources: Vec::new(),
    };
    for s in sets {
        let base = out.sources.len();
        out.sources.extend(s.sources.iter().cloned());
        out.points.extend_from_slice(&s.points);
        out.tags.extend(s.tags.iter().map(|t| t + base));
    }
    Ok(out)
}

/// The `q×q` Bloch symbol `A_q(θ)_{i,j} = Σ_m A(x)_{i, j+mq} e^{imθ}`.
pub fn bloch_matrix(family: &BandFamily, x: &SubshiftPoint, q: usize, theta: f64) -> Result<ComplexMatrix> {
    let w = family.band_width() as i64;
    let qi = q as i64;
    let mut m = ComplexMatrix::zeros(q);
    let point = DynPoint::Subshift(x.clone());
    for i in 0..qi {
        for jj in (i - w)..=(i + w) {
            let value = family.entry(&point, i, jj)?;
            if value == Complex64::new(0.0, 0.0) {
                continue;
            }
            let col = jj.rem_euclid(qi);
            let wraps = (jj - col) / qi;
            m[(i as usize, col as usize)] += value * Complex64::from_polar(1.0, wraps as f64 * theta);
        }
    }
    Ok(m)
}

/// Spectrum of the bi-infinite periodic operator `A(x)`, sampled at
/// `θ_k = 2πk/n_θ` through its Bloch symbols.
pub fn floquet_spectrum(family: &BandFamily, x: &DynPoint, n_theta: usize) -> Result<SpectrumSet> {
    let p = x
        .as_subshift()
        .ok_or_else(|| Error::Mode("Floquet spectra need a periodic subshift point".into()))?;
    let q = p
        .period()
        .ok_or_else(|| Error::Mode("Floquet spectra need a periodic subshift point".into()))?;
    if n_theta < 8 {
        return Err(Error::Argument(format!("n_theta must be >= 8, got {n_theta}")));
    }
    let mut points = Vec::with_capacity(q * n_theta);
    for k in 0..n_theta {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n_theta as f64;
        let m = bloch_matrix(family, p, q, theta)?;
        points.extend(eig::eigenvalues(&m)?);
    }
    Ok(SpectrumSet::new(
        points,
        SpectrumSource::Floquet {
            q,
            n_theta,
            label: String::new(),
        },
    ))
}

/// Greedy nearest-neighbour matching of two multisets; returns the largest
/// matched distance, or `None` when the cardinalities differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for z in a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, w)| (i, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        used[idx] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_keeps_sources() {
        let a = SpectrumSet::new(vec![Complex64::new(1.0, 0.0)], SpectrumSource::Dense { label: "a".into() });
        let b = SpectrumSet::new(vec![Complex64::new(0.0, 1.0)], SpectrumSource::Dense { label: "b".into() });
        let u = spectrum_union(&[a.clone(), b]).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.source_of(1).to_string(), "dense:b");
        assert_eq!(spectrum_union(std::slice::from_ref(&a)).unwrap(), a);
        assert!(spectrum_union(&[]).is_err());
    }

    #[test]
    fn csv_has_header_and_precision() {
        let s = SpectrumSet::new(vec![Complex64::new(0.1, -2.0)], SpectrumSource::Dense { label: "x".into() });
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        let re: f64 = row.split(',').next().unwrap().parse().unwrap();
        assert_eq!(re, 0.1);
        assert!(text.starts_with("re,im,source\n"));
    }

    #[test]
    fn matching_distance() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = [Complex64::new(1.0, 1e-9), Complex64::new(0.0, 0.0)];
        assert!(multiset_distance(&a, &b).unwrap() < 2e-9);
        assert!(multiset_distance(&a, &b[..1]).is_none());
    }
}
