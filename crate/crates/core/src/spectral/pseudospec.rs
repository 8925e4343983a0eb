use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fmt_f64, BandMatrix};
use crate::dynsys::DynPoint;
use crate::opfamily::{BandFamily, BoundaryMode};
use crate::{ComplexMatrix, Error, Result};

pub const MAX_GRID_NODES: usize = 1_000_000;

/// Axis-aligned rectangle sampled with a uniform step; nodes include both
/// lower corners and every `lo + k·step` not exceeding the upper bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
    pub step: f64,
}

impl GridSpec {
    /// The square `[-r, r]²`.
    pub fn centered_square(radius: f64, step: f64) -> Self {
        GridSpec {
            re_lo: -radius,
            re_hi: radius,
            im_lo: -radius,
            im_hi: radius,
            step,
        }
    }

    fn axis_len(lo: f64, hi: f64, step: f64) -> usize {
        ((hi - lo) / step + 1e-9).floor() as usize + 1
    }

    pub fn shape(&self) -> Result<(usize, usize)> {
        let ok = self.step > 0.0
            && self.re_hi >= self.re_lo
            && self.im_hi >= self.im_lo
            && [self.re_lo, self.re_hi, self.im_lo, self.im_hi, self.step]
                .iter()
                .all(|v| v.is_finite());
        if !ok {
            return Err(Error::Argument(format!("malformed grid {self:?}")));
        }
        let nx = Self::axis_len(self.re_lo, self.re_hi, self.step);
        let ny = Self::axis_len(self.im_lo, self.im_hi, self.step);
        if nx.saturating_mul(ny) > MAX_GRID_NODES {
            return Err(Error::Resource(format!(
                "grid has {nx}×{ny} nodes, limit is {MAX_GRID_NODES}"
            )));
        }
        Ok((nx, ny))
    }

    /// Node `(ix, iy)`.
    pub fn node(&self, ix: usize, iy: usize) -> Complex64 {
        Complex64::new(
            self.re_lo + ix as f64 * self.step,
            self.im_lo + iy as f64 * self.step,
        )
    }
}

/// Smallest singular values of `M − z` over a grid, with ε-sublevel sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PseudospecGrid {
    pub grid: GridSpec,
    pub nx: usize,
    pub ny: usize,
    /// Row-major in the imaginary direction: index `iy·nx + ix`.
    pub sigma: Vec<f64>,
    pub eps: Vec<f64>,
    /// For each ε, the node indices with `σ_min ≤ ε`.
    pub indicators: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct GridHeader<'a> {
    rectangle: [f64; 4],
    step: f64,
    nx: usize,
    ny: usize,
    eps: &'a [f64],
}

impl PseudospecGrid {
    pub fn node(&self, idx: usize) -> Complex64 {
        self.grid.node(idx % self.nx, idx / self.nx)
    }

    /// Grid points in the ε-indicator set with index `k` of `eps`.
    pub fn indicator_points(&self, k: usize) -> Vec<Complex64> {
        self.indicators[k].iter().map(|&i| self.node(i)).collect()
    }

    /// Indicator points for the given ε, which must be in `eps`.
    pub fn indicator_for(&self, eps: f64) -> Option<Vec<Complex64>> {
        self.eps
            .iter()
            .position(|&e| e == eps)
            .map(|k| self.indicator_points(k))
    }

    /// CSV rows `z_re,z_im,sigma_min`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "z_re,z_im,sigma_min")?;
        for (i, s) in self.sigma.iter().enumerate() {
            let z = self.node(i);
            writeln!(out, "{},{},{}", fmt_f64(z.re), fmt_f64(z.im), fmt_f64(*s))?;
        }
        Ok(())
    }

    /// JSON header describing the grid, for plotting tools.
    pub fn header_json(&self) -> Result<String> {
        let h = GridHeader {
            rectangle: [self.grid.re_lo, self.grid.re_hi, self.grid.im_lo, self.grid.im_hi],
            step: self.grid.step,
            nx: self.nx,
            ny: self.ny,
            eps: &self.eps,
        };
        Ok(serde_json::to_string_pretty(&h)?)
    }
}

/// `σ_min(M − z)` at every node of `grid`. Nodes are evaluated
/// independently, so any parallel partition gives identical results.
pub fn pseudospectrum(m: &ComplexMatrix, grid: &GridSpec, eps: &[f64]) -> Result<PseudospecGrid> {
    if m.size() == 0 {
        return Err(Error::Argument("empty matrix".into()));
    }
    let (nx, ny) = grid.shape()?;
    if eps.iter().any(|e| !(*e >= 0.0)) {
        return Err(Error::Argument("ε values must be nonnegative".into()));
    }
    let band = BandMatrix::from_dense(m);
    let sigma: Vec<f64> = (0..nx * ny)
        .into_par_iter()
        .map(|idx| band.sigma_min_shifted(grid.node(idx % nx, idx / nx)))
        .collect();
    let indicators = eps
        .iter()
        .map(|&e| {
            sigma
                .iter()
                .enumerate()
                .filter(|(_, s)| **s <= e)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(PseudospecGrid {
        grid: *grid,
        nx,
        ny,
        sigma,
        eps: eps.to_vec(),
        indicators,
    })
}

/// The ε-indicator sets of [`pseudospectrum`] without the σ values. For
/// bidiagonal matrices membership is decided by a Sturm count per ε, which
/// is far cheaper than resolving σ_min itself.
pub fn pseudospectrum_indicators(m: &ComplexMatrix, grid: &GridSpec, eps: &[f64]) -> Result<Vec<Vec<usize>>> {
    if m.size() == 0 {
        return Err(Error::Argument("empty matrix".into()));
    }
    let (nx, ny) = grid.shape()?;
    if eps.iter().any(|e| !(*e >= 0.0)) {
        return Err(Error::Argument("ε values must be nonnegative".into()));
    }
    let band = BandMatrix::from_dense(m);
    let flags: Vec<Vec<bool>> = (0..nx * ny)
        .into_par_iter()
        .map(|idx| band.sigma_min_below(grid.node(idx % nx, idx / nx), eps))
        .collect();
    Ok((0..eps.len())
        .map(|k| (0..nx * ny).filter(|&i| flags[i][k]).collect())
        .collect())
}

/// Pseudospectrum of the window of `A(x)` of half-width `n`.
pub fn family_pseudospectrum(
    family: &BandFamily,
    x: &DynPoint,
    n: usize,
    mode: BoundaryMode,
    grid: &GridSpec,
    eps: &[f64],
) -> Result<PseudospecGrid> {
    let w = family.window_matrix(x, n, mode)?;
    pseudospectrum(w.entries(), grid, eps)
}
