//! Smallest singular values of banded matrices under diagonal shifts.
//!
//! Bidiagonal matrices (every finite section of `U + λV`) go through the
//! Golub–Kahan form: the singular values of a bidiagonal matrix are the
//! positive eigenvalues of a zero-diagonal symmetric tridiagonal matrix, and
//! Sturm-sequence bisection on that matrix resolves even tiny singular
//! values to high relative accuracy. Everything else is reduced to an upper
//! triangular factor by plane rotations, followed by Lanczos on
//! `(R*R)⁻¹` with full reorthogonalisation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative width at which bisection stops.
const BISECTION_RTOL: f64 = 1e-11;

/// Values below this fraction of the matrix norm carry no accuracy
/// guarantee.
const TINY_RELATIVE: f64 = 1e-15;

/// Square banded matrix stored by rows: row `i` holds columns
/// `i - lower ..= i + upper`.
#[derive(Clone, Debug)]
pub struct BandMatrix {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn from_dense(m: &ComplexMatrix) -> Self {
        let (lower, upper) = m.bandwidth();
        let n = m.size();
        let width = lower + upper + 1;
        let mut data = vec![ZERO; n * width];
        for i in 0..n {
            let j0 = i.saturating_sub(lower);
            let j1 = (i + upper).min(n.saturating_sub(1));
            for j in j0..=j1 {
                data[i * width + (j + lower - i)] = m[(i, j)];
            }
        }
        BandMatrix { n, lower, upper, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        if j + self.lower < i || j > i + self.upper {
            ZERO
        } else {
            self.data[i * (self.lower + self.upper + 1) + (j + self.lower - i)]
        }
    }

    /// Upper bound on the spectral norm (max absolute row sum).
    pub fn norm_bound(&self) -> f64 {
        let w = self.lower + self.upper + 1;
        (0..self.n)
            .map(|i| self.data[i * w..(i + 1) * w].iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Moduli of the diagonal and off-diagonal of `self − z·I` when the
    /// matrix is bidiagonal. A complex bidiagonal is unitarily equivalent to
    /// the real one built from these moduli.
    fn bidiagonal_moduli(&self, z: Complex64) -> Option<(Vec<f64>, Vec<f64>)> {
        if self.lower + self.upper > 1 {
            return None;
        }
        let diag: Vec<f64> = (0..self.n).map(|i| (self.get(i, i) - z).norm()).collect();
        let off: Vec<f64> = (0..self.n - 1)
            .map(|i| {
                if self.lower == 1 {
                    self.get(i + 1, i).norm()
                } else {
                    self.get(i, i + 1).norm()
                }
            })
            .collect();
        Some((diag, off))
    }

    /// For each `ε`, whether `σ_min(self − z·I) ≤ ε`. Bidiagonal matrices
    /// answer with one Sturm count per threshold.
    pub fn sigma_min_below(&self, z: Complex64, eps: &[f64]) -> Vec<bool> {
        if self.n == 0 {
            return vec![true; eps.len()];
        }
        match self.bidiagonal_moduli(z) {
            Some((d, e)) => bidiagonal_below(&d, &e, eps),
            None => {
                let s = self.sigma_min_shifted(z);
                eps.iter().map(|&x| s <= x).collect()
            }
        }
    }

    /// `σ_min(self − z·I)`.
    pub fn sigma_min_shifted(&self, z: Complex64) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let scale = self.norm_bound() + z.norm();
        if let Some((diag, off)) = self.bidiagonal_moduli(z) {
            bidiagonal_sigma_min(&diag, &off, scale)
        } else {
            let r = UpperBand::from_shifted_qr(self, z);
            r.sigma_min(scale)
        }
    }
}

/// Smallest singular value of a square matrix.
pub fn sigma_min(m: &ComplexMatrix) -> f64 {
    BandMatrix::from_dense(m).sigma_min_shifted(ZERO)
}

// ---------------------------------------------------------------------------
// bidiagonal path

/// Number of probes evaluated together by [`gk_count_below_multi`]. The
/// Sturm recurrence is a chain of dependent divisions, so independent
/// probes interleave almost for free.
const PROBES: usize = 8;

/// `#{σ_i < x}` for each probe `x`, for the real bidiagonal whose squared
/// entries `d₀², e₀², d₁², …` are in `t2`, via the inertia of the
/// Golub–Kahan tridiagonal.
fn gk_count_below_multi(t2: &[f64], n: usize, xs: [f64; PROBES], pivmin: f64) -> [usize; PROBES] {
    let mut q = [0.0f64; PROBES];
    let mut neg = [0usize; PROBES];
    for k in 0..PROBES {
        q[k] = -xs[k];
        if q[k].abs() < pivmin {
            q[k] = -pivmin;
        }
        neg[k] = (q[k] < 0.0) as usize;
    }
    for &t in t2 {
        for k in 0..PROBES {
            let mut v = -xs[k] - t / q[k];
            if v.abs() < pivmin {
                v = -pivmin;
            }
            neg[k] += (v < 0.0) as usize;
            q[k] = v;
        }
    }
    neg.map(|c| c - n)
}

/// Squared Golub–Kahan entries and the pivot floor.
fn gk_setup(d: &[f64], e: &[f64]) -> (Vec<f64>, f64) {
    let n = d.len();
    let mut t2 = Vec::with_capacity(2 * n - 1);
    for i in 0..n {
        t2.push(d[i] * d[i]);
        if i + 1 < n {
            t2.push(e[i] * e[i]);
        }
    }
    let tmax = t2.iter().copied().fold(0.0, f64::max);
    (t2, f64::MIN_POSITIVE * tmax.max(1.0))
}

/// For each threshold `ε`, whether the bidiagonal has a singular value
/// `≤ ε`.
fn bidiagonal_below(d: &[f64], e: &[f64], eps: &[f64]) -> Vec<bool> {
    let n = d.len();
    if d.contains(&0.0) {
        return vec![true; eps.len()];
    }
    if n == 1 || e.iter().all(|&v| v == 0.0) {
        let m = d.iter().copied().fold(f64::INFINITY, f64::min);
        return eps.iter().map(|&x| m <= x).collect();
    }
    let (t2, pivmin) = gk_setup(d, e);
    let mut out = Vec::with_capacity(eps.len());
    for chunk in eps.chunks(PROBES) {
        let mut xs = [0.0; PROBES];
        for (k, &x) in chunk.iter().enumerate() {
            // σ ≤ ε  ⟺  #{σ < next float above ε} ≥ 1
            xs[k] = f64::from_bits(x.to_bits() + 1);
        }
        let counts = gk_count_below_multi(&t2, n, xs, pivmin);
        out.extend(counts[..chunk.len()].iter().map(|&c| c >= 1));
    }
    out
}

fn bidiagonal_sigma_min(d: &[f64], e: &[f64], scale: f64) -> f64 {
    let n = d.len();
    if d.contains(&0.0) {
        return 0.0;
    }
    if n == 1 || e.iter().all(|&v| v == 0.0) {
        return d.iter().copied().fold(f64::INFINITY, f64::min);
    }
    let (t2, pivmin) = gk_setup(d, e);
    let counts = |xs: [f64; PROBES]| gk_count_below_multi(&t2, n, xs, pivmin);

    let floor = scale * TINY_RELATIVE;
    let mut hi = bidiagonal_inverse_estimate(d, e);
    if !(hi > 0.0) || !hi.is_finite() {
        hi = scale;
    }
    if hi < floor * 1e-150 {
        return hi;
    }
    while counts([hi; PROBES])[0] == 0 {
        hi *= 2.0;
    }
    // bracket from below with probes hi/2, hi/4, …
    let lo = loop {
        let xs: [f64; PROBES] = std::array::from_fn(|k| hi * 0.5f64.powi(k as i32 + 1));
        let c = counts(xs);
        if let Some(k) = c.iter().position(|&c| c == 0) {
            if k > 0 {
                hi = xs[k - 1];
            }
            break xs[k];
        }
        hi = xs[PROBES - 1];
        if hi < floor {
            if counts([floor; PROBES])[0] == 0 {
                break floor;
            }
            // below the accuracy floor: settle for the current upper bound
            return hi.max(0.0).min(floor);
        }
    };
    // geometric multisection: count(lo) = 0, count(hi) ≥ 1
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > BISECTION_RTOL * lo {
        let ratio = (hi / lo).powf(1.0 / (PROBES + 1) as f64);
        let xs: [f64; PROBES] = std::array::from_fn(|k| lo * ratio.powi(k as i32 + 1));
        let c = counts(xs);
        match c.iter().position(|&c| c >= 1) {
            Some(k) => {
                hi = xs[k];
                if k > 0 {
                    lo = xs[k - 1];
                }
            }
            None => lo = xs[PROBES - 1],
        }
    }
    0.5 * (lo + hi)
}

/// Upper bound `‖x‖/‖B⁻¹x‖` from two steps of inverse iteration on the real
/// lower bidiagonal `B` (diagonal `d`, subdiagonal `e`), with rescaling to
/// avoid overflow.
fn bidiagonal_inverse_estimate(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i * 7919) % 13) as f64 / 13.0).collect();
    let mut estimate = f64::INFINITY;
    let big = 1e150;
    for _ in 0..2 {
        let xnorm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut log_scale = 0.0f64;
        let mut factor = 1.0;
        // B y = x (forward), then Bᵀ w = y (backward)
        let mut y = vec![0.0; n];
        for i in 0..n {
            let prev = if i > 0 { e[i - 1] * y[i - 1] } else { 0.0 };
            y[i] = (x[i] * factor - prev) / d[i];
            if y[i].abs() > big {
                for v in &mut y[..=i] {
                    *v /= big;
                }
                log_scale += big.ln();
                factor /= big;
            }
        }
        let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        // σ_min ≤ ‖x‖ / ‖B⁻¹x‖
        let est = (xnorm.ln() - ynorm.ln() - log_scale).exp();
        estimate = estimate.min(est);
        let mut w = vec![0.0; n];
        let mut factor = 1.0;
        for i in (0..n).rev() {
            let next = if i + 1 < n { e[i] * w[i + 1] } else { 0.0 };
            w[i] = (y[i] * factor - next) / d[i];
            if w[i].abs() > big {
                for v in &mut w[i..] {
                    *v /= big;
                }
                factor /= big;
            }
        }
        let wnorm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(wnorm > 0.0) || !wnorm.is_finite() {
            break;
        }
        x = w.into_iter().map(|v| v / wnorm).collect();
    }
    estimate
}

// ---------------------------------------------------------------------------
// general banded path

/// Upper triangular factor with `bw` superdiagonals; row `i` holds columns
/// `i ..= i + bw`.
struct UpperBand {
    n: usize,
    bw: usize,
    data: Vec<Complex64>,
}

impl UpperBand {
    /// `R` from a QR factorisation of `a − z·I` by plane rotations.
    fn from_shifted_qr(a: &BandMatrix, z: Complex64) -> Self {
        let n = a.n;
        let lw = a.lower;
        let bw = (a.lower + a.upper).min(n - 1);
        // working rows: columns base(i) .. base(i) + width
        let dense = 2 * lw + a.upper + 1 >= n;
        let width = if dense { n } else { 2 * lw + a.upper + 1 };
        let base = |i: usize| if dense { 0 } else { i as isize - lw as isize };
        let mut w = vec![ZERO; n * width];
        for i in 0..n {
            let j0 = i.saturating_sub(lw);
            let j1 = (i + a.upper).min(n - 1);
            for j in j0..=j1 {
                let mut v = a.get(i, j);
                if i == j {
                    v -= z;
                }
                w[i * width + (j as isize - base(i)) as usize] = v;
            }
        }
        let at = |i: usize, j: usize| i * width + (j as isize - base(i)) as usize;
        for j in 0..n {
            let last_row = (j + lw).min(n - 1);
            let last_col = (j + bw).min(n - 1);
            for i in j + 1..=last_row {
                let b = w[at(i, j)];
                if b == ZERO {
                    continue;
                }
                let a0 = w[at(j, j)];
                let (c, s) = rotation(a0, b);
                for col in j..=last_col {
                    let x = w[at(j, col)];
                    let y = w[at(i, col)];
                    w[at(j, col)] = x * c + s * y;
                    w[at(i, col)] = -s.conj() * x + y * c;
                }
                w[at(i, j)] = ZERO;
            }
        }
        let rw = bw + 1;
        let mut data = vec![ZERO; n * rw];
        for i in 0..n {
            for j in i..=(i + bw).min(n - 1) {
                data[i * rw + (j - i)] = w[at(i, j)];
            }
        }
        UpperBand { n, bw, data }
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * (self.bw + 1) + (j - i)]
    }

    /// Solves `R x = b` in place; returns the accumulated natural-log scale
    /// applied to keep entries finite (`x_true = x · e^scale`).
    fn solve_upper(&self, x: &mut [Complex64]) -> f64 {
        let n = self.n;
        let big = 1e150;
        let mut log_scale = 0.0;
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..=(i + self.bw).min(n - 1) {
                acc -= self.get(i, j) * x[j];
            }
            x[i] = acc / self.get(i, i);
            if x[i].norm() > big {
                for v in x.iter_mut() {
                    *v /= big;
                }
                log_scale += big.ln();
            }
        }
        log_scale
    }

    /// Solves `R* x = b` in place (forward substitution).
    fn solve_adjoint(&self, x: &mut [Complex64]) -> f64 {
        let n = self.n;
        let big = 1e150;
        let mut log_scale = 0.0;
        for i in 0..n {
            let mut acc = x[i];
            for k in i.saturating_sub(self.bw)..i {
                acc -= self.get(k, i).conj() * x[k];
            }
            x[i] = acc / self.get(i, i).conj();
            if x[i].norm() > big {
                for v in x.iter_mut() {
                    *v /= big;
                }
                log_scale += big.ln();
            }
        }
        log_scale
    }

    fn sigma_min(&self, scale: f64) -> f64 {
        let n = self.n;
        if (0..n).any(|i| self.get(i, i) == ZERO) {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        normalize(&mut v);

        let kmax = n.min(300);
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(kmax);
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut theta_prev = 0.0;
        for k in 0..kmax {
            let mut w = v.clone();
            let s1 = self.solve_adjoint(&mut w);
            let s2 = self.solve_upper(&mut w);
            if s1 + s2 > 0.0 {
                // ‖(R*R)⁻¹v‖ ≥ e^{s} ≫ 1 ⇒ σ_min² ≤ 1/‖(R*R)⁻¹v‖
                let nrm = norm(&w).ln() + s1 + s2;
                return (-0.5 * nrm).exp();
            }
            let alpha: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi -= vi * alpha;
            }
            if let Some(prev) = basis.last() {
                let b = *betas.last().unwrap();
                for (wi, pi) in w.iter_mut().zip(prev) {
                    *wi -= pi * b;
                }
            }
            // full reorthogonalisation, twice
            for _ in 0..2 {
                for q in basis.iter().chain(std::iter::once(&v)) {
                    let dot: Complex64 = q.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                    for (wi, qi) in w.iter_mut().zip(q) {
                        *wi -= qi * dot;
                    }
                }
            }
            alphas.push(alpha);
            let beta = norm(&w);
            let theta = largest_tridiagonal_eigenvalue(&alphas, &betas);
            let converged = k > 0 && (theta - theta_prev).abs() <= 1e-13 * theta;
            theta_prev = theta;
            if converged || beta <= 1e-13 * theta || k + 1 == kmax {
                break;
            }
            betas.push(beta);
            basis.push(std::mem::take(&mut v));
            v = w.into_iter().map(|z| z / beta).collect();
        }
        let sigma = 1.0 / theta_prev.sqrt();
        if sigma.is_finite() {
            sigma
        } else {
            scale * TINY_RELATIVE
        }
    }
}

fn rotation(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let an = a.norm();
    let rho = an.hypot(b.norm());
    (an / rho, (a / an) * b.conj() / rho)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let s = norm(v);
    for z in v {
        *z /= s;
    }
}

/// Largest eigenvalue of the real symmetric tridiagonal matrix with
/// diagonal `a` and off-diagonal `b`, by bisection on Sturm counts.
pub(crate) fn largest_tridiagonal_eigenvalue(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { b[i - 1].abs() } else { 0.0 } + if i < b.len() { b[i].abs() } else { 0.0 };
        lo = lo.min(a[i] - r);
        hi = hi.max(a[i] + r);
    }
    let span = hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE * span;
    let count_below = |x: f64| {
        let mut c = 0;
        let mut q = a[0] - x;
        for i in 0..n {
            if i > 0 {
                q = a[i] - x - b[i - 1] * b[i - 1] / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                c += 1;
            }
        }
        c
    };
    while hi - lo > 4.0 * f64::EPSILON * span {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// σ_min via eigenvalues of the Hermitian matrix M*M by Jacobi rotations,
    /// used as an independent check on small inputs.
    fn jacobi_sigma_min(m: &ComplexMatrix) -> f64 {
        let g = &m.adjoint() * m;
        let n = g.size();
        let mut a: Vec<Vec<Complex64>> = (0..n).map(|i| g.row(i).to_vec()).collect();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j].norm_sqr())
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p][q];
                    if apq.norm() < 1e-300 {
                        continue;
                    }
                    let app = a[p][p].re;
                    let aqq = a[q][q].re;
                    let phase = apq / apq.norm();
                    let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                    let (cs, sn) = (theta.cos(), theta.sin());
                    // rotation in the (p, q) plane diagonalising the 2×2 block
                    for k in 0..n {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = akp * cs - akq * phase.conj() * sn;
                        a[k][q] = akp * phase * sn + akq * cs;
                    }
                    for k in 0..n {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = apk * cs - aqk * phase * sn;
                        a[q][k] = apk * phase.conj() * sn + aqk * cs;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i].re).fold(f64::INFINITY, f64::min).max(0.0).sqrt()
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(sigma_min(&ComplexMatrix::identity(5)), 1.0);
        assert_eq!(sigma_min(&ComplexMatrix::zeros(5)), 0.0);
    }

    #[test]
    fn general_path_matches_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3usize, 6, 12] {
            let m = ComplexMatrix::from_fn(n, |_, _| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
            let fast = sigma_min(&m);
            let slow = jacobi_sigma_min(&m);
            assert!((fast - slow).abs() <= 1e-8 * slow.max(1e-3), "n={n}: {fast} vs {slow}");
        }
    }

    #[test]
    fn bidiagonal_path_matches_jacobi() {
        let n = 9;
        let m = ComplexMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(0.3 + 0.1 * i as f64, -0.2)
            } else if i == j + 1 {
                c(1.0)
            } else {
                c(0.0)
            }
        });
        let fast = sigma_min(&m);
        let slow = jacobi_sigma_min(&m);
        assert!((fast - slow).abs() <= 1e-8 * slow, "{fast} vs {slow}");
    }

    #[test]
    fn tridiagonal_eigenvalue() {
        // eigenvalues of tridiag(1, 2, 1) of size 4 are 2 + 2cos(kπ/5)
        let top = largest_tridiagonal_eigenvalue(&[2.0; 4], &[1.0; 3]);
        assert!((top - (2.0 + 2.0 * (std::f64::consts::PI / 5.0).cos())).abs() < 1e-13);
    }
}
