//! Eigenvalues of dense complex matrices.
//!
//! Three stages: a permutation step isolates eigenvalues that can be read
//! off the diagonal (triangular parts, as in LAPACK's `gebal` with job
//! `P`); the remaining block is reduced to Hessenberg form with Householder
//! reflectors; the Hessenberg block is driven to triangular form by
//! implicit single-shift QR with Wilkinson shifts, deflating as subdiagonal
//! entries become negligible.

use num_complex::Complex64;

use crate::{ComplexMatrix, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn cabs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// All `n` eigenvalues of `m`, counted with multiplicity, in no particular
/// order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.size();
    if n == 0 {
        return Ok(Vec::new());
    }
    if !m.is_finite() {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let (active, isolated) = isolate_by_permutation(m);
    let mut out: Vec<Complex64> = isolated.iter().map(|&i| m[(i, i)]).collect();
    if !active.is_empty() {
        let k = active.len();
        let mut h: Vec<Complex64> = Vec::with_capacity(k * k);
        for &i in &active {
            for &j in &active {
                h.push(m[(i, j)]);
            }
        }
        reduce_to_hessenberg(&mut h, k);
        out.extend(hessenberg_qr(&mut h, k)?);
    }
    Ok(out)
}

/// Splits the index set into an active block and indices whose eigenvalue
/// equals the diagonal entry.
///
/// An index whose row (or column) has no nonzero off-diagonal entry inside
/// the active set can be permuted to the bottom (or top) of a block upper
/// triangular form, so it contributes exactly its diagonal entry.
fn isolate_by_permutation(m: &ComplexMatrix) -> (Vec<usize>, Vec<usize>) {
    let n = m.size();
    let mut row_count = vec![0usize; n];
    let mut col_count = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)] != ZERO {
                row_count[i] += 1;
                col_count[j] += 1;
            }
        }
    }
    let mut active = vec![true; n];
    let mut isolated = Vec::new();
    let mut stack: Vec<usize> = (0..n)
        .filter(|&i| row_count[i] == 0 || col_count[i] == 0)
        .collect();
    while let Some(i) = stack.pop() {
        if !active[i] {
            continue;
        }
        active[i] = false;
        isolated.push(i);
        for j in 0..n {
            if !active[j] || j == i {
                continue;
            }
            if m[(j, i)] != ZERO {
                row_count[j] -= 1;
                if row_count[j] == 0 {
                    stack.push(j);
                }
            }
            if m[(i, j)] != ZERO {
                col_count[j] -= 1;
                if col_count[j] == 0 {
                    stack.push(j);
                }
            }
        }
    }
    ((0..n).filter(|&i| active[i]).collect(), isolated)
}

/// In-place Householder reduction of the row-major `n×n` block to upper
/// Hessenberg form (a unitary similarity).
fn reduce_to_hessenberg(h: &mut [Complex64], n: usize) {
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| h[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let phase = if x0 == ZERO { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i * n + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // rows k+1.. : H ← (I − τ v v*) H
        for j in k..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * h[(k + 1 + r) * n + j])
                .sum();
            let f = dot * tau;
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r) * n + j] -= vr * f;
            }
        }
        // columns k+1.. : H ← H (I − τ v v*)
        for i in 0..n {
            let row = &mut h[i * n..(i + 1) * n];
            let dot: Complex64 = v.iter().enumerate().map(|(c, vc)| row[k + 1 + c] * vc).sum();
            let f = dot * tau;
            for (c, vc) in v.iter().enumerate() {
                row[k + 1 + c] -= f * vc.conj();
            }
        }
        for i in k + 2..n {
            h[i * n + k] = ZERO;
        }
    }
}

/// Plane rotation `[c s; -s̄ c]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
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

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // eigenvalue of [[a, b], [c, d]] closest to d
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mut den = half + disc;
    if (half - disc).norm() > den.norm() {
        den = half - disc;
    }
    if den == ZERO {
        d
    } else {
        d - b * c / den
    }
}

fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let ulp = f64::EPSILON;
    let safe_min = f64::MIN_POSITIVE;
    let small = safe_min * (n as f64 / ulp);
    let itmax = 30 * n.max(10);
    let idx = |i: usize, j: usize| i * n + j;

    let mut eig = vec![ZERO; n];
    let mut total_its = 0usize;
    let mut i = n as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut its = 0usize;
        loop {
            // locate the start of the unreduced block ending at iu
            let mut l = iu;
            while l > 0 {
                let sub = cabs1(h[idx(l, l - 1)]);
                if sub <= small {
                    break;
                }
                let mut tst = cabs1(h[idx(l - 1, l - 1)]) + cabs1(h[idx(l, l)]);
                if tst == 0.0 {
                    if l >= 2 {
                        tst += cabs1(h[idx(l - 1, l - 2)]);
                    }
                    if l < iu {
                        tst += cabs1(h[idx(l + 1, l)]);
                    }
                }
                if sub <= ulp * tst {
                    break;
                }
                l -= 1;
            }
            if l > 0 {
                h[idx(l, l - 1)] = ZERO;
            }
            if l == iu {
                eig[iu] = h[idx(iu, iu)];
                i -= 1;
                break;
            }
            if total_its >= itmax {
                return Err(Error::Numerical(format!(
                    "QR iteration did not converge after {total_its} sweeps; {} eigenvalues undetermined",
                    iu + 1
                )));
            }
            its += 1;
            total_its += 1;

            let shift = if its.is_multiple_of(10) {
                // exceptional shifts break cycles on unitary-like blocks
                if its.is_multiple_of(20) {
                    h[idx(iu, iu)] + h[idx(iu, iu - 1)].norm() * 0.75
                } else {
                    h[idx(l, l)] + h[idx(l + 1, l)].norm() * 0.75
                }
            } else {
                wilkinson_shift(
                    h[idx(iu - 1, iu - 1)],
                    h[idx(iu - 1, iu)],
                    h[idx(iu, iu - 1)],
                    h[idx(iu, iu)],
                )
            };

            // implicit single-shift sweep over rows/cols l..=iu
            for k in l..iu {
                let (a, b) = if k == l {
                    (h[idx(l, l)] - shift, h[idx(l + 1, l)])
                } else {
                    (h[idx(k, k - 1)], h[idx(k + 1, k - 1)])
                };
                let (c, s) = givens(a, b);
                let jstart = if k == l { l } else { k - 1 };
                for j in jstart..=iu {
                    let x = h[idx(k, j)];
                    let y = h[idx(k + 1, j)];
                    h[idx(k, j)] = x * c + s * y;
                    h[idx(k + 1, j)] = -s.conj() * x + y * c;
                }
                if k > l {
                    h[idx(k + 1, k - 1)] = ZERO;
                }
                let rend = (k + 2).min(iu);
                for r in l..=rend {
                    let x = h[idx(r, k)];
                    let y = h[idx(r, k + 1)];
                    h[idx(r, k)] = x * c + y * s.conj();
                    h[idx(r, k + 1)] = -x * s + y * c;
                }
            }
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn triangular_is_exact() {
        let m = ComplexMatrix::from_fn(8, |i, j| if i == j + 1 { c(1.0, 0.0) } else { ZERO });
        let ev = eigenvalues(&m).unwrap();
        assert_eq!(ev.len(), 8);
        assert!(ev.iter().all(|z| *z == ZERO));
    }

    #[test]
    fn two_by_two() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-2.0, 0.0), c(-3.0, 0.0)]])
            .unwrap();
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((ev[0] - c(-2.0, 0.0)).norm() < 1e-13);
        assert!((ev[1] - c(-1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn hessenberg_preserves_trace() {
        let n = 7;
        let m = ComplexMatrix::from_fn(n, |i, j| c(((i * 3 + j * 5) % 7) as f64 - 3.0, ((i + 2 * j) % 5) as f64));
        let mut h = m.as_slice().to_vec();
        reduce_to_hessenberg(&mut h, n);
        let tr: Complex64 = (0..n).map(|i| h[i * n + i]).sum();
        let tr0: Complex64 = (0..n).map(|i| m[(i, i)]).sum();
        assert!((tr - tr0).norm() < 1e-12);
        for i in 2..n {
            for j in 0..i - 1 {
                assert_eq!(h[i * n + j], ZERO);
            }
        }
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(eigenvalues(&m), Err(Error::Numerical(_))));
    }
}
