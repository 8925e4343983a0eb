use num_complex::Complex64;

use crate::{Error, Result};

/// Hausdorff distance between two finite point sets in the complex plane.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Argument("Hausdorff distance needs two nonempty sets".into()));
    }
    Ok(directed(a, b).max(directed(b, a)))
}

/// `sup_{p ∈ from} dist(p, to)`, with `to` swept in order of real part.
fn directed(from: &[Complex64], to: &[Complex64]) -> f64 {
    let mut sorted: Vec<Complex64> = to.to_vec();
    sorted.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut worst: f64 = 0.0;
    for p in from {
        let start = sorted.partition_point(|z| z.re < p.re);
        let mut best = f64::INFINITY;
        // a point can only raise the maximum if its nearest neighbour is
        // farther than `worst`, so the scan stops as soon as best <= worst
        let mut lo = start;
        let mut hi = start;
        loop {
            let mut progressed = false;
            if hi < sorted.len() {
                let z = sorted[hi];
                let dx = z.re - p.re;
                if dx < best {
                    best = best.min((z - p).norm());
                    hi += 1;
                    progressed = true;
                }
            }
            if lo > 0 {
                let z = sorted[lo - 1];
                let dx = p.re - z.re;
                if dx < best {
                    best = best.min((z - p).norm());
                    lo -= 1;
                    progressed = true;
                }
            }
            if !progressed || best <= worst {
                break;
            }
        }
        worst = worst.max(best);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: &[Complex64], b: &[Complex64]) -> f64 {
        let d = |x: &[Complex64], y: &[Complex64]| {
            x.iter()
                .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        d(a, b).max(d(b, a))
    }

    #[test]
    fn spec_examples() {
        let z = |re: f64, im: f64| Complex64::new(re, im);
        assert_eq!(hausdorff(&[z(0.0, 0.0)], &[z(3.0, 0.0), z(0.0, 4.0)]).unwrap(), 4.0);
        assert_eq!(hausdorff(&[z(0.0, 0.0), z(1.0, 0.0)], &[z(0.0, 0.0)]).unwrap(), 1.0);
        let s = [z(0.5, 0.1), z(-1.0, 2.0)];
        assert_eq!(hausdorff(&s, &s).unwrap(), 0.0);
        assert!(hausdorff(&[], &s).is_err());
    }

    proptest::proptest! {
        #[test]
        fn sweep_matches_brute_force(
            a in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..40),
            b in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..40),
        ) {
            let a: Vec<Complex64> = a.into_iter().map(|(x, y)| Complex64::new(x, y)).collect();
            let b: Vec<Complex64> = b.into_iter().map(|(x, y)| Complex64::new(x, y)).collect();
            let fast = hausdorff(&a, &b).unwrap();
            proptest::prop_assert!((fast - brute(&a, &b)).abs() < 1e-12);
        }
    }
}
