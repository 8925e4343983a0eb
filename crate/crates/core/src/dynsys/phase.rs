//! Points of the circle R/Z as 128-bit fixed-point enclosures.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Fractional bits of π, i.e. `π − 3` truncated to 128 bits.
const PI_FRACTION_BITS: u128 = 0x243F_6A88_85A3_08D3_1319_8A2E_0370_7344;

/// An enclosure `[lo, lo + width]·2⁻¹²⁸ (mod 1)` of a point on the circle.
///
/// Addition and integer multiples are carried out with wrapping `u128`
/// arithmetic, which is exactly arithmetic mod 1. The width grows linearly
/// with the multiplier, so for `|k| ≤ 10⁶` an enclosure built from a
/// 128-bit constant still carries more than 100 correct fractional bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase {
    lo: u128,
    width: u128,
}

impl Phase {
    pub const ZERO: Phase = Phase { lo: 0, width: 0 };

    /// An exactly known point `bits·2⁻¹²⁸`.
    pub const fn exact(bits: u128) -> Self {
        Phase { lo: bits, width: 0 }
    }

    pub const fn from_bounds(lo: u128, width: u128) -> Self {
        Phase { lo, width }
    }

    pub fn lo(&self) -> u128 {
        self.lo
    }

    pub fn width(&self) -> u128 {
        self.width
    }

    /// Upper end of the enclosure, without reduction mod 1.
    pub fn hi(&self) -> Option<u128> {
        self.lo.checked_add(self.width)
    }

    pub fn is_exact(&self) -> bool {
        self.width == 0
    }

    /// Converts a double in `[0, 1)`. Every such double is a dyadic rational;
    /// values with more than 128 fractional bits are enclosed with width 1.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&value) || !value.is_finite() {
            return Err(Error::Argument(format!(
                "phase must lie in [0, 1), got {value}"
            )));
        }
        if value == 0.0 {
            return Ok(Phase::ZERO);
        }
        let bits = value.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let (mantissa, exp) = if exp == 0 {
            (bits & ((1u64 << 52) - 1), -1074)
        } else {
            ((bits & ((1u64 << 52) - 1)) | (1u64 << 52), exp - 1075)
        };
        // value = mantissa · 2^exp, want mantissa · 2^(exp + 128)
        let shift = exp + 128;
        if shift >= 0 {
            Ok(Phase::exact((mantissa as u128) << shift))
        } else {
            let down = (-shift) as u32;
            let lo = if down >= 128 {
                0
            } else {
                (mantissa as u128) >> down
            };
            let exact = down < 64 && (mantissa & ((1u64 << down) - 1)) == 0;
            Ok(Phase {
                lo,
                width: if exact { 0 } else { 1 },
            })
        }
    }

    /// Encloses the value of an infinite continued fraction
    /// `[0; a₁, a₂, …]` whose terms are `prefix` followed by `repeat`
    /// repeated forever. `prefix[0]` is the integer part and must be 0.
    pub fn from_continued_fraction(prefix: &[u64], repeat: &[u64]) -> Result<Self> {
        if repeat.is_empty() {
            return Err(Error::Argument(
                "a finite continued fraction is rational; supply a repeating tail".into(),
            ));
        }
        if prefix.first().copied().unwrap_or(0) != 0 {
            return Err(Error::Argument(
                "continued fraction must have integer part 0".into(),
            ));
        }
        let tail = prefix.iter().skip(1).chain(repeat.iter());
        if tail.clone().any(|&a| a == 0) {
            return Err(Error::Argument(
                "continued-fraction terms after the first must be positive".into(),
            ));
        }

        let target = BigUint::one() << 140u32;
        let terms = prefix
            .iter()
            .skip(1)
            .copied()
            .chain(repeat.iter().copied().cycle());
        // (p_{n-1}, q_{n-1}) and (p_n, q_n), starting from [0;] = 0/1
        let mut prev = (BigUint::one(), BigUint::zero());
        let mut cur = (BigUint::zero(), BigUint::one());
        for a in terms {
            let a = BigUint::from(a);
            let next = (&a * &cur.0 + &prev.0, &a * &cur.1 + &prev.1);
            prev = std::mem::replace(&mut cur, next);
            if &prev.1 * &cur.1 >= target && !prev.1.is_zero() {
                break;
            }
        }
        // the value lies strictly between consecutive convergents
        let scale = BigUint::one() << 128u32;
        let a_num = &prev.0 * &scale;
        let b_num = &cur.0 * &scale;
        let (lo_a, hi_a) = floor_ceil(&a_num, &prev.1);
        let (lo_b, hi_b) = floor_ceil(&b_num, &cur.1);
        let lo = lo_a.min(lo_b);
        let hi = hi_a.max(hi_b);
        let lo = lo
            .to_u128()
            .ok_or_else(|| Error::Argument("continued fraction out of (0,1)".into()))?;
        let hi = hi
            .to_u128()
            .ok_or_else(|| Error::Argument("continued fraction out of (0,1)".into()))?;
        if lo == 0 {
            return Err(Error::Argument("continued fraction out of (0,1)".into()));
        }
        Ok(Phase {
            lo,
            width: hi - lo,
        })
    }

    /// `(√5 − 1)/2 = [0; 1, 1, 1, …]`.
    pub fn golden() -> Self {
        Phase::from_continued_fraction(&[0], &[1]).expect("valid continued fraction")
    }

    /// `√2 − 1 = [0; 2, 2, 2, …]`.
    pub fn sqrt2_minus_1() -> Self {
        Phase::from_continued_fraction(&[0], &[2]).expect("valid continued fraction")
    }

    /// `π − 3`, from its first 128 fractional bits.
    pub fn pi_minus_3() -> Self {
        Phase {
            lo: PI_FRACTION_BITS,
            width: 1,
        }
    }


    /// The enclosure of `k·self (mod 1)`.
    pub fn mul_int(self, k: i64) -> Phase {
        let kk = k as i128 as u128;
        let mag = k.unsigned_abs() as u128;
        if k >= 0 {
            Phase {
                lo: self.lo.wrapping_mul(kk),
                width: self.width * mag,
            }
        } else {
            // k·[lo, lo+w] = [k(lo+w), k·lo]
            Phase {
                lo: self.lo.wrapping_add(self.width).wrapping_mul(kk),
                width: self.width * mag,
            }
        }
    }

    /// Midpoint as a double.
    pub fn to_f64(&self) -> f64 {
        let mid = self.lo.wrapping_add(self.width / 2);
        (mid >> 64) as f64 / 2f64.powi(64) + (mid as u64) as f64 / 2f64.powi(128)
    }

    /// Decides `1_{(0, alpha)}(self)` where `self` and `alpha` are enclosures.
    ///
    /// Returns `None` when the enclosure straddles `0` or `alpha`.
    pub(crate) fn in_open_arc(&self, alpha: &Phase) -> Option<bool> {
        if self.width == 0 && self.lo == 0 {
            return Some(false);
        }
        let hi = self.hi()?;
        let alpha_hi = alpha.hi()?;
        if self.lo > 0 && hi < alpha.lo {
            Some(true)
        } else if self.lo >= alpha_hi {
            Some(false)
        } else {
            None
        }
    }
}

fn floor_ceil(num: &BigUint, den: &BigUint) -> (BigUint, BigUint) {
    let q = num / den;
    if (&q * den) == *num {
        (q.clone(), q)
    } else {
        let c = &q + 1u32;
        (q, c)
    }
}

impl std::ops::Add for Phase {
    type Output = Phase;

    fn add(self, other: Phase) -> Phase {
        Phase {
            lo: self.lo.wrapping_add(other.lo),
            width: self.width + other.width,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_matches_double() {
        let g = Phase::golden();
        assert!((g.to_f64() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-16);
        assert!(g.width() < 1 << 16);
    }

    #[test]
    fn golden_satisfies_its_quadratic() {
        // g² + g = 1, checked on the top 64 bits
        let g = Phase::golden();
        let top = g.lo() >> 64;
        let sq = (top * top) >> 64;
        let sum = sq + top;
        let one = 1u128 << 64;
        assert!(sum.abs_diff(one) < 4, "{sum} vs {one}");
    }

    #[test]
    fn pi_fraction() {
        assert!((Phase::pi_minus_3().to_f64() - (std::f64::consts::PI - 3.0)).abs() < 4e-16);
    }

    #[test]
    fn rational_rejected() {
        assert!(Phase::from_continued_fraction(&[0, 2], &[]).is_err());
        assert!(Phase::from_continued_fraction(&[1], &[1]).is_err());
    }

    #[test]
    fn f64_conversion_is_exact_for_dyadics() {
        assert_eq!(Phase::from_f64(0.5).unwrap(), Phase::exact(1u128 << 127));
        assert_eq!(Phase::from_f64(0.75).unwrap(), Phase::exact(3u128 << 126));
        assert!(Phase::from_f64(1.0).is_err());
        assert!(Phase::from_f64(-0.1).is_err());
    }

    #[test]
    fn negative_multiple_wraps() {
        let half = Phase::from_f64(0.25).unwrap();
        assert_eq!(half.mul_int(-1), Phase::from_f64(0.75).unwrap());
        assert_eq!(half.mul_int(4), Phase::ZERO);
    }
}
