//! Finitely described dynamical systems.
//!
//! Two kinds of systems are supported: subshifts over a finite alphabet with
//! the left shift `Tx(n) = x(n+1)`, and rotations of the torus `Rⁿ/Zⁿ` by a
//! fixed vector. Points carry enough information to be evaluated at any
//! index in `[-MAX_INDEX, MAX_INDEX]`.

mod phase;
mod words;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use phase::Phase;
pub use words::{all_words, Word, WordSet};

use crate::{Error, Result};

/// Largest supported absolute index for subshift evaluation.
pub const MAX_INDEX: i64 = 1_000_000;

pub type Symbol = u8;

/// Symbols `0..size`. At most ten symbols so that words print as digit
/// strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet { size: 2 };

    pub fn new(size: u8) -> Result<Self> {
        if !(1..=10).contains(&size) {
            return Err(Error::Argument(format!(
                "alphabet size must be in 1..=10, got {size}"
            )));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s < self.size
    }
}

/// How a subshift point assigns symbols to indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubshiftRule {
    /// `x(n) = word[n mod |word|]`.
    Periodic { word: Word },
    /// `x(n) = 1` iff `ω + nα (mod 1) ∈ (1 − α, 1]`, with `nα mod 1` taken
    /// in `[0, 1)`. The two boundary indices of `ω = 0` follow `ω → 0⁺`.
    Sturmian { alpha: Phase, omega: Phase },
    /// Non-negative indices run through every word over the alphabet in
    /// length-lexicographic order; negative indices mirror them,
    /// `x(-n-1) = x(n)`.
    Concatenation,
    /// `center` placed with its first symbol at index `offset`, constant
    /// fills on either side.
    Explicit {
        center: Word,
        offset: i64,
        left_fill: Symbol,
        right_fill: Symbol,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubshiftPoint {
    alphabet: Alphabet,
    rule: SubshiftRule,
    shift_offset: i64,
}

impl SubshiftPoint {
    pub fn new(alphabet: Alphabet, rule: SubshiftRule) -> Result<Self> {
        let check = |s: Symbol| {
            if alphabet.contains(s) {
                Ok(())
            } else {
                Err(Error::Argument(format!(
                    "symbol {s} not in alphabet of size {}",
                    alphabet.size()
                )))
            }
        };
        match &rule {
            SubshiftRule::Periodic { word } => {
                if word.is_empty() {
                    return Err(Error::Argument("periodic word must be nonempty".into()));
                }
                word.iter().try_for_each(|&s| check(s))?;
            }
            SubshiftRule::Sturmian { alpha, .. } => {
                if alphabet.size() != 2 {
                    return Err(Error::Argument("Sturmian codings are binary".into()));
                }
                if alpha.lo() == 0 || alpha.hi().is_none() {
                    return Err(Error::Argument("alpha must lie in (0, 1)".into()));
                }
            }
            SubshiftRule::Concatenation => {}
            SubshiftRule::Explicit {
                center,
                left_fill,
                right_fill,
                ..
            } => {
                center.iter().try_for_each(|&s| check(s))?;
                check(*left_fill)?;
                check(*right_fill)?;
            }
        }
        Ok(SubshiftPoint {
            alphabet,
            rule,
            shift_offset: 0,
        })
    }

    pub fn periodic(word: &[Symbol]) -> Result<Self> {
        let size = word.iter().copied().max().unwrap_or(0).max(1) + 1;
        SubshiftPoint::new(
            Alphabet::new(size.max(2))?,
            SubshiftRule::Periodic {
                word: Word::from(word),
            },
        )
    }

    pub fn sturmian(alpha: Phase, omega: Phase) -> Result<Self> {
        SubshiftPoint::new(Alphabet::BINARY, SubshiftRule::Sturmian { alpha, omega })
    }

    /// The Sturmian coding with `α = (√5 − 1)/2` and `ω = 0`.
    pub fn fibonacci() -> Self {
        SubshiftPoint::sturmian(Phase::golden(), Phase::ZERO).expect("golden mean in (0,1)")
    }

    pub fn concatenation(alphabet: Alphabet) -> Self {
        SubshiftPoint {
            alphabet,
            rule: SubshiftRule::Concatenation,
            shift_offset: 0,
        }
    }

    /// A finite word placed at `offset`, filled with `fill` on both sides.
    pub fn explicit(center: &[Symbol], offset: i64, fill: Symbol) -> Result<Self> {
        let size = center.iter().copied().chain([fill]).max().unwrap_or(0) + 1;
        SubshiftPoint::new(
            Alphabet::new(size.max(2))?,
            SubshiftRule::Explicit {
                center: Word::from(center),
                offset,
                left_fill: fill,
                right_fill: fill,
            },
        )
    }

    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Result<Self> {
        let probe = SubshiftPoint::new(alphabet, self.rule.clone())?;
        self.alphabet = probe.alphabet;
        Ok(self)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rule(&self) -> &SubshiftRule {
        &self.rule
    }

    pub fn shift_offset(&self) -> i64 {
        self.shift_offset
    }

    /// The least period when the rule is periodic.
    pub fn period(&self) -> Option<usize> {
        match &self.rule {
            SubshiftRule::Periodic { word } => Some(word.primitive_period()),
            _ => None,
        }
    }

    /// The symbol at index `n`.
    pub fn eval(&self, n: i64) -> Result<Symbol> {
        let m = n
            .checked_add(self.shift_offset)
            .filter(|m| m.abs() <= MAX_INDEX)
            .ok_or(Error::OutOfRange {
                index: n.saturating_add(self.shift_offset),
                limit: MAX_INDEX,
            })?;
        Ok(match &self.rule {
            SubshiftRule::Periodic { word } => word[m.rem_euclid(word.len() as i64) as usize],
            SubshiftRule::Sturmian { alpha, omega } => {
                // ω + mα ∈ (1−α, 1) (mod 1)  ⟺  ω + (m+1)α ∈ (0, α) (mod 1)
                //
                // With ω = 0 the indices m = -1 and m = 0 land exactly on the
                // arc's endpoints, where no enclosure can decide. They take
                // the limit ω → 0⁺, which keeps the point inside the hull:
                // x(-1) = 1, x(0) = 0.
                if omega.is_exact() && omega.lo() == 0 && (m == -1 || m == 0) {
                    return Ok(if m == -1 { 1 } else { 0 });
                }
                let phase = *omega + alpha.mul_int(m + 1);
                match phase.in_open_arc(alpha) {
                    Some(true) => 1,
                    Some(false) => 0,
                    None => return Err(Error::Inconclusive { index: m }),
                }
            }
            SubshiftRule::Concatenation => {
                let idx = if m >= 0 { m } else { -m - 1 };
                concatenation_symbol(self.alphabet.size() as u64, idx as u64)
            }
            SubshiftRule::Explicit {
                center,
                offset,
                left_fill,
                right_fill,
            } => {
                let rel = m - offset;
                if rel < 0 {
                    *left_fill
                } else if rel >= center.len() as i64 {
                    *right_fill
                } else {
                    center[rel as usize]
                }
            }
        })
    }

    /// `T^k x`.
    pub fn shift(&self, k: i64) -> SubshiftPoint {
        SubshiftPoint {
            shift_offset: self.shift_offset + k,
            ..self.clone()
        }
    }

    /// The word `x(a) … x(b)`.
    pub fn window(&self, a: i64, b: i64) -> Result<Word> {
        if a > b {
            return Err(Error::Argument(format!("empty window [{a}, {b}]")));
        }
        (a..=b).map(|n| self.eval(n)).collect::<Result<Vec<_>>>().map(Word::new)
    }

    /// All length-`n` words occurring in `window(-l, l)`.
    pub fn factors(&self, n: usize, l: i64) -> Result<WordSet> {
        if n == 0 || (n as i64) > l {
            return Err(Error::Argument(format!(
                "factor length must satisfy 1 <= n <= L, got n={n}, L={l}"
            )));
        }
        let w = self.window(-l, l)?;
        Ok(WordSet::from_words(n, w.windows(n).map(Word::from)))
    }

    pub fn complexity(&self, n: usize, l: i64) -> Result<usize> {
        Ok(self.factors(n, l)?.len())
    }

    /// `legal ∖ factors(n, l)`; empty means every legal word occurs.
    pub fn coverage(&self, n: usize, l: i64, legal: &WordSet) -> Result<WordSet> {
        if legal.length() != n {
            return Err(Error::Argument(format!(
                "legal words have length {}, expected {n}",
                legal.length()
            )));
        }
        let seen = self.factors(n, l)?;
        Ok(legal.difference(&seen))
    }
}

/// Symbol at index `n ≥ 0` of the length-lexicographic concatenation.
fn concatenation_symbol(k: u64, mut n: u64) -> Symbol {
    if k == 1 {
        return 0;
    }
    let mut len = 1u32;
    loop {
        let block = len as u64 * k.pow(len);
        if n < block {
            break;
        }
        n -= block;
        len += 1;
    }
    let word_idx = n / len as u64;
    let pos = (n % len as u64) as u32;
    ((word_idx / k.pow(len - 1 - pos)) % k) as Symbol
}

/// A point `v` of `Rⁿ/Zⁿ` together with the rotation vector `β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    v: Vec<f64>,
    beta: Vec<f64>,
}

impl TorusPoint {
    pub fn new(v: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if v.is_empty() || v.len() != beta.len() {
            return Err(Error::Argument(
                "torus point and rotation must have the same positive dimension".into(),
            ));
        }
        if v.iter().chain(&beta).any(|c| !c.is_finite()) {
            return Err(Error::Argument("torus coordinates must be finite".into()));
        }
        Ok(TorusPoint {
            v: v.into_iter().map(frac).collect(),
            beta: beta.into_iter().map(frac).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// `v + kβ (mod 1)`, with the product `kβ` carried in compensated form.
    pub fn translate(&self, k: i64) -> Vec<f64> {
        self.v
            .iter()
            .zip(&self.beta)
            .map(|(&v, &b)| rotate_coordinate(v, b, k))
            .collect()
    }

    pub fn shift(&self, k: i64) -> TorusPoint {
        TorusPoint {
            v: self.translate(k),
            beta: self.beta.clone(),
        }
    }

    /// Max over coordinates of the circle distance.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        circle_distance_max(&self.v, &other.v)
    }
}

pub(crate) fn circle_distance_max(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = frac(x - y);
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

fn rotate_coordinate(v: f64, b: f64, k: i64) -> f64 {
    let kf = k as f64;
    let p = kf * b;
    let err = kf.mul_add(b, -p);
    frac(v + (p - p.floor()) + err)
}

pub(crate) fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// A point of either kind of system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum DynPoint {
    Subshift(SubshiftPoint),
    Torus(TorusPoint),
}

impl DynPoint {
    pub fn shift(&self, k: i64) -> DynPoint {
        match self {
            DynPoint::Subshift(p) => DynPoint::Subshift(p.shift(k)),
            DynPoint::Torus(p) => DynPoint::Torus(p.shift(k)),
        }
    }

    pub fn as_subshift(&self) -> Option<&SubshiftPoint> {
        match self {
            DynPoint::Subshift(p) => Some(p),
            DynPoint::Torus(_) => None,
        }
    }

    pub fn as_torus(&self) -> Option<&TorusPoint> {
        match self {
            DynPoint::Torus(p) => Some(p),
            DynPoint::Subshift(_) => None,
        }
    }
}

impl From<SubshiftPoint> for DynPoint {
    fn from(p: SubshiftPoint) -> Self {
        DynPoint::Subshift(p)
    }
}

impl From<TorusPoint> for DynPoint {
    fn from(p: TorusPoint) -> Self {
        DynPoint::Torus(p)
    }
}

/// Parameters of a brute-force scan for limit-set witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessScan {
    /// Subshifts: `T^h x` must agree with `y` on `[-radius, radius]`.
    pub radius: usize,
    pub h_min: i64,
    pub h_max: i64,
    /// Torus: closeness threshold in the max-circle metric.
    pub delta: f64,
}

impl WitnessScan {
    pub fn new(radius: usize, h_min: i64, h_max: i64) -> Self {
        WitnessScan {
            radius,
            h_min,
            h_max,
            delta: 1e-6,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.h_min < 1 || self.h_max < self.h_min {
            return Err(Error::Argument(format!(
                "witness range needs 1 <= h_min <= H, got [{}, {}]",
                self.h_min, self.h_max
            )));
        }
        Ok(())
    }
}

/// Every `h` with `h_min ≤ |h| ≤ H` such that `T^h x` is within the scan's
/// closeness of `y`, in increasing order.
pub fn limit_witness(x: &DynPoint, y: &DynPoint, scan: &WitnessScan) -> Result<Vec<i64>> {
    scan.validate()?;
    match (x, y) {
        (DynPoint::Subshift(x), DynPoint::Subshift(y)) => subshift_witnesses(x, y, scan),
        (DynPoint::Torus(x), DynPoint::Torus(y)) => {
            if x.beta != y.beta {
                return Err(Error::IncompatibleKinds(
                    "torus points rotate by different vectors".into(),
                ));
            }
            let mut out: Vec<i64> = (scan.h_min..=scan.h_max)
                .flat_map(|h| [-h, h])
                .filter(|&h| circle_distance_max(&x.translate(h), &y.v) <= scan.delta)
                .collect();
            out.sort_unstable();
            Ok(out)
        }
        _ => Err(Error::IncompatibleKinds(
            "cannot compare a subshift point with a torus point".into(),
        )),
    }
}

fn subshift_witnesses(x: &SubshiftPoint, y: &SubshiftPoint, scan: &WitnessScan) -> Result<Vec<i64>> {
    if x.alphabet != y.alphabet {
        return Err(Error::IncompatibleKinds("subshift alphabets differ".into()));
    }
    let r = scan.radius as i64;
    let reach = scan.h_max + r;
    let xs = x.window(-reach, reach)?;
    let ys = y.window(-r, r)?;
    let len = ys.len();
    let matches = |h: i64| {
        let start = (h - r + reach) as usize;
        xs[start..start + len] == ys[..]
    };
    let mut out: Vec<i64> = (scan.h_min..=scan.h_max)
        .flat_map(|h| [-h, h])
        .filter(|&h| matches(h))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// The set of distinct windows `x(h - r) … x(h + r)` over `h_min ≤ |h| ≤ H`.
pub fn recurring_words(x: &SubshiftPoint, r: usize, h_min: i64, h_max: i64) -> Result<BTreeSet<Word>> {
    WitnessScan::new(r, h_min, h_max).validate()?;
    let r = r as i64;
    let reach = h_max + r;
    let xs = x.window(-reach, reach)?;
    let len = (2 * r + 1) as usize;
    Ok((h_min..=h_max)
        .flat_map(|h| [-h, h])
        .map(|h| {
            let start = (h - r + reach) as usize;
            Word::from(&xs[start..start + len])
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix() {
        let x = SubshiftPoint::fibonacci();
        assert_eq!(x.eval(0).unwrap(), 0);
        assert_eq!(x.window(1, 5).unwrap().to_string(), "10110");
        assert_eq!(x.eval(-1).unwrap(), 1);
    }

    #[test]
    fn fibonacci_complexity_on_symmetric_window() {
        let x = SubshiftPoint::fibonacci();
        assert_eq!(x.factors(2, 10_000).unwrap().to_strings(), ["01", "10", "11"]);
        for n in 1..=12 {
            assert_eq!(x.complexity(n, 10_000).unwrap(), n + 1);
        }
    }

    #[test]
    fn periodic_eval() {
        let x = SubshiftPoint::periodic(&[0, 1]).unwrap();
        assert_eq!(x.eval(7).unwrap(), 1);
        assert_eq!(x.window(0, 3).unwrap().to_string(), "0101");
    }

    #[test]
    fn explicit_fills() {
        let x = SubshiftPoint::explicit(&[1, 1, 1], 0, 0).unwrap();
        assert_eq!(x.window(-2, 4).unwrap().to_string(), "0011100");
    }

    #[test]
    fn range_error() {
        let x = SubshiftPoint::periodic(&[0, 1]).unwrap();
        assert!(matches!(x.eval(MAX_INDEX + 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            x.shift(10).eval(MAX_INDEX - 5),
            Err(Error::OutOfRange { .. })
        ));
        assert!(x.eval(-MAX_INDEX).is_ok());
    }

    #[test]
    fn concatenation_stream() {
        let x = SubshiftPoint::concatenation(Alphabet::BINARY);
        // 0 1 00 01 10 11 000 ...
        assert_eq!(x.window(0, 13).unwrap().to_string(), "01000110110000");
        assert_eq!(x.eval(-1).unwrap(), x.eval(0).unwrap());
        assert_eq!(x.eval(-6).unwrap(), x.eval(5).unwrap());
    }

    #[test]
    fn torus_shift() {
        let p = TorusPoint::new(vec![0.9], vec![0.2]).unwrap();
        assert!((p.shift(1).v()[0] - 0.1).abs() < 1e-15);
        let back = p.shift(12345).shift(-12345);
        assert!(back.distance(&p) < 1e-14);
    }

    #[test]
    fn witness_kind_mismatch() {
        let x: DynPoint = SubshiftPoint::periodic(&[0, 1]).unwrap().into();
        let y: DynPoint = TorusPoint::new(vec![0.0], vec![0.3]).unwrap().into();
        assert!(matches!(
            limit_witness(&x, &y, &WitnessScan::new(1, 1, 5)),
            Err(Error::IncompatibleKinds(_))
        ));
    }

    #[test]
    fn factor_preconditions() {
        let x = SubshiftPoint::periodic(&[0, 1]).unwrap();
        assert!(x.factors(0, 10).is_err());
        assert!(x.factors(11, 10).is_err());
        let legal = all_words(Alphabet::BINARY, 3);
        assert!(x.coverage(2, 10, &legal).is_err());
    }
}
