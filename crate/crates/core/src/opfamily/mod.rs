//! Equivariant band-operator families.
//!
//! A family assigns to every point `x` of a dynamical system a bi-infinite
//! band matrix `A(x)`. Entries are produced by one local rule per diagonal,
//! always evaluated at the translate of `x` anchored at the row index:
//!
//! ```text
//! A(x)_{i,j} = rule_{i-j}(T^i x)
//! ```
//!
//! Under this law `A(T^n x)_{i,j} = A(x)_{i+n,j+n}` holds identically, and
//! entries are bounded by the sum of the rule sup-norms.

mod rules;

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use rules::{LocalRule, RuleBody, SymbolTable, TrigPolynomial, TrigTerm};

use crate::dynsys::{self, Alphabet, DynPoint, SubshiftPoint, Symbol, WitnessScan, WordSet};
use crate::spectral::fmt_f64;
use crate::{ComplexMatrix, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum SystemKind {
    Subshift { alphabet: Alphabet },
    Torus { dim: usize },
}

/// Anything that produces matrix entries `A(x)_{i,j}`.
pub trait OperatorFamily {
    fn entry(&self, x: &DynPoint, i: i64, j: i64) -> Result<Complex64>;
}

/// A band-operator family with one local rule per occupied diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilySpec", into = "FamilySpec")]
pub struct BandFamily {
    kind: SystemKind,
    width: usize,
    /// Indexed by `d + width` for `d ∈ [-width, width]`.
    diagonals: Vec<Option<RuleBody>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilySpec {
    kind: SystemKind,
    rules: Vec<LocalRule>,
}

impl TryFrom<FamilySpec> for BandFamily {
    type Error = Error;

    fn try_from(spec: FamilySpec) -> Result<Self> {
        BandFamily::new(spec.kind, spec.rules)
    }
}

impl From<BandFamily> for FamilySpec {
    fn from(f: BandFamily) -> Self {
        FamilySpec {
            kind: f.kind,
            rules: f.rules(),
        }
    }
}

impl BandFamily {
    pub fn new(kind: SystemKind, rules: Vec<LocalRule>) -> Result<Self> {
        let width = rules.iter().map(|r| r.diagonal.unsigned_abs() as usize).max().unwrap_or(0);
        let mut diagonals = vec![None; 2 * width + 1];
        for rule in rules {
            rule.body.check_kind(&kind)?;
            let slot = &mut diagonals[(rule.diagonal + width as i64) as usize];
            if slot.is_some() {
                return Err(Error::Argument(format!("diagonal {} given twice", rule.diagonal)));
            }
            *slot = Some(rule.body);
        }
        Ok(BandFamily { kind, width, diagonals })
    }

    /// The family with no diagonals.
    pub fn zero(kind: SystemKind) -> Self {
        BandFamily {
            kind,
            width: 0,
            diagonals: vec![None],
        }
    }

    /// The bilateral shift `(Uf)(k) = f(k-1)`: ones on diagonal `+1`.
    pub fn shift(kind: SystemKind) -> Self {
        BandFamily::new(kind, vec![LocalRule::constant(&kind, 1, Complex64::new(1.0, 0.0))])
            .expect("constant rule matches its kind")
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn band_width(&self) -> usize {
        self.width
    }

    pub fn rules(&self) -> Vec<LocalRule> {
        self.diagonals
            .iter()
            .enumerate()
            .filter_map(|(k, b)| {
                b.clone().map(|body| LocalRule {
                    diagonal: k as i64 - self.width as i64,
                    body,
                })
            })
            .collect()
    }

    pub fn rule(&self, d: i64) -> Option<&RuleBody> {
        if d.unsigned_abs() as usize > self.width {
            return None;
        }
        self.diagonals[(d + self.width as i64) as usize].as_ref()
    }

    /// Largest symbol radius among the rules (0 for torus families).
    pub fn radius(&self) -> usize {
        self.diagonals
            .iter()
            .flatten()
            .map(|b| match b {
                RuleBody::SymbolTable(t) => t.radius(),
                RuleBody::TrigPolynomial(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// `Σ_d sup|rule_d|`, a bound on every entry.
    pub fn sup_bound(&self) -> f64 {
        self.diagonals.iter().flatten().map(RuleBody::sup_norm).sum()
    }

    /// Sum of two families over the same system.
    pub fn add(&self, other: &BandFamily) -> Result<BandFamily> {
        if self.kind != other.kind {
            return Err(Error::IncompatibleKinds("families live on different systems".into()));
        }
        let mut rules = self.rules();
        for r in other.rules() {
            match rules.iter_mut().find(|s| s.diagonal == r.diagonal) {
                Some(s) => s.body = s.body.sum(&r.body)?,
                None => rules.push(r),
            }
        }
        BandFamily::new(self.kind, rules)
    }

    fn check_point(&self, x: &DynPoint) -> Result<()> {
        match (&self.kind, x) {
            (SystemKind::Subshift { alphabet }, DynPoint::Subshift(p)) if p.alphabet() == *alphabet => Ok(()),
            (SystemKind::Torus { dim }, DynPoint::Torus(p)) if p.dim() == *dim => Ok(()),
            _ => Err(Error::IncompatibleKinds(format!(
                "family over {:?} evaluated at a point of another system",
                self.kind
            ))),
        }
    }

    /// Entries `A(x)_{i,j}` for `i, j ∈ [a, a + m)`.
    fn block(&self, x: &DynPoint, a: i64, m: usize) -> Result<ComplexMatrix> {
        self.check_point(x)?;
        let w = self.width as i64;
        let mut out = ComplexMatrix::zeros(m);
        match x {
            DynPoint::Subshift(p) => {
                let r = self.radius() as i64;
                let syms = p.window(a - r, a + m as i64 - 1 + r)?;
                for row in 0..m {
                    let word = &syms[row..row + 2 * r as usize + 1];
                    for col in row.saturating_sub(w as usize)..(row + w as usize + 1).min(m) {
                        let d = row as i64 - col as i64;
                        if let Some(RuleBody::SymbolTable(t)) = self.rule(d) {
                            let rr = t.radius();
                            let c = r as usize;
                            out[(row, col)] = t.lookup(&word[c - rr..=c + rr]);
                        }
                    }
                }
            }
            DynPoint::Torus(p) => {
                for row in 0..m {
                    let v = p.translate(a + row as i64);
                    for col in row.saturating_sub(w as usize)..(row + w as usize + 1).min(m) {
                        let d = row as i64 - col as i64;
                        if let Some(RuleBody::TrigPolynomial(t)) = self.rule(d) {
                            out[(row, col)] = t.eval(&v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The window of `A(x)` on `[a, a + m)`.
    pub fn window_on(&self, x: &DynPoint, a: i64, m: usize) -> Result<BandWindow> {
        if m == 0 {
            return Err(Error::Argument("window size must be positive".into()));
        }
        Ok(BandWindow {
            offset: a,
            entries: self.block(x, a, m)?,
            mode: BoundaryMode::Zero,
        })
    }

    /// Finite section of `A(x)`: the `(2N+1)`-window on `[-N, N]` in zero
    /// mode, or the `q×q` cyclic wrap for a periodic point whose period
    /// divides `q`.
    pub fn window_matrix(&self, x: &DynPoint, n: usize, mode: BoundaryMode) -> Result<BandWindow> {
        match mode {
            BoundaryMode::Zero => {
                if n == 0 {
                    return Err(Error::Argument("N must be at least 1".into()));
                }
                self.window_on(x, -(n as i64), 2 * n + 1)
            }
            BoundaryMode::Periodic { q } => {
                self.check_point(x)?;
                let period = x.as_subshift().and_then(SubshiftPoint::period).ok_or_else(|| {
                    Error::Mode("periodic boundary mode needs a periodic subshift point".into())
                })?;
                if q == 0 || q % period != 0 {
                    return Err(Error::Mode(format!(
                        "period {period} does not divide q = {q}"
                    )));
                }
                let entries = crate::spectral::bloch_matrix(self, x.as_subshift().unwrap(), q, 0.0)?;
                Ok(BandWindow {
                    offset: 0,
                    entries,
                    mode,
                })
            }
        }
    }

    /// `Σ_d max_{|j| ≤ L} |A(x)_{j+d, j}|`.
    pub fn wiener_norm(&self, x: &DynPoint, l: usize) -> Result<f64> {
        if l == 0 {
            return Err(Error::Argument("L must be at least 1".into()));
        }
        let w = self.width as i64;
        let l = l as i64;
        let block = self.block(x, -l - w, (2 * (l + w) + 1) as usize)?;
        let base = -l - w;
        let mut total = 0.0;
        for d in -w..=w {
            if self.rule(d).is_none() {
                continue;
            }
            let sup = (-l..=l)
                .map(|j| block[((j + d - base) as usize, (j - base) as usize)].norm())
                .fold(0.0, f64::max);
            total += sup;
        }
        Ok(total)
    }
}

impl OperatorFamily for BandFamily {
    fn entry(&self, x: &DynPoint, i: i64, j: i64) -> Result<Complex64> {
        self.check_point(x)?;
        let Some(body) = self.rule(i - j) else {
            return Ok(ZERO);
        };
        match (body, x) {
            (RuleBody::SymbolTable(t), DynPoint::Subshift(p)) => {
                let r = t.radius() as i64;
                let word = p.window(i - r, i + r)?;
                Ok(t.lookup(&word))
            }
            (RuleBody::TrigPolynomial(t), DynPoint::Torus(p)) => Ok(t.eval(&p.translate(i))),
            _ => unreachable!("rule kinds are checked at construction"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum BoundaryMode {
    Zero,
    Periodic { q: usize },
}

impl fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryMode::Zero => write!(f, "zero"),
            BoundaryMode::Periodic { q } => write!(f, "periodic({q})"),
        }
    }
}

/// A finite slice `A(x)_{i,j}`, `i, j ∈ [offset, offset + m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandWindow {
    pub offset: i64,
    pub entries: ComplexMatrix,
    pub mode: BoundaryMode,
}

impl BandWindow {
    pub fn size(&self) -> usize {
        self.entries.size()
    }

    pub fn entries(&self) -> &ComplexMatrix {
        &self.entries
    }

    /// Bitwise key for exact set comparisons.
    pub fn key(&self) -> Vec<(u64, u64)> {
        self.entries
            .as_slice()
            .iter()
            .map(|z| (z.re.to_bits(), z.im.to_bits()))
            .collect()
    }

    /// Nonzero entries as CSV rows `i,j,re,im` in global indices.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "i,j,re,im")?;
        let m = self.size();
        for a in 0..m {
            for b in 0..m {
                let z = self.entries[(a, b)];
                if z != ZERO {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        self.offset + a as i64,
                        self.offset + b as i64,
                        fmt_f64(z.re),
                        fmt_f64(z.im)
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Conjugation `B ↦ U⁻¹BU` on windows: `(U⁻¹BU)_{i,j} = B_{i+1,j+1}`, so
/// the entries are kept and the index range moves down by one.
pub fn ad_u(window: &BandWindow) -> BandWindow {
    BandWindow {
        offset: window.offset - 1,
        ..window.clone()
    }
}

/// Inverse of [`ad_u`].
pub fn ad_u_inverse(window: &BandWindow) -> BandWindow {
    BandWindow {
        offset: window.offset + 1,
        ..window.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub holds: bool,
    pub max_deviation: f64,
    pub samples: usize,
}

/// Compares `A(T^n x)_{i,j}` with `A(x)_{i+n,j+n}` on seeded samples with
/// `|i|, |j| ≤ 1000` near the band. Exact on subshifts; `10⁻¹²` on tori.
pub fn equivariance_check<F: OperatorFamily + ?Sized>(
    family: &F,
    x: &DynPoint,
    n: i64,
    sample_count: usize,
    band: usize,
    seed: u64,
) -> Result<EquivarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifted = x.shift(n);
    let tol = match x {
        DynPoint::Subshift(_) => 0.0,
        DynPoint::Torus(_) => 1e-12,
    };
    let b = band as i64 + 1;
    let mut worst: f64 = 0.0;
    for _ in 0..sample_count {
        let i = rng.gen_range(-1000..=1000);
        let j = (i + rng.gen_range(-b..=b)).clamp(-1000, 1000);
        let lhs = family.entry(&shifted, i, j)?;
        let rhs = family.entry(x, i + n, j + n)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(EquivarianceReport {
        holds: worst <= tol,
        max_deviation: worst,
        samples: sample_count,
    })
}

/// The window of `A(y)` on `[-r_idx, r_idx]` for `y` a point whose symbols
/// on `[-R, R]` are given by `word`, `R = r_idx + radius`.
fn window_from_word(
    family: &BandFamily,
    alphabet: Alphabet,
    word: &[Symbol],
    r_idx: usize,
) -> Result<BandWindow> {
    let big_r = (word.len() / 2) as i64;
    let point = SubshiftPoint::explicit(word, -big_r, 0)?.with_alphabet(alphabet)?;
    family.window_on(&DynPoint::Subshift(point), -(r_idx as i64), 2 * r_idx + 1)
}

fn dedupe_windows(windows: impl IntoIterator<Item = BandWindow>) -> Vec<BandWindow> {
    let mut seen = BTreeSet::new();
    windows
        .into_iter()
        .filter(|w| seen.insert(w.key()))
        .collect()
}

fn subshift_of<'a>(family: &BandFamily, x: &'a DynPoint) -> Result<(&'a SubshiftPoint, Alphabet)> {
    family.check_point(x)?;
    match (family.kind, x) {
        (SystemKind::Subshift { alphabet }, DynPoint::Subshift(p)) => Ok((p, alphabet)),
        _ => Err(Error::IncompatibleKinds(
            "limit-operator windows are enumerated exactly only on subshifts".into(),
        )),
    }
}

/// Distinct windows on `[-r_idx, r_idx]` of `A(T^h x)` over
/// `h_min ≤ |h| ≤ H`. Each window is determined by the word
/// `x(h - R) … x(h + R)`, `R = r_idx + radius`, so enumeration is exact.
pub fn limit_operator_windows(
    family: &BandFamily,
    x: &DynPoint,
    r_idx: usize,
    h_min: i64,
    h_max: i64,
) -> Result<Vec<BandWindow>> {
    let (p, alphabet) = subshift_of(family, x)?;
    let big_r = r_idx + family.radius();
    let words = dynsys::recurring_words(p, big_r, h_min, h_max)?;
    let windows = words
        .iter()
        .map(|w| window_from_word(family, alphabet, w, r_idx))
        .collect::<Result<Vec<_>>>()?;
    Ok(dedupe_windows(windows))
}

/// Windows on `[-r_idx, r_idx]` of `A(y)` for hull points `y` described by
/// their central words of length `2(r_idx + radius) + 1`.
pub fn hull_windows(family: &BandFamily, words: &WordSet, r_idx: usize) -> Result<Vec<BandWindow>> {
    let SystemKind::Subshift { alphabet } = family.kind else {
        return Err(Error::IncompatibleKinds("hull words need a subshift family".into()));
    };
    let expected = 2 * (r_idx + family.radius()) + 1;
    if words.length() != expected {
        return Err(Error::Argument(format!(
            "hull words must have length {expected}, got {}",
            words.length()
        )));
    }
    let windows = words
        .iter()
        .map(|w| window_from_word(family, alphabet, w, r_idx))
        .collect::<Result<Vec<_>>>()?;
    Ok(dedupe_windows(windows))
}

/// Whether the central window of `A(x)` of radius `r_idx` recurs at some
/// shift `h_min ≤ |h| ≤ H`. On tori recurrence means the rotated point
/// returns within `delta` (default `10⁻⁶`).
pub fn self_similar_check(
    family: &BandFamily,
    x: &DynPoint,
    r_idx: usize,
    h_min: i64,
    h_max: i64,
) -> Result<bool> {
    family.check_point(x)?;
    let scan = WitnessScan::new(r_idx + family.radius(), h_min, h_max);
    self_similar_with(x, &scan)
}

pub(crate) fn self_similar_with(x: &DynPoint, scan: &WitnessScan) -> Result<bool> {
    Ok(!dynsys::limit_witness(x, x, scan)?.is_empty())
}
