use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SystemKind;
use crate::dynsys::{Alphabet, Symbol};
use crate::{Error, Result};

/// A complex value for every word of length `2·radius + 1`, indexed by the
/// word read as a base-`k` numeral.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolTableSpec", into = "SymbolTableSpec")]
pub struct SymbolTable {
    alphabet: Alphabet,
    radius: usize,
    values: Vec<Complex64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolTableSpec {
    alphabet: Alphabet,
    radius: usize,
    values: Vec<Complex64>,
}

impl TryFrom<SymbolTableSpec> for SymbolTable {
    type Error = Error;

    fn try_from(s: SymbolTableSpec) -> Result<Self> {
        SymbolTable::new(s.alphabet, s.radius, s.values)
    }
}

impl From<SymbolTable> for SymbolTableSpec {
    fn from(t: SymbolTable) -> Self {
        SymbolTableSpec {
            alphabet: t.alphabet,
            radius: t.radius,
            values: t.values,
        }
    }
}

impl SymbolTable {
    pub fn new(alphabet: Alphabet, radius: usize, values: Vec<Complex64>) -> Result<Self> {
        let expected = (alphabet.size() as usize).pow(2 * radius as u32 + 1);
        if values.len() != expected {
            return Err(Error::Argument(format!(
                "symbol table of radius {radius} over {} symbols needs {expected} values, got {}",
                alphabet.size(),
                values.len()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("symbol table values must be finite".into()));
        }
        Ok(SymbolTable {
            alphabet,
            radius,
            values,
        })
    }

    /// Tabulates `f` over every word of length `2·radius + 1`.
    pub fn from_fn(alphabet: Alphabet, radius: usize, f: impl Fn(&[Symbol]) -> Complex64) -> Self {
        let k = alphabet.size() as usize;
        let len = 2 * radius + 1;
        let values = (0..k.pow(len as u32))
            .map(|mut idx| {
                let mut w = vec![0; len];
                for slot in w.iter_mut().rev() {
                    *slot = (idx % k) as Symbol;
                    idx /= k;
                }
                f(&w)
            })
            .collect();
        SymbolTable {
            alphabet,
            radius,
            values,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Value for the word `x(i - r) … x(i + r)`.
    pub fn lookup(&self, word: &[Symbol]) -> Complex64 {
        let k = self.alphabet.size() as usize;
        let idx = word.iter().fold(0usize, |acc, &s| acc * k + s as usize);
        self.values[idx]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub freq: Vec<i64>,
    pub coeff: Complex64,
}

/// `v ↦ Σ c·exp(2πi⟨m, v⟩)` on the torus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    pub dim: usize,
    pub terms: Vec<TrigTerm>,
}

impl TrigPolynomial {
    pub fn constant(dim: usize, c: Complex64) -> Self {
        TrigPolynomial {
            dim,
            terms: vec![TrigTerm {
                freq: vec![0; dim],
                coeff: c,
            }],
        }
    }

    /// `λ·cos(2π v₀)` on a one-dimensional torus.
    pub fn cosine(lambda: f64) -> Self {
        let half = Complex64::new(lambda / 2.0, 0.0);
        TrigPolynomial {
            dim: 1,
            terms: vec![
                TrigTerm { freq: vec![1], coeff: half },
                TrigTerm { freq: vec![-1], coeff: half },
            ],
        }
    }

    pub fn eval(&self, v: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let phase: f64 = t.freq.iter().zip(v).map(|(m, x)| *m as f64 * x).sum();
                t.coeff * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
            })
            .sum()
    }

    /// `Σ|c|`.
    pub fn sup_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "body", rename_all = "kebab-case")]
pub enum RuleBody {
    SymbolTable(SymbolTable),
    TrigPolynomial(TrigPolynomial),
}

impl RuleBody {
    pub fn sup_norm(&self) -> f64 {
        match self {
            RuleBody::SymbolTable(t) => t.sup_norm(),
            RuleBody::TrigPolynomial(t) => t.sup_norm(),
        }
    }

    pub(super) fn check_kind(&self, kind: &SystemKind) -> Result<()> {
        match (self, kind) {
            (RuleBody::SymbolTable(t), SystemKind::Subshift { alphabet }) if t.alphabet == *alphabet => Ok(()),
            (RuleBody::TrigPolynomial(t), SystemKind::Torus { dim })
                if t.dim == *dim && t.terms.iter().all(|term| term.freq.len() == *dim) =>
            {
                if t.terms.iter().any(|term| !term.coeff.re.is_finite() || !term.coeff.im.is_finite()) {
                    return Err(Error::Argument("trigonometric coefficients must be finite".into()));
                }
                Ok(())
            }
            _ => Err(Error::Argument(format!(
                "rule body does not fit the system {kind:?}"
            ))),
        }
    }

    /// Pointwise sum of two bodies of the same kind.
    pub fn sum(&self, other: &RuleBody) -> Result<RuleBody> {
        match (self, other) {
            (RuleBody::SymbolTable(a), RuleBody::SymbolTable(b)) if a.alphabet == b.alphabet => {
                let r = a.radius.max(b.radius);
                let pick = |t: &SymbolTable, w: &[Symbol]| {
                    let off = r - t.radius;
                    t.lookup(&w[off..w.len() - off])
                };
                Ok(RuleBody::SymbolTable(SymbolTable::from_fn(a.alphabet, r, |w| {
                    pick(a, w) + pick(b, w)
                })))
            }
            (RuleBody::TrigPolynomial(a), RuleBody::TrigPolynomial(b)) if a.dim == b.dim => {
                let mut terms = a.terms.clone();
                terms.extend(b.terms.iter().cloned());
                Ok(RuleBody::TrigPolynomial(TrigPolynomial { dim: a.dim, terms }))
            }
            _ => Err(Error::IncompatibleKinds("cannot add rule bodies of different kinds".into())),
        }
    }
}

/// The rule for one diagonal `d = i - j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalRule {
    pub diagonal: i64,
    #[serde(flatten)]
    pub body: RuleBody,
}

impl LocalRule {
    /// The constant `c` on diagonal `d`.
    pub fn constant(kind: &SystemKind, d: i64, c: Complex64) -> Self {
        let body = match kind {
            SystemKind::Subshift { alphabet } => {
                RuleBody::SymbolTable(SymbolTable::from_fn(*alphabet, 0, |_| c))
            }
            SystemKind::Torus { dim } => RuleBody::TrigPolynomial(TrigPolynomial::constant(*dim, c)),
        };
        LocalRule { diagonal: d, body }
    }

    /// Radius-0 rule `x ↦ values[x(0)]` on diagonal `d`.
    pub fn symbol_diagonal(alphabet: Alphabet, d: i64, values: &[Complex64]) -> Self {
        LocalRule {
            diagonal: d,
            body: RuleBody::SymbolTable(SymbolTable::from_fn(alphabet, 0, |w| values[w[0] as usize])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_size_checked() {
        assert!(SymbolTable::new(Alphabet::BINARY, 1, vec![Complex64::new(0.0, 0.0); 7]).is_err());
        assert!(SymbolTable::new(Alphabet::BINARY, 1, vec![Complex64::new(0.0, 0.0); 8]).is_ok());
    }

    #[test]
    fn lookup_reads_base_k() {
        let t = SymbolTable::from_fn(Alphabet::BINARY, 1, |w| Complex64::new((w[0] * 4 + w[1] * 2 + w[2]) as f64, 0.0));
        assert_eq!(t.lookup(&[1, 0, 1]).re, 5.0);
        assert_eq!(t.sup_norm(), 7.0);
    }

    #[test]
    fn cosine_values() {
        let p = TrigPolynomial::cosine(2.0);
        assert!((p.eval(&[0.0]).re - 2.0).abs() < 1e-15);
        assert!((p.eval(&[0.5]).re + 2.0).abs() < 1e-15);
        assert!(p.eval(&[0.3]).im.abs() < 1e-15);
        assert_eq!(p.sup_norm(), 2.0);
    }

    #[test]
    fn sums_mix_radii() {
        let a = RuleBody::SymbolTable(SymbolTable::from_fn(Alphabet::BINARY, 0, |w| Complex64::new(w[0] as f64, 0.0)));
        let b = RuleBody::SymbolTable(SymbolTable::from_fn(Alphabet::BINARY, 1, |w| Complex64::new(10.0 * w[2] as f64, 0.0)));
        let RuleBody::SymbolTable(s) = a.sum(&b).unwrap() else { panic!() };
        assert_eq!(s.radius(), 1);
        assert_eq!(s.lookup(&[0, 1, 1]).re, 11.0);
    }
}
