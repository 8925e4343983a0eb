//! Built-in models.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynsys::{Alphabet, DynPoint, Phase, SubshiftPoint, SubshiftRule, TorusPoint, Word};
use crate::opfamily::{BandFamily, LocalRule, RuleBody, SystemKind, TrigPolynomial};
use crate::{Error, Result};

/// An irrational parameter in `(0, 1)`, given symbolically so that the
/// 128-bit enclosure can be built exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IrrationalSpec {
    /// `golden`, `sqrt2m1` or `pim3`.
    Named(String),
    /// `[cf[0]; cf[1], …, repeat, repeat, …]`.
    ContinuedFraction {
        cf: Vec<u64>,
        #[serde(default)]
        repeat: Vec<u64>,
    },
    /// Decimal input; always rejected by validation.
    Decimal(f64),
}

impl IrrationalSpec {
    pub fn named(name: &str) -> Self {
        IrrationalSpec::Named(name.to_string())
    }

    pub fn phase(&self) -> Result<Phase> {
        match self {
            IrrationalSpec::Named(n) => match n.as_str() {
                "golden" => Ok(Phase::golden()),
                "sqrt2m1" => Ok(Phase::sqrt2_minus_1()),
                "pim3" => Ok(Phase::pi_minus_3()),
                other => Err(Error::config(format!(
                    "unknown irrational constant {other:?} (expected golden, sqrt2m1 or pim3)"
                ))),
            },
            IrrationalSpec::ContinuedFraction { cf, repeat } => {
                if repeat.is_empty() {
                    return Err(Error::config(
                        "α must be irrational: a finite continued fraction is rational; add a repeating tail",
                    ));
                }
                Phase::from_continued_fraction(cf, repeat).map_err(|e| Error::config(e.to_string()))
            }
            IrrationalSpec::Decimal(v) => Err(Error::config(format!(
                "α must be irrational: decimal {v} not accepted; use a named constant or continued-fraction coefficients"
            ))),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn golden() -> IrrationalSpec {
    IrrationalSpec::named("golden")
}

/// Catalog entry, as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    /// `U` over a one-point system.
    Shift {},
    /// `U + λV` (or `U + U⁻¹ + λV` when self-adjoint) over a Sturmian
    /// coding.
    Sturmian {
        #[serde(default = "golden")]
        alpha: IrrationalSpec,
        #[serde(default = "one")]
        lambda: f64,
        #[serde(default)]
        selfadjoint: bool,
    },
    /// `U + U⁻¹ + λ cos(2π(v + nβ))`.
    AlmostMathieu {
        #[serde(default = "golden")]
        beta: IrrationalSpec,
        #[serde(default = "one")]
        lambda: f64,
    },
    /// `U + λV` over the concatenation of all binary words.
    FullShiftConcatenation {
        #[serde(default = "one")]
        lambda: f64,
    },
    /// The constant family `A(x) = U` over two fixed points.
    #[serde(rename = "example-7-1")]
    Example71 {},
    /// Diagonal families over the union of two periodic subshifts on
    /// disjoint alphabets.
    #[serde(rename = "example-7-2")]
    Example72 {},
    /// `V` over the sequence with a single 1 at index 0.
    DeltaPoint {},
}

impl ModelSpec {
    /// Short names accepted on the command line.
    pub fn from_name(name: &str, lambda: Option<f64>) -> Result<Self> {
        let lambda_or = |d: f64| lambda.unwrap_or(d);
        Ok(match name {
            "shift" => ModelSpec::Shift {},
            "sturmian" | "sturmian-golden" | "fibonacci" => ModelSpec::Sturmian {
                alpha: golden(),
                lambda: lambda_or(1.0),
                selfadjoint: false,
            },
            "sturmian-sqrt2m1" => ModelSpec::Sturmian {
                alpha: IrrationalSpec::named("sqrt2m1"),
                lambda: lambda_or(1.0),
                selfadjoint: false,
            },
            "sturmian-pim3" => ModelSpec::Sturmian {
                alpha: IrrationalSpec::named("pim3"),
                lambda: lambda_or(1.0),
                selfadjoint: false,
            },
            "sturmian-golden-selfadjoint" | "fibonacci-hamiltonian" => ModelSpec::Sturmian {
                alpha: golden(),
                lambda: lambda_or(1.0),
                selfadjoint: true,
            },
            "almost-mathieu" => ModelSpec::AlmostMathieu {
                beta: golden(),
                lambda: lambda_or(2.0),
            },
            "full-shift" | "full-shift-concatenation" => ModelSpec::FullShiftConcatenation {
                lambda: lambda_or(1.0),
            },
            "example-7-1" => ModelSpec::Example71 {},
            "example-7-2" => ModelSpec::Example72 {},
            "delta-point" => ModelSpec::DeltaPoint {},
            other => return Err(Error::config(format!("unknown model id {other:?}"))),
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            ModelSpec::Shift {} => "shift",
            ModelSpec::Sturmian { .. } => "sturmian",
            ModelSpec::AlmostMathieu { .. } => "almost-mathieu",
            ModelSpec::FullShiftConcatenation { .. } => "full-shift-concatenation",
            ModelSpec::Example71 {} => "example-7-1",
            ModelSpec::Example72 {} => "example-7-2",
            ModelSpec::DeltaPoint {} => "delta-point",
        }
    }

    /// Every problem with the parameters, without building anything.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let lambda_ok = |l: &f64, out: &mut Vec<String>| {
            if !l.is_finite() {
                out.push("lambda must be finite".to_string());
            }
        };
        match self {
            ModelSpec::Sturmian { alpha, lambda, .. } => {
                if let Err(Error::Config(v)) = alpha.phase() {
                    out.extend(v);
                }
                lambda_ok(lambda, &mut out);
            }
            ModelSpec::AlmostMathieu { beta, lambda } => {
                if let Err(Error::Config(v)) = beta.phase() {
                    out.extend(v.into_iter().map(|m| m.replace('α', "β")));
                }
                lambda_ok(lambda, &mut out);
            }
            ModelSpec::FullShiftConcatenation { lambda } => lambda_ok(lambda, &mut out),
            _ => {}
        }
        out
    }

    pub fn build(&self) -> Result<Model> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::Config(v));
        }
        let c = |re: f64| Complex64::new(re, 0.0);
        let binary = SystemKind::Subshift {
            alphabet: Alphabet::BINARY,
        };
        let potential = |lambda: f64| {
            BandFamily::new(
                binary,
                vec![LocalRule::symbol_diagonal(Alphabet::BINARY, 0, &[c(0.0), c(lambda)])],
            )
        };
        Ok(match self {
            ModelSpec::Shift {} => {
                let alphabet = Alphabet::new(1)?;
                let kind = SystemKind::Subshift { alphabet };
                let base = SubshiftPoint::new(
                    alphabet,
                    SubshiftRule::Periodic {
                        word: Word::new(vec![0]),
                    },
                )?;
                Model {
                    spec: self.clone(),
                    family: BandFamily::shift(kind),
                    base: base.into(),
                    components: None,
                    minimal: true,
                }
            }
            ModelSpec::Sturmian {
                alpha,
                lambda,
                selfadjoint,
            } => {
                let mut family = BandFamily::shift(binary).add(&potential(*lambda)?)?;
                if *selfadjoint {
                    family = family.add(&BandFamily::new(
                        binary,
                        vec![LocalRule::constant(&binary, -1, c(1.0))],
                    )?)?;
                }
                Model {
                    spec: self.clone(),
                    family,
                    base: SubshiftPoint::sturmian(alpha.phase()?, Phase::ZERO)?.into(),
                    components: None,
                    minimal: true,
                }
            }
            ModelSpec::AlmostMathieu { beta, lambda } => {
                let kind = SystemKind::Torus { dim: 1 };
                let family = BandFamily::new(
                    kind,
                    vec![
                        LocalRule::constant(&kind, 1, c(1.0)),
                        LocalRule::constant(&kind, -1, c(1.0)),
                        LocalRule {
                            diagonal: 0,
                            body: RuleBody::TrigPolynomial(TrigPolynomial::cosine(*lambda)),
                        },
                    ],
                )?;
                Model {
                    spec: self.clone(),
                    family,
                    base: TorusPoint::new(vec![0.0], vec![beta.phase()?.to_f64()])?.into(),
                    components: None,
                    minimal: true,
                }
            }
            ModelSpec::FullShiftConcatenation { lambda } => Model {
                spec: self.clone(),
                family: BandFamily::shift(binary).add(&potential(*lambda)?)?,
                base: SubshiftPoint::concatenation(Alphabet::BINARY).into(),
                components: None,
                minimal: false,
            },
            ModelSpec::Example71 {} => {
                let p0 = SubshiftPoint::periodic(&[0])?;
                let p1 = SubshiftPoint::periodic(&[1])?;
                Model {
                    spec: self.clone(),
                    family: BandFamily::shift(binary),
                    base: p0.clone().into(),
                    components: Some(vec![vec![p0.into()], vec![p1.into()]]),
                    minimal: false,
                }
            }
            ModelSpec::Example72 {} => {
                // X₁ over {1, 2}, X₂ over {3, 4}; Φ₁, Φ₂ map symbols to
                // disjoint value ranges
                let alphabet = Alphabet::new(5)?;
                let kind = SystemKind::Subshift { alphabet };
                let first = SubshiftPoint::periodic(&[1, 2])?.with_alphabet(alphabet)?;
                let second = SubshiftPoint::periodic(&[3, 3, 4])?.with_alphabet(alphabet)?;
                let values: Vec<Complex64> = (0..5).map(|s| c(s as f64)).collect();
                let family = BandFamily::new(kind, vec![LocalRule::symbol_diagonal(alphabet, 0, &values)])?;
                let comp1: Vec<DynPoint> = (0..2).map(|k| first.shift(k).into()).collect();
                let comp2: Vec<DynPoint> = (0..3).map(|k| second.shift(k).into()).collect();
                Model {
                    spec: self.clone(),
                    family,
                    base: first.into(),
                    components: Some(vec![comp1, comp2]),
                    minimal: false,
                }
            }
            ModelSpec::DeltaPoint {} => Model {
                spec: self.clone(),
                family: potential(1.0)?,
                base: SubshiftPoint::explicit(&[1], 0, 0)?.into(),
                components: None,
                minimal: false,
            },
        })
    }
}

/// How to pick a point of the model's system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SampleSpec {
    /// `T^k` of the base point.
    Shift { k: i64 },
    /// A different phase: `ω` for Sturmian codings, `v` for tori. The value
    /// is taken as an exact binary fraction.
    Offset { value: f64 },
    /// The `index`-th point of the model's listed components.
    Listed { index: usize },
}

/// A catalog model with its family and base point.
#[derive(Clone, Debug)]
pub struct Model {
    pub spec: ModelSpec,
    pub family: BandFamily,
    pub base: DynPoint,
    /// Orbit classes for the models built from several periodic orbits.
    pub components: Option<Vec<Vec<DynPoint>>>,
    pub minimal: bool,
}

impl Model {
    pub fn point(&self, sample: &SampleSpec) -> Result<DynPoint> {
        match sample {
            SampleSpec::Shift { k } => Ok(self.base.shift(*k)),
            SampleSpec::Offset { value } => match &self.base {
                DynPoint::Subshift(p) => match p.rule() {
                    SubshiftRule::Sturmian { alpha, .. } => {
                        let omega = Phase::from_f64(*value).map_err(|e| Error::config(e.to_string()))?;
                        Ok(SubshiftPoint::sturmian(*alpha, omega)?.into())
                    }
                    _ => Err(Error::config(format!(
                        "offset samples need a Sturmian or torus model, not {}",
                        self.spec.id()
                    ))),
                },
                DynPoint::Torus(t) => Ok(TorusPoint::new(vec![*value; t.dim()], t.beta().to_vec())?.into()),
            },
            SampleSpec::Listed { index } => self
                .listed_points()
                .get(*index)
                .cloned()
                .ok_or_else(|| Error::config(format!("model {} has no listed point {index}", self.spec.id()))),
        }
    }

    pub fn listed_points(&self) -> Vec<DynPoint> {
        match &self.components {
            Some(c) => c.iter().flatten().cloned().collect(),
            None => vec![self.base.clone()],
        }
    }

    /// Default hull samples: the base point, a shift of it, and phases
    /// from the van der Corput sequence.
    pub fn default_samples(&self) -> Vec<SampleSpec> {
        match (&self.spec, &self.components) {
            (_, Some(c)) => (0..c.iter().map(Vec::len).sum())
                .map(|index| SampleSpec::Listed { index })
                .collect(),
            (ModelSpec::Sturmian { .. } | ModelSpec::AlmostMathieu { .. }, None) => vec![
                SampleSpec::Shift { k: 0 },
                SampleSpec::Offset { value: 0.5 },
                SampleSpec::Offset { value: 0.25 },
                SampleSpec::Shift { k: 7 },
            ],
            _ => vec![SampleSpec::Shift { k: 0 }, SampleSpec::Shift { k: 1 }],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_alpha_rejected() {
        let spec = ModelSpec::Sturmian {
            alpha: IrrationalSpec::Decimal(0.5),
            lambda: 1.0,
            selfadjoint: false,
        };
        let v = spec.violations();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("must be irrational"));
    }

    #[test]
    fn every_model_builds() {
        for name in [
            "shift",
            "sturmian-golden",
            "sturmian-sqrt2m1",
            "sturmian-pim3",
            "sturmian-golden-selfadjoint",
            "almost-mathieu",
            "full-shift",
            "example-7-1",
            "example-7-2",
            "delta-point",
        ] {
            let m = ModelSpec::from_name(name, None).unwrap().build().unwrap();
            for s in m.default_samples() {
                m.point(&s).unwrap();
            }
        }
        assert!(ModelSpec::from_name("nope", None).is_err());
    }

    #[test]
    fn spec_json_shapes() {
        let s: ModelSpec = serde_json::from_str(r#"{"id":"sturmian","alpha":{"cf":[0],"repeat":[2]},"lambda":0.5}"#).unwrap();
        assert!(s.violations().is_empty());
        let s: ModelSpec = serde_json::from_str(r#"{"id":"example-7-2"}"#).unwrap();
        assert_eq!(s, ModelSpec::Example72 {});
        assert!(serde_json::from_str::<ModelSpec>(r#"{"id":"shift","extra":1}"#).is_err());
    }
}
