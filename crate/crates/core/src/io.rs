//! JSON documents exchanged by the command-line tool.
//!
//! Rationals travel as strings (`"3"`, `"-1/2"`); JSON integers are accepted
//! on input. Polynomial terms are written in graded order, so output for a
//! given input is byte-identical across runs.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::functional::{Functional, MomentFunctional, PointFunctional};
use crate::graded::{FunctionalSpan, GradedBasis};
use crate::interp::{ComparisonReport, InterpolantReport};
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::{self, Rational};

/// A rational in JSON form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(rational::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                self.visit_str(&v.to_string())
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                rational::parse(v)
                    .map(Rat)
                    .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
            }
        }

        d.deserialize_any(RatVisitor)
    }
}

fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn unrats(v: &[Rat]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub alpha: Vec<u32>,
    pub coeff: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub dimension: usize,
    pub terms: Vec<TermDoc>,
}

impl From<&Polynomial> for PolynomialDoc {
    fn from(p: &Polynomial) -> Self {
        PolynomialDoc {
            dimension: p.dim(),
            terms: p
                .terms()
                .map(|(a, c)| TermDoc {
                    alpha: a.exponents().to_vec(),
                    coeff: Rat(c.clone()),
                })
                .collect(),
        }
    }
}

impl PolynomialDoc {
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        Polynomial::from_terms(
            self.dimension,
            self.terms
                .iter()
                .map(|t| (MultiIndex::new(t.alpha.clone()), t.coeff.0.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentDoc {
    pub alpha: Vec<u32>,
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionalDoc {
    Points {
        points: Vec<Vec<Rat>>,
        weights: Vec<Rat>,
    },
    Moments {
        d: usize,
        cap: u32,
        moments: Vec<MomentDoc>,
    },
    Derivative {
        alpha: Vec<u32>,
        at: Vec<Rat>,
        cap: u32,
    },
}

impl From<&Functional> for FunctionalDoc {
    fn from(f: &Functional) -> Self {
        match f {
            Functional::Points(pf) => FunctionalDoc::Points {
                points: pf.points().iter().map(|x| rats(x)).collect(),
                weights: rats(pf.weights()),
            },
            Functional::Moments(mf) => FunctionalDoc::Moments {
                d: mf.dim(),
                cap: mf.cap(),
                moments: mf
                    .moments()
                    .map(|(a, v)| MomentDoc {
                        alpha: a.exponents().to_vec(),
                        value: Rat(v.clone()),
                    })
                    .collect(),
            },
        }
    }
}

impl FunctionalDoc {
    pub fn to_functional(&self, dim: usize) -> Result<Functional> {
        let f: Functional = match self {
            FunctionalDoc::Points { points, weights } => {
                PointFunctional::new(dim, points.iter().map(|x| unrats(x)).collect(), unrats(weights))?.into()
            }
            FunctionalDoc::Moments { d, cap, moments } => MomentFunctional::new(
                *d,
                *cap,
                moments
                    .iter()
                    .map(|m| (MultiIndex::new(m.alpha.clone()), m.value.0.clone())),
            )?
            .into(),
            FunctionalDoc::Derivative { alpha, at, cap } => {
                MomentFunctional::from_derivative(&MultiIndex::new(alpha.clone()), &unrats(at), *cap)?.into()
            }
        };
        crate::error::check_dim(dim, f.dim())?;
        Ok(f)
    }
}

/// Input to `basis`, `interp` and `compare`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Vec<FunctionalDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<PolynomialDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

/// Interpolation data: values of the span's functionals or a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemData {
    Values(Vec<Rational>),
    Target(Polynomial),
}

impl ProblemDoc {
    pub fn span(&self) -> Result<FunctionalSpan> {
        let d = self.dimension;
        match (&self.points, &self.functionals) {
            (Some(points), None) => {
                let pts: Vec<Vec<Rational>> = points.iter().map(|x| unrats(x)).collect();
                for x in &pts {
                    crate::error::check_dim(d, x.len())?;
                }
                FunctionalSpan::from_points(pts)
            }
            (None, Some(fs)) => FunctionalSpan::new(
                fs.iter()
                    .map(|f| f.to_functional(d))
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => Err(Error::InvalidInput(
                "problem needs exactly one of \"points\" and \"functionals\"".into(),
            )),
        }
    }

    /// Raw input points, when the problem is given by points.
    pub fn input_points(&self) -> Option<Vec<Vec<Rational>>> {
        self.points
            .as_ref()
            .map(|pts| pts.iter().map(|x| unrats(x)).collect())
    }

    pub fn data(&self) -> Result<ProblemData> {
        match (&self.values, &self.target) {
            (Some(v), None) => Ok(ProblemData::Values(unrats(v))),
            (None, Some(t)) => {
                let p = t.to_polynomial()?;
                crate::error::check_dim(self.dimension, p.dim())?;
                Ok(ProblemData::Target(p))
            }
            _ => Err(Error::InvalidInput(
                "interpolation needs exactly one of \"values\" and \"target\"".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub dimension: usize,
    pub n: usize,
    pub cap: u32,
    pub kappas: Vec<u32>,
    pub pivots: Vec<Vec<u32>>,
    /// Row `i`: coefficients of `λ_i` over the input functionals.
    pub transform: Vec<Vec<Rat>>,
    pub lambdas: Vec<FunctionalDoc>,
}

impl From<&GradedBasis> for BasisDoc {
    fn from(b: &GradedBasis) -> Self {
        BasisDoc {
            dimension: b.dim(),
            n: b.len(),
            cap: b.cap(),
            kappas: b.kappas().to_vec(),
            pivots: b.pivots().iter().map(|p| p.exponents().to_vec()).collect(),
            transform: b.transform().to_rows().iter().map(|r| rats(r)).collect(),
            lambdas: b.lambdas().iter().map(FunctionalDoc::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub method: String,
    pub kappas: Vec<u32>,
    pub pivots: Vec<Vec<u32>>,
    pub coefficients: Vec<Rat>,
    pub residuals: Vec<Rat>,
    pub interpolant: PolynomialDoc,
}

impl From<&InterpolantReport> for ReportDoc {
    fn from(r: &InterpolantReport) -> Self {
        ReportDoc {
            method: r.method.to_string(),
            kappas: r.kappas.clone(),
            pivots: r.pivots.iter().map(|p| p.exponents().to_vec()).collect(),
            coefficients: rats(&r.coefficients),
            residuals: rats(&r.residuals),
            interpolant: PolynomialDoc::from(&r.interpolant),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BothDoc {
    pub schaback: ReportDoc,
    pub least: ReportDoc,
    /// Schaback interpolant minus least interpolant.
    pub difference: PolynomialDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonDoc {
    pub kappas: Vec<u32>,
    pub ranges_equal: bool,
    pub interpolants_equal: bool,
    pub probe_degree: u32,
    pub mismatched_probes: Vec<Vec<u32>>,
    pub norm_sq_defects: Vec<Rat>,
    pub schaback_range: Vec<PolynomialDoc>,
    pub least_range: Vec<PolynomialDoc>,
}

impl From<&ComparisonReport> for ComparisonDoc {
    fn from(r: &ComparisonReport) -> Self {
        ComparisonDoc {
            kappas: r.kappas.clone(),
            ranges_equal: r.ranges_equal,
            interpolants_equal: r.interpolants_equal(),
            probe_degree: r.probe_degree,
            mismatched_probes: r
                .mismatched_probes
                .iter()
                .map(|a| a.exponents().to_vec())
                .collect(),
            norm_sq_defects: rats(&r.norm_sq_defects),
            schaback_range: r.schaback_range.iter().map(PolynomialDoc::from).collect(),
            least_range: r.least_range.iter().map(PolynomialDoc::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTermDoc {
    pub a: u32,
    pub beta: Vec<u32>,
    pub c: u32,
    pub coeff: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub k: u32,
    pub d: usize,
    pub terms: Vec<ExpansionTermDoc>,
    /// Polynomial in `(x1..xd, y1..yd)`.
    pub polynomial: PolynomialDoc,
    pub text: String,
    pub oracle_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalDoc {
    pub values: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<Vec<String>>,
}

/// Anything `eval` can read an interpolant from.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum InterpolantFile {
    Both(BothDoc),
    Report(ReportDoc),
    Polynomial(PolynomialDoc),
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn rationals_accept_ints_and_strings() {
        let v: Vec<Rat> = from_json(r#"[3, "-1/2", "4/6"]"#).unwrap();
        assert_eq!(unrats(&v), vec![int(3), ratio(-1, 2), ratio(2, 3)]);
        assert!(from_json::<Rat>(r#""1/0""#).is_err());
        assert!(from_json::<Rat>("1.5").is_err());
        assert_eq!(to_json(&Rat(ratio(-2, 4))), "\"-1/2\"\n");
    }

    #[test]
    fn functional_docs() {
        let doc: FunctionalDoc =
            from_json(r#"{"type": "derivative", "alpha": [1, 0], "at": [1, "1"], "cap": 2}"#).unwrap();
        let f = doc.to_functional(2).unwrap();
        assert_eq!(f.moment(&MultiIndex::new(vec![2, 0])).unwrap(), int(2));
        assert!(doc.to_functional(3).is_err());

        let doc: FunctionalDoc =
            from_json(r#"{"type": "points", "points": [[0], [1]], "weights": [1, -1]}"#).unwrap();
        let f = doc.to_functional(1).unwrap();
        assert_eq!(FunctionalDoc::from(&f), doc);

        let doc: FunctionalDoc = from_json(
            r#"{"type": "moments", "d": 1, "cap": 2, "moments": [{"alpha": [1], "value": "1/2"}]}"#,
        )
        .unwrap();
        assert_eq!(doc.to_functional(1).unwrap().cap(), Some(2));
        assert!(from_json::<FunctionalDoc>(r#"{"type": "kernel"}"#).is_err());
    }

    #[test]
    fn problem_requires_one_source_and_one_data() {
        let p: ProblemDoc = from_json(r#"{"dimension": 1, "points": [[0], [1]], "values": [0, 1]}"#).unwrap();
        assert_eq!(p.span().unwrap().len(), 2);
        assert_eq!(p.data().unwrap(), ProblemData::Values(vec![int(0), int(1)]));

        let p: ProblemDoc = from_json(r#"{"dimension": 1, "points": [[0]]}"#).unwrap();
        assert!(p.data().is_err());
        let p: ProblemDoc = from_json(r#"{"dimension": 2, "points": [[0]]}"#).unwrap();
        assert!(p.span().is_err());
        assert!(from_json::<ProblemDoc>(r#"{"dimension": 1, "pts": []}"#).is_err());
    }
}
