//! JSON document schemas: matrices, structure-constant algebras, cocycle
//! specs, group-model descriptions, and the report format emitted by the
//! command-line tools. Scalars are JSON numbers or strings; strings accept
//! integers, decimals, and "p/q" fractions so exact-mode inputs stay exact.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::cocycle::CocycleSpec;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::scalar::{Rational, Scalar};
use crate::subspace::Subspace;

/// A scalar as written in a document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ScalarDoc {
    Num(f64),
    Text(String),
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational scalar: {s:?}"));
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, mag) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = mag.split_once('.').unwrap_or((mag, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut num: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let mut den = BigInt::from(1);
    for digit in frac_part.chars() {
        num = num * 10 + (digit as u8 - b'0');
        den *= 10;
    }
    if neg {
        num = -num;
    }
    Ok(Rational::new(num, den))
}

impl ScalarDoc {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            ScalarDoc::Num(x) => Ok(*x),
            ScalarDoc::Text(s) => {
                if s.contains('/') {
                    Ok(parse_rational(s)?.as_f64())
                } else {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("not a numeric scalar: {s:?}")))
                }
            }
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ScalarDoc::Num(x) => Rational::from_float(*x)
                .ok_or_else(|| Error::Parse(format!("non-finite scalar {x}"))),
            ScalarDoc::Text(s) => parse_rational(s),
        }
    }
}

/// Arithmetic mode requested by a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Square matrix document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub dim: usize,
    pub entries: Vec<Vec<ScalarDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl MatrixDoc {
    fn check_shape(&self) -> Result<()> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Parse(format!(
                "matrix entries are not {n} x {n}",
                n = self.dim
            )));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> Result<Matrix<f64>> {
        self.check_shape()?;
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(ScalarDoc::to_f64).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn to_exact(&self) -> Result<Matrix<Rational>> {
        self.check_shape()?;
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(ScalarDoc::to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

fn vectors_to_f64(vecs: &[Vec<ScalarDoc>]) -> Result<Vec<Vec<f64>>> {
    vecs.iter()
        .map(|v| v.iter().map(ScalarDoc::to_f64).collect())
        .collect()
}

/// Structure-constant algebra document, optionally carrying a derivation
/// matrix and a distribution (basis vectors of delta).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub structure: Vec<(usize, usize, usize, ScalarDoc)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<ScalarDoc>>>,
}

impl AlgebraDoc {
    pub fn to_exact(&self) -> Result<LieAlgebra<Rational>> {
        if let Some(l) = &self.labels {
            if l.len() != self.dim {
                return Err(Error::Parse(format!(
                    "{} labels for dimension {}",
                    l.len(),
                    self.dim
                )));
            }
        }
        let entries = self
            .structure
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, c.to_rational()?)))
            .collect::<Result<Vec<_>>>()?;
        match &self.labels {
            Some(l) => LieAlgebra::new(l.clone(), &entries),
            None => LieAlgebra::numbered(self.dim, &entries),
        }
    }

    pub fn to_f64(&self) -> Result<LieAlgebra<f64>> {
        Ok(self.to_exact()?.to_f64())
    }

    pub fn delta_f64(&self) -> Result<Option<Subspace<f64>>> {
        match &self.delta {
            None => Ok(None),
            Some(vecs) => Ok(Some(Subspace::from_spanning(
                self.dim,
                &vectors_to_f64(vecs)?,
                1e-12,
            )?)),
        }
    }
}

/// Linear cocycle specification: the base matrix and the generator vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    #[serde(rename = "A")]
    pub a: MatrixDoc,
    pub b: Vec<ScalarDoc>,
}

impl CocycleDoc {
    pub fn to_spec(&self) -> Result<CocycleSpec> {
        let a = self.a.to_f64()?;
        let b = self.b.iter().map(ScalarDoc::to_f64).collect::<Result<Vec<_>>>()?;
        CocycleSpec::new(a, b)
    }
}

/// Built-in group and algebra models, keyed by the "model" field.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelDoc {
    Heisenberg {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        derivation: Option<MatrixDoc>,
    },
    Abelian {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        derivation: Option<MatrixDoc>,
    },
    Semidirect {
        lambda: ScalarDoc,
        mu: ScalarDoc,
        xi: Vec<ScalarDoc>,
    },
    Torus2 {
        #[serde(rename = "M")]
        m: Vec<Vec<i64>>,
    },
    Sl {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        derivation: Option<MatrixDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<Vec<Vec<ScalarDoc>>>,
    },
}

impl ModelDoc {
    pub fn name(&self) -> &'static str {
        match self {
            ModelDoc::Heisenberg { .. } => "heisenberg",
            ModelDoc::Abelian { .. } => "abelian",
            ModelDoc::Semidirect { .. } => "semidirect",
            ModelDoc::Torus2 { .. } => "torus2",
            ModelDoc::Sl { .. } => "sl",
        }
    }

    pub fn to_semidirect(&self) -> Result<crate::groups::Semidirect> {
        match self {
            ModelDoc::Semidirect { lambda, mu, xi } => {
                if xi.len() != 2 {
                    return Err(Error::Parse("semidirect xi needs two components".into()));
                }
                crate::groups::Semidirect::new(
                    lambda.to_f64()?,
                    mu.to_f64()?,
                    [xi[0].to_f64()?, xi[1].to_f64()?],
                )
            }
            _ => Err(Error::Parse(format!("model {} is not semidirect", self.name()))),
        }
    }

    pub fn to_torus(&self) -> Result<crate::groups::Torus2> {
        match self {
            ModelDoc::Torus2 { m } => {
                if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
                    return Err(Error::Parse("torus matrix must be 2 x 2".into()));
                }
                crate::groups::Torus2::new([[m[0][0], m[0][1]], [m[1][0], m[1][1]]])
            }
            _ => Err(Error::Parse(format!("model {} is not a torus", self.name()))),
        }
    }

    pub fn delta_vectors(&self) -> Option<&Vec<Vec<ScalarDoc>>> {
        match self {
            ModelDoc::Sl { delta, .. } => delta.as_ref(),
            _ => None,
        }
    }

    pub fn derivation_doc(&self) -> Option<&MatrixDoc> {
        match self {
            ModelDoc::Heisenberg { derivation }
            | ModelDoc::Abelian { derivation, .. }
            | ModelDoc::Sl { derivation, .. } => derivation.as_ref(),
            _ => None,
        }
    }
}

pub fn delta_subspace(dim: usize, vecs: &[Vec<ScalarDoc>]) -> Result<Subspace<f64>> {
    Subspace::from_spanning(dim, &vectors_to_f64(vecs)?, 1e-12)
}

/// Any accepted input document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum InputDoc {
    Model(ModelDoc),
    Cocycle(CocycleDoc),
    Algebra(AlgebraDoc),
    Matrix(MatrixDoc),
}

impl InputDoc {
    /// Arithmetic mode carried by the document, if any.
    pub fn mode(&self) -> Option<Mode> {
        match self {
            InputDoc::Matrix(m) => m.mode,
            InputDoc::Algebra(a) => a.mode,
            InputDoc::Cocycle(c) => c.a.mode,
            InputDoc::Model(_) => None,
        }
    }
}

pub fn parse_input(text: &str) -> Result<InputDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad input document: {e}")))
}

// ---------------------------------------------------------------------------
// Report documents
// ---------------------------------------------------------------------------

/// Floats in reports: finite values as numbers, inf/nan spelled out so the
/// JSON stays round-trippable.
mod float_repr {
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => other
                    .parse()
                    .map_err(|_| DeError::custom(format!("bad float {other:?}"))),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckDoc {
    pub name: String,
    #[serde(with = "float_repr")]
    pub residual: f64,
    #[serde(with = "float_repr")]
    pub threshold: f64,
    pub verdict: String,
}

/// The structured result of one command invocation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportDoc {
    pub command: String,
    pub input_digest: String,
    pub checks: Vec<CheckDoc>,
    pub verdict: String,
    pub wall_ms: f64,
}

fn verdict(ok: bool) -> String {
    if ok { "pass".into() } else { "fail".into() }
}

impl ReportDoc {
    pub fn new(command: impl Into<String>, digest: impl Into<String>, report: &Report, wall_ms: f64) -> Self {
        ReportDoc {
            command: command.into(),
            input_digest: digest.into(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckDoc {
                    name: c.name.clone(),
                    residual: c.residual,
                    threshold: c.threshold,
                    verdict: verdict(c.pass),
                })
                .collect(),
            verdict: verdict(report.pass()),
            wall_ms,
        }
    }

    pub fn pass(&self) -> bool {
        self.verdict == "pass"
    }

    /// Line-oriented text rendering, one CHECK line per entry.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "CHECK {} residual={:e} threshold={:e} {}\n",
                c.name,
                c.residual,
                c.threshold,
                c.verdict.to_uppercase()
            ));
        }
        out
    }
}
