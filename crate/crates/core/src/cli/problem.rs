//! Problem files: a TOML description of a chart, named objects, sample points
//! and the checks to run.

use serde::{Deserialize, Serialize};

use crate::arith::{parse_poly, parse_rational, Chart, Poly, Rational};
use crate::calculus::{FormField, MultiField};
use crate::normal_form::BundleChart;
use crate::poisson::ComplexBivector;

use super::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<Number>>,
    pub chart: ChartSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submanifold: Option<SubmanifoldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormSpec>,
    #[serde(default, rename = "bivector", skip_serializing_if = "Vec::is_empty")]
    pub bivectors: Vec<BivectorSpec>,
    #[serde(default, rename = "form", skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<FormSpec>,
    #[serde(default, rename = "vector", skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<VectorSpec>,
    #[serde(default, rename = "pipeline", skip_serializing_if = "Vec::is_empty")]
    pub pipelines: Vec<PipelineSpec>,
}

/// A rational written either as an integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Number::Int(k) => Ok(Rational::from_integer((*k).into())),
            Number::Text(s) => parse_rational(s).map_err(|e| CliError::Invalid(format!("point coordinate `{s}`: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmanifoldSpec {
    /// Variables that vanish on the submanifold; they must be the trailing
    /// variables of the chart.
    pub zero: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksSpec {
    pub ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormSpec {
    pub bivector: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi2: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moser: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
    #[serde(default = "yes", skip_serializing_if = "is_yes")]
    pub require_mixed: bool,
}

fn yes() -> bool {
    true
}

fn is_yes(b: &bool) -> bool {
    *b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorSpec {
    pub name: String,
    #[serde(default)]
    pub terms: Vec<BivectorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTerm {
    pub idx: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub name: String,
    pub degree: usize,
    #[serde(default)]
    pub terms: Vec<FormTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorTerm {
    pub i: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSpec {
    pub name: String,
    #[serde(default)]
    pub terms: Vec<VectorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSpec {
    pub name: String,
    pub ops: Vec<String>,
}

impl ProblemFile {
    pub fn parse(src: &str) -> Result<Self, CliError> {
        toml::from_str(src).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem files always serialize")
    }
}

/// A problem file with every name and polynomial resolved.
#[derive(Clone, Debug)]
pub struct Problem {
    pub chart: Chart,
    pub bundle: Option<BundleChart>,
    pub bivectors: Vec<(String, ComplexBivector)>,
    pub forms: Vec<(String, FormField)>,
    pub vectors: Vec<(String, MultiField)>,
    pub points: Vec<Vec<Rational>>,
    pub checks: Option<Vec<String>>,
    pub normal_form: Option<NormalFormSpec>,
    pub pipelines: Vec<PipelineSpec>,
}

fn coeff(chart: &Chart, src: &str, what: &str) -> Result<Poly, CliError> {
    parse_poly(src, chart).map_err(|e| CliError::Invalid(format!("{what}: coefficient `{src}`: {e}")))
}

fn index(chart: &Chart, k: usize, what: &str) -> Result<usize, CliError> {
    if k == 0 || k > chart.dim() {
        return Err(CliError::Invalid(format!("{what}: index {k} outside 1..={}", chart.dim())));
    }
    Ok(k - 1)
}

impl Problem {
    pub fn from_file(file: &ProblemFile) -> Result<Self, CliError> {
        let chart = Chart::new(file.chart.vars.iter().map(String::as_str)).map_err(|e| CliError::Invalid(e.to_string()))?;
        let mut names = std::collections::HashSet::new();
        let mut fresh = |name: &str| {
            if names.insert(name.to_string()) {
                Ok(())
            } else {
                Err(CliError::Invalid(format!("name `{name}` is defined twice")))
            }
        };
        let mut bivectors = Vec::new();
        for b in &file.bivectors {
            fresh(&b.name)?;
            let what = format!("bivector `{}`", b.name);
            let mut comps = Vec::new();
            for t in &b.terms {
                let (i, j) = (index(&chart, t.i, &what)?, index(&chart, t.j, &what)?);
                if i >= j {
                    return Err(CliError::Invalid(format!("{what}: term indices must satisfy i < j, found ({}, {})", t.i, t.j)));
                }
                comps.push((vec![i, j], coeff(&chart, &t.coeff, &what)?));
            }
            let body = MultiField::from_comps(&chart, 2, comps).map_err(|e| CliError::Invalid(format!("{what}: {e}")))?;
            bivectors.push((b.name.clone(), ComplexBivector::new(body).map_err(|e| CliError::Invalid(e.to_string()))?));
        }
        let mut forms = Vec::new();
        for f in &file.forms {
            fresh(&f.name)?;
            let what = format!("form `{}`", f.name);
            let mut comps = Vec::new();
            for t in &f.terms {
                if t.idx.len() != f.degree {
                    return Err(CliError::Invalid(format!("{what}: term {:?} does not have degree {}", t.idx, f.degree)));
                }
                let idx = t.idx.iter().map(|&k| index(&chart, k, &what)).collect::<Result<Vec<_>, _>>()?;
                comps.push((idx, coeff(&chart, &t.coeff, &what)?));
            }
            let form = FormField::from_comps(&chart, f.degree, comps).map_err(|e| CliError::Invalid(format!("{what}: {e}")))?;
            forms.push((f.name.clone(), form));
        }
        let mut vectors = Vec::new();
        for v in &file.vectors {
            fresh(&v.name)?;
            let what = format!("vector `{}`", v.name);
            let mut comps = Vec::new();
            for t in &v.terms {
                comps.push((vec![index(&chart, t.i, &what)?], coeff(&chart, &t.coeff, &what)?));
            }
            let field = MultiField::from_comps(&chart, 1, comps).map_err(|e| CliError::Invalid(format!("{what}: {e}")))?;
            vectors.push((v.name.clone(), field));
        }
        let points = file
            .points
            .iter()
            .map(|p| {
                if p.len() != chart.dim() {
                    return Err(CliError::Invalid(format!("point has {} coordinates, chart has {}", p.len(), chart.dim())));
                }
                p.iter().map(Number::to_rational).collect()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bundle = match &file.submanifold {
            None => None,
            Some(s) => {
                let f = s.zero.len();
                let tail = &chart.vars()[chart.dim().saturating_sub(f)..];
                if f > chart.dim() || tail.iter().zip(&s.zero).any(|(a, b)| a != b) {
                    return Err(CliError::Invalid(format!(
                        "submanifold variables {:?} must be the trailing chart variables",
                        s.zero
                    )));
                }
                Some(BundleChart::split(&chart, chart.dim() - f).map_err(|e| CliError::Invalid(e.to_string()))?)
            }
        };
        let mut pipeline_names = std::collections::HashSet::new();
        for p in &file.pipelines {
            if !pipeline_names.insert(&p.name) {
                return Err(CliError::Invalid(format!("pipeline `{}` is defined twice", p.name)));
            }
        }
        Ok(Problem {
            chart,
            bundle,
            bivectors,
            forms,
            vectors,
            points,
            checks: file.checks.as_ref().map(|c| c.ids.clone()),
            normal_form: file.normal_form.clone(),
            pipelines: file.pipelines.clone(),
        })
    }

    pub fn bivector(&self, name: &str) -> Result<&ComplexBivector, CliError> {
        lookup(&self.bivectors, name, "bivector")
    }

    pub fn form(&self, name: &str) -> Result<&FormField, CliError> {
        lookup(&self.forms, name, "form")
    }

    pub fn vector(&self, name: &str) -> Result<&MultiField, CliError> {
        lookup(&self.vectors, name, "vector")
    }
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str, kind: &str) -> Result<&'a T, CliError> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, t)| t)
        .ok_or_else(|| CliError::UnknownName(format!("{kind} `{name}`")))
}
