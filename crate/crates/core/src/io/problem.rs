//! Problem documents: JSON in, validated domain values out, and back.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::IoError;
use crate::exact::{format_rational, parse_rational, Polynomial, Rational, Var};
use crate::quiver::{
    dimension_vector_from_hilbert, DimensionVector, FieldKind, LabelledQuiver, Matrix, Representation,
};
use crate::segment::{validate_segment, StabilitySegment};
use crate::sheaf::{SheafClass, StabilityParameter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub j0: usize,
    pub d: usize,
    pub volumes: Vec<String>,
    pub target: SheafDoc,
    #[serde(default)]
    pub candidates: Vec<SheafDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment: Option<SegmentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDoc {
    pub name: String,
    pub rank: String,
    /// One ascending coefficient array per polarization.
    pub hilbert: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twisted_hilbert: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDoc {
    pub from: Vec<String>,
    pub to: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub hom_dims: Vec<Vec<u64>>,
    pub n0: i64,
    pub m0: i64,
    pub sigma: Vec<String>,
    /// `"Q"` or a prime such as `"2"`.
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_prime: Option<usize>,
    #[serde(default)]
    pub representations: Vec<RepresentationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub name: String,
    /// `maps[i][j]` is the matrix of `φ_ij`, given as a list of rows.
    pub maps: Vec<Vec<Vec<Vec<String>>>>,
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub j0: usize,
    pub d: usize,
    pub volumes: Vec<Rational>,
    pub target: SheafClass,
    pub candidates: Vec<SheafClass>,
    pub mode: Mode,
}

impl Problem {
    pub fn has_twists(&self) -> bool {
        self.target.twisted_hilbert().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Sigma(StabilityParameter),
    Segment(StabilitySegment),
    Quiver(QuiverProblem),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Sigma(_) => "sigma",
            Mode::Segment(_) => "segment",
            Mode::Quiver(_) => "quiver",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverProblem {
    pub quiver: LabelledQuiver,
    pub n0: i64,
    pub m0: i64,
    pub sigma: StabilityParameter,
    pub field: FieldKind,
    pub dims: DimensionVector,
    /// `dims` was given explicitly rather than computed from the target.
    pub dims_given: bool,
    pub j_prime: Option<usize>,
    pub representations: Vec<(String, Representation)>,
}

fn value_error(path: impl Into<String>, message: impl std::fmt::Display) -> IoError {
    IoError::Value { path: path.into(), message: message.to_string() }
}

fn rational_at(s: &str, path: &str) -> Result<Rational, IoError> {
    parse_rational(s).map_err(|e| value_error(path, e))
}

fn rationals_at(v: &[String], path: &str) -> Result<Vec<Rational>, IoError> {
    v.iter().enumerate().map(|(i, s)| rational_at(s, &format!("{path}[{i}]"))).collect()
}

fn polys_at(v: &[Vec<String>], path: &str) -> Result<Vec<Polynomial>, IoError> {
    v.iter()
        .enumerate()
        .map(|(j, c)| Ok(Polynomial::new(rationals_at(c, &format!("{path}[{j}]"))?, Var::M)))
        .collect()
}

fn sheaf_from_doc(doc: &SheafDoc, j0: usize, d: usize, path: &str) -> Result<SheafClass, IoError> {
    if doc.hilbert.len() != j0 {
        return Err(value_error(format!("{path}.hilbert"), format!("expected {j0} polynomials, found {}", doc.hilbert.len())));
    }
    let rank = rational_at(&doc.rank, &format!("{path}.rank"))?;
    let hilbert = polys_at(&doc.hilbert, &format!("{path}.hilbert"))?;
    let mut class = SheafClass::new(doc.name.clone(), d, rank, hilbert).map_err(|e| value_error(path, e))?;
    if let Some(tw) = &doc.twisted_hilbert {
        if tw.len() != j0 {
            return Err(value_error(format!("{path}.twisted_hilbert"), format!("expected {j0} polynomials, found {}", tw.len())));
        }
        let tw = polys_at(tw, &format!("{path}.twisted_hilbert"))?;
        class = class.with_twisted(tw).map_err(|e| value_error(path, e))?;
    }
    Ok(class)
}

fn parse_field(s: &str, path: &str) -> Result<FieldKind, IoError> {
    if s == "Q" {
        return Ok(FieldKind::Rationals);
    }
    match s.parse::<u32>() {
        Ok(q) if q >= 2 && (2..q).take_while(|p| p * p <= q).all(|p| q % p != 0) => Ok(FieldKind::FiniteField(q)),
        _ => Err(value_error(path, format!("field must be \"Q\" or a prime, found {s:?}"))),
    }
}

pub fn format_field(f: FieldKind) -> String {
    match f {
        FieldKind::Rationals => "Q".to_string(),
        FieldKind::FiniteField(q) => q.to_string(),
    }
}

fn representation_from_doc(
    doc: &RepresentationDoc,
    quiver: &LabelledQuiver,
    dims: &DimensionVector,
    field: FieldKind,
    path: &str,
) -> Result<Representation, IoError> {
    let j0 = quiver.j0();
    if doc.maps.len() != j0 || doc.maps.iter().any(|r| r.len() != j0) {
        return Err(value_error(format!("{path}.maps"), format!("expected a {j0}x{j0} array of matrices")));
    }
    let mut maps = Vec::with_capacity(j0);
    for i in 0..j0 {
        let mut row = Vec::with_capacity(j0);
        for j in 0..j0 {
            let mpath = format!("{path}.maps[{i}][{j}]");
            let cols = dims.source(i) * quiver.hom_dim(i, j);
            let rows = doc.maps[i][j]
                .iter()
                .enumerate()
                .map(|(r, entries)| rationals_at(entries, &format!("{mpath}[{r}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let expected_rows = dims.sink(j);
            let m = Matrix::from_rows(rows, cols)
                .filter(|m| m.rows() == expected_rows)
                .ok_or_else(|| value_error(&mpath, format!("expected a {expected_rows}x{cols} matrix")))?;
            row.push(m);
        }
        maps.push(row);
    }
    Representation::new(quiver.clone(), dims.clone(), field, maps).map_err(|e| value_error(path, e))
}

fn quiver_from_doc(doc: &QuiverDoc, target: &SheafClass, j0: usize) -> Result<QuiverProblem, IoError> {
    let quiver = LabelledQuiver::new(doc.hom_dims.clone()).map_err(|e| value_error("quiver.hom_dims", e))?;
    if quiver.j0() != j0 {
        return Err(value_error("quiver.hom_dims", format!("expected a {j0}x{j0} matrix")));
    }
    let sigma = StabilityParameter::new(rationals_at(&doc.sigma, "quiver.sigma")?).map_err(|e| value_error("quiver.sigma", e))?;
    if sigma.len() != j0 {
        return Err(value_error("quiver.sigma", format!("expected {j0} entries, found {}", sigma.len())));
    }
    let field = parse_field(&doc.field, "quiver.field")?;
    let (dims, dims_given) = match &doc.dims {
        Some(v) => {
            let d = DimensionVector::new(v.clone()).map_err(|e| value_error("quiver.dims", e))?;
            if d.j0() != j0 {
                return Err(value_error("quiver.dims", format!("expected {} entries, found {}", 2 * j0, v.len())));
            }
            (d, true)
        }
        None => (dimension_vector_from_hilbert(target, doc.n0, doc.m0).map_err(|e| value_error("quiver", e))?, false),
    };
    if doc.m0 <= doc.n0 {
        return Err(value_error("quiver.m0", format!("m0 must exceed n0 (n0 = {}, m0 = {})", doc.n0, doc.m0)));
    }
    if let Some(jp) = doc.j_prime {
        if jp == 0 || jp > j0 {
            return Err(value_error("quiver.j_prime", format!("must lie in 1..={j0}")));
        }
    }
    let mut names = BTreeSet::new();
    let mut representations = Vec::with_capacity(doc.representations.len());
    for (k, r) in doc.representations.iter().enumerate() {
        let path = format!("quiver.representations[{k}]");
        if !names.insert(r.name.clone()) {
            return Err(value_error(format!("{path}.name"), format!("duplicate name {:?}", r.name)));
        }
        representations.push((r.name.clone(), representation_from_doc(r, &quiver, &dims, field, &path)?));
    }
    Ok(QuiverProblem { quiver, n0: doc.n0, m0: doc.m0, sigma, field, dims, dims_given, j_prime: doc.j_prime, representations })
}

/// Validates a document.
pub fn problem_from_doc(doc: &ProblemDoc) -> Result<Problem, IoError> {
    let (j0, d) = (doc.j0, doc.d);
    if j0 == 0 {
        return Err(value_error("j0", "must be positive"));
    }
    if doc.volumes.len() != j0 {
        return Err(value_error("volumes", format!("expected {j0} entries, found {}", doc.volumes.len())));
    }
    let volumes = rationals_at(&doc.volumes, "volumes")?;
    if let Some(k) = volumes.iter().position(|v| !v.is_positive()) {
        return Err(value_error(format!("volumes[{k}]"), "volumes must be positive"));
    }
    let target = sheaf_from_doc(&doc.target, j0, d, "target")?;
    let mut names = BTreeSet::from([target.name().to_string()]);
    let mut candidates = Vec::with_capacity(doc.candidates.len());
    for (k, c) in doc.candidates.iter().enumerate() {
        let path = format!("candidates[{k}]");
        if !names.insert(c.name.clone()) {
            return Err(value_error(format!("{path}.name"), format!("duplicate name {:?}", c.name)));
        }
        candidates.push(sheaf_from_doc(c, j0, d, &path)?);
    }
    let modes = [doc.sigma.is_some(), doc.segment.is_some(), doc.quiver.is_some()];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(IoError::Schema {
            path: ".".into(),
            message: "exactly one of \"sigma\", \"segment\" or \"quiver\" must be present".into(),
        });
    }
    let mode = if let Some(s) = &doc.sigma {
        let sigma = StabilityParameter::new(rationals_at(s, "sigma")?).map_err(|e| value_error("sigma", e))?;
        if sigma.len() != j0 {
            return Err(value_error("sigma", format!("expected {j0} entries, found {}", sigma.len())));
        }
        Mode::Sigma(sigma)
    } else if let Some(seg) = &doc.segment {
        let from = rationals_at(&seg.from, "segment.from")?;
        let to = rationals_at(&seg.to, "segment.to")?;
        Mode::Segment(validate_segment(&from, &to, &volumes, d).map_err(|e| value_error("segment", e))?)
    } else {
        Mode::Quiver(quiver_from_doc(doc.quiver.as_ref().expect("one mode present"), &target, j0)?)
    };
    Ok(Problem { j0, d, volumes, target, candidates, mode })
}

/// Parses and validates a UTF-8 JSON problem document.
pub fn parse_problem(bytes: &[u8]) -> Result<Problem, IoError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let doc: ProblemDoc = serde_path_to_error::deserialize(&mut de).map_err(|e| IoError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| IoError::Schema { path: ".".into(), message: e.to_string() })?;
    problem_from_doc(&doc)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_doc(p: &Polynomial, d: usize) -> Vec<String> {
    (0..=d.max(p.coeffs().len().saturating_sub(1))).map(|k| format_rational(&p.coeff(k))).collect()
}

fn sheaf_doc(s: &SheafClass) -> SheafDoc {
    SheafDoc {
        name: s.name().to_string(),
        rank: format_rational(s.rank()),
        hilbert: s.hilbert().iter().map(|p| poly_doc(p, s.dim())).collect(),
        twisted_hilbert: s.twisted_hilbert().map(|tw| tw.iter().map(|p| poly_doc(p, s.dim())).collect()),
    }
}

/// The canonical document of a problem.
pub fn problem_to_doc(p: &Problem) -> ProblemDoc {
    let mut doc = ProblemDoc {
        j0: p.j0,
        d: p.d,
        volumes: strings(&p.volumes),
        target: sheaf_doc(&p.target),
        candidates: p.candidates.iter().map(sheaf_doc).collect(),
        sigma: None,
        segment: None,
        quiver: None,
    };
    match &p.mode {
        Mode::Sigma(s) => doc.sigma = Some(strings(s.entries())),
        Mode::Segment(seg) => {
            doc.segment = Some(SegmentDoc { from: strings(seg.from().entries()), to: strings(seg.to().entries()) })
        }
        Mode::Quiver(q) => {
            doc.quiver = Some(QuiverDoc {
                hom_dims: q.quiver.hom_dims().to_vec(),
                n0: q.n0,
                m0: q.m0,
                sigma: strings(q.sigma.entries()),
                field: format_field(q.field),
                dims: q.dims_given.then(|| q.dims.entries().to_vec()),
                j_prime: q.j_prime,
                representations: q
                    .representations
                    .iter()
                    .map(|(name, rep)| RepresentationDoc {
                        name: name.clone(),
                        maps: rep.maps().iter().map(|row| row.iter().map(|m| m.to_rows().iter().map(|r| strings(r)).collect()).collect()).collect(),
                    })
                    .collect(),
            })
        }
    }
    doc
}

/// Pretty-printed canonical JSON of a problem.
pub fn emit_problem(p: &Problem) -> String {
    let mut s = serde_json::to_string_pretty(&problem_to_doc(p)).expect("problem documents serialize");
    s.push('\n');
    s
}
