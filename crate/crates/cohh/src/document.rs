//! The JSON input format: named coalgebras, bicomodules, maps and short exact
//! sequences, with scalars as strings and structure maps as sparse entries
//! addressed by basis labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coalgebra::FinCoalgebra;
use crate::comodule::{Bicomodule, ColinearMap};
use crate::dg::{GradedBicomodule, GradedCoalgebra};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported format version {0}")]
    Format(u64),
    #[error("unknown reference {0:?}")]
    UnknownReference(String),
    #[error("name {0:?} is declared twice")]
    DuplicateName(String),
    #[error("{object}: unknown basis label {label:?}")]
    UnknownLabel { object: String, label: String },
    #[error("{object}: {message}")]
    Invalid { object: String, message: String },
}

fn invalid(object: &str, e: impl std::fmt::Display) -> DocumentError {
    DocumentError::Invalid { object: object.to_string(), message: e.to_string() }
}

/// Per basis element, the terms of its image: `[left, right, coefficient]`.
pub type TensorTerms = IndexMap<String, Vec<(String, String, String)>>;
/// Per basis element, the terms of its image: `[target, coefficient]`.
pub type LinearTerms = IndexMap<String, Vec<(String, String)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCoalgebra {
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    pub comul: TensorTerms,
    pub counit: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub differential: LinearTerms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBicomodule {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    /// `m ↦ [[c, m', coefficient], …]`.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub lambda: TensorTerms,
    /// `m ↦ [[m', d, coefficient], …]`.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub rho: TensorTerms,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub differential: LinearTerms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub source: String,
    pub target: String,
    pub entries: LinearTerms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSequence {
    pub inclusion: String,
    pub projection: String,
    /// An endomorphism of the middle term preserving the image of the inclusion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endomorphism: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub format: u64,
    pub field: String,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub coalgebras: IndexMap<String, RawCoalgebra>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub bicomodules: IndexMap<String, RawBicomodule>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub maps: IndexMap<String, RawMap>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub sequences: IndexMap<String, RawSequence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleEntry {
    pub left: Option<String>,
    pub right: Option<String>,
    pub module: Bicomodule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEntry {
    pub left: Option<String>,
    pub right: Option<String>,
    pub module: GradedBicomodule,
}

/// A linear map; `colinear` is set when both ends are bicomodules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapEntry {
    pub source: String,
    pub target: String,
    pub matrix: Matrix,
    pub colinear: Option<ColinearMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceEntry {
    pub inclusion: String,
    pub projection: String,
    pub endomorphism: Option<String>,
}

/// A validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: Field,
    pub coalgebras: BTreeMap<String, Arc<FinCoalgebra>>,
    pub graded_coalgebras: BTreeMap<String, Arc<GradedCoalgebra>>,
    pub bicomodules: BTreeMap<String, ModuleEntry>,
    pub graded_bicomodules: BTreeMap<String, GradedEntry>,
    pub maps: BTreeMap<String, MapEntry>,
    pub sequences: BTreeMap<String, SequenceEntry>,
}

fn label_index<'a>(object: &str, labels: &'a [String]) -> impl Fn(&str) -> Result<usize, DocumentError> + 'a {
    let object = object.to_string();
    move |l: &str| {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| DocumentError::UnknownLabel { object: object.clone(), label: l.to_string() })
    }
}

fn scalar(field: Field, object: &str, text: &str) -> Result<Scalar, DocumentError> {
    field.parse(text).map_err(|e| invalid(object, e))
}

fn fmt(field: Field, s: &Scalar) -> String {
    field.format(s)
}

/// `rows = left.len() * right.len()` with row index `l * right.len() + r`.
fn tensor_matrix(
    field: Field,
    object: &str,
    terms: &TensorTerms,
    source: &[String],
    left: &[String],
    right: &[String],
) -> Result<Matrix, DocumentError> {
    let (src, l, r) = (label_index(object, source), label_index(object, left), label_index(object, right));
    let mut triplets = Vec::new();
    for (s, list) in terms {
        let j = src(s)?;
        for (a, b, c) in list {
            triplets.push((l(a)? * right.len() + r(b)?, j, scalar(field, object, c)?));
        }
    }
    Ok(Matrix::from_triplets(field, left.len() * right.len(), source.len(), triplets))
}

fn tensor_terms(field: Field, m: &Matrix, source: &[String], left: &[String], right: &[String]) -> TensorTerms {
    let t = m.transpose();
    let mut out = IndexMap::new();
    for (s, row) in t.sparse_rows().iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let terms = row
            .iter()
            .map(|(i, v)| (left[i / right.len()].clone(), right[i % right.len()].clone(), fmt(field, v)))
            .collect();
        out.insert(source[s].clone(), terms);
    }
    out
}

fn linear_matrix(field: Field, object: &str, terms: &LinearTerms, source: &[String], target: &[String]) -> Result<Matrix, DocumentError> {
    let (src, tgt) = (label_index(object, source), label_index(object, target));
    let mut triplets = Vec::new();
    for (s, list) in terms {
        let j = src(s)?;
        for (t, c) in list {
            triplets.push((tgt(t)?, j, scalar(field, object, c)?));
        }
    }
    Ok(Matrix::from_triplets(field, target.len(), source.len(), triplets))
}

fn linear_terms(field: Field, m: &Matrix, source: &[String], target: &[String]) -> LinearTerms {
    let t = m.transpose();
    let mut out = IndexMap::new();
    for (s, row) in t.sparse_rows().iter().enumerate() {
        if !row.is_empty() {
            out.insert(source[s].clone(), row.iter().map(|(i, v)| (target[*i].clone(), fmt(field, v))).collect());
        }
    }
    out
}

impl Document {
    pub fn new(field: Field) -> Document {
        Document {
            field,
            coalgebras: BTreeMap::new(),
            graded_coalgebras: BTreeMap::new(),
            bicomodules: BTreeMap::new(),
            graded_bicomodules: BTreeMap::new(),
            maps: BTreeMap::new(),
            sequences: BTreeMap::new(),
        }
    }

    /// Parses JSON text; `field_override` reinterprets every scalar in another field.
    pub fn parse(text: &str, field_override: Option<Field>) -> Result<Document, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Document::from_raw(&raw, field_override)
    }

    pub fn from_raw(raw: &RawDocument, field_override: Option<Field>) -> Result<Document, DocumentError> {
        if raw.format != FORMAT_VERSION {
            return Err(DocumentError::Format(raw.format));
        }
        let field = match field_override {
            Some(f) => f,
            None => Field::parse_spec(&raw.field).map_err(|e| invalid("field", e))?,
        };
        let mut doc = Document::new(field);
        for (name, c) in &raw.coalgebras {
            doc.load_coalgebra(name, c)?;
        }
        for (name, m) in &raw.bicomodules {
            if doc.coalgebras.contains_key(name) || doc.graded_coalgebras.contains_key(name) {
                return Err(DocumentError::DuplicateName(name.clone()));
            }
            doc.load_bicomodule(name, m)?;
        }
        for (name, m) in &raw.maps {
            doc.load_map(name, m)?;
        }
        for (name, s) in &raw.sequences {
            doc.load_sequence(name, s)?;
        }
        Ok(doc)
    }

    fn load_coalgebra(&mut self, name: &str, c: &RawCoalgebra) -> Result<(), DocumentError> {
        let f = self.field;
        let b = &c.basis;
        let comul = tensor_matrix(f, name, &c.comul, b, b, b)?;
        let counit = {
            let src = label_index(name, b);
            let mut t = Vec::new();
            for (s, v) in &c.counit {
                t.push((0, src(s)?, scalar(f, name, v)?));
            }
            Matrix::from_triplets(f, 1, b.len(), t)
        };
        match &c.degrees {
            None => {
                if !c.differential.is_empty() {
                    return Err(invalid(name, "a differential needs degrees"));
                }
                let co = FinCoalgebra::new(f, b.clone(), comul, counit).map_err(|e| invalid(name, e))?;
                self.coalgebras.insert(name.to_string(), Arc::new(co));
            }
            Some(deg) => {
                let d = linear_matrix(f, name, &c.differential, b, b)?;
                let co = GradedCoalgebra::new(f, b.clone(), deg.clone(), d, comul, counit).map_err(|e| invalid(name, e))?;
                self.graded_coalgebras.insert(name.to_string(), Arc::new(co));
            }
        }
        Ok(())
    }

    fn side(&self, object: &str, name: &Option<String>) -> Result<Arc<FinCoalgebra>, DocumentError> {
        match name {
            None => Ok(Arc::new(FinCoalgebra::trivial(self.field))),
            Some(n) => self.coalgebras.get(n).cloned().ok_or_else(|| {
                if self.graded_coalgebras.contains_key(n) {
                    invalid(object, format!("{n} is graded but {object} has no degrees"))
                } else {
                    DocumentError::UnknownReference(n.clone())
                }
            }),
        }
    }

    fn graded_side(&self, object: &str, name: &Option<String>) -> Result<Arc<GradedCoalgebra>, DocumentError> {
        match name {
            None => Ok(Arc::new(GradedCoalgebra::trivial(self.field))),
            Some(n) => self.graded_coalgebras.get(n).cloned().ok_or_else(|| {
                if self.coalgebras.contains_key(n) {
                    invalid(object, format!("{n} is ungraded but {object} has degrees"))
                } else {
                    DocumentError::UnknownReference(n.clone())
                }
            }),
        }
    }

    fn load_bicomodule(&mut self, name: &str, m: &RawBicomodule) -> Result<(), DocumentError> {
        let f = self.field;
        let b = &m.basis;
        let n = b.len();
        let coaction = |labels: &[String], entries: &TensorTerms, left_side: bool, present: bool| -> Result<Matrix, DocumentError> {
            if !present {
                if !entries.is_empty() {
                    return Err(invalid(name, "coaction entries given for the ground field side"));
                }
                return Ok(Matrix::identity(f, n));
            }
            if left_side {
                tensor_matrix(f, name, entries, b, labels, b)
            } else {
                tensor_matrix(f, name, entries, b, b, labels)
            }
        };
        match &m.degrees {
            None => {
                if !m.differential.is_empty() {
                    return Err(invalid(name, "a differential needs degrees"));
                }
                let (l, r) = (self.side(name, &m.left)?, self.side(name, &m.right)?);
                let lam = coaction(l.labels(), &m.lambda, true, m.left.is_some())?;
                let rho = coaction(r.labels(), &m.rho, false, m.right.is_some())?;
                let module = Bicomodule::new(l, r, b.clone(), lam, rho).map_err(|e| invalid(name, e))?;
                self.bicomodules.insert(name.to_string(), ModuleEntry { left: m.left.clone(), right: m.right.clone(), module });
            }
            Some(deg) => {
                let (l, r) = (self.graded_side(name, &m.left)?, self.graded_side(name, &m.right)?);
                let lam = coaction(l.labels(), &m.lambda, true, m.left.is_some())?;
                let rho = coaction(r.labels(), &m.rho, false, m.right.is_some())?;
                let d = linear_matrix(f, name, &m.differential, b, b)?;
                let module = GradedBicomodule::new(l, r, b.clone(), deg.clone(), d, lam, rho).map_err(|e| invalid(name, e))?;
                self.graded_bicomodules
                    .insert(name.to_string(), GradedEntry { left: m.left.clone(), right: m.right.clone(), module });
            }
        }
        Ok(())
    }

    /// Basis labels of a bicomodule or coalgebra name.
    pub fn space_labels(&self, name: &str) -> Option<Vec<String>> {
        if let Some(m) = self.bicomodules.get(name) {
            return Some(m.module.labels().to_vec());
        }
        if let Some(m) = self.graded_bicomodules.get(name) {
            return Some(m.module.labels().to_vec());
        }
        if let Some(c) = self.coalgebras.get(name) {
            return Some(c.labels().to_vec());
        }
        self.graded_coalgebras.get(name).map(|c| c.labels().to_vec())
    }

    fn load_map(&mut self, name: &str, m: &RawMap) -> Result<(), DocumentError> {
        let src = self.space_labels(&m.source).ok_or_else(|| DocumentError::UnknownReference(m.source.clone()))?;
        let tgt = self.space_labels(&m.target).ok_or_else(|| DocumentError::UnknownReference(m.target.clone()))?;
        let matrix = linear_matrix(self.field, name, &m.entries, &src, &tgt)?;
        let colinear = match (self.bicomodules.get(&m.source), self.bicomodules.get(&m.target)) {
            (Some(a), Some(b)) => Some(
                ColinearMap::new(a.module.clone(), b.module.clone(), matrix.clone()).map_err(|e| invalid(name, e))?,
            ),
            _ => None,
        };
        self.maps.insert(
            name.to_string(),
            MapEntry { source: m.source.clone(), target: m.target.clone(), matrix, colinear },
        );
        Ok(())
    }

    fn load_sequence(&mut self, name: &str, s: &RawSequence) -> Result<(), DocumentError> {
        let get = |n: &str| self.maps.get(n).ok_or_else(|| DocumentError::UnknownReference(n.to_string()));
        let (i, p) = (get(&s.inclusion)?, get(&s.projection)?);
        if i.colinear.is_none() || p.colinear.is_none() {
            return Err(invalid(name, "sequence maps must be colinear"));
        }
        if i.target != p.source {
            return Err(invalid(name, "inclusion target differs from projection source"));
        }
        let exact = i.matrix.rank() == i.matrix.cols()
            && p.matrix.rank() == p.matrix.rows()
            && p.matrix.mul(&i.matrix).is_zero()
            && i.matrix.cols() + p.matrix.rows() == i.matrix.rows();
        if !exact {
            return Err(invalid(name, "sequence is not short exact"));
        }
        if let Some(e) = &s.endomorphism {
            let g = get(e)?;
            if g.source != i.target || g.target != i.target {
                return Err(invalid(name, format!("{e} is not an endomorphism of {}", i.target)));
            }
            if !Subspace::image(&i.matrix).contains_columns(&g.matrix.mul(&i.matrix)) {
                return Err(invalid(name, format!("{e} does not preserve the subcomodule")));
            }
        }
        self.sequences.insert(
            name.to_string(),
            SequenceEntry { inclusion: s.inclusion.clone(), projection: s.projection.clone(), endomorphism: s.endomorphism.clone() },
        );
        Ok(())
    }

    pub fn to_raw(&self) -> RawDocument {
        let f = self.field;
        let counit = |m: &Matrix, b: &[String]| -> IndexMap<String, String> {
            m.entries().map(|(_, j, v)| (b[j].clone(), fmt(f, v))).collect()
        };
        let mut coalgebras = IndexMap::new();
        for (name, c) in &self.coalgebras {
            let b = c.labels();
            coalgebras.insert(
                name.clone(),
                RawCoalgebra {
                    basis: b.to_vec(),
                    degrees: None,
                    comul: tensor_terms(f, c.comul(), b, b, b),
                    counit: counit(c.counit(), b),
                    differential: IndexMap::new(),
                },
            );
        }
        for (name, c) in &self.graded_coalgebras {
            let b = c.labels();
            coalgebras.insert(
                name.clone(),
                RawCoalgebra {
                    basis: b.to_vec(),
                    degrees: Some(c.degrees().to_vec()),
                    comul: tensor_terms(f, c.comul(), b, b, b),
                    counit: counit(c.counit(), b),
                    differential: linear_terms(f, c.differential(), b, b),
                },
            );
        }
        coalgebras.sort_keys();
        let mut bicomodules = IndexMap::new();
        let sides = |left: &Option<String>, right: &Option<String>, lam: &Matrix, rho: &Matrix, b: &[String], l: &[String], r: &[String]| {
            (
                if left.is_some() { tensor_terms(f, lam, b, l, b) } else { IndexMap::new() },
                if right.is_some() { tensor_terms(f, rho, b, b, r) } else { IndexMap::new() },
            )
        };
        for (name, e) in &self.bicomodules {
            let m = &e.module;
            let b = m.labels();
            let (lambda, rho) = sides(&e.left, &e.right, m.lambda(), m.rho(), b, m.left().labels(), m.right().labels());
            bicomodules.insert(
                name.clone(),
                RawBicomodule {
                    left: e.left.clone(),
                    right: e.right.clone(),
                    basis: b.to_vec(),
                    degrees: None,
                    lambda,
                    rho,
                    differential: IndexMap::new(),
                },
            );
        }
        for (name, e) in &self.graded_bicomodules {
            let m = &e.module;
            let b = m.labels();
            let (lambda, rho) = sides(&e.left, &e.right, m.lambda(), m.rho(), b, m.left().labels(), m.right().labels());
            bicomodules.insert(
                name.clone(),
                RawBicomodule {
                    left: e.left.clone(),
                    right: e.right.clone(),
                    basis: b.to_vec(),
                    degrees: Some(m.degrees().to_vec()),
                    lambda,
                    rho,
                    differential: linear_terms(f, m.differential(), b, b),
                },
            );
        }
        bicomodules.sort_keys();
        let maps = self
            .maps
            .iter()
            .map(|(name, m)| {
                let src = self.space_labels(&m.source).expect("validated source");
                let tgt = self.space_labels(&m.target).expect("validated target");
                let entries = linear_terms(f, &m.matrix, &src, &tgt);
                (name.clone(), RawMap { source: m.source.clone(), target: m.target.clone(), entries })
            })
            .collect();
        let sequences = self
            .sequences
            .iter()
            .map(|(name, s)| {
                let raw = RawSequence {
                    inclusion: s.inclusion.clone(),
                    projection: s.projection.clone(),
                    endomorphism: s.endomorphism.clone(),
                };
                (name.clone(), raw)
            })
            .collect();
        RawDocument { format: FORMAT_VERSION, field: f.spec(), coalgebras, bicomodules, maps, sequences }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn add_coalgebra(&mut self, name: &str, c: FinCoalgebra) -> Arc<FinCoalgebra> {
        let c = Arc::new(c);
        self.coalgebras.insert(name.to_string(), c.clone());
        c
    }

    pub fn add_graded_coalgebra(&mut self, name: &str, c: GradedCoalgebra) -> Arc<GradedCoalgebra> {
        let c = Arc::new(c);
        self.graded_coalgebras.insert(name.to_string(), c.clone());
        c
    }

    pub fn add_bicomodule(&mut self, name: &str, left: Option<&str>, right: Option<&str>, module: Bicomodule) {
        self.bicomodules.insert(
            name.to_string(),
            ModuleEntry { left: left.map(str::to_string), right: right.map(str::to_string), module },
        );
    }

    pub fn add_graded_bicomodule(&mut self, name: &str, left: Option<&str>, right: Option<&str>, module: GradedBicomodule) {
        self.graded_bicomodules.insert(
            name.to_string(),
            GradedEntry { left: left.map(str::to_string), right: right.map(str::to_string), module },
        );
    }

    pub fn add_map(&mut self, name: &str, source: &str, target: &str, matrix: Matrix) {
        let colinear = match (self.bicomodules.get(source), self.bicomodules.get(target)) {
            (Some(a), Some(b)) => Some(ColinearMap::new(a.module.clone(), b.module.clone(), matrix.clone()).expect("colinear map")),
            _ => None,
        };
        self.maps.insert(
            name.to_string(),
            MapEntry { source: source.to_string(), target: target.to_string(), matrix, colinear },
        );
    }

    pub fn add_sequence(&mut self, name: &str, inclusion: &str, projection: &str, endomorphism: Option<&str>) {
        self.sequences.insert(
            name.to_string(),
            SequenceEntry {
                inclusion: inclusion.to_string(),
                projection: projection.to_string(),
                endomorphism: endomorphism.map(str::to_string),
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G2: &str = r#"{
  "format": 1,
  "field": "q",
  "coalgebras": {
    "G2": {
      "basis": ["g", "h"],
      "comul": { "g": [["g", "g", "1"]], "h": [["h", "h", "1"]] },
      "counit": { "g": "1", "h": "1" }
    }
  },
  "bicomodules": {
    "kg": { "right": "G2", "basis": ["1"], "rho": { "1": [["1", "g", "1"]] } }
  },
  "maps": {
    "a": { "source": "kg", "target": "kg", "entries": { "1": [["1", "3/2"]] } }
  }
}"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = Document::parse(G2, None).unwrap();
        assert_eq!(doc.coalgebras["G2"].dim(), 2);
        assert!(doc.maps["a"].colinear.is_some());
        let again = Document::parse(&doc.to_json(), None).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn reports_parse_position() {
        let err = Document::parse("{\n  \"format\": 1,\n  oops\n}", None).unwrap_err();
        assert!(matches!(err, DocumentError::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn unknown_reference_and_label() {
        let bad = G2.replace("\"right\": \"G2\"", "\"right\": \"G3\"");
        assert_eq!(Document::parse(&bad, None).unwrap_err(), DocumentError::UnknownReference("G3".into()));
        let bad = G2.replace("[[\"1\", \"g\", \"1\"]]", "[[\"1\", \"q\", \"1\"]]");
        assert!(matches!(Document::parse(&bad, None).unwrap_err(), DocumentError::UnknownLabel { .. }));
    }

    #[test]
    fn field_override_reduces_scalars() {
        let doc = Document::parse(G2, Some(Field::prime(7).unwrap())).unwrap();
        assert_eq!(doc.maps["a"].matrix.get(0, 0), Field::prime(7).unwrap().from_i64(5));
    }
}
