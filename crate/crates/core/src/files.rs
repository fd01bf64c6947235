//! On-disk formats: algebra spec files (TOML or JSON) and JSON
//! serializations of coproduct tables and g-assignments.
//!
//! Scalars travel as strings in each field's literal grammar, and every
//! serializer emits entries in the canonical basis order, so re-serializing
//! a parsed file reproduces it byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, ExponentVec, QMatrix};
use crate::bifrobenius::GAssignment;
use crate::coalgebra::{CoproductTable, TensorElem};
use crate::error::QciError;
use crate::scalar::{FieldDescriptor, FieldScalar};

/// The spec file schema: `field = "Fp:5"`, `a = [2,3]`,
/// `q = [["-1","1"],["1","-1"]]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub field: String,
    pub a: Vec<u32>,
    pub q: Vec<Vec<String>>,
}

impl SpecFile {
    pub fn into_spec(self) -> Result<Arc<AlgebraSpec>, QciError> {
        let field: FieldDescriptor = self.field.parse()?;
        let rows = self
            .q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|lit| FieldScalar::parse_literal(field, lit))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let q = QMatrix::new(rows)?;
        AlgebraSpec::new(field, self.a, q)
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let n = spec.generators();
        let q = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| spec.q_matrix().entry(i, j).to_string())
                    .collect()
            })
            .collect();
        SpecFile {
            field: spec.field().to_string(),
            a: spec.bounds().to_vec(),
            q,
        }
    }
}

pub fn spec_from_toml(text: &str) -> Result<Arc<AlgebraSpec>, QciError> {
    let file: SpecFile =
        toml::from_str(text).map_err(|e| QciError::ParseFile(e.to_string()))?;
    file.into_spec()
}

pub fn spec_from_json(text: &str) -> Result<Arc<AlgebraSpec>, QciError> {
    let file: SpecFile =
        serde_json::from_str(text).map_err(|e| QciError::ParseFile(e.to_string()))?;
    file.into_spec()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TensorEntry {
    v1: Vec<u32>,
    v2: Vec<u32>,
    coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CoproductEntry {
    v: Vec<u32>,
    image: Vec<TensorEntry>,
}

/// Serialize a coproduct table: one entry per basis vector in basis order,
/// image terms in lexicographic tensor-key order.
pub fn coproduct_to_json(table: &CoproductTable) -> String {
    let spec = table.spec();
    let entries: Vec<CoproductEntry> = spec
        .basis()
        .iter()
        .enumerate()
        .map(|(i, v)| CoproductEntry {
            v: v.components().to_vec(),
            image: table
                .image_at(i)
                .terms()
                .map(|((u, w), c)| TensorEntry {
                    v1: u.components().to_vec(),
                    v2: w.components().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("schema serializes cleanly")
}

/// Parse a coproduct table for the given spec. Every basis vector must be
/// covered exactly once; the counit is the standard one.
pub fn coproduct_from_json(
    spec: &Arc<AlgebraSpec>,
    text: &str,
) -> Result<CoproductTable, QciError> {
    let entries: Vec<CoproductEntry> =
        serde_json::from_str(text).map_err(|e| QciError::ParseFile(e.to_string()))?;
    let mut images: Vec<Option<TensorElem>> = vec![None; spec.dim()];
    for entry in entries {
        let v = ExponentVec::new(entry.v);
        let idx = spec.index_of(&v)?;
        if images[idx].is_some() {
            return Err(QciError::InvalidCoproduct(format!(
                "duplicate image for v={v}"
            )));
        }
        let terms = entry
            .image
            .into_iter()
            .map(|t| {
                let coeff = FieldScalar::parse_literal(spec.field(), &t.coeff)?;
                Ok((ExponentVec::new(t.v1), ExponentVec::new(t.v2), coeff))
            })
            .collect::<Result<Vec<_>, QciError>>()?;
        images[idx] = Some(TensorElem::from_terms(spec, terms)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                QciError::InvalidCoproduct(format!(
                    "missing image for basis index {i}"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    CoproductTable::new(spec, images)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GEntry {
    v: Vec<u32>,
    g: String,
}

/// Serialize a g-assignment, one entry per basis vector in basis order.
pub fn g_assignment_to_json(g: &GAssignment) -> String {
    let entries: Vec<GEntry> = g
        .values()
        .map(|(v, val)| GEntry {
            v: v.components().to_vec(),
            g: val.to_string(),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("schema serializes cleanly")
}

pub fn g_assignment_from_json(
    spec: &Arc<AlgebraSpec>,
    text: &str,
) -> Result<GAssignment, QciError> {
    let entries: Vec<GEntry> =
        serde_json::from_str(text).map_err(|e| QciError::ParseFile(e.to_string()))?;
    let mut values = std::collections::BTreeMap::new();
    for entry in entries {
        let v = ExponentVec::new(entry.v);
        if !spec.contains(&v) {
            return Err(QciError::ExponentOutOfRange(v.to_string()));
        }
        let val = FieldScalar::parse_literal(spec.field(), &entry.g)?;
        if values.insert(v.clone(), val).is_some() {
            return Err(QciError::InvalidGAssignment(format!(
                "duplicate value for v={v}"
            )));
        }
    }
    GAssignment::new(spec, values)
}
