//! Bit-exact JSON formats for algebras and maps.
//!
//! Algebra documents list only nonzero brackets, keyed by basis-name pairs;
//! the loader completes the missing orientations by graded skew-symmetry and
//! re-validates the axioms. Saving is canonicalizing: one orientation per
//! pair, sorted keys, reduced scalars, so save ∘ load is idempotent.

use crate::algebra::{AlgebraBuilder, LieSuperalgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linmap::{LinearMap, Parity};
use crate::matrix::Matrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const ALGEBRA_FORMAT: &str = "superkit-algebra/1";
pub const MAP_FORMAT: &str = "superkit-map/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
}

impl FieldDoc {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        match self {
            FieldDoc::Q => Ok(FieldSpec::Rationals),
            FieldDoc::Fp { p } => FieldSpec::prime_field(*p),
        }
    }

    pub fn of_spec(spec: FieldSpec) -> FieldDoc {
        match spec {
            FieldSpec::Rationals => FieldDoc::Q,
            FieldSpec::PrimeField(p) => FieldDoc::Fp { p },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub format: String,
    pub name: String,
    pub field: FieldDoc,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    /// "a,b" → {target name → coefficient string}; only nonzero entries.
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
}

/// Canonical document of an algebra: for each unordered basis pair only the
/// (i ≤ j) orientation is listed, keys sorted, scalars in reduced form.
pub fn algebra_to_document(l: &LieSuperalgebra) -> AlgebraDocument {
    let mut brackets = BTreeMap::new();
    for i in 0..l.dim() {
        for j in i..l.dim() {
            let coords = l.bracket_basis(i, j);
            let entries: BTreeMap<String, String> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (l.basis_name(k).to_string(), c.to_string()))
                .collect();
            if !entries.is_empty() {
                brackets.insert(format!("{},{}", l.basis_name(i), l.basis_name(j)), entries);
            }
        }
    }
    AlgebraDocument {
        format: ALGEBRA_FORMAT.to_string(),
        name: l.name().to_string(),
        field: FieldDoc::of_spec(l.field()),
        even: l.basis_names()[..l.even_dim()].to_vec(),
        odd: l.basis_names()[l.even_dim()..].to_vec(),
        brackets,
    }
}

pub fn document_to_algebra(doc: &AlgebraDocument) -> Result<LieSuperalgebra> {
    document_to_algebra_with_field(doc, None)
}

/// Loads a document, optionally reinterpreting its scalars over another
/// field. Coefficients are parsed under the document's own field first, then
/// coerced, so only faithful coercions (ℚ → 𝔽_p with invertible denominators)
/// are accepted.
pub fn document_to_algebra_with_field(
    doc: &AlgebraDocument,
    override_field: Option<FieldSpec>,
) -> Result<LieSuperalgebra> {
    if doc.format != ALGEBRA_FORMAT {
        return Err(Error::Parse(format!(
            "unsupported format tag {:?}, expected {ALGEBRA_FORMAT:?}",
            doc.format
        )));
    }
    let source = doc.field.to_spec()?;
    let target = override_field.unwrap_or(source);
    let even: Vec<&str> = doc.even.iter().map(String::as_str).collect();
    let odd: Vec<&str> = doc.odd.iter().map(String::as_str).collect();
    let mut builder = AlgebraBuilder::new(doc.name.clone(), target, &even, &odd);
    for (pair, entries) in &doc.brackets {
        let Some((a, b)) = pair.split_once(',') else {
            return Err(Error::Parse(format!("bracket key {pair:?} is not \"a,b\"")));
        };
        let mut terms: Vec<(&str, Scalar)> = Vec::new();
        for (target_name, coeff) in entries {
            let parsed = source.parse(coeff)?;
            let coerced = if target == source {
                parsed
            } else {
                parsed.coerce(target)?
            };
            terms.push((target_name.as_str(), coerced));
        }
        builder = builder.bracket(a.trim(), b.trim(), &terms)?;
    }
    builder.build()
}

pub fn algebra_to_json(l: &LieSuperalgebra) -> String {
    let doc = algebra_to_document(l);
    serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
}

pub fn algebra_from_json(text: &str) -> Result<LieSuperalgebra> {
    let doc = parse_algebra_document(text)?;
    document_to_algebra(&doc)
}

pub fn parse_algebra_document(text: &str) -> Result<AlgebraDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub format: String,
    pub domain: String,
    pub codomain: String,
    pub parity: String,
    /// Rows over the codomain basis; columns indexed by domain basis order.
    pub matrix: Vec<Vec<String>>,
}

pub fn map_to_document(f: &LinearMap, domain: &LieSuperalgebra, codomain: &LieSuperalgebra) -> MapDocument {
    let m = f.matrix();
    MapDocument {
        format: MAP_FORMAT.to_string(),
        domain: domain.name().to_string(),
        codomain: codomain.name().to_string(),
        parity: f.parity().to_string(),
        matrix: (0..m.rows())
            .map(|r| m.row(r).iter().map(Scalar::to_string).collect())
            .collect(),
    }
}

pub fn document_to_map(
    doc: &MapDocument,
    domain: &LieSuperalgebra,
    codomain: &LieSuperalgebra,
) -> Result<LinearMap> {
    if doc.format != MAP_FORMAT {
        return Err(Error::Parse(format!(
            "unsupported format tag {:?}, expected {MAP_FORMAT:?}",
            doc.format
        )));
    }
    if doc.domain != domain.name() || doc.codomain != codomain.name() {
        return Err(Error::Parse(format!(
            "map is {} -> {}, got algebras {} and {}",
            doc.domain,
            doc.codomain,
            domain.name(),
            codomain.name()
        )));
    }
    if domain.field() != codomain.field() {
        return Err(Error::FieldMismatch(
            domain.field().to_string(),
            codomain.field().to_string(),
        ));
    }
    let parity = match doc.parity.as_str() {
        "even" => Parity::Even,
        "odd" => Parity::Odd,
        other => return Err(Error::Parse(format!("parity {other:?} is not even|odd"))),
    };
    if doc.matrix.len() != codomain.dim() {
        return Err(Error::Parse(format!(
            "matrix has {} rows, codomain dimension is {}",
            doc.matrix.len(),
            codomain.dim()
        )));
    }
    let field = domain.field();
    let mut rows = Vec::with_capacity(doc.matrix.len());
    for row in &doc.matrix {
        if row.len() != domain.dim() {
            return Err(Error::Parse(format!(
                "matrix row has {} columns, domain dimension is {}",
                row.len(),
                domain.dim()
            )));
        }
        let parsed: Result<Vec<Scalar>> = row.iter().map(|s| field.parse(s)).collect();
        rows.push(parsed?);
    }
    let matrix = Matrix::from_rows(rows, domain.dim(), field)?;
    LinearMap::new(domain.dims(), codomain.dims(), parity, matrix)
}

pub fn map_to_json(f: &LinearMap, domain: &LieSuperalgebra, codomain: &LieSuperalgebra) -> String {
    serde_json::to_string_pretty(&map_to_document(f, domain, codomain)).expect("document serializes")
        + "\n"
}

pub fn map_from_json(
    text: &str,
    domain: &LieSuperalgebra,
    codomain: &LieSuperalgebra,
) -> Result<LinearMap> {
    let doc: MapDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    document_to_map(&doc, domain, codomain)
}
