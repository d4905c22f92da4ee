//! JSON documents for algebras, deformations, operators and equivalence maps.
//! Scalars are strings in the scalar text syntax; indices are 0-based.

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Bimodule, GradedAlgebra, GradedLinOp};
use crate::catalog::{self, CatalogError};
use crate::cochain::{Cochain, CochainError};
use crate::deform::{DeformError, Deformation, EquivalenceMap};
use crate::exactnum::{parse_scalar, Cyc, CycMatrix};
use crate::grading::{AbelianGroup, Bicharacter, BicharacterViolation, GradingError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("bicharacter is invalid: {}", describe(.0))]
    Bicharacter(Vec<BicharacterViolation>),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn describe(v: &[BicharacterViolation]) -> String {
    v.iter()
        .map(|b| format!("({}, {}) {:?} value {}", b.i, b.j, b.kind, b.value))
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}

pub fn ser_scalar<S: Serializer>(c: &Cyc, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

pub fn ser_vector<S: Serializer>(v: &[Cyc], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn scalar(text: &str, field: impl FnOnce() -> String) -> Result<Cyc, IoError> {
    parse_scalar(text).map_err(|e| IoError::Field {
        field: field(),
        msg: e.to_string(),
    })
}

/// Sparse tensor entry `[a, b, c, "coeff"]`.
pub type SparseEntry = (usize, usize, usize, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub degrees: Vec<Vec<i64>>,
    pub left: Vec<SparseEntry>,
    pub right: Vec<SparseEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub format_version: u32,
    pub group: GroupDoc,
    pub bicharacter: Vec<Vec<String>>,
    pub basis_degrees: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub products: Vec<SparseEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleDoc>,
}

fn sparse_doc(entries: Vec<(usize, usize, usize, Cyc)>) -> Vec<SparseEntry> {
    entries
        .into_iter()
        .map(|(a, b, c, v)| (a, b, c, v.to_string()))
        .collect()
}

fn sparse_parse(
    field: &str,
    entries: &[SparseEntry],
) -> Result<Vec<(usize, usize, usize, Cyc)>, IoError> {
    entries
        .iter()
        .enumerate()
        .map(|(n, (a, b, c, v))| Ok((*a, *b, *c, scalar(v, || format!("{field}[{n}][3]"))?)))
        .collect()
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &GradedAlgebra, bimodule: Option<&Bimodule>) -> Self {
        let default_names = (0..alg.dim()).all(|i| alg.names()[i] == format!("e{i}"));
        AlgebraDocument {
            format_version: FORMAT_VERSION,
            group: GroupDoc {
                orders: alg.group().orders().to_vec(),
            },
            bicharacter: alg
                .bicharacter()
                .table()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            basis_degrees: alg
                .degrees()
                .iter()
                .map(|d| d.exponents().to_vec())
                .collect(),
            basis_names: (!default_names).then(|| alg.names().to_vec()),
            products: sparse_doc(alg.product_entries()),
            bimodule: bimodule.map(|m| BimoduleDoc {
                degrees: m.degrees().iter().map(|d| d.exponents().to_vec()).collect(),
                left: sparse_doc(m.left_entries()),
                right: sparse_doc(m.right_entries()),
            }),
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let doc: AlgebraDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(IoError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Builds the algebra and, if present, the bimodule (otherwise the standard one).
    pub fn build(&self) -> Result<(GradedAlgebra, Bimodule), IoError> {
        let group = AbelianGroup::new(self.group.orders.clone())?;
        let table = self
            .bicharacter
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, t)| scalar(t, || format!("bicharacter[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bichar = Bicharacter::new(group.clone(), table)?;
        let report = bichar.validate();
        if !report.valid {
            return Err(IoError::Bicharacter(report.violations));
        }
        if self.basis_degrees.is_empty() {
            return Err(IoError::Field {
                field: "basis_degrees".into(),
                msg: "an algebra needs at least one basis vector".into(),
            });
        }
        let degrees = self
            .basis_degrees
            .iter()
            .map(|d| group.element(d))
            .collect::<Result<Vec<_>, _>>()?;
        let mut alg =
            GradedAlgebra::new(bichar, degrees, sparse_parse("products", &self.products)?)?;
        if let Some(names) = &self.basis_names {
            if names.len() != alg.dim() {
                return Err(IoError::Field {
                    field: "basis_names".into(),
                    msg: format!("expected {} names, found {}", alg.dim(), names.len()),
                });
            }
            alg = alg.with_names(names.clone());
        }
        let module = match &self.bimodule {
            None => Bimodule::standard(&alg),
            Some(m) => {
                let degrees = m
                    .degrees
                    .iter()
                    .map(|d| group.element(d))
                    .collect::<Result<Vec<_>, _>>()?;
                Bimodule::new(
                    &alg,
                    degrees,
                    sparse_parse("bimodule.left", &m.left)?,
                    sparse_parse("bimodule.right", &m.right)?,
                )?
            }
        };
        Ok((alg, module))
    }
}

/// Reference to the algebra a deformation lives over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseRef {
    Catalog(String),
    Algebra(AlgebraDocument),
}

impl BaseRef {
    pub fn resolve(&self) -> Result<GradedAlgebra, IoError> {
        match self {
            BaseRef::Catalog(name) => Ok(catalog::load(name)?.algebra),
            BaseRef::Algebra(doc) => Ok(doc.build()?.0),
        }
    }
}

/// `{format_version, base, terms}`; `terms[p-1]` lists `[i, j, k, "c"]` meaning `f_p(e_i, e_j)` has `c` at `e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDocument {
    pub format_version: u32,
    pub base: BaseRef,
    pub terms: Vec<Vec<SparseEntry>>,
}

impl DeformationDocument {
    pub fn from_deformation(base: BaseRef, d: &Deformation) -> Self {
        DeformationDocument {
            format_version: FORMAT_VERSION,
            base,
            terms: d
                .terms()
                .iter()
                .map(|f| {
                    f.sparse_entries()
                        .into_iter()
                        .map(|(t, k, c)| (t[0], t[1], k, c.to_string()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let doc: DeformationDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(IoError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn build(&self) -> Result<Deformation, IoError> {
        let alg = self.base.resolve()?;
        let v = Bimodule::standard(&alg);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (p, entries) in self.terms.iter().enumerate() {
            let parsed = sparse_parse(&format!("terms[{p}]"), entries)?;
            let f = Cochain::from_sparse(
                &alg,
                &v,
                2,
                alg.group().zero(),
                parsed.into_iter().map(|(i, j, k, c)| (vec![i, j], k, c)),
            )
            .map_err(|e| IoError::Field {
                field: format!("terms[{p}]"),
                msg: e.to_string(),
            })?;
            terms.push(f);
        }
        Ok(Deformation::new(alg, terms)?)
    }
}

fn dense_parse(field: &str, rows: &[Vec<String>]) -> Result<CycMatrix, IoError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, t)| scalar(t, || format!("{field}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    CycMatrix::from_rows(parsed).map_err(|e| IoError::Field {
        field: field.into(),
        msg: e.to_string(),
    })
}

fn dense_doc(m: &CycMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

/// `{degree, matrix}` with `matrix[i][j]` the coefficient of `e_i` in `P(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub degree: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
}

impl OperatorDocument {
    pub fn from_operator(p: &GradedLinOp) -> Self {
        OperatorDocument {
            degree: p.degree().exponents().to_vec(),
            matrix: dense_doc(p.matrix()),
        }
    }

    pub fn build(&self, alg: &GradedAlgebra) -> Result<GradedLinOp, IoError> {
        let degree = alg.group().element(&self.degree)?;
        let m = dense_parse("matrix", &self.matrix)?;
        Ok(GradedLinOp::new(alg, degree, m)?)
    }
}

/// Reads an operator from `diag:a,b,...` or from operator-document JSON text.
pub fn parse_operator(alg: &GradedAlgebra, spec: &str) -> Result<GradedLinOp, IoError> {
    if let Some(rest) = spec.trim().strip_prefix("diag:") {
        let diag = rest
            .split(',')
            .enumerate()
            .map(|(i, t)| scalar(t.trim(), || format!("diag[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(GradedLinOp::diagonal(alg, &diag)?);
    }
    let doc: OperatorDocument = serde_json::from_str(spec)?;
    doc.build(alg)
}

/// `{format_version, terms}` with `terms[i-1]` the dense matrix of `p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceDocument {
    pub format_version: u32,
    pub terms: Vec<Vec<Vec<String>>>,
}

impl EquivalenceDocument {
    pub fn from_map(p: &EquivalenceMap) -> Self {
        EquivalenceDocument {
            format_version: FORMAT_VERSION,
            terms: p.terms().iter().map(dense_doc).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let doc: EquivalenceDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(IoError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn build(&self, alg: &GradedAlgebra) -> Result<EquivalenceMap, IoError> {
        let ms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| dense_parse(&format!("terms[{i}]"), t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EquivalenceMap::from_matrices(alg, ms)?)
    }
}

impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(Vec<usize>, usize, String)> = self
            .sparse_entries()
            .into_iter()
            .map(|(t, k, c)| (t, k, c.to_string()))
            .collect();
        let mut st = s.serialize_struct("Cochain", 3)?;
        st.serialize_field("arity", &self.arity())?;
        st.serialize_field("degree", self.degree())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl Serialize for Deformation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Deformation", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("terms", self.terms())?;
        st.end()
    }
}

impl Serialize for GradedLinOp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OperatorDocument::from_operator(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_round_trip() {
        for name in ["example37", "a_alpha(2)", "a_alpha(z4,1)", "b_lambda"] {
            let alg = catalog::load(name).unwrap().algebra;
            let text = AlgebraDocument::from_algebra(&alg, None).to_json();
            let (back, module) = AlgebraDocument::parse(&text).unwrap().build().unwrap();
            assert_eq!(back, alg, "{name}");
            assert_eq!(module, Bimodule::standard(&alg));
        }
    }

    #[test]
    fn example37_document_shape() {
        let doc = AlgebraDocument::from_algebra(&catalog::example37(), None);
        assert_eq!(doc.bicharacter, vec![vec!["-1".to_string()]]);
        assert_eq!(doc.basis_degrees, vec![vec![0], vec![1], vec![1]]);
        assert_eq!(doc.products[4], (2, 1, 0, "-1".to_string()));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            AlgebraDocument::parse("{"),
            Err(IoError::Json { .. })
        ));
        let mut doc = AlgebraDocument::from_algebra(&catalog::example37(), None);
        doc.bicharacter = vec![vec!["z4".into()]];
        assert!(matches!(doc.build(), Err(IoError::Bicharacter(_))));
        doc.bicharacter = vec![vec!["-1".into()]];
        doc.products[0].3 = "2x".into();
        match doc.build() {
            Err(IoError::Field { field, .. }) => assert_eq!(field, "products[0][3]"),
            other => panic!("{other:?}"),
        }
        doc.products[0].3 = "2".into();
        doc.products.push((1, 1, 1, "1".into()));
        assert!(matches!(
            doc.build(),
            Err(IoError::Algebra(AlgebraError::Grading { .. }))
        ));
        doc.products.pop();
        doc.basis_degrees.clear();
        doc.basis_names = None;
        doc.products.clear();
        assert!(matches!(doc.build(), Err(IoError::Field { .. })));
        let text = AlgebraDocument::from_algebra(&catalog::example37(), None)
            .to_json()
            .replace("\"format_version\": 1", "\"format_version\": 7");
        assert!(matches!(
            AlgebraDocument::parse(&text),
            Err(IoError::Version(7))
        ));
    }

    #[test]
    fn deformation_round_trip() {
        let d = catalog::b_lambda();
        let doc = DeformationDocument::from_deformation(BaseRef::Catalog("example37".into()), &d);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("{\"catalog\":\"example37\"}"));
        let back = DeformationDocument::parse(&text).unwrap().build().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn operator_specs() {
        let a = catalog::a_alpha(Cyc::one(), Cyc::from_int(-1)).unwrap();
        let p = parse_operator(&a, "diag:1, 2").unwrap();
        assert_eq!(
            p,
            GradedLinOp::diagonal(&a, &[Cyc::one(), Cyc::from_int(2)]).unwrap()
        );
        let json = r#"{"degree": [1], "matrix": [["0", "0"], ["3", "0"]]}"#;
        let s = parse_operator(&a, json).unwrap();
        assert_eq!(*s.degree(), a.group().element(&[1]).unwrap());
        let bad = r#"{"degree": [0], "matrix": [["0", "0"], ["3", "0"]]}"#;
        assert!(matches!(parse_operator(&a, bad), Err(IoError::Algebra(_))));
        assert!(parse_operator(&a, "diag:1").is_err());
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(parse_operator(&a, &text).unwrap(), s);
    }

    #[test]
    fn cochain_json() {
        let f = catalog::example37_cocycle(&Cyc::one(), &Cyc::zero(), &Cyc::from_frac(1, 2));
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "arity": 2,
                "degree": [0],
                "entries": [[[0, 0], 0, "1"], [[0, 2], 1, "1/2"], [[0, 2], 2, "1"]]
            })
        );
    }
}
