//! Built-in example algebras, cocycles, deformations and operators.
//!
//! Names accepted by [`load`]: `example37`, `a_alpha`, `a_alpha(α)`, `a_alpha(α,q)`,
//! `a_lambda_t(t)` and `b_lambda`. Parameters use the scalar text syntax.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, Bimodule, GradedAlgebra, GradedLinOp};
use crate::cochain::Cochain;
use crate::deform::{verify_deformation, Deformation};
use crate::exactnum::{parse_scalar, Cyc, CycMatrix, NumError};
use crate::grading::{AbelianGroup, Bicharacter};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("bad parameter list in {0:?}")]
    Parameters(String),
    #[error("invalid parameter: {0}")]
    Scalar(#[from] NumError),
    #[error("eps(1,1) = {0} is not a valid bicharacter on Z (needs q = 1 or q = -1)")]
    Bicharacter(Cyc),
    #[error("catalog entry {0} failed its load-time check")]
    SelfCheck(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attachment {
    Cochain(Cochain),
    Deformation(Deformation),
    Operator(GradedLinOp),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: GradedAlgebra,
    pub provenance: String,
    pub attachments: BTreeMap<String, Attachment>,
}

impl CatalogEntry {
    pub fn deformation(&self) -> Option<&Deformation> {
        self.attachments.values().find_map(|a| match a {
            Attachment::Deformation(d) => Some(d),
            _ => None,
        })
    }
}

/// Short descriptions of the catalog names.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "example37",
            "3-dim left-symmetric superalgebra: xx = 2x, xy1 = y1, xy2 = y2, y1y2 = x, y2y1 = -x",
        ),
        (
            "a_alpha(alpha[,q])",
            "2-dim algebra with x^2 = alpha*y over Z, |x| = 1, |y| = 2, eps(1,1) = q (default -1)",
        ),
        (
            "a_lambda_t(t)",
            "order-1 deformation of example37: f1(x,x) = (t-1)x, f1(x,y2) = (t-1)y2",
        ),
        (
            "b_lambda",
            "order-1 deformation of example37: f1(x,y2) = y1",
        ),
    ]
}

/// Basis `x, y1, y2` graded by `Z_2` with degrees `(0, 1, 1)` and the sign bicharacter.
pub fn example37() -> GradedAlgebra {
    let g = AbelianGroup::cyclic(2);
    let d = |e: i64| g.element(&[e]).expect("rank 1");
    let c = Cyc::from_int;
    GradedAlgebra::new(
        Bicharacter::super_sign(),
        vec![d(0), d(1), d(1)],
        vec![
            (0, 0, 0, c(2)),
            (0, 1, 1, c(1)),
            (0, 2, 2, c(1)),
            (1, 2, 0, c(1)),
            (2, 1, 0, c(-1)),
        ],
    )
    .expect("example37 is graded")
    .with_names(vec!["x".into(), "y1".into(), "y2".into()])
}

/// `x² = α y` over `G = Z` with `|x| = 1`, `|y| = 2` and `ε(1,1) = q`.
pub fn a_alpha(alpha: Cyc, q: Cyc) -> Result<GradedAlgebra, CatalogError> {
    let g = AbelianGroup::integers();
    let b = Bicharacter::new(g.clone(), vec![vec![q.clone()]]).expect("1x1 table");
    if !b.validate().valid {
        return Err(CatalogError::Bicharacter(q));
    }
    let d = |e: i64| g.element(&[e]).expect("rank 1");
    Ok(
        GradedAlgebra::new(b, vec![d(1), d(2)], vec![(0, 0, 1, alpha)])?
            .with_names(vec!["x".into(), "y".into()]),
    )
}

/// The 2-cochain `f(x,x) = r x`, `f(x,y1) = s y2`, `f(x,y2) = t y1 + r y2` on `example37`.
pub fn example37_cocycle(r: &Cyc, s: &Cyc, t: &Cyc) -> Cochain {
    let a = example37();
    let v = Bimodule::standard(&a);
    Cochain::from_sparse(
        &a,
        &v,
        2,
        a.group().zero(),
        vec![
            (vec![0, 0], 0, r.clone()),
            (vec![0, 1], 2, s.clone()),
            (vec![0, 2], 1, t.clone()),
            (vec![0, 2], 2, r.clone()),
        ],
    )
    .expect("degree-0 cochain")
}

/// First-order term of `A_λ(t)`: `f1(x,x) = (t-1)x`, `f1(x,y2) = (t-1)y2`.
pub fn a_lambda_t(t: &Cyc) -> Deformation {
    let a = example37();
    let v = Bimodule::standard(&a);
    let u = t - &Cyc::one();
    let f1 = Cochain::from_sparse(
        &a,
        &v,
        2,
        a.group().zero(),
        vec![(vec![0, 0], 0, u.clone()), (vec![0, 2], 2, u)],
    )
    .expect("degree-0 cochain");
    Deformation::new(a, vec![f1]).expect("degree-0 term")
}

/// First-order term of `B_λ`: `f1(x,y2) = y1`.
pub fn b_lambda() -> Deformation {
    let a = example37();
    let v = Bimodule::standard(&a);
    let f1 = Cochain::from_sparse(
        &a,
        &v,
        2,
        a.group().zero(),
        vec![(vec![0, 2], 1, Cyc::one())],
    )
    .expect("degree-0 cochain");
    Deformation::new(a, vec![f1]).expect("degree-0 term")
}

const LAMBDA_NOTE: &str = "the family table lists total products at a fixed formal parameter; \
    f1 is the table minus the base products (lambda normalized to 1)";

fn split_call(name: &str) -> Result<(&str, Vec<&str>), CatalogError> {
    let name = name.trim();
    let Some(open) = name.find('(') else {
        return Ok((name, Vec::new()));
    };
    if !name.ends_with(')') {
        return Err(CatalogError::Parameters(name.to_string()));
    }
    let args = &name[open + 1..name.len() - 1];
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CatalogError::Parameters(name.to_string()));
    }
    Ok((name[..open].trim(), parts))
}

pub fn load(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (base, args) = split_call(name)?;
    let scalars = args
        .iter()
        .map(|a| parse_scalar(a))
        .collect::<Result<Vec<_>, _>>()?;
    let arity_error = || CatalogError::Parameters(name.to_string());
    let mut attachments = BTreeMap::new();
    let entry = match base {
        "example37" => {
            if !scalars.is_empty() {
                return Err(arity_error());
            }
            for (label, r, s, t) in [
                ("cocycle_r", 1, 0, 0),
                ("cocycle_s", 0, 1, 0),
                ("cocycle_t", 0, 0, 1),
            ] {
                let f = example37_cocycle(&Cyc::from_int(r), &Cyc::from_int(s), &Cyc::from_int(t));
                attachments.insert(label.to_string(), Attachment::Cochain(f));
            }
            CatalogEntry {
                name: "example37".into(),
                algebra: example37(),
                provenance: "left-symmetric superalgebra over G = Z_2 with A_0 = <x>, A_1 = <y1, y2>; \
                    attachments are the degree-0 2-cocycles f(x,x) = rx, f(x,y1) = sy2, f(x,y2) = ty1 + ry2"
                    .into(),
                attachments,
            }
        }
        "a_alpha" => {
            let (alpha, q) = match scalars.as_slice() {
                [] => (Cyc::one(), Cyc::from_int(-1)),
                [a] => (a.clone(), Cyc::from_int(-1)),
                [a, q] => (a.clone(), q.clone()),
                _ => return Err(arity_error()),
            };
            let algebra = a_alpha(alpha.clone(), q.clone())?;
            attachments.insert(
                "scalar_two".into(),
                Attachment::Operator(GradedLinOp::scalar(&algebra, Cyc::from_int(2))),
            );
            let shift = GradedLinOp::infer(&algebra, CycMatrix::from_ints(&[&[0, 0], &[1, 0]]))?;
            attachments.insert("shift_x_to_y".into(), Attachment::Operator(shift));
            CatalogEntry {
                name: format!("a_alpha({alpha},{q})"),
                algebra,
                provenance: format!(
                    "two-dimensional algebra with unique nonzero product x^2 = alpha*y; \
                     grading chosen here: G = Z, |x| = 1, |y| = 2, eps(1,1) = {q}"
                ),
                attachments,
            }
        }
        "a_lambda_t" => {
            let [t] = scalars.as_slice() else {
                return Err(arity_error());
            };
            let d = a_lambda_t(t);
            attachments.insert("deformation".into(), Attachment::Deformation(d));
            CatalogEntry {
                name: format!("a_lambda_t({t})"),
                algebra: example37(),
                provenance: format!(
                    "deformation A_lambda(t) of example37 with F(x,x) = (t+1)x, F(x,y2) = ty2, t = {t}; {LAMBDA_NOTE}"
                ),
                attachments,
            }
        }
        "b_lambda" => {
            if !scalars.is_empty() {
                return Err(arity_error());
            }
            attachments.insert("deformation".into(), Attachment::Deformation(b_lambda()));
            CatalogEntry {
                name: "b_lambda".into(),
                algebra: example37(),
                provenance: format!(
                    "deformation B_lambda of example37 with F(x,y2) = y1 + y2; {LAMBDA_NOTE}"
                ),
                attachments,
            }
        }
        _ => return Err(CatalogError::Unknown(name.to_string())),
    };
    self_check(&entry)?;
    Ok(entry)
}

fn self_check(entry: &CatalogEntry) -> Result<(), CatalogError> {
    let ok = entry.algebra.bicharacter().validate().valid
        && entry.algebra.verify_left_symmetric().pass
        && entry.attachments.values().all(|a| match a {
            Attachment::Deformation(d) => verify_deformation(d).pass,
            _ => true,
        });
    if ok {
        Ok(())
    } else {
        Err(CatalogError::SelfCheck(entry.name.clone()))
    }
}
