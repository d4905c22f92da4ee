//! Nijenhuis and Rota–Baxter operators on graded algebras: per-pair residuals,
//! the power identity and the `P² ∈ {0, P, I}` correspondences.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedAlgebra, GradedLinOp};
use crate::exactnum::{vec_ops, Cyc, CycMatrix};
use crate::grading::GroupElement;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("operator is not Nijenhuis ({0} nonzero residual entries)")]
    NotNijenhuis(usize),
    #[error("power identity needs eps(|P|,|P|) = 1, found {0}")]
    EpsilonHypothesis(Cyc),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ResidualKind {
    Nijenhuis,
    RotaBaxter {
        #[serde(serialize_with = "crate::io::ser_scalar")]
        weight: Cyc,
    },
    PowerIdentity {
        i: u32,
        j: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResidual {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "crate::io::ser_vector")]
    pub residual: Vec<Cyc>,
}

/// Residuals on basis pairs; only nonzero pairs are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorResidual {
    pub kind: ResidualKind,
    pub pairs_checked: usize,
    pub nonzero: Vec<PairResidual>,
    /// Total number of nonzero residual coordinates.
    pub max_support: usize,
}

impl OperatorResidual {
    pub fn is_zero(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn at(&self, i: usize, j: usize) -> Option<&[Cyc]> {
        self.nonzero
            .iter()
            .find(|p| p.i == i && p.j == j)
            .map(|p| p.residual.as_slice())
    }
}

fn collect(
    alg: &GradedAlgebra,
    kind: ResidualKind,
    mut f: impl FnMut(usize, usize) -> Vec<Cyc>,
) -> OperatorResidual {
    let n = alg.dim();
    let mut nonzero = Vec::new();
    let mut support = 0;
    for i in 0..n {
        for j in 0..n {
            let r = f(i, j);
            let s = r.iter().filter(|c| !c.is_zero()).count();
            if s > 0 {
                support += s;
                nonzero.push(PairResidual { i, j, residual: r });
            }
        }
    }
    OperatorResidual {
        kind,
        pairs_checked: n * n,
        nonzero,
        max_support: support,
    }
}

/// `P(x)P(y) - ε(|P|+|x|,|P|) P(P(x)y) - P(xP(y))`, the part shared by both operator identities.
fn common_part(
    alg: &GradedAlgebra,
    p: &CycMatrix,
    deg: &GroupElement,
    i: usize,
    j: usize,
) -> Vec<Cyc> {
    let g = alg.group();
    let px = p.column(i);
    let py = p.column(j);
    let e = alg.eps(&g.add(deg, alg.degree(i)), deg);
    let t1 = alg.mul(&px, &py);
    let t2 = p.mul_vec(&alg.mul_basis_right(&px, j)).expect("square");
    let t3 = p.mul_vec(&alg.mul_basis_left(i, &py)).expect("square");
    vec_ops::sub(&vec_ops::sub(&t1, &vec_ops::scale(&e, &t2)), &t3)
}

fn basis_product(alg: &GradedAlgebra, i: usize, j: usize) -> Vec<Cyc> {
    let mut v = vec_ops::zeros(alg.dim());
    for (k, c) in alg.product_basis(i, j) {
        v[*k] = c.clone();
    }
    v
}

/// Residual of `P(x)P(y) = ε(|P|+|x|,|P|)P(P(x)y) + P(xP(y)) - ε(|x|,|P|)P²(xy)` on basis pairs.
pub fn nijenhuis_residual(
    alg: &GradedAlgebra,
    p: &GradedLinOp,
) -> Result<OperatorResidual, AlgebraError> {
    p.validate(alg)?;
    let m = p.matrix();
    let m2 = m.mul(m)?;
    let deg = p.degree();
    Ok(collect(alg, ResidualKind::Nijenhuis, |i, j| {
        let base = common_part(alg, m, deg, i, j);
        let e = alg.eps(alg.degree(i), deg);
        let t4 = m2.mul_vec(&basis_product(alg, i, j)).expect("square");
        vec_ops::add(&base, &vec_ops::scale(&e, &t4))
    }))
}

/// Residual of `P(x)P(y) = ε(|P|+|x|,|P|)P(P(x)y) + P(xP(y)) + λP(xy)` on basis pairs.
pub fn rota_baxter_residual(
    alg: &GradedAlgebra,
    p: &GradedLinOp,
    weight: &Cyc,
) -> Result<OperatorResidual, AlgebraError> {
    p.validate(alg)?;
    let m = p.matrix();
    let deg = p.degree();
    Ok(collect(
        alg,
        ResidualKind::RotaBaxter {
            weight: weight.clone(),
        },
        |i, j| {
            let base = common_part(alg, m, deg, i, j);
            let t4 = m.mul_vec(&basis_product(alg, i, j)).expect("square");
            vec_ops::sub(&base, &vec_ops::scale(weight, &t4))
        },
    ))
}

/// Residual of `P^i(x)P^j(y) = ε(i|P|+|x|, j|P|)P^j(P^i(x)y) + P^i(xP^j(y)) - ε(|x|, j|P|)P^{i+j}(xy)`.
///
/// Requires `P` Nijenhuis and `ε(|P|,|P|) = 1`; each violation has its own error.
pub fn nijenhuis_power_identity(
    alg: &GradedAlgebra,
    p: &GradedLinOp,
    i: u32,
    j: u32,
) -> Result<OperatorResidual, OperatorError> {
    let e = alg.eps(p.degree(), p.degree());
    if !e.is_one() {
        return Err(OperatorError::EpsilonHypothesis(e));
    }
    let n = nijenhuis_residual(alg, p)?;
    if !n.is_zero() {
        return Err(OperatorError::NotNijenhuis(n.max_support));
    }
    let g = alg.group();
    let pi = p.power(alg, i)?;
    let pj = p.power(alg, j)?;
    let pij = p.power(alg, i + j)?;
    let (di, dj) = (pi.degree().clone(), pj.degree().clone());
    Ok(collect(
        alg,
        ResidualKind::PowerIdentity { i, j },
        |a, b| {
            let pix = pi.column(a);
            let pjy = pj.column(b);
            let t1 = alg.mul(&pix, &pjy);
            let e2 = alg.eps(&g.add(&di, alg.degree(a)), &dj);
            let t2 = pj.apply(&alg.mul_basis_right(&pix, b));
            let t3 = pi.apply(&alg.mul_basis_left(a, &pjy));
            let e4 = alg.eps(alg.degree(a), &dj);
            let t4 = pij.apply(&basis_product(alg, a, b));
            let r = vec_ops::sub(&vec_ops::sub(&t1, &vec_ops::scale(&e2, &t2)), &t3);
            vec_ops::add(&r, &vec_ops::scale(&e4, &t4))
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `P² = 0`
    SquareZero,
    /// `P² = P`
    Idempotent,
    /// `P² = I` (degree 0)
    Involution,
    /// `P²` vanishes on `A²`
    SquareKillsProducts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Biconditional {
    pub hypothesis: Hypothesis,
    /// The Rota–Baxter side, e.g. `"P - I in RB(2)"`.
    pub counterpart: String,
    pub nijenhuis_zero: bool,
    pub counterpart_zero: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub hypotheses: Vec<Hypothesis>,
    pub checks: Vec<Biconditional>,
    pub all_agree: bool,
}

/// Detects which of `P² = 0`, `P² = P`, `P² = I`, `P²|_{A²} = 0` hold and compares
/// the Nijenhuis status of `P` with the matching Rota–Baxter statuses.
pub fn correspondence_checks(
    alg: &GradedAlgebra,
    p: &GradedLinOp,
) -> Result<CorrespondenceReport, AlgebraError> {
    p.validate(alg)?;
    let n = alg.dim();
    let m = p.matrix();
    let m2 = m.mul(m)?;
    let mut hypotheses = Vec::new();
    if m2.is_zero() {
        hypotheses.push(Hypothesis::SquareZero);
    }
    if m2 == *m {
        hypotheses.push(Hypothesis::Idempotent);
    }
    if p.degree().is_zero() && m2 == CycMatrix::identity(n) {
        hypotheses.push(Hypothesis::Involution);
    }
    if alg
        .square_span()
        .iter()
        .all(|v| vec_ops::is_zero(&m2.mul_vec(v).expect("square")))
    {
        hypotheses.push(Hypothesis::SquareKillsProducts);
    }

    let nij = nijenhuis_residual(alg, p)?.is_zero();
    let mut checks = Vec::new();
    let mut push = |h: Hypothesis, label: &str, zero: bool| {
        checks.push(Biconditional {
            hypothesis: h,
            counterpart: label.to_string(),
            nijenhuis_zero: nij,
            counterpart_zero: zero,
            agree: nij == zero,
        });
    };
    for &h in &hypotheses {
        match h {
            Hypothesis::SquareZero | Hypothesis::SquareKillsProducts => {
                let z = rota_baxter_residual(alg, p, &Cyc::zero())?.is_zero();
                push(h, "P in RB(0)", z);
            }
            Hypothesis::Idempotent => {
                let z = rota_baxter_residual(alg, p, &Cyc::from_int(-1))?.is_zero();
                push(h, "P in RB(-1)", z);
            }
            Hypothesis::Involution => {
                let plus = p.shift(alg, &Cyc::one())?;
                let minus = p.shift(alg, &Cyc::from_int(-1))?;
                let z = rota_baxter_residual(alg, &plus, &Cyc::from_int(-2))?.is_zero();
                push(h, "P + I in RB(-2)", z);
                let z = rota_baxter_residual(alg, &minus, &Cyc::from_int(2))?.is_zero();
                push(h, "P - I in RB(2)", z);
            }
        }
    }
    let all_agree = checks.iter().all(|c| c.agree);
    Ok(CorrespondenceReport {
        hypotheses,
        checks,
        all_agree,
    })
}
