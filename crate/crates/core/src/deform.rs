//! Formal one-parameter deformations `F_λ = μ + λ f_1 + ... + λ^p f_p`, the
//! star product, obstructions and extensions, and equivalences
//! `P_λ = id + λ p_1 + ...` between deformations.
//!
//! Every identity over `k[[λ]]` with finitely many terms is checked
//! coefficient by coefficient over the base field.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Bimodule, GradedAlgebra};
use crate::cochain::{self, Arg, Cochain, CochainError};
use crate::exactnum::{vec_ops, Cyc, CycMatrix};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DeformError {
    #[error("term {index} must be a 2-cochain of degree 0 with values in A")]
    BadTerm { index: usize },
    #[error("equivalence term {index} must be a 1-cochain of degree 0 with values in A")]
    BadMapTerm { index: usize },
    #[error("star product needs two 2-cochains")]
    StarArity,
    #[error("extension needs a deformation of order at least 1")]
    OrderTooLow,
    #[error("input is not a deformation modulo λ^{order}: identity fails in degree {degree}")]
    InvalidInput { order: usize, degree: usize },
    #[error("obstruction in order {0} is not a 3-cocycle")]
    ObstructionNotCocycle(usize),
    #[error("{0} is not a 2-cocycle of degree 0")]
    NotCocycle(&'static str),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

fn check_term(alg: &GradedAlgebra, f: &Cochain, arity: usize) -> bool {
    f.arity() == arity && f.degree().is_zero() && f.target_dim() == alg.dim()
}

/// The multiplication of `A` as a 2-cochain of degree 0.
pub fn mu_cochain(alg: &GradedAlgebra) -> Cochain {
    let mut f = Cochain::zero(2, alg.group().zero(), alg.dim());
    for (i, j, k, c) in alg.product_entries() {
        f.accumulate(vec![i, j], &c, &vec_ops::unit(alg.dim(), k));
    }
    f
}

/// `(f∗g)(x,y,z) = f(g(x,y),z) - f(x,g(y,z)) - ε(|x|,|y|)(f(g(y,x),z) - f(y,g(x,z)))`,
/// stored on canonical triples.
pub fn star(alg: &GradedAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain, DeformError> {
    if f.arity() != 2 || g.arity() != 2 {
        return Err(DeformError::StarArity);
    }
    let degree = alg.group().add(f.degree(), g.degree());
    let mut out = Cochain::zero(3, degree, f.target_dim());
    for ext in cochain::exterior_basis(alg, 2) {
        for z in 0..alg.dim() {
            let v = star_eval(alg, f, g, ext[0], ext[1], z);
            out.accumulate(vec![ext[0], ext[1], z], &Cyc::one(), &v);
        }
    }
    Ok(out)
}

/// `(f∗g)(e_x, e_y, e_z)` for arbitrary basis indices.
pub fn star_eval(
    alg: &GradedAlgebra,
    f: &Cochain,
    g: &Cochain,
    x: usize,
    y: usize,
    z: usize,
) -> Vec<Cyc> {
    let half = |a: usize, b: usize| {
        let gab = g.eval_basis(alg, &[a, b]);
        let gbz = g.eval_basis(alg, &[b, z]);
        vec_ops::sub(
            &f.eval(alg, &[Arg::Vector(&gab), Arg::Basis(z)]),
            &f.eval(alg, &[Arg::Basis(a), Arg::Vector(&gbz)]),
        )
    };
    let e = alg.eps_basis(x, y);
    vec_ops::sub(&half(x, y), &vec_ops::scale(&e, &half(y, x)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    base: GradedAlgebra,
    terms: Vec<Cochain>,
}

impl Deformation {
    pub fn new(base: GradedAlgebra, terms: Vec<Cochain>) -> Result<Self, DeformError> {
        for (i, f) in terms.iter().enumerate() {
            if !check_term(&base, f, 2) {
                return Err(DeformError::BadTerm { index: i + 1 });
            }
        }
        Ok(Deformation { base, terms })
    }

    pub fn trivial(base: GradedAlgebra) -> Self {
        Deformation {
            base,
            terms: Vec::new(),
        }
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    /// `[f_1, ..., f_p]`
    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `f_k` with `f_0 = μ` and `f_k = 0` beyond the order.
    pub fn term(&self, k: usize) -> Cochain {
        match k {
            0 => mu_cochain(&self.base),
            _ if k <= self.terms.len() => self.terms[k - 1].clone(),
            _ => Cochain::zero(2, self.base.group().zero(), self.base.dim()),
        }
    }

    pub fn truncated(&self, order: usize) -> Deformation {
        Deformation {
            base: self.base.clone(),
            terms: self.terms.iter().take(order).cloned().collect(),
        }
    }

    /// Appends `f_{p+1}`.
    pub fn extended(&self, f: Cochain) -> Result<Deformation, DeformError> {
        let mut terms = self.terms.clone();
        terms.push(f);
        Deformation::new(self.base.clone(), terms)
    }

    /// `Σ_{i+j=p} f_i ∗ f_j`, the λ^p coefficient of the deformed identity.
    pub fn identity_coefficient(&self, p: usize) -> Cochain {
        let mut acc = Cochain::zero(3, self.base.group().zero(), self.base.dim());
        for i in 0..=p {
            let j = p - i;
            if i > self.order() || j > self.order() {
                continue;
            }
            let s = star(&self.base, &self.term(i), &self.term(j)).expect("arity 2 terms");
            acc = acc.add(&s).expect("degree-0 3-cochains");
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationFailure {
    pub degree: usize,
    pub triple: [usize; 3],
    #[serde(serialize_with = "crate::io::ser_vector")]
    pub residual: Vec<Cyc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub pass: bool,
    pub order: usize,
    /// Degrees `0..=max_degree` of λ were checked.
    pub max_degree: usize,
    pub failure: Option<DeformationFailure>,
}

fn first_failure(
    alg: &GradedAlgebra,
    coeff: &Cochain,
    degree: usize,
) -> Option<DeformationFailure> {
    if coeff.is_zero() {
        return None;
    }
    let n = alg.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let r = coeff.eval_basis(alg, &[x, y, z]);
                if !vec_ops::is_zero(&r) {
                    return Some(DeformationFailure {
                        degree,
                        triple: [x, y, z],
                        residual: r,
                    });
                }
            }
        }
    }
    None
}

/// Checks the left-symmetric color identity for `F_λ` in every λ-degree up to `2p`.
pub fn verify_deformation(d: &Deformation) -> DeformationReport {
    verify_up_to(d, 2 * d.order())
}

fn verify_up_to(d: &Deformation, max_degree: usize) -> DeformationReport {
    let mut failure = None;
    for p in 0..=max_degree {
        if let Some(f) = first_failure(&d.base, &d.identity_coefficient(p), p) {
            failure = Some(f);
            break;
        }
    }
    DeformationReport {
        pass: failure.is_none(),
        order: d.order(),
        max_degree,
        failure,
    }
}

/// Whether `d_2 f = 0` for a degree-0 2-cochain.
pub fn infinitesimal_cocycle_check(alg: &GradedAlgebra, f: &Cochain) -> Result<bool, DeformError> {
    if !check_term(alg, f, 2) {
        return Err(DeformError::BadTerm { index: 1 });
    }
    Ok(cochain::coboundary(alg, &Bimodule::standard(alg), f).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extension {
    /// Elimination-canonical solution (free variables zero).
    pub particular: Cochain,
    /// Basis of `Z^2_0`; every `particular + Σ c_i kernel_i` extends the deformation.
    pub kernel: Vec<Cochain>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub order: usize,
    /// `Σ_{i=1}^{p-1} f_i ∗ f_{p-i}`
    pub obstruction: Cochain,
    pub is_cocycle: bool,
    /// Solutions `f_p` of `d_2 f_p = obstruction`.
    pub extension: Option<Extension>,
    /// A nonzero `f_p` exists.
    pub nontrivial: bool,
}

/// Computes the obstruction to extending an order-`(p-1)` deformation to order `p`
/// and solves for all `f_p`.
///
/// The input only has to satisfy the identity modulo `λ^p`. The λ^p coefficient of
/// the identity is `obstruction + μ∗f_p + f_p∗μ = obstruction - d_2 f_p`, so the
/// extensions are exactly the solutions of `d_2 f_p = obstruction`.
pub fn obstruction_and_extend(d: &Deformation) -> Result<ObstructionReport, DeformError> {
    let p = d.order() + 1;
    if p < 2 {
        return Err(DeformError::OrderTooLow);
    }
    let check = verify_up_to(d, p - 1);
    if let Some(f) = check.failure {
        return Err(DeformError::InvalidInput {
            order: p,
            degree: f.degree,
        });
    }
    let alg = &d.base;
    let v = Bimodule::standard(alg);
    let zero = alg.group().zero();
    let mut obstruction = Cochain::zero(3, zero.clone(), alg.dim());
    for i in 1..p {
        let s = star(alg, &d.term(i), &d.term(p - i))?;
        obstruction = obstruction.add(&s)?;
    }
    let is_cocycle = cochain::coboundary(alg, &v, &obstruction).is_zero();
    if !is_cocycle {
        return Err(DeformError::ObstructionNotCocycle(p));
    }
    let d2 = cochain::coboundary_matrix(alg, &v, 2, &zero);
    let rhs = cochain::to_coordinates(&obstruction, &d2.codomain);
    let solved = d2
        .matrix
        .solve(&rhs)
        .expect("right-hand side sized to codomain");
    let extension = solved.map(|(x, kernel)| Extension {
        particular: cochain::from_coordinates(alg, &v, 2, &zero, &d2.domain, &x),
        kernel: kernel
            .iter()
            .map(|k| cochain::from_coordinates(alg, &v, 2, &zero, &d2.domain, k))
            .collect(),
    });
    let nontrivial = extension
        .as_ref()
        .is_some_and(|e| !e.particular.is_zero() || !e.kernel.is_empty());
    Ok(ObstructionReport {
        order: p,
        obstruction,
        is_cocycle,
        extension,
        nontrivial,
    })
}

/// `P_λ = id + λ p_1 + ... + λ^q p_q` with degree-0 linear maps `p_i: A → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceMap {
    terms: Vec<CycMatrix>,
}

impl EquivalenceMap {
    pub fn identity() -> Self {
        EquivalenceMap { terms: Vec::new() }
    }

    /// Terms as arity-1 cochains of degree 0.
    pub fn from_cochains(alg: &GradedAlgebra, terms: &[Cochain]) -> Result<Self, DeformError> {
        let mut out = Vec::with_capacity(terms.len());
        for (i, p) in terms.iter().enumerate() {
            if !check_term(alg, p, 1) {
                return Err(DeformError::BadMapTerm { index: i + 1 });
            }
            let cols: Vec<Vec<Cyc>> = (0..alg.dim()).map(|j| p.eval_basis(alg, &[j])).collect();
            out.push(CycMatrix::from_columns(alg.dim(), &cols));
        }
        Ok(EquivalenceMap { terms: out })
    }

    /// Terms as matrices (column `j` holds `p_i(e_j)`), each homogeneous of degree 0.
    pub fn from_matrices(alg: &GradedAlgebra, terms: Vec<CycMatrix>) -> Result<Self, DeformError> {
        for (i, m) in terms.iter().enumerate() {
            let ok = m.rows() == alg.dim()
                && m.cols() == alg.dim()
                && (0..alg.dim()).all(|r| {
                    (0..alg.dim()).all(|c| m.get(r, c).is_zero() || alg.degree(r) == alg.degree(c))
                });
            if !ok {
                return Err(DeformError::BadMapTerm { index: i + 1 });
            }
        }
        Ok(EquivalenceMap { terms })
    }

    /// `[p_1, ..., p_q]`
    pub fn terms(&self) -> &[CycMatrix] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn term_cochains(&self, alg: &GradedAlgebra) -> Vec<Cochain> {
        self.terms
            .iter()
            .map(|m| {
                let mut f = Cochain::zero(1, alg.group().zero(), alg.dim());
                for j in 0..alg.dim() {
                    f.accumulate(vec![j], &Cyc::one(), &m.column(j));
                }
                f
            })
            .collect()
    }

    fn term(&self, dim: usize, k: usize) -> Option<CycMatrix> {
        match k {
            0 => Some(CycMatrix::identity(dim)),
            _ => self.terms.get(k - 1).cloned(),
        }
    }

    /// The formal inverse truncated at `order`: `q_k = -Σ_{i=1}^{k} p_i q_{k-i}`.
    pub fn inverse(&self, dim: usize, order: usize) -> EquivalenceMap {
        let mut q = vec![CycMatrix::identity(dim)];
        for k in 1..=order {
            let mut acc = CycMatrix::zeros(dim, dim);
            for i in 1..=k {
                if let Some(p) = self.term(dim, i) {
                    acc = acc.add(&p.mul(&q[k - i]).expect("square")).expect("square");
                }
            }
            q.push(acc.scale(&Cyc::from_int(-1)));
        }
        q.remove(0);
        EquivalenceMap { terms: q }
    }
}

/// The deformation `E` with `P_λ(E(x,y)) = F(P_λ x, P_λ y)` up to `λ^order`:
/// `e_p = Σ_{i+j+s=p} f_s(p_i x, p_j y) - Σ_{i=1}^{p} p_i(e_{p-i}(x,y))`.
pub fn transport(d: &Deformation, p: &EquivalenceMap, order: usize) -> Deformation {
    let alg = &d.base;
    let n = alg.dim();
    let zero = alg.group().zero();
    let fs: Vec<Cochain> = (0..=order).map(|s| d.term(s)).collect();
    let ps: Vec<Option<CycMatrix>> = (0..=order).map(|i| p.term(n, i)).collect();
    // columns p_i(e_x), or None when p_i = 0
    let pcols: Vec<Option<Vec<Vec<Cyc>>>> = ps
        .iter()
        .map(|m| m.as_ref().map(|m| (0..n).map(|j| m.column(j)).collect()))
        .collect();
    let mut es: Vec<Cochain> = vec![fs[0].clone()];
    for k in 1..=order {
        let mut e = Cochain::zero(2, zero.clone(), n);
        for x in 0..n {
            for y in 0..n {
                let mut val = vec_ops::zeros(n);
                for s in 0..=k {
                    for i in 0..=k - s {
                        let j = k - s - i;
                        let (Some(pi), Some(pj)) = (&pcols[i], &pcols[j]) else {
                            continue;
                        };
                        let v = fs[s].eval(alg, &[Arg::Vector(&pi[x]), Arg::Vector(&pj[y])]);
                        vec_ops::axpy(&mut val, &Cyc::one(), &v);
                    }
                }
                for i in 1..=k {
                    let Some(pi) = &ps[i] else { continue };
                    let prev = es[k - i].eval_basis(alg, &[x, y]);
                    let v = pi.mul_vec(&prev).expect("square");
                    vec_ops::axpy(&mut val, &Cyc::from_int(-1), &v);
                }
                e.accumulate(vec![x, y], &Cyc::one(), &val);
            }
        }
        es.push(e);
    }
    es.remove(0);
    Deformation {
        base: alg.clone(),
        terms: es,
    }
}

/// Compares two deformations term by term up to `order`; `None` when they agree.
pub fn first_difference(a: &Deformation, b: &Deformation, order: usize) -> Option<usize> {
    (1..=order).find(|&k| a.term(k) != b.term(k))
}

/// Finds a degree-0 `p_1` with `d_1 p_1 = e_1 - f_1`, if the two cocycles are cohomologous.
/// The result is the elimination-canonical solution; all others differ by ε-derivations.
pub fn infinitesimal_equivalence(
    alg: &GradedAlgebra,
    f1: &Cochain,
    e1: &Cochain,
) -> Result<Option<Cochain>, DeformError> {
    for (f, name) in [(f1, "first argument"), (e1, "second argument")] {
        if !check_term(alg, f, 2) || !infinitesimal_cocycle_check(alg, f)? {
            return Err(DeformError::NotCocycle(name));
        }
    }
    let v = Bimodule::standard(alg);
    let zero = alg.group().zero();
    let d1 = cochain::coboundary_matrix(alg, &v, 1, &zero);
    let diff = e1.sub(f1)?;
    let rhs = cochain::to_coordinates(&diff, &d1.codomain);
    Ok(d1
        .matrix
        .solve(&rhs)
        .expect("right-hand side sized to codomain")
        .map(|(x, _)| cochain::from_coordinates(alg, &v, 1, &zero, &d1.domain, &x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ex37_cocycle(r: i64, s: i64, t: i64) -> Cochain {
        catalog::example37_cocycle(&Cyc::from_int(r), &Cyc::from_int(s), &Cyc::from_int(t))
    }

    #[test]
    fn star_of_mu_is_the_identity_residual() {
        for alg in [
            catalog::example37(),
            catalog::a_alpha(Cyc::from_int(2), Cyc::from_int(-1)).unwrap(),
        ] {
            let mu = mu_cochain(&alg);
            assert!(star(&alg, &mu, &mu).unwrap().is_zero());
        }
    }

    #[test]
    fn star_with_zero() {
        let alg = catalog::example37();
        let z = Cochain::zero(2, alg.group().zero(), 3);
        let f = ex37_cocycle(1, 2, 3);
        assert!(star(&alg, &z, &f).unwrap().is_zero());
        assert!(star(&alg, &f, &z).unwrap().is_zero());
    }

    #[test]
    fn s_cocycle_squares_to_zero() {
        let alg = catalog::example37();
        let f = ex37_cocycle(0, 1, 0);
        assert!(star(&alg, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn linearized_star_is_minus_d2() {
        // μ∗f + f∗μ = -d_2 f for every degree-0 2-cochain f.
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let zero = alg.group().zero();
        let mu = mu_cochain(&alg);
        let basis = cochain::cochain_basis(&alg, &v, 2, &zero);
        for s in &basis {
            let f = cochain::from_coordinates(
                &alg,
                &v,
                2,
                &zero,
                std::slice::from_ref(s),
                &[Cyc::one()],
            );
            let lin = star(&alg, &mu, &f)
                .unwrap()
                .add(&star(&alg, &f, &mu).unwrap())
                .unwrap();
            let d2 = cochain::coboundary(&alg, &v, &f);
            assert_eq!(lin, d2.neg(), "slot {s:?}");
        }
    }

    #[test]
    fn trivial_deformation_passes() {
        let d = Deformation::trivial(catalog::example37());
        let r = verify_deformation(&d);
        assert!(r.pass);
        assert_eq!(r.max_degree, 0);
    }

    #[test]
    fn non_cocycle_fails_in_degree_one() {
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let f = Cochain::from_sparse(
            &alg,
            &v,
            2,
            alg.group().zero(),
            vec![(vec![1, 1], 0, Cyc::one())],
        )
        .unwrap();
        let cocycle = infinitesimal_cocycle_check(&alg, &f).unwrap();
        let r = verify_deformation(&Deformation::new(alg, vec![f]).unwrap());
        assert_eq!(r.pass, cocycle);
        if !cocycle {
            assert_eq!(r.failure.unwrap().degree, 1);
        }
    }

    #[test]
    fn extension_of_s_cocycle() {
        let alg = catalog::example37();
        let d = Deformation::new(alg.clone(), vec![ex37_cocycle(0, 1, 0)]).unwrap();
        let rep = obstruction_and_extend(&d).unwrap();
        assert_eq!(rep.order, 2);
        assert!(rep.obstruction.is_zero());
        let ext = rep.extension.unwrap();
        assert!(ext.particular.is_zero());
        let z2 = cochain::cohomology(&alg, &Bimodule::standard(&alg), 2, &alg.group().zero());
        assert_eq!(ext.kernel.len(), z2.dim_cocycles);
        assert!(rep.nontrivial);
        for k in &ext.kernel {
            let e = d.extended(k.clone()).unwrap();
            assert!(verify_up_to(&e, 2).pass);
        }
    }

    #[test]
    fn extension_rejects_invalid_input() {
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let f = Cochain::from_sparse(
            &alg,
            &v,
            2,
            alg.group().zero(),
            vec![(vec![1, 1], 0, Cyc::one())],
        )
        .unwrap();
        if !infinitesimal_cocycle_check(&alg, &f).unwrap() {
            let d = Deformation::new(alg, vec![f]).unwrap();
            assert!(matches!(
                obstruction_and_extend(&d),
                Err(DeformError::InvalidInput { degree: 1, .. })
            ));
        }
        assert_eq!(
            obstruction_and_extend(&Deformation::trivial(catalog::example37())),
            Err(DeformError::OrderTooLow)
        );
    }

    #[test]
    fn transport_by_identity_truncates() {
        let alg = catalog::example37();
        let d = Deformation::new(alg, vec![ex37_cocycle(1, 0, 0), ex37_cocycle(0, 1, 0)]).unwrap();
        let e = transport(&d, &EquivalenceMap::identity(), 1);
        assert_eq!(e, d.truncated(1));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let alg = catalog::example37();
        let m = CycMatrix::from_ints(&[&[3, 0, 0], &[0, 1, 2], &[0, -1, 0]]);
        let p = EquivalenceMap::from_matrices(&alg, vec![m.clone(), m.scale(&Cyc::from_int(2))])
            .unwrap();
        let q = p.inverse(3, 4);
        // (Σ p_i λ^i)(Σ q_j λ^j) = 1 up to λ^4
        for k in 1..=4 {
            let mut acc = CycMatrix::zeros(3, 3);
            for i in 0..=k {
                let (Some(a), Some(b)) = (p.term(3, i), q.term(3, k - i)) else {
                    continue;
                };
                acc = acc.add(&a.mul(&b).unwrap()).unwrap();
            }
            assert!(acc.is_zero(), "degree {k}");
        }
    }

    #[test]
    fn bad_terms_rejected() {
        let alg = catalog::example37();
        let g1 = Cochain::zero(2, alg.group().element(&[1]).unwrap(), 3);
        assert_eq!(
            Deformation::new(alg.clone(), vec![g1]),
            Err(DeformError::BadTerm { index: 1 })
        );
        let odd = CycMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(EquivalenceMap::from_matrices(&alg, vec![odd]).is_err());
    }
}
