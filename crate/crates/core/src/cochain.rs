//! Graded cochains `C^n(A, V) = Hom((Λ^{n-1}_ε A) ⊗ A, V)`, the coboundary
//! operator as an exact matrix on each graded component, and cohomology.
//!
//! A cochain of arity `n` is stored on canonical tuples `(i_1, ..., i_{n-1}, i_n)`:
//! the first `n-1` indices form an ε-exterior basis element (non-decreasing,
//! strictly increasing through basis vectors with `ε(|e|,|e|) ≠ -1`), the last
//! index is unconstrained. Values on other tuples follow from
//! `x ∧ y = -ε(|x|,|y|) y ∧ x`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Bimodule, GradedAlgebra};
use crate::exactnum::{vec_ops, Cyc, CycMatrix};
use crate::grading::GroupElement;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("expected a cochain of arity {expected}, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("basis index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("value vector has length {found}, target dimension is {expected}")]
    Length { expected: usize, found: usize },
    #[error("entry {tuple:?} -> coordinate {target} breaks homogeneity of degree {degree}")]
    Homogeneity {
        tuple: Vec<usize>,
        target: usize,
        degree: GroupElement,
    },
    #[error("entry {0:?} is forced to vanish by ε-antisymmetry but has a nonzero value")]
    Alternating(Vec<usize>),
    #[error("cochains have different degrees or targets")]
    Incompatible,
}

/// Sorts the exterior part of a tuple, accumulating `-ε` per adjacent swap.
/// Returns `None` when the tuple vanishes (a repeated basis vector with `ε(|e|,|e|) ≠ -1`).
pub fn canonicalize(alg: &GradedAlgebra, prefix: &[usize]) -> Option<(Cyc, Vec<usize>)> {
    let mut t = prefix.to_vec();
    let mut sign = Cyc::one();
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            sign = -(&sign * &alg.eps_basis(t[j - 1], t[j]));
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    let minus_one = Cyc::from_int(-1);
    for w in t.windows(2) {
        if w[0] == w[1] && alg.eps_basis(w[0], w[0]) != minus_one {
            return None;
        }
    }
    Some((sign, t))
}

/// Canonical basis of `Λ^k_ε A` as index tuples, in lexicographic order.
pub fn exterior_basis(alg: &GradedAlgebra, k: usize) -> Vec<Vec<usize>> {
    let n = alg.dim();
    let minus_one = Cyc::from_int(-1);
    let repeatable: Vec<bool> = (0..n).map(|i| alg.eps_basis(i, i) == minus_one).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        repeatable: &[bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&p) if repeatable[p] => p,
            Some(&p) => p + 1,
        };
        for i in start..n {
            cur.push(i);
            rec(n, k, repeatable, cur, out);
            cur.pop();
        }
    }
    rec(n, k, &repeatable, &mut cur, &mut out);
    out
}

/// Argument of a cochain evaluation.
#[derive(Debug, Clone, Copy)]
pub enum Arg<'a> {
    Basis(usize),
    Vector(&'a [Cyc]),
}

/// A homogeneous n-cochain with values in a bimodule of dimension `target_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    degree: GroupElement,
    target_dim: usize,
    entries: BTreeMap<Vec<usize>, Vec<Cyc>>,
}

impl Cochain {
    pub fn zero(arity: usize, degree: GroupElement, target_dim: usize) -> Self {
        Cochain {
            arity,
            degree,
            target_dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a cochain from `(tuple, value)` pairs. Tuples whose exterior part is
    /// not canonical are normalized (values of repeated tuples add up).
    pub fn from_entries(
        alg: &GradedAlgebra,
        target: &Bimodule,
        arity: usize,
        degree: GroupElement,
        entries: impl IntoIterator<Item = (Vec<usize>, Vec<Cyc>)>,
    ) -> Result<Self, CochainError> {
        if arity == 0 {
            return Err(CochainError::ZeroArity);
        }
        let mut f = Cochain::zero(arity, degree, target.dim());
        for (tuple, value) in entries {
            if tuple.len() != arity {
                return Err(CochainError::Arity {
                    expected: arity,
                    found: tuple.len(),
                });
            }
            if let Some(&bad) = tuple.iter().find(|&&i| i >= alg.dim()) {
                return Err(CochainError::Index {
                    index: bad,
                    dim: alg.dim(),
                });
            }
            if value.len() != target.dim() {
                return Err(CochainError::Length {
                    expected: target.dim(),
                    found: value.len(),
                });
            }
            let src = source_degree(alg, &f.degree, &tuple);
            for (v, c) in value.iter().enumerate() {
                if !c.is_zero() && target.degrees()[v] != src {
                    return Err(CochainError::Homogeneity {
                        tuple: tuple.clone(),
                        target: v,
                        degree: f.degree.clone(),
                    });
                }
            }
            let Some((sign, mut key)) = canonicalize(alg, &tuple[..arity - 1]) else {
                if vec_ops::is_zero(&value) {
                    continue;
                }
                return Err(CochainError::Alternating(tuple));
            };
            key.push(tuple[arity - 1]);
            f.accumulate(key, &sign, &value);
        }
        Ok(f)
    }

    /// Sparse form: `(tuple, target coordinate, coefficient)`.
    pub fn from_sparse(
        alg: &GradedAlgebra,
        target: &Bimodule,
        arity: usize,
        degree: GroupElement,
        entries: impl IntoIterator<Item = (Vec<usize>, usize, Cyc)>,
    ) -> Result<Self, CochainError> {
        let mut dense: Vec<(Vec<usize>, Vec<Cyc>)> = Vec::new();
        for (t, k, c) in entries {
            if k >= target.dim() {
                return Err(CochainError::Index {
                    index: k,
                    dim: target.dim(),
                });
            }
            let mut v = vec_ops::zeros(target.dim());
            v[k] = c;
            dense.push((t, v));
        }
        Self::from_entries(alg, target, arity, degree, dense)
    }

    pub(crate) fn accumulate(&mut self, key: Vec<usize>, c: &Cyc, value: &[Cyc]) {
        if c.is_zero() || vec_ops::is_zero(value) {
            return;
        }
        let slot = self
            .entries
            .entry(key.clone())
            .or_insert_with(|| vec_ops::zeros(value.len()));
        vec_ops::axpy(slot, c, value);
        if vec_ops::is_zero(slot) {
            self.entries.remove(&key);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero values on canonical tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Cyc>)> {
        self.entries.iter()
    }

    /// Nonzero `(tuple, coordinate, coefficient)` triples in canonical order.
    pub fn sparse_entries(&self) -> Vec<(Vec<usize>, usize, Cyc)> {
        let mut out = Vec::new();
        for (t, v) in &self.entries {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out.push((t.clone(), k, c.clone()));
                }
            }
        }
        out
    }

    /// Value on a basis tuple whose exterior part need not be canonical.
    pub fn eval_basis(&self, alg: &GradedAlgebra, args: &[usize]) -> Vec<Cyc> {
        debug_assert_eq!(args.len(), self.arity);
        let n = self.arity;
        match canonicalize(alg, &args[..n - 1]) {
            None => vec_ops::zeros(self.target_dim),
            Some((sign, mut key)) => {
                key.push(args[n - 1]);
                match self.entries.get(&key) {
                    None => vec_ops::zeros(self.target_dim),
                    Some(v) if sign.is_one() => v.clone(),
                    Some(v) => vec_ops::scale(&sign, v),
                }
            }
        }
    }

    /// Multilinear evaluation on basis vectors and coordinate vectors.
    pub fn eval(&self, alg: &GradedAlgebra, args: &[Arg<'_>]) -> Vec<Cyc> {
        assert_eq!(args.len(), self.arity, "cochain arity");
        let expanded: Vec<Vec<(usize, Cyc)>> = args
            .iter()
            .map(|a| match a {
                Arg::Basis(i) => vec![(*i, Cyc::one())],
                Arg::Vector(v) => v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            })
            .collect();
        let mut out = vec_ops::zeros(self.target_dim);
        if expanded.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; args.len()];
        let mut tuple = vec![0usize; args.len()];
        loop {
            let mut coeff = Cyc::one();
            for (p, &k) in idx.iter().enumerate() {
                let (b, c) = &expanded[p][k];
                tuple[p] = *b;
                if !c.is_one() {
                    coeff = &coeff * c;
                }
            }
            let val = self.eval_basis(alg, &tuple);
            vec_ops::axpy(&mut out, &coeff, &val);
            // odometer
            let mut p = args.len();
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < expanded[p].len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.combine(other, &Cyc::one())
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.combine(other, &Cyc::from_int(-1))
    }

    /// `self + c * other`
    pub fn combine(&self, other: &Cochain, c: &Cyc) -> Result<Cochain, CochainError> {
        if self.arity != other.arity {
            return Err(CochainError::Arity {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.target_dim != other.target_dim
            || (self.degree != other.degree && !self.is_zero() && !other.is_zero())
        {
            return Err(CochainError::Incompatible);
        }
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = other.degree.clone();
        }
        for (k, v) in &other.entries {
            out.accumulate(k.clone(), c, v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyc) -> Cochain {
        let mut out = Cochain::zero(self.arity, self.degree.clone(), self.target_dim);
        for (k, v) in &self.entries {
            out.accumulate(k.clone(), c, v);
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&Cyc::from_int(-1))
    }
}

fn source_degree(alg: &GradedAlgebra, degree: &GroupElement, tuple: &[usize]) -> GroupElement {
    let g = alg.group();
    g.add(degree, &g.sum(tuple.iter().map(|&i| alg.degree(i))))
}

/// One coordinate of the canonical basis of `C^n_c(A, V)`: the cochain sending
/// `tuple` to the target basis vector `target` and every other canonical tuple to 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub tuple: Vec<usize>,
    pub target: usize,
}

/// Canonical basis of `C^n_c(A, V)`: exterior tuples lexicographic, then the
/// last slot, then the target coordinate.
pub fn cochain_basis(alg: &GradedAlgebra, v: &Bimodule, n: usize, c: &GroupElement) -> Vec<Slot> {
    assert!(n >= 1, "cochain arity must be at least 1");
    let mut out = Vec::new();
    for ext in exterior_basis(alg, n - 1) {
        for last in 0..alg.dim() {
            let mut tuple = ext.clone();
            tuple.push(last);
            let src = source_degree(alg, c, &tuple);
            for (t, d) in v.degrees().iter().enumerate() {
                if *d == src {
                    out.push(Slot {
                        tuple: tuple.clone(),
                        target: t,
                    });
                }
            }
        }
    }
    out
}

/// Degrees `c` with `C^n_c(A, V) ≠ 0`.
pub fn occurring_degrees(alg: &GradedAlgebra, v: &Bimodule, n: usize) -> BTreeSet<GroupElement> {
    let g = alg.group();
    let mut out = BTreeSet::new();
    for ext in exterior_basis(alg, n - 1) {
        for last in 0..alg.dim() {
            let mut tuple = ext.clone();
            tuple.push(last);
            let s = g.sum(tuple.iter().map(|&i| alg.degree(i)));
            for d in v.degrees() {
                out.insert(g.sub(d, &s));
            }
        }
    }
    out
}

pub fn to_coordinates(f: &Cochain, basis: &[Slot]) -> Vec<Cyc> {
    basis
        .iter()
        .map(|s| {
            f.entries
                .get(&s.tuple)
                .map(|v| v[s.target].clone())
                .unwrap_or_default()
        })
        .collect()
}

/// Reads coordinates w.r.t. [`cochain_basis`] back into a cochain.
pub fn from_coordinates(
    alg: &GradedAlgebra,
    v: &Bimodule,
    n: usize,
    c: &GroupElement,
    basis: &[Slot],
    coords: &[Cyc],
) -> Cochain {
    let _ = alg;
    let mut f = Cochain::zero(n, c.clone(), v.dim());
    for (s, x) in basis.iter().zip(coords) {
        if !x.is_zero() {
            f.accumulate(s.tuple.clone(), x, &vec_ops::unit(v.dim(), s.target));
        }
    }
    f
}

fn sign(i: usize) -> Cyc {
    if i.is_multiple_of(2) {
        Cyc::one()
    } else {
        Cyc::from_int(-1)
    }
}

/// `(d_n f)(x_1, ..., x_{n+1})` on basis vectors, evaluated term by term from
/// the four sums of the coboundary formula (left action, right action,
/// product in the last slot, color bracket in the exterior part).
pub fn coboundary_eval(alg: &GradedAlgebra, v: &Bimodule, f: &Cochain, xs: &[usize]) -> Vec<Cyc> {
    let n = f.arity();
    assert_eq!(xs.len(), n + 1, "d_n f takes n+1 arguments");
    let g = alg.group();
    let deg = |p: usize| alg.degree(xs[p]);
    let sum_deg = |range: std::ops::Range<usize>| g.sum(range.map(|p| alg.degree(xs[p])));
    let mut out = vec_ops::zeros(v.dim());
    let mut args = Vec::with_capacity(n);

    for i in 0..n {
        let s = sign(i);

        // ε(|f| + Σ_{j<i}|x_j|, |x_i|) x_i f(x_1..x̂_i..x_{n+1})
        let e1 = alg.eps(&g.add(f.degree(), &sum_deg(0..i)), deg(i));
        args.clear();
        args.extend((0..=n).filter(|&p| p != i).map(|p| xs[p]));
        let val = f.eval_basis(alg, &args);
        if !vec_ops::is_zero(&val) {
            vec_ops::axpy(&mut out, &(&s * &e1), &v.act_left(xs[i], &val));
        }

        // ε(|x_i|, Σ_{j=i+1}^{n}|x_j|) [f(..x̂_i..x_n, x_i) x_{n+1} - f(..x̂_i..x_n, x_i x_{n+1})]
        let e2 = &s * &alg.eps(deg(i), &sum_deg(i + 1..n));
        args.clear();
        args.extend((0..n).filter(|&p| p != i).map(|p| xs[p]));
        args.push(xs[i]);
        let val = f.eval_basis(alg, &args);
        if !vec_ops::is_zero(&val) {
            vec_ops::axpy(&mut out, &e2, &v.act_right(&val, xs[n]));
        }
        let neg_e2 = -&e2;
        for (k, c) in alg.product_basis(xs[i], xs[n]) {
            *args.last_mut().expect("n >= 1") = *k;
            let val = f.eval_basis(alg, &args);
            vec_ops::axpy(&mut out, &(&neg_e2 * c), &val);
        }
    }

    // Σ_{j<i} (-1)^{i+1} ε(Σ_{s=j+1}^{i-1}|x_s|, |x_i|) f(.., [x_j, x_i], x_{j+1}, .., x̂_i, .., x_{n+1})
    for i in 0..n {
        for j in 0..i {
            let bracket = alg.bracket_basis(xs[j], xs[i]);
            if vec_ops::is_zero(&bracket) {
                continue;
            }
            let e4 = &sign(i) * &alg.eps(&sum_deg(j + 1..i), deg(i));
            for (k, c) in bracket.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                args.clear();
                for p in 0..=n {
                    if p == i {
                        continue;
                    }
                    args.push(if p == j { k } else { xs[p] });
                }
                let val = f.eval_basis(alg, &args);
                vec_ops::axpy(&mut out, &(&e4 * c), &val);
            }
        }
    }
    out
}

/// `d_n f` as an (n+1)-cochain of the same degree.
pub fn coboundary(alg: &GradedAlgebra, v: &Bimodule, f: &Cochain) -> Cochain {
    let n = f.arity();
    let mut out = Cochain::zero(n + 1, f.degree().clone(), v.dim());
    for ext in exterior_basis(alg, n) {
        for last in 0..alg.dim() {
            let mut tuple = ext.clone();
            tuple.push(last);
            let val = coboundary_eval(alg, v, f, &tuple);
            out.accumulate(tuple, &Cyc::one(), &val);
        }
    }
    out
}

/// Matrix of `d_n` restricted to `C^n_c → C^{n+1}_c` in the canonical bases.
#[derive(Debug, Clone)]
pub struct CoboundaryMatrix {
    pub arity: usize,
    pub degree: GroupElement,
    pub domain: Vec<Slot>,
    pub codomain: Vec<Slot>,
    pub matrix: CycMatrix,
}

pub fn coboundary_matrix(
    alg: &GradedAlgebra,
    v: &Bimodule,
    n: usize,
    c: &GroupElement,
) -> CoboundaryMatrix {
    let domain = cochain_basis(alg, v, n, c);
    let codomain = cochain_basis(alg, v, n + 1, c);
    let cols: Vec<Vec<Cyc>> = domain
        .iter()
        .map(|s| {
            let f = from_coordinates(alg, v, n, c, std::slice::from_ref(s), &[Cyc::one()]);
            to_coordinates(&coboundary(alg, v, &f), &codomain)
        })
        .collect();
    let matrix = CycMatrix::from_columns(codomain.len(), &cols);
    CoboundaryMatrix {
        arity: n,
        degree: c.clone(),
        domain,
        codomain,
        matrix,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub arity: usize,
    pub degree: GroupElement,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
    /// Cocycles whose classes form a basis of `H^n_c`.
    pub representatives: Vec<Cochain>,
    /// Whether `B^n_c ⊆ Z^n_c` held for the computed matrices.
    pub coboundaries_closed: bool,
}

/// `H^n_c(A, V) = Z^n_c / B^n_c`, with `B^1 = 0`.
pub fn cohomology(
    alg: &GradedAlgebra,
    v: &Bimodule,
    n: usize,
    c: &GroupElement,
) -> CohomologyReport {
    let dn = coboundary_matrix(alg, v, n, c);
    let cocycles = dn.matrix.kernel_basis();
    let image: Vec<Vec<Cyc>> = if n == 1 {
        Vec::new()
    } else {
        let prev = coboundary_matrix(alg, v, n - 1, c);
        let r = prev.matrix.transpose().rref();
        (0..r.pivots.len())
            .map(|i| r.matrix.row(i).to_vec())
            .collect()
    };
    let dim_b = image.len();
    let coboundaries_closed = image
        .iter()
        .all(|b| vec_ops::is_zero(&dn.matrix.mul_vec(b).expect("sizes agree")));

    let mut span = image.clone();
    let mut rank = dim_b;
    let mut representatives = Vec::new();
    for z in &cocycles {
        span.push(z.clone());
        let r = CycMatrix::from_columns(dn.domain.len(), &span).rank();
        if r > rank {
            rank = r;
            representatives.push(from_coordinates(alg, v, n, c, &dn.domain, z));
        } else {
            span.pop();
        }
    }
    CohomologyReport {
        arity: n,
        degree: c.clone(),
        dim_cochains: dn.domain.len(),
        dim_cocycles: cocycles.len(),
        dim_coboundaries: dim_b,
        dim_cohomology: representatives.len(),
        representatives,
        coboundaries_closed,
    }
}

/// Cohomology in every degree where `C^n_c ≠ 0`.
pub fn cohomology_all(alg: &GradedAlgebra, v: &Bimodule, n: usize) -> Vec<CohomologyReport> {
    occurring_degrees(alg, v, n)
        .iter()
        .map(|c| cohomology(alg, v, n, c))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeCheck {
    pub arity: usize,
    pub degree: GroupElement,
    pub rows: usize,
    pub cols: usize,
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeFailure {
    pub arity: usize,
    pub degree: GroupElement,
    pub row: Slot,
    pub col: Slot,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub value: Cyc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub pass: bool,
    pub checks: Vec<CompositeCheck>,
    pub failures: Vec<CompositeFailure>,
}

/// Checks `d_{n+1} ∘ d_n = 0` for `1 <= n < n_max` in every occurring degree.
pub fn check_complex(alg: &GradedAlgebra, v: &Bimodule, n_max: usize) -> ComplexReport {
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for n in 1..n_max {
        for c in occurring_degrees(alg, v, n) {
            let a = coboundary_matrix(alg, v, n, &c);
            let b = coboundary_matrix(alg, v, n + 1, &c);
            let comp = b.matrix.mul(&a.matrix).expect("composable coboundaries");
            let zero = comp.is_zero();
            if !zero {
                for r in 0..comp.rows() {
                    for col in 0..comp.cols() {
                        let x = comp.get(r, col);
                        if !x.is_zero() {
                            failures.push(CompositeFailure {
                                arity: n,
                                degree: c.clone(),
                                row: b.codomain[r].clone(),
                                col: a.domain[col].clone(),
                                value: x.clone(),
                            });
                        }
                    }
                }
            }
            checks.push(CompositeCheck {
                arity: n,
                degree: c.clone(),
                rows: comp.rows(),
                cols: comp.cols(),
                zero,
            });
        }
    }
    ComplexReport {
        pass: failures.is_empty(),
        checks,
        failures,
    }
}
