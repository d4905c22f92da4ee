//! Finite-dimensional graded algebras given by structure constants, their
//! bimodules, and homogeneous linear self-maps.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{vec_ops, Cyc, CycMatrix, NumError};
use crate::grading::{AbelianGroup, Bicharacter, GradingError, GroupElement};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("an algebra needs at least one basis vector")]
    Empty,
    #[error("index {index} out of range for dimension {dim} in {context}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        dim: usize,
    },
    #[error("duplicate structure constant for ({0}, {1}) -> {2}")]
    Duplicate(usize, usize, usize),
    #[error("{context} entry ({i}, {j}) -> {k} violates the grading: expected degree {expected}, basis vector has {found}")]
    Grading {
        context: &'static str,
        i: usize,
        j: usize,
        k: usize,
        expected: GroupElement,
        found: GroupElement,
    },
    #[error("vector is not homogeneous")]
    NotHomogeneous,
    #[error("operator of declared degree {degree} is not homogeneous at entries {entries:?}")]
    OperatorNotHomogeneous {
        degree: GroupElement,
        entries: Vec<(usize, usize)>,
    },
    #[error("vector length {found} does not match dimension {expected}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Grade(#[from] GradingError),
    #[error(transparent)]
    Num(#[from] NumError),
}

type Sparse = Vec<(usize, Cyc)>;

/// A G-graded algebra with homogeneous basis `e_0, ..., e_{dim-1}` and
/// multiplication `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    degrees: Vec<GroupElement>,
    bichar: Bicharacter,
    products: Vec<Sparse>,
    names: Vec<String>,
}

fn default_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

/// Collects sparse `(a, b, c, coeff)` entries into per-`(a, b)` rows, rejecting duplicates.
fn collect_sparse(
    rows: usize,
    stride: usize,
    entries: impl IntoIterator<Item = (usize, usize, usize, Cyc)>,
) -> Result<Vec<Sparse>, AlgebraError> {
    let mut seen = BTreeMap::new();
    for (a, b, c, v) in entries {
        if seen.insert((a, b, c), v).is_some() {
            return Err(AlgebraError::Duplicate(a, b, c));
        }
    }
    let mut out = vec![Vec::new(); rows];
    for ((a, b, c), v) in seen {
        if !v.is_zero() {
            out[a * stride + b].push((c, v));
        }
    }
    Ok(out)
}

impl GradedAlgebra {
    /// `products` holds sparse triples `(i, j, k, c)` meaning `e_i e_j` has `c` at `e_k`.
    pub fn new(
        bichar: Bicharacter,
        degrees: Vec<GroupElement>,
        products: impl IntoIterator<Item = (usize, usize, usize, Cyc)>,
    ) -> Result<Self, AlgebraError> {
        let dim = degrees.len();
        if dim == 0 {
            return Err(AlgebraError::Empty);
        }
        let group = bichar.group().clone();
        for d in &degrees {
            group.element(d.exponents())?;
        }
        let entries: Vec<_> = products.into_iter().collect();
        for &(i, j, k, _) in &entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange {
                        context: "structure constant",
                        index: idx,
                        dim,
                    });
                }
            }
        }
        let products = collect_sparse(dim * dim, dim, entries)?;
        for i in 0..dim {
            for j in 0..dim {
                let expected = group.add(&degrees[i], &degrees[j]);
                for (k, _) in &products[i * dim + j] {
                    if degrees[*k] != expected {
                        return Err(AlgebraError::Grading {
                            context: "product",
                            i,
                            j,
                            k: *k,
                            expected,
                            found: degrees[*k].clone(),
                        });
                    }
                }
            }
        }
        Ok(GradedAlgebra {
            degrees,
            bichar,
            products,
            names: default_names(dim),
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim(), "one name per basis vector");
        self.names = names;
        self
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn bicharacter(&self) -> &Bicharacter {
        &self.bichar
    }

    pub fn group(&self) -> &AbelianGroup {
        self.bichar.group()
    }

    pub fn eps(&self, a: &GroupElement, b: &GroupElement) -> Cyc {
        self.bichar.eps(a, b)
    }

    /// `eps(|e_i|, |e_j|)`
    pub fn eps_basis(&self, i: usize, j: usize) -> Cyc {
        self.bichar.eps(&self.degrees[i], &self.degrees[j])
    }

    /// Sparse expansion of `e_i e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> &[(usize, Cyc)] {
        &self.products[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Cyc {
        self.product_basis(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn product_entries(&self) -> Vec<(usize, usize, usize, Cyc)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.product_basis(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Cyc> {
        vec_ops::unit(self.dim(), i)
    }

    fn check_len(&self, v: &[Cyc]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::Length {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Cyc], y: &[Cyc]) -> Result<Vec<Cyc>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[Cyc], y: &[Cyc]) -> Vec<Cyc> {
        let n = self.dim();
        let mut out = vec_ops::zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.product_basis(i, j) {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    /// `e_i * v`
    pub(crate) fn mul_basis_left(&self, i: usize, v: &[Cyc]) -> Vec<Cyc> {
        let mut out = vec_ops::zeros(self.dim());
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, s) in self.product_basis(i, j) {
                out[*k] += &(vj * s);
            }
        }
        out
    }

    /// `v * e_j`
    pub(crate) fn mul_basis_right(&self, v: &[Cyc], j: usize) -> Vec<Cyc> {
        let mut out = vec_ops::zeros(self.dim());
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, s) in self.product_basis(i, j) {
                out[*k] += &(vi * s);
            }
        }
        out
    }

    /// Degree of a homogeneous vector; `None` for the zero vector.
    pub fn homogeneous_degree(&self, v: &[Cyc]) -> Result<Option<GroupElement>, AlgebraError> {
        self.check_len(v)?;
        let mut deg: Option<&GroupElement> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(&self.degrees[i]),
                Some(d) if *d == self.degrees[i] => {}
                Some(_) => return Err(AlgebraError::NotHomogeneous),
            }
        }
        Ok(deg.cloned())
    }

    /// `[x, y] = xy - eps(|x|, |y|) yx` for homogeneous `x`, `y`.
    pub fn color_bracket(&self, x: &[Cyc], y: &[Cyc]) -> Result<Vec<Cyc>, AlgebraError> {
        let (Some(dx), Some(dy)) = (self.homogeneous_degree(x)?, self.homogeneous_degree(y)?)
        else {
            return Ok(vec_ops::zeros(self.dim()));
        };
        let e = self.eps(&dx, &dy);
        Ok(vec_ops::sub(
            &self.mul(x, y),
            &vec_ops::scale(&e, &self.mul(y, x)),
        ))
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub(crate) fn bracket_basis(&self, i: usize, j: usize) -> Vec<Cyc> {
        let mut out = vec_ops::zeros(self.dim());
        for (k, c) in self.product_basis(i, j) {
            out[*k] += c;
        }
        let e = self.eps_basis(i, j);
        for (k, c) in self.product_basis(j, i) {
            out[*k] -= &(&e * c);
        }
        out
    }

    /// `(xy)z - x(yz) - eps(|x|,|y|) ((yx)z - y(xz))` for homogeneous inputs.
    pub fn left_symmetric_residual(
        &self,
        x: &[Cyc],
        y: &[Cyc],
        z: &[Cyc],
    ) -> Result<Vec<Cyc>, AlgebraError> {
        self.check_len(z)?;
        let (Some(dx), Some(dy)) = (self.homogeneous_degree(x)?, self.homogeneous_degree(y)?)
        else {
            return Ok(vec_ops::zeros(self.dim()));
        };
        self.homogeneous_degree(z)?;
        let e = self.eps(&dx, &dy);
        let lhs = vec_ops::sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)));
        let rhs = vec_ops::sub(&self.mul(&self.mul(y, x), z), &self.mul(y, &self.mul(x, z)));
        Ok(vec_ops::sub(&lhs, &vec_ops::scale(&e, &rhs)))
    }

    /// Checks the left-symmetric color identity on every basis triple.
    pub fn verify_left_symmetric(&self) -> LeftSymmetricReport {
        let n = self.dim();
        let mut failures = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self
                        .left_symmetric_residual(
                            &self.basis_vector(i),
                            &self.basis_vector(j),
                            &self.basis_vector(k),
                        )
                        .expect("basis vectors are homogeneous");
                    if !vec_ops::is_zero(&r) {
                        failures.push(TripleFailure {
                            triple: [i, j, k],
                            residual: r,
                        });
                    }
                }
            }
        }
        LeftSymmetricReport {
            pass: failures.is_empty(),
            triples_checked: n * n * n,
            failures,
        }
    }

    /// Basis of `A^2`, the span of all products `e_i e_j`.
    pub fn square_span(&self) -> Vec<Vec<Cyc>> {
        let n = self.dim();
        let cols: Vec<Vec<Cyc>> = (0..n * n)
            .map(|ij| {
                let mut v = vec_ops::zeros(n);
                for (k, c) in &self.products[ij] {
                    v[*k] = c.clone();
                }
                v
            })
            .collect();
        let m = CycMatrix::from_columns(n, &cols).transpose();
        let r = m.rref();
        (0..r.pivots.len())
            .map(|i| r.matrix.row(i).to_vec())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleFailure {
    pub triple: [usize; 3],
    #[serde(serialize_with = "crate::io::ser_vector")]
    pub residual: Vec<Cyc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftSymmetricReport {
    pub pass: bool,
    pub triples_checked: usize,
    pub failures: Vec<TripleFailure>,
}

impl LeftSymmetricReport {
    pub fn summary(&self) -> String {
        format!(
            "left-symmetric color identity: {} ({} triples)",
            if self.pass { "pass" } else { "fail" },
            self.triples_checked
        )
    }
}

/// A graded A-bimodule given by action tensors:
/// `e_i . m_u = sum_v left[i][u][v] m_v` and `m_u . e_i = sum_v right[u][i][v] m_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    degrees: Vec<GroupElement>,
    algebra_dim: usize,
    left: Vec<Sparse>,
    right: Vec<Sparse>,
}

impl Bimodule {
    /// `left` entries are `(i, u, v, c)`, `right` entries `(u, i, v, c)`.
    pub fn new(
        algebra: &GradedAlgebra,
        degrees: Vec<GroupElement>,
        left: impl IntoIterator<Item = (usize, usize, usize, Cyc)>,
        right: impl IntoIterator<Item = (usize, usize, usize, Cyc)>,
    ) -> Result<Self, AlgebraError> {
        let vd = degrees.len();
        let ad = algebra.dim();
        if vd == 0 {
            return Err(AlgebraError::Empty);
        }
        let group = algebra.group();
        for d in &degrees {
            group.element(d.exponents())?;
        }
        let left: Vec<_> = left.into_iter().collect();
        let right: Vec<_> = right.into_iter().collect();
        for &(i, u, v, _) in &left {
            check_index("left action", i, ad)?;
            check_index("left action", u, vd)?;
            check_index("left action", v, vd)?;
        }
        for &(u, i, v, _) in &right {
            check_index("right action", u, vd)?;
            check_index("right action", i, ad)?;
            check_index("right action", v, vd)?;
        }
        let left = collect_sparse(ad * vd, vd, left)?;
        let right = collect_sparse(vd * ad, ad, right)?;
        for i in 0..ad {
            for u in 0..vd {
                let expected = group.add(algebra.degree(i), &degrees[u]);
                for (v, _) in &left[i * vd + u] {
                    if degrees[*v] != expected {
                        return Err(AlgebraError::Grading {
                            context: "left action",
                            i,
                            j: u,
                            k: *v,
                            expected,
                            found: degrees[*v].clone(),
                        });
                    }
                }
                for (v, _) in &right[u * ad + i] {
                    if degrees[*v] != expected {
                        return Err(AlgebraError::Grading {
                            context: "right action",
                            i: u,
                            j: i,
                            k: *v,
                            expected,
                            found: degrees[*v].clone(),
                        });
                    }
                }
            }
        }
        Ok(Bimodule {
            degrees,
            algebra_dim: ad,
            left,
            right,
        })
    }

    /// The algebra acting on itself by left and right multiplication.
    pub fn standard(algebra: &GradedAlgebra) -> Self {
        Bimodule {
            degrees: algebra.degrees.clone(),
            algebra_dim: algebra.dim(),
            left: algebra.products.clone(),
            right: algebra.products.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn left_entry(&self, i: usize, u: usize) -> &[(usize, Cyc)] {
        &self.left[i * self.dim() + u]
    }

    pub fn right_entry(&self, u: usize, i: usize) -> &[(usize, Cyc)] {
        &self.right[u * self.algebra_dim + i]
    }

    pub fn left_entries(&self) -> Vec<(usize, usize, usize, Cyc)> {
        let mut out = Vec::new();
        for i in 0..self.algebra_dim {
            for u in 0..self.dim() {
                for (v, c) in self.left_entry(i, u) {
                    out.push((i, u, *v, c.clone()));
                }
            }
        }
        out
    }

    pub fn right_entries(&self) -> Vec<(usize, usize, usize, Cyc)> {
        let mut out = Vec::new();
        for u in 0..self.dim() {
            for i in 0..self.algebra_dim {
                for (v, c) in self.right_entry(u, i) {
                    out.push((u, i, *v, c.clone()));
                }
            }
        }
        out
    }

    /// `e_i . m`
    pub fn act_left(&self, i: usize, m: &[Cyc]) -> Vec<Cyc> {
        let mut out = vec_ops::zeros(self.dim());
        for (u, mu) in m.iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            for (v, c) in self.left_entry(i, u) {
                out[*v] += &(mu * c);
            }
        }
        out
    }

    /// `m . e_i`
    pub fn act_right(&self, m: &[Cyc], i: usize) -> Vec<Cyc> {
        let mut out = vec_ops::zeros(self.dim());
        for (u, mu) in m.iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            for (v, c) in self.right_entry(u, i) {
                out[*v] += &(mu * c);
            }
        }
        out
    }

    /// Left action of `e_i` as a matrix (column `u` = `e_i . m_u`).
    pub fn left_matrix(&self, i: usize) -> CycMatrix {
        let cols: Vec<_> = (0..self.dim())
            .map(|u| self.act_left(i, &vec_ops::unit(self.dim(), u)))
            .collect();
        CycMatrix::from_columns(self.dim(), &cols)
    }
}

fn check_index(context: &'static str, index: usize, dim: usize) -> Result<(), AlgebraError> {
    if index >= dim {
        return Err(AlgebraError::IndexOutOfRange {
            context,
            index,
            dim,
        });
    }
    Ok(())
}

/// A homogeneous linear map `P: A -> A`; column `j` of the matrix holds `P(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLinOp {
    degree: GroupElement,
    matrix: CycMatrix,
}

impl GradedLinOp {
    pub fn new(
        algebra: &GradedAlgebra,
        degree: GroupElement,
        matrix: CycMatrix,
    ) -> Result<Self, AlgebraError> {
        let degree = algebra.group().element(degree.exponents())?;
        if matrix.rows() != algebra.dim() || matrix.cols() != algebra.dim() {
            return Err(AlgebraError::Length {
                expected: algebra.dim(),
                found: matrix.rows().max(matrix.cols()),
            });
        }
        let op = GradedLinOp { degree, matrix };
        op.validate(algebra)?;
        Ok(op)
    }

    /// Infers the degree from the nonzero entries; the zero map gets degree 0.
    pub fn infer(algebra: &GradedAlgebra, matrix: CycMatrix) -> Result<Self, AlgebraError> {
        let g = algebra.group();
        let mut degree = None;
        for i in 0..matrix.rows().min(algebra.dim()) {
            for j in 0..matrix.cols().min(algebra.dim()) {
                if !matrix.get(i, j).is_zero() {
                    degree = Some(g.sub(algebra.degree(i), algebra.degree(j)));
                    break;
                }
            }
            if degree.is_some() {
                break;
            }
        }
        Self::new(algebra, degree.unwrap_or_else(|| g.zero()), matrix)
    }

    pub fn identity(algebra: &GradedAlgebra) -> Self {
        GradedLinOp {
            degree: algebra.group().zero(),
            matrix: CycMatrix::identity(algebra.dim()),
        }
    }

    pub fn scalar(algebra: &GradedAlgebra, r: Cyc) -> Self {
        GradedLinOp {
            degree: algebra.group().zero(),
            matrix: CycMatrix::identity(algebra.dim()).scale(&r),
        }
    }

    /// Diagonal operator (degree 0).
    pub fn diagonal(algebra: &GradedAlgebra, diag: &[Cyc]) -> Result<Self, AlgebraError> {
        if diag.len() != algebra.dim() {
            return Err(AlgebraError::Length {
                expected: algebra.dim(),
                found: diag.len(),
            });
        }
        let mut m = CycMatrix::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        Ok(GradedLinOp {
            degree: algebra.group().zero(),
            matrix: m,
        })
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.matrix
    }

    /// Re-checks homogeneity: `matrix[i][j] != 0` implies `|e_i| = |e_j| + |P|`.
    pub fn validate(&self, algebra: &GradedAlgebra) -> Result<(), AlgebraError> {
        let g = algebra.group();
        let mut bad = Vec::new();
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                if !self.matrix.get(i, j).is_zero()
                    && *algebra.degree(i) != g.add(algebra.degree(j), &self.degree)
                {
                    bad.push((i, j));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(AlgebraError::OperatorNotHomogeneous {
                degree: self.degree.clone(),
                entries: bad,
            })
        }
    }

    pub fn apply(&self, v: &[Cyc]) -> Vec<Cyc> {
        self.matrix
            .mul_vec(v)
            .expect("operator and vector sizes agree")
    }

    /// `P(e_j)`
    pub fn column(&self, j: usize) -> Vec<Cyc> {
        self.matrix.column(j)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `P^k`, homogeneous of degree `k |P|`.
    pub fn power(&self, algebra: &GradedAlgebra, k: u32) -> Result<Self, AlgebraError> {
        GradedLinOp::new(
            algebra,
            algebra.group().scale(k as i64, &self.degree),
            self.matrix.pow(k),
        )
    }

    pub fn compose(&self, algebra: &GradedAlgebra, other: &Self) -> Result<Self, AlgebraError> {
        GradedLinOp::new(
            algebra,
            algebra.group().add(&self.degree, &other.degree),
            self.matrix.mul(&other.matrix)?,
        )
    }

    /// `P + c I`; only homogeneous when `P` has degree 0 or `c = 0`.
    pub fn shift(&self, algebra: &GradedAlgebra, c: &Cyc) -> Result<Self, AlgebraError> {
        let m = self
            .matrix
            .add(&CycMatrix::identity(algebra.dim()).scale(c))?;
        if c.is_zero() {
            return Ok(self.clone());
        }
        GradedLinOp::new(algebra, self.degree.clone(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v(xs: &[i64]) -> Vec<Cyc> {
        xs.iter().map(|&x| Cyc::from_int(x)).collect()
    }

    #[test]
    fn example37_products() {
        let a = catalog::example37();
        assert_eq!(
            a.multiply(&v(&[0, 1, 0]), &v(&[0, 0, 1])).unwrap(),
            v(&[1, 0, 0])
        );
        assert_eq!(
            a.multiply(&v(&[0, 0, 1]), &v(&[0, 1, 0])).unwrap(),
            v(&[-1, 0, 0])
        );
        assert_eq!(
            a.multiply(&v(&[0, 0, 0]), &v(&[3, 1, 2])).unwrap(),
            v(&[0, 0, 0])
        );
        assert!(a.multiply(&v(&[1, 0]), &v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn a_alpha_square() {
        let a = catalog::a_alpha(Cyc::one(), Cyc::from_int(-1)).unwrap();
        assert_eq!(a.multiply(&v(&[1, 0]), &v(&[1, 0])).unwrap(), v(&[0, 1]));
    }

    #[test]
    fn catalog_algebras_are_left_symmetric() {
        let a = catalog::example37();
        let rep = a.verify_left_symmetric();
        assert!(rep.pass);
        assert_eq!(
            rep.summary(),
            "left-symmetric color identity: pass (27 triples)"
        );
        for alpha in [Cyc::one(), Cyc::from_int(2), Cyc::root_of_unity(4, 1)] {
            assert!(
                catalog::a_alpha(alpha, Cyc::from_int(-1))
                    .unwrap()
                    .verify_left_symmetric()
                    .pass
            );
        }
    }

    #[test]
    fn perturbed_example37_fails() {
        let base = catalog::example37();
        let entries = base.product_entries().into_iter().map(|(i, j, k, c)| {
            if (i, j, k) == (0, 1, 1) {
                (i, j, k, Cyc::from_int(2))
            } else {
                (i, j, k, c)
            }
        });
        let a = GradedAlgebra::new(base.bicharacter().clone(), base.degrees().to_vec(), entries)
            .unwrap();
        let rep = a.verify_left_symmetric();
        assert!(!rep.pass);
        assert!(rep
            .failures
            .iter()
            .any(|f| f.triple == [0, 1, 2] || f.triple == [1, 0, 2]));
    }

    #[test]
    fn brackets() {
        let a = catalog::example37();
        let y1 = v(&[0, 1, 0]);
        let y2 = v(&[0, 0, 1]);
        assert_eq!(a.color_bracket(&y1, &y2).unwrap(), v(&[0, 0, 0]));
        assert_eq!(a.color_bracket(&y1, &v(&[0, 0, 0])).unwrap(), v(&[0, 0, 0]));
        assert!(a.color_bracket(&v(&[1, 1, 0]), &y1).is_err());

        // A_alpha under eps(1,1) = -1: [x, x] = (1 - eps(1,1)) alpha y = 2 alpha y.
        let b = catalog::a_alpha(Cyc::from_int(3), Cyc::from_int(-1)).unwrap();
        assert_eq!(
            b.color_bracket(&v(&[1, 0]), &v(&[1, 0])).unwrap(),
            v(&[0, 6])
        );
        let b = catalog::a_alpha(Cyc::from_int(3), Cyc::one()).unwrap();
        assert_eq!(
            b.color_bracket(&v(&[1, 0]), &v(&[1, 0])).unwrap(),
            v(&[0, 0])
        );
    }

    #[test]
    fn standard_bimodule_actions() {
        let a = catalog::example37();
        let m = Bimodule::standard(&a);
        let l = m.left_matrix(0);
        assert_eq!(
            l,
            CycMatrix::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        let b = catalog::a_alpha(Cyc::from_int(5), Cyc::from_int(-1)).unwrap();
        let mb = Bimodule::standard(&b);
        assert_eq!(mb.act_left(0, &v(&[1, 0])), v(&[0, 5]));
        assert_eq!(mb.act_left(0, &v(&[0, 1])), v(&[0, 0]));

        let zero = GradedAlgebra::new(
            a.bicharacter().clone(),
            a.degrees().to_vec(),
            std::iter::empty(),
        )
        .unwrap();
        let mz = Bimodule::standard(&zero);
        assert!((0..3).all(|i| mz.left_matrix(i).is_zero()));
    }

    #[test]
    fn grading_is_enforced() {
        let a = catalog::example37();
        let bad = GradedAlgebra::new(
            a.bicharacter().clone(),
            a.degrees().to_vec(),
            vec![(1, 1, 1, Cyc::one())],
        );
        assert!(matches!(bad, Err(AlgebraError::Grading { .. })));
        let empty = GradedAlgebra::new(a.bicharacter().clone(), vec![], vec![]);
        assert_eq!(empty, Err(AlgebraError::Empty));
        let dup = GradedAlgebra::new(
            a.bicharacter().clone(),
            a.degrees().to_vec(),
            vec![(0, 0, 0, Cyc::one()), (0, 0, 0, Cyc::one())],
        );
        assert_eq!(dup, Err(AlgebraError::Duplicate(0, 0, 0)));
    }

    #[test]
    fn operator_homogeneity() {
        let a = catalog::example37();
        let g = a.group();
        let m = CycMatrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(GradedLinOp::new(&a, g.zero(), m.clone()).is_err());
        assert!(GradedLinOp::infer(&a, m).is_err());
        let odd = CycMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let p = GradedLinOp::infer(&a, odd).unwrap();
        assert_eq!(*p.degree(), g.element(&[1]).unwrap());
        assert_eq!(*p.power(&a, 2).unwrap().degree(), g.zero());
    }

    #[test]
    fn square_span_of_example37_is_everything() {
        assert_eq!(catalog::example37().square_span().len(), 3);
        let b = catalog::a_alpha(Cyc::one(), Cyc::from_int(-1)).unwrap();
        assert_eq!(b.square_span(), vec![v(&[0, 1])]);
    }
}
