//! Dense matrices over cyclotomic fields and exact elimination.

use std::fmt;

use super::{Cyc, NumError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyc>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: CycMatrix,
    pub pivots: Vec<usize>,
}

/// A particular solution and a kernel basis.
pub type Solution = (Vec<Cyc>, Vec<Vec<Cyc>>);

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![Cyc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyc>>) -> Result<Self, NumError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumError::DimensionMismatch {
                context: "ragged matrix rows",
                expected: c,
                found: rows.iter().map(Vec::len).find(|&l| l != c).unwrap_or(c),
            });
        }
        Ok(CycMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Cyc>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Cyc::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Cyc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyc::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &CycMatrix) -> Result<CycMatrix, NumError> {
        if self.cols != rhs.rows {
            return Err(NumError::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Cyc]) -> Result<Vec<Cyc>, NumError> {
        if v.len() != self.cols {
            return Err(NumError::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Cyc::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &CycMatrix) -> Result<CycMatrix, NumError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(NumError::DimensionMismatch {
                context: "matrix sum",
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Cyc) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact Gauss-Jordan elimination. Among the candidate pivots of a
    /// column the entry with the fewest nonzero power-basis coefficients is
    /// chosen; the resulting RREF does not depend on this choice.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(best) = (prow..m.rows)
                .filter(|&r| !m.get(r, col).is_zero())
                .min_by_key(|&r| m.get(r, col).support())
            else {
                continue;
            };
            m.swap_rows(prow, best);
            let inv = m.get(prow, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(prow, j) * &inv;
                m.set(prow, j, v);
            }
            for r in 0..m.rows {
                if r == prow || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let p = m.get(prow, j);
                    if p.is_zero() {
                        continue;
                    }
                    let v = m.get(r, j) - &(&factor * p);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Cyc>> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots, self.cols)
    }

    /// Solves `self * x = b`. Returns `None` when `b` is outside the column
    /// space, otherwise the particular solution with all free variables set
    /// to zero together with a kernel basis.
    pub fn solve(&self, b: &[Cyc]) -> Result<Option<Solution>, NumError> {
        if b.len() != self.rows {
            return Err(NumError::DimensionMismatch {
                context: "right-hand side",
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = CycMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Cyc::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        let kernel = kernel_from_rref(&matrix, &pivots, self.cols);
        Ok(Some((x, kernel)))
    }

    /// Whether `v` lies in the column space.
    pub fn in_column_space(&self, v: &[Cyc]) -> Result<bool, NumError> {
        Ok(self.solve(v)?.is_some())
    }

    /// Integer power of a square matrix (non-negative exponents).
    pub fn pow(&self, e: u32) -> CycMatrix {
        assert_eq!(self.rows, self.cols, "matrix power needs a square matrix");
        let mut acc = CycMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self).expect("square");
        }
        acc
    }
}

fn kernel_from_rref(r: &CycMatrix, pivots: &[usize], ncols: usize) -> Vec<Vec<Cyc>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Cyc::zero(); ncols];
            v[f] = Cyc::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f);
            }
            v
        })
        .collect()
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Cyc> {
        xs.iter().map(|&x| Cyc::from_int(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(CycMatrix::zeros(2, 2).kernel_basis().len(), 2);
        assert!(CycMatrix::identity(3).kernel_basis().is_empty());
        let k = CycMatrix::from_ints(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k, vec![v(&[-1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[4, -2, 7]);
        let (x, k) = CycMatrix::identity(3).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
        assert!(k.is_empty());

        assert!(CycMatrix::zeros(2, 2).solve(&v(&[1, 0])).unwrap().is_none());

        let (x, k) = CycMatrix::from_ints(&[&[1, 1]])
            .solve(&v(&[3]))
            .unwrap()
            .unwrap();
        assert_eq!(x, v(&[3, 0]));
        assert_eq!(k, vec![v(&[-1, 1])]);
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        assert!(CycMatrix::identity(2).solve(&v(&[1])).is_err());
    }

    #[test]
    fn complex_entries() {
        let i = Cyc::root_of_unity(4, 1);
        // [[1, i], [i, -1]] has rank 1 since row2 = i * row1.
        let m = CycMatrix::from_rows(vec![
            vec![Cyc::one(), i.clone()],
            vec![i.clone(), Cyc::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Cyc::is_zero));
    }
}
