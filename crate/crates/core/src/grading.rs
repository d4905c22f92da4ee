//! Grading groups (finite products of cyclic groups) and skew-symmetric
//! bicharacters given by their values on generators.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Cyc;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("cyclic factor order {0} is not allowed (use 0 for Z or n >= 2)")]
    BadOrder(u64),
    #[error("group element has {found} components, group has {expected} factors")]
    Rank { expected: usize, found: usize },
    #[error("bicharacter table must be {expected}x{expected}")]
    TableShape { expected: usize },
}

/// `Z_{n_1} x ... x Z_{n_k}` where `n_i = 0` stands for a free factor `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

/// Exponent vector, reduced modulo each finite order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, GradingError> {
        if let Some(&bad) = orders.iter().find(|&&n| n == 1) {
            return Err(GradingError::BadOrder(bad));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("valid cyclic order")
    }

    pub fn integers() -> Self {
        AbelianGroup { orders: vec![0] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&n| n != 0)
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement, GradingError> {
        if exps.len() != self.rank() {
            return Err(GradingError::Rank {
                expected: self.rank(),
                found: exps.len(),
            });
        }
        Ok(self.reduce(exps.to_vec()))
    }

    fn reduce(&self, mut exps: Vec<i64>) -> GroupElement {
        for (e, &n) in exps.iter_mut().zip(&self.orders) {
            if n > 0 {
                *e = e.rem_euclid(n as i64);
            }
        }
        GroupElement(exps)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| k * x).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    /// All elements of a finite group, in lexicographic exponent order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..n as i64).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(GroupElement).collect())
    }
}

impl GroupElement {
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Skew-symmetric bicharacter given by `table[i][j] = eps(g_i, g_j)` on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: AbelianGroup,
    table: Vec<Vec<Cyc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Zero,
    SkewSymmetry,
    OrderCompatibility { order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicharacterViolation {
    pub i: usize,
    pub j: usize,
    pub kind: ViolationKind,
    /// The offending value: the entry itself, `t_ij t_ji`, or `t_ij^n`.
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub value: Cyc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicharacterReport {
    pub valid: bool,
    pub violations: Vec<BicharacterViolation>,
}

impl Bicharacter {
    /// Stores the table without checking the bicharacter laws; see [`Bicharacter::validate`].
    pub fn new(group: AbelianGroup, table: Vec<Vec<Cyc>>) -> Result<Self, GradingError> {
        let r = group.rank();
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return Err(GradingError::TableShape { expected: r });
        }
        Ok(Bicharacter { group, table })
    }

    /// The trivial bicharacter (all ones).
    pub fn trivial(group: AbelianGroup) -> Self {
        let r = group.rank();
        Bicharacter {
            group,
            table: vec![vec![Cyc::one(); r]; r],
        }
    }

    /// The sign bicharacter of a superalgebra grading over `Z_2`.
    pub fn super_sign() -> Self {
        Bicharacter {
            group: AbelianGroup::cyclic(2),
            table: vec![vec![Cyc::from_int(-1)]],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn table(&self) -> &[Vec<Cyc>] {
        &self.table
    }

    pub fn validate(&self) -> BicharacterReport {
        let orders = self.group.orders();
        let mut violations = Vec::new();
        for i in 0..self.table.len() {
            for j in 0..self.table.len() {
                let t = &self.table[i][j];
                if t.is_zero() {
                    violations.push(BicharacterViolation {
                        i,
                        j,
                        kind: ViolationKind::Zero,
                        value: t.clone(),
                    });
                    continue;
                }
                let skew = t * &self.table[j][i];
                if !skew.is_one() {
                    violations.push(BicharacterViolation {
                        i,
                        j,
                        kind: ViolationKind::SkewSymmetry,
                        value: skew,
                    });
                }
                for n in [orders[i], orders[j]] {
                    if n == 0 {
                        continue;
                    }
                    let p = t.pow(n as i64).expect("nonzero entry");
                    if !p.is_one() {
                        violations.push(BicharacterViolation {
                            i,
                            j,
                            kind: ViolationKind::OrderCompatibility { order: n },
                            value: p,
                        });
                    }
                }
            }
        }
        violations.dedup();
        BicharacterReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// `eps(a, c) = prod_{i,j} table[i][j]^(a_i c_j)`.
    pub fn eval(&self, a: &GroupElement, c: &GroupElement) -> Result<Cyc, GradingError> {
        let r = self.group.rank();
        for g in [a, c] {
            if g.0.len() != r {
                return Err(GradingError::Rank {
                    expected: r,
                    found: g.0.len(),
                });
            }
        }
        Ok(self.eps(a, c))
    }

    /// Unchecked evaluation for elements known to belong to the group.
    pub(crate) fn eps(&self, a: &GroupElement, c: &GroupElement) -> Cyc {
        let mut acc = Cyc::one();
        for (i, ai) in a.0.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, cj) in c.0.iter().enumerate() {
                if *cj == 0 {
                    continue;
                }
                let t = &self.table[i][j];
                if t.is_one() {
                    continue;
                }
                let p = t.pow(ai * cj).expect("bicharacter entries are nonzero");
                acc = &acc * &p;
            }
        }
        acc
    }
}
