//! Exact arithmetic: rationals, cyclotomic fields and dense linear algebra.

mod cyclotomic;
mod matrix;
mod text;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyc};
pub use matrix::{CycMatrix, Rref, Solution};
pub use text::parse_scalar;

use thiserror::Error;

/// Arbitrary-precision rational with positive, coprime denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("cannot parse scalar {input:?} at byte {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
}

/// Vector helpers for coordinate vectors over [`Cyc`].
pub mod vec_ops {
    use super::Cyc;

    pub fn zeros(n: usize) -> Vec<Cyc> {
        vec![Cyc::zero(); n]
    }

    pub fn unit(n: usize, i: usize) -> Vec<Cyc> {
        let mut v = zeros(n);
        v[i] = Cyc::one();
        v
    }

    pub fn is_zero(v: &[Cyc]) -> bool {
        v.iter().all(Cyc::is_zero)
    }

    /// `acc += c * v`
    pub fn axpy(acc: &mut [Cyc], c: &Cyc, v: &[Cyc]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += &(c * x);
            }
        }
    }

    pub fn add(a: &[Cyc], b: &[Cyc]) -> Vec<Cyc> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Cyc], b: &[Cyc]) -> Vec<Cyc> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Cyc, v: &[Cyc]) -> Vec<Cyc> {
        v.iter().map(|x| c * x).collect()
    }

    pub fn neg(v: &[Cyc]) -> Vec<Cyc> {
        v.iter().map(|x| -x).collect()
    }
}
