//! Exact computations for left-symmetric color algebras: cyclotomic
//! arithmetic, graded cochain complexes and cohomology, formal deformations,
//! and Nijenhuis / Rota–Baxter operators.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod deform;
pub mod exactnum;
pub mod grading;
pub mod io;
pub mod operators;

use thiserror::Error;

pub use algebra::{Bimodule, GradedAlgebra, GradedLinOp};
pub use cochain::Cochain;
pub use deform::{Deformation, EquivalenceMap};
pub use exactnum::{Cyc, CycMatrix};

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Num(#[from] exactnum::NumError),
    #[error(transparent)]
    Grading(#[from] grading::GradingError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Cochain(#[from] cochain::CochainError),
    #[error(transparent)]
    Deform(#[from] deform::DeformError),
    #[error(transparent)]
    Operator(#[from] operators::OperatorError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}
