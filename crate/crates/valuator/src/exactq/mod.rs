//! Exact linear algebra over a [`Scalar`](crate::scalar::Scalar) field:
//! dense and row-sparse matrices, rank and kernel, determinants, traces on
//! exterior powers, and exact linear feasibility.

mod dense;
mod feasibility;
mod sparse;

pub use dense::Matrix;
pub use feasibility::{feasible, Constraint, Feasibility, LinSystem, Relation, MAX_VARIABLES};
pub use sparse::SparseMatrix;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactqError {
    #[error("feasibility refused: {got} variables exceeds the limit of {max}")]
    TooManyVariables { got: usize, max: usize },
}
