//! Functors from matroids to graded vector spaces, decompositions of matroid
//! polytopes, and exact rational checks that the functors turn the complexes
//! of those decompositions into exact sequences.

pub mod decomp;
pub mod equivariant;
pub mod exactq;
pub mod functors;
pub mod homcheck;
pub mod matroid;
pub mod poly;
pub mod polytope;
pub mod scalar;

pub use matroid::{GroundSet, Mask, Matroid, MatroidError, Perm};
pub use poly::{BiPoly, IntBipoly, IntPoly, Poly};
pub use scalar::Scalar;

/// Arbitrary-precision rational, the scalar of every exact computation.
pub type Rat = num_rational::BigRational;
/// Dense matrix over [`Rat`].
pub type QMatrix = exactq::Matrix<Rat>;
/// Sparse matrix over [`Rat`].
pub type QSparse = exactq::SparseMatrix<Rat>;
/// Vector over [`Rat`].
pub type QVector = Vec<Rat>;
