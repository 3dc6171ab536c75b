//! Exact computation of generic symmetry groups of orbits of finite linear
//! groups, with a brute-force geometric oracle and classifiers for the
//! affine and rational realization problems.

pub mod algebra;
pub mod chartable;
pub mod classify;
pub mod group;
pub mod gensym;
pub mod io;
pub mod oracle;

pub use algebra::{Cyclotomic, Matrix, Rational};
pub use group::{FiniteGroup, GPermutation, GPermutationGroup, Subgroup};

/// Dense matrix over the rationals.
pub type RationalMatrix = Matrix<Rational>;
