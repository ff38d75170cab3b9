//! Exact Jordan–Kronecker analysis of skew-symmetric pencils, polynomial
//! Poisson pencils and Lie-algebra pencils.
//!
//! All arithmetic is over the rationals. Eigenvalues that are not rational
//! are carried as irreducible-style factors of polynomials over Q.

pub mod error;
pub mod exactalg;
pub mod liealg;
pub mod pencil;
pub mod poisson;

pub use error::{Error, Result};
pub use exactalg::{Matrix, MultiPoly, QMatrix, Rational, Ring, Subspace, UniPoly};
pub use liealg::LieAlgebra;
pub use pencil::{Eigenvalue, JkInvariants, JordanGroup, SkewPencil};
pub use poisson::PolyPoissonPencil;
