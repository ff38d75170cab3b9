//! Exact arithmetic: rationals, polynomials and linear algebra over Q and Q[λ].

pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod ring;
pub mod smith;
pub mod unipoly;

pub type Rational = num_rational::BigRational;

pub use matrix::{
    inverse, kernel_basis, rank, rank_over_fractions, rref, subspace_sum, Matrix, QMatrix, Subspace,
};
pub use multipoly::MultiPoly;
pub use rational::{format_rational, parse_rational, rat, ratio};
pub use ring::Ring;
pub use smith::{gcd_free_basis, smith_normal_form};
pub use unipoly::UniPoly;

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    f.gcd(g)
}

pub fn squarefree_decompose(f: &UniPoly) -> crate::Result<Vec<(UniPoly, usize)>> {
    f.squarefree_decompose()
}
