//! Minimal commutative-ring abstraction shared by the matrix kernels.
//!
//! Pfaffian expansion, fraction-free elimination and determinants are written
//! once against [`Ring`] and instantiated for rationals, univariate and
//! multivariate polynomials.

use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn from_rational(c: &Rational) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Exact quotient, or `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Ring for Rational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn from_rational(c: &Rational) -> Self {
        c.clone()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
}
