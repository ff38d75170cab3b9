//! Polynomial Poisson pencils on coordinate space.

mod charpoly;
mod point;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, MultiPoly, Rational};
use crate::pencil::SkewPencil;

pub use self::charpoly::{generic_char_poly, GenericCharPoly};
pub use self::point::{
    check_generic, coefficient_gradients, completeness_check, eigenvalue_lemma_check,
    extended_core, involution_check, sample_generic_point, CompletenessReport, EigenLemmaItem,
    EigenLemmaReport, FactorWitness, InvolutionCertificate, PointAnalysis, Verdict,
};

pub type PolyMatrix = Matrix<MultiPoly>;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyPoissonPencil {
    n: usize,
    a: PolyMatrix,
    b: PolyMatrix,
}

impl PolyPoissonPencil {
    /// Builds the pencil after checking shapes and skew-symmetry. Entries are
    /// re-tagged to `n` variables.
    pub fn new(a: PolyMatrix, b: PolyMatrix) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.rows() != n || !b.is_square() {
            return Err(Error::Shape("A and B must be square of equal size".into()));
        }
        let a = a.map(|e| e.clone().with_nvars(n));
        let b = b.map(|e| e.clone().with_nvars(n));
        if !a.is_skew() {
            return Err(Error::NotSkew("A".into()));
        }
        if !b.is_skew() {
            return Err(Error::NotSkew("B".into()));
        }
        Ok(PolyPoissonPencil { n, a, b })
    }

    pub fn from_constant(p: &SkewPencil) -> Self {
        let n = p.dimension();
        let lift = |m: &crate::QMatrix| m.map(|c| MultiPoly::constant(n, c.clone()));
        PolyPoissonPencil {
            n,
            a: lift(p.a()),
            b: lift(p.b()),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }
}

/// First failing triple of the Jacobi identity.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCounterexample {
    /// Zero-based `i < j < k`.
    pub indices: (usize, usize, usize),
    pub residual: MultiPoly,
}

impl JacobiCounterexample {
    pub fn into_error(self) -> Error {
        let (i, j, k) = self.indices;
        Error::JacobiViolation {
            indices: vec![i + 1, j + 1, k + 1],
            residual: self.residual.to_string(),
        }
    }
}

/// `Σ_l (Π_li ∂_l Π_jk + Π_lj ∂_l Π_ki + Π_lk ∂_l Π_ij)` for every `i < j < k`.
///
/// Returns the first nonzero cyclic sum, or `None` when `Π` is Poisson.
pub fn jacobi_check(pi: &PolyMatrix) -> Result<Option<JacobiCounterexample>> {
    if !pi.is_skew() {
        return Err(Error::NotSkew("Jacobi input".into()));
    }
    let n = pi.rows();
    let grads: Vec<Vec<Vec<MultiPoly>>> = (0..n)
        .map(|i| (0..n).map(|j| pi[(i, j)].gradient(n)).collect())
        .collect();
    let term = |x: usize, y: usize, z: usize| {
        (0..n).fold(MultiPoly::zero(n), |acc, l| {
            if pi[(l, x)].is_zero() || grads[y][z][l].is_zero() {
                acc
            } else {
                &acc + &(&pi[(l, x)] * &grads[y][z][l])
            }
        })
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = &(&term(i, j, k) + &term(j, k, i)) + &term(k, i, j);
                if !s.is_zero() {
                    return Ok(Some(JacobiCounterexample {
                        indices: (i, j, k),
                        residual: s,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Compatibility: `A + B` is Poisson, given that `A` and `B` are.
pub fn compatibility_check(p: &PolyPoissonPencil) -> Result<Option<JacobiCounterexample>> {
    for m in [&p.a, &p.b] {
        if let Some(c) = jacobi_check(m)? {
            return Err(c.into_error());
        }
    }
    jacobi_check(&p.a.add(&p.b))
}

pub fn evaluate_at(p: &PolyPoissonPencil, x0: &[Rational]) -> Result<SkewPencil> {
    if x0.len() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: x0.len(),
        });
    }
    SkewPencil::new(p.a.map(|e| e.eval(x0)), p.b.map(|e| e.eval(x0)))
}
