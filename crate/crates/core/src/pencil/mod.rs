//! Constant pencils `A + λB` of skew-symmetric forms over Q.

mod charpoly;
mod core;
pub mod generate;
mod invariants;
mod pfaffian;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::{inverse, rank, rat, Matrix, QMatrix, Rational, UniPoly};

pub(crate) use self::charpoly::for_each_subset;
pub use self::charpoly::{
    characteristic_polynomial, characteristic_polynomial_finite, homogeneous_char_degree,
    recursion_charpoly_check, CharPoly,
};
pub use self::core::{
    core_subspace, isotropy_certificate, kronecker_from_growth, pairing_certificate, CoreReport,
    IsotropyCertificate,
};
pub use self::invariants::{
    canonical_pencil, jk_invariants, jordan_data, Eigenvalue, JkInvariants, JordanData, JordanGroup,
};
pub use self::pfaffian::{pencil_pfaffian, pfaffian, pfaffian_field};

/// Attempts per regular value before giving up.
pub const MAX_REGULAR_ATTEMPTS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct SkewPencil {
    a: QMatrix,
    b: QMatrix,
}

/// Parameter of a pencil member: `A + λB`, or `B` itself at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilParam {
    Finite(Rational),
    Infinity,
}

impl SkewPencil {
    pub fn new(a: QMatrix, b: QMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() != b.rows() || b.rows() != b.cols() {
            return Err(Error::Shape(format!(
                "A is {}x{}, B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if !a.is_skew() {
            return Err(Error::NotSkew("A".into()));
        }
        if !b.is_skew() {
            return Err(Error::NotSkew("B".into()));
        }
        Ok(SkewPencil { a, b })
    }

    pub fn zero(n: usize) -> Self {
        SkewPencil {
            a: QMatrix::zeros(n, n),
            b: QMatrix::zeros(n, n),
        }
    }

    pub fn dimension(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QMatrix {
        &self.b
    }

    /// `A + λB`.
    pub fn member(&self, lambda: &Rational) -> QMatrix {
        self.a.add(&self.b.scale(lambda))
    }

    pub fn member_at(&self, param: &PencilParam) -> QMatrix {
        match param {
            PencilParam::Finite(l) => self.member(l),
            PencilParam::Infinity => self.b.clone(),
        }
    }

    /// `A − λB` with λ as the polynomial variable.
    pub fn lambda_matrix(&self) -> Matrix<UniPoly> {
        let n = self.dimension();
        Matrix::from_fn(n, n, |i, j| {
            UniPoly::affine(self.a[(i, j)].clone(), -self.b[(i, j)].clone())
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SkewPencil) -> SkewPencil {
        SkewPencil {
            a: block_diag(&self.a, &other.a),
            b: block_diag(&self.b, &other.b),
        }
    }

    pub fn principal_minor(&self, idx: &[usize]) -> SkewPencil {
        SkewPencil {
            a: self.a.principal_minor(idx),
            b: self.b.principal_minor(idx),
        }
    }
}

pub(crate) fn block_diag(x: &QMatrix, y: &QMatrix) -> QMatrix {
    let (n, m) = (x.rows(), y.rows());
    Matrix::from_fn(n + m, n + m, |i, j| {
        if i < n && j < n {
            x[(i, j)].clone()
        } else if i >= n && j >= n {
            y[(i - n, j - n)].clone()
        } else {
            Rational::zero()
        }
    })
}

/// Rank of `A + λB` over Q(λ).
///
/// At most `n/2` parameter values drop the rank, so the maximum over
/// `⌊n/2⌋ + 1` distinct points is the generic rank.
pub fn pencil_rank(p: &SkewPencil) -> usize {
    let n = p.dimension();
    let mut best = 0;
    for t in 0..=(n / 2) as i64 {
        best = best.max(rank(&p.member(&rat(t))));
        if best == n {
            break;
        }
    }
    best
}

pub fn is_regular_value(p: &SkewPencil, param: &PencilParam) -> bool {
    rank(&p.member_at(param)) == pencil_rank(p)
}

/// Draws distinct integer regular values from `[−10n, 10n]`, avoiding `exclude`.
pub fn sample_regular_values<G: Rng + ?Sized>(
    p: &SkewPencil,
    count: usize,
    exclude: &[Rational],
    rng: &mut G,
) -> Result<Vec<Rational>> {
    let n = p.dimension();
    let r = pencil_rank(p);
    let bound = 10 * n.max(1) as i64;
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut found = None;
        for _ in 0..MAX_REGULAR_ATTEMPTS {
            let mu = rat(rng.random_range(-bound..=bound));
            if out.contains(&mu) || exclude.contains(&mu) {
                continue;
            }
            if rank(&p.member(&mu)) == r {
                found = Some(mu);
                break;
            }
        }
        match found {
            Some(mu) => out.push(mu),
            None => {
                return Err(Error::NoRegularValue {
                    attempts: MAX_REGULAR_ATTEMPTS,
                })
            }
        }
    }
    Ok(out)
}

/// `(PᵀAP, PᵀBP)`.
pub fn congruence_transform(p: &SkewPencil, t: &QMatrix) -> Result<SkewPencil> {
    let n = p.dimension();
    if t.rows() != n || t.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.rows(),
        });
    }
    if inverse(t).is_none() {
        return Err(Error::Singular("congruence matrix".into()));
    }
    let tt = t.transpose();
    SkewPencil::new(tt.mul(&p.a).mul(t), tt.mul(&p.b).mul(t))
}
