use num_traits::{One, Zero};
use rand::Rng;

use super::pfaffian::pfaffian_field;
use super::{pencil_rank, sample_regular_values, SkewPencil};
use crate::error::{Error, Result};
use crate::exactalg::{inverse, rank, rat, Matrix, Rational, UniPoly};

/// Monic characteristic polynomial with its multiplicity structure.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    pub poly: UniPoly,
    pub squarefree: Vec<(UniPoly, usize)>,
    pub rational_roots: Vec<(Rational, usize)>,
}

impl CharPoly {
    pub fn from_poly(poly: UniPoly) -> Self {
        let poly = poly.monic();
        let squarefree = poly.squarefree_decompose().unwrap_or_default();
        let mut rational_roots: Vec<(Rational, usize)> = poly
            .rational_roots()
            .into_iter()
            .map(|r| {
                let m = poly.multiplicity_of(&UniPoly::linear(&r));
                (r, m)
            })
            .collect();
        rational_roots.sort();
        CharPoly {
            poly,
            squarefree,
            rational_roots,
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree.iter().all(|(_, m)| *m == 1)
    }
}

/// Visits the `k`-subsets of `0..n` in lexicographic order until `f` returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// Monic gcd of the Pfaffians of the principal `r×r` minors of `A − λB`,
/// without requiring `B` to be regular. Roots are the finite eigenvalues.
pub fn characteristic_polynomial_finite(p: &SkewPencil) -> CharPoly {
    let n = p.dimension();
    let r = pencil_rank(p);
    // Pf(A − λB) on an r×r minor has degree ≤ r/2: sample the full matrix
    // at r/2 + 1 nodes once and interpolate per minor.
    let xs: Vec<Rational> = (0..=(r / 2) as i64).map(rat).collect();
    let members: Vec<_> = xs.iter().map(|l| p.a().sub(&p.b().scale(l))).collect();
    let mut g = UniPoly::zero();
    for_each_subset(n, r, |idx| {
        let ys: Vec<Rational> = members
            .iter()
            .map(|m| pfaffian_field(&m.principal_minor(idx)))
            .collect();
        let pf = UniPoly::interpolate(&xs, &ys);
        if !pf.is_zero() {
            g = g.gcd(&pf);
        }
        !(g.is_constant() && !g.is_zero())
    });
    if g.is_zero() {
        g = UniPoly::one();
    }
    CharPoly::from_poly(g)
}

/// Characteristic polynomial of a pencil whose `B` is regular.
pub fn characteristic_polynomial(p: &SkewPencil) -> Result<CharPoly> {
    let r = pencil_rank(p);
    let rank_b = rank(p.b());
    if rank_b < r {
        return Err(Error::InfiniteEigenvalue {
            rank_b,
            pencil_rank: r,
        });
    }
    Ok(characteristic_polynomial_finite(p))
}

/// Total Jordan degree `N`, counting infinite blocks.
///
/// When `B` is singular in the pencil the pencil is reparametrised as
/// `(A, A + μ₀B)` at a regular `μ₀`, which moves infinity to a finite value.
pub fn homogeneous_char_degree<G: Rng + ?Sized>(p: &SkewPencil, rng: &mut G) -> Result<usize> {
    match characteristic_polynomial(p) {
        Ok(c) => Ok(c.degree()),
        Err(Error::InfiniteEigenvalue { .. }) => {
            let mu = sample_regular_values(p, 1, &[Rational::zero()], rng)?.remove(0);
            let q = SkewPencil::new(p.a().clone(), p.member(&mu))?;
            Ok(characteristic_polynomial(&q)?.degree())
        }
        Err(e) => Err(e),
    }
}

/// Whether `det(B⁻¹A − λI)` equals `p_L(λ)²` up to its leading coefficient.
pub fn recursion_charpoly_check(p: &SkewPencil) -> Result<bool> {
    let n = p.dimension();
    let b_inv = inverse(p.b()).ok_or_else(|| Error::Singular("B".into()))?;
    let rec = b_inv.mul(p.a());
    let shifted = Matrix::from_fn(n, n, |i, j| {
        let c = rec[(i, j)].clone();
        if i == j {
            UniPoly::affine(c, -Rational::one())
        } else {
            UniPoly::constant(c)
        }
    });
    let det = shifted.determinant();
    let pl = characteristic_polynomial(p)?.poly;
    Ok(det.monic() == &pl * &pl)
}
