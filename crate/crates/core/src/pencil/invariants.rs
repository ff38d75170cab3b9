use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use super::core::{core_subspace, kronecker_from_growth};
use super::{block_diag, pencil_rank, sample_regular_values, SkewPencil};
use crate::error::{Error, Result};
use crate::exactalg::{gcd_free_basis, rank, smith_normal_form, QMatrix, Rational, UniPoly};

/// Eigenvalue descriptor: a monic factor over Q, or infinity.
///
/// A factor of degree `d` stands for `d` conjugate eigenvalues that share
/// one multiset of Jordan half-sizes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eigenvalue {
    Finite(UniPoly),
    Infinite,
}

impl Eigenvalue {
    pub fn rational(root: &Rational) -> Self {
        Eigenvalue::Finite(UniPoly::linear(root))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Eigenvalue::Finite(f) if f.deg() == 1 => Some(-f.coeff(0) / f.coeff(1)),
            _ => None,
        }
    }

    /// Number of eigenvalues the descriptor stands for.
    pub fn weight(&self) -> usize {
        match self {
            Eigenvalue::Finite(f) => f.deg(),
            Eigenvalue::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Eigenvalue::Infinite)
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Finite(p) => write!(f, "{}", p.to_string_in("λ")),
            Eigenvalue::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JordanGroup {
    pub eigenvalue: Eigenvalue,
    /// Half-sizes `n_j`, largest first.
    pub half_sizes: Vec<usize>,
}

impl JordanGroup {
    pub fn new(eigenvalue: Eigenvalue, mut half_sizes: Vec<usize>) -> Self {
        half_sizes.sort_unstable_by(|a, b| b.cmp(a));
        JordanGroup {
            eigenvalue,
            half_sizes,
        }
    }

    /// Real dimension of the blocks: `Σ 2 n_j · weight`.
    pub fn dimension(&self) -> usize {
        2 * self.half_sizes.iter().sum::<usize>() * self.eigenvalue.weight()
    }
}

/// Jordan–Kronecker invariants in normal form: Kronecker parameters in
/// decreasing order, Jordan groups sorted by eigenvalue with infinity last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JkInvariants {
    pub dimension: usize,
    pub kronecker: Vec<usize>,
    pub jordan: Vec<JordanGroup>,
}

impl JkInvariants {
    pub fn new(dimension: usize, mut kronecker: Vec<usize>, jordan: Vec<JordanGroup>) -> Self {
        kronecker.sort_unstable_by(|a, b| b.cmp(a));
        let mut merged: BTreeMap<Eigenvalue, Vec<usize>> = BTreeMap::new();
        for g in jordan {
            merged.entry(g.eigenvalue).or_default().extend(g.half_sizes);
        }
        JkInvariants {
            dimension,
            kronecker,
            jordan: merged
                .into_iter()
                .filter(|(_, h)| !h.is_empty())
                .map(|(e, h)| JordanGroup::new(e, h))
                .collect(),
        }
    }

    /// `Σ(2k_i − 1) + Σ 2n_j·deg`.
    pub fn block_dimension(&self) -> usize {
        self.kronecker.iter().map(|k| 2 * k - 1).sum::<usize>()
            + self
                .jordan
                .iter()
                .map(JordanGroup::dimension)
                .sum::<usize>()
    }

    pub fn rank(&self) -> usize {
        self.dimension - self.kronecker.len()
    }

    pub fn corank(&self) -> usize {
        self.kronecker.len()
    }

    pub fn core_dimension(&self) -> usize {
        self.kronecker.iter().sum()
    }

    pub fn mantle_dimension(&self) -> usize {
        self.core_dimension()
            + self
                .jordan
                .iter()
                .map(JordanGroup::dimension)
                .sum::<usize>()
    }

    /// Degree of the finite characteristic polynomial.
    pub fn finite_degree(&self) -> usize {
        self.jordan
            .iter()
            .filter(|g| !g.eigenvalue.is_infinite())
            .map(|g| g.half_sizes.iter().sum::<usize>() * g.eigenvalue.weight())
            .sum()
    }

    /// Jordan degree including infinite blocks.
    pub fn total_degree(&self) -> usize {
        self.jordan
            .iter()
            .map(|g| g.half_sizes.iter().sum::<usize>() * g.eigenvalue.weight())
            .sum()
    }

    /// `Π f^{Σ n_j}` over finite descriptors.
    pub fn char_poly(&self) -> UniPoly {
        self.jordan
            .iter()
            .filter_map(|g| match &g.eigenvalue {
                Eigenvalue::Finite(f) => Some(f.pow(g.half_sizes.iter().sum())),
                Eigenvalue::Infinite => None,
            })
            .fold(UniPoly::one(), |acc, f| &acc * &f)
    }

    pub fn is_kronecker_type(&self) -> bool {
        self.jordan.is_empty()
    }

    pub fn has_infinite(&self) -> bool {
        self.jordan.iter().any(|g| g.eigenvalue.is_infinite())
    }
}

/// Jordan part recovered from the Smith form of `A − λB`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanData {
    pub groups: Vec<JordanGroup>,
    /// Nonzero invariant factors of the analysed pencil.
    pub invariant_factors: Vec<UniPoly>,
    /// `μ₀` when the pencil was analysed as `(A, A + μ₀B)`.
    pub reparametrization: Option<Rational>,
    /// Finite characteristic polynomial rebuilt from the elementary divisors.
    pub char_poly: UniPoly,
}

/// Pairs the elementary divisors of the Smith form into Jordan groups.
pub fn jordan_data<G: Rng + ?Sized>(p: &SkewPencil, rng: &mut G) -> Result<JordanData> {
    let r = pencil_rank(p);
    let (work, mu0) = if rank(p.b()) < r {
        let mu = sample_regular_values(p, 1, &[Rational::zero()], rng)?.remove(0);
        (SkewPencil::new(p.a().clone(), p.member(&mu))?, Some(mu))
    } else {
        (p.clone(), None)
    };
    let factors: Vec<UniPoly> = smith_normal_form(&work.lambda_matrix())
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect();
    if factors.len() != r {
        return Err(Error::InternalConsistency(format!(
            "{} nonzero invariant factors for pencil rank {r}",
            factors.len()
        )));
    }

    let mut groups = Vec::new();
    for f in descriptors(&factors) {
        let mut exps: Vec<usize> = factors
            .iter()
            .map(|d| d.multiplicity_of(&f))
            .filter(|&e| e > 0)
            .collect();
        exps.sort_unstable();
        if exps.len() % 2 == 1 || exps.chunks(2).any(|c| c[0] != c[1]) {
            return Err(Error::PairingViolation(format!(
                "factor {} has exponents {exps:?}",
                f.to_string_in("λ")
            )));
        }
        let halves = exps.chunks(2).map(|c| c[0]).collect();
        let ev = match &mu0 {
            Some(mu) => mobius_back(&f, mu),
            None => Eigenvalue::Finite(f),
        };
        groups.push(JordanGroup::new(ev, halves));
    }
    let inv = JkInvariants::new(0, vec![], groups);
    Ok(JordanData {
        char_poly: inv.char_poly(),
        groups: inv.jordan,
        invariant_factors: factors,
        reparametrization: mu0,
    })
}

/// Linear factors for rational roots, then a gcd-free basis of what remains.
fn descriptors(factors: &[UniPoly]) -> Vec<UniPoly> {
    let top = match factors.last() {
        Some(t) if !t.is_constant() => t.clone(),
        _ => return Vec::new(),
    };
    let linear: Vec<UniPoly> = top.rational_roots().iter().map(UniPoly::linear).collect();
    let rest: Vec<UniPoly> = factors
        .iter()
        .map(|d| {
            linear.iter().fold(d.clone(), |acc, l| {
                let mut acc = acc;
                while !acc.is_constant() && l.divides(&acc) {
                    acc = acc.div_rem(l).0;
                }
                acc
            })
        })
        .collect();
    let mut out = linear;
    out.extend(gcd_free_basis(&rest));
    out
}

/// Maps a factor `g(ν)` of `(A, A + μ₀B)` back to the original parameter
/// through `ν = λ/(λ + μ₀)`.
fn mobius_back(g: &UniPoly, mu0: &Rational) -> Eigenvalue {
    let d = g.deg();
    let shift = UniPoly::affine(mu0.clone(), Rational::one());
    let mut out = UniPoly::zero();
    for (i, c) in g.coeffs().iter().enumerate() {
        let term = &UniPoly::x().pow(i) * &shift.pow(d - i);
        out = &out + &term.scale(c);
    }
    if out.is_constant() {
        Eigenvalue::Infinite
    } else {
        Eigenvalue::Finite(out.monic())
    }
}

/// Full invariants: Jordan data from the Smith form, Kronecker parameters
/// from the growth of kernel sums at regular values.
pub fn jk_invariants<G: Rng + ?Sized>(p: &SkewPencil, rng: &mut G) -> Result<JkInvariants> {
    let n = p.dimension();
    let jd = jordan_data(p, rng)?;
    let core = core_subspace(p, rng)?;
    let kron = kronecker_from_growth(&core.growth);
    let r = pencil_rank(p);
    if kron.len() != n - r {
        return Err(Error::InternalConsistency(format!(
            "{} Kronecker blocks but corank {}",
            kron.len(),
            n - r
        )));
    }
    let inv = JkInvariants::new(n, kron, jd.groups);
    if inv.block_dimension() != n {
        return Err(Error::InternalConsistency(format!(
            "blocks cover {} of {n} dimensions",
            inv.block_dimension()
        )));
    }
    Ok(inv)
}

/// Block-diagonal canonical pencil: Kronecker blocks first, then Jordan
/// blocks in the order of `inv.jordan`.
pub fn canonical_pencil(inv: &JkInvariants) -> Result<SkewPencil> {
    let mut a = QMatrix::zeros(0, 0);
    let mut b = QMatrix::zeros(0, 0);
    for &k in &inv.kronecker {
        let (ka, kb) = kronecker_block(k);
        a = block_diag(&a, &ka);
        b = block_diag(&b, &kb);
    }
    for g in &inv.jordan {
        for &h in &g.half_sizes {
            let (ja, jb) = match &g.eigenvalue {
                Eigenvalue::Infinite => infinite_jordan_block(h),
                ev => {
                    let l0 = ev
                        .as_rational()
                        .ok_or_else(|| Error::NonRationalEigenvalue(ev.to_string()))?;
                    jordan_block(&l0, h)
                }
            };
            a = block_diag(&a, &ja);
            b = block_diag(&b, &jb);
        }
    }
    if a.rows() != inv.dimension {
        return Err(Error::DimensionMismatch {
            expected: inv.dimension,
            found: a.rows(),
        });
    }
    SkewPencil::new(a, b)
}

fn antidiagonal_pair(top: &QMatrix) -> QMatrix {
    let p = top.rows();
    let mut m = QMatrix::zeros(2 * p, 2 * p);
    for i in 0..p {
        for j in 0..p {
            m[(i, p + j)] = top[(i, j)].clone();
            m[(p + j, i)] = -top[(i, j)].clone();
        }
    }
    m
}

fn shift(p: usize) -> QMatrix {
    let mut m = QMatrix::zeros(p, p);
    for i in 0..p.saturating_sub(1) {
        m[(i, i + 1)] = Rational::one();
    }
    m
}

fn jordan_block(l0: &Rational, p: usize) -> (QMatrix, QMatrix) {
    let j = QMatrix::identity(p).scale(l0).add(&shift(p));
    (
        antidiagonal_pair(&j),
        antidiagonal_pair(&QMatrix::identity(p)),
    )
}

fn infinite_jordan_block(p: usize) -> (QMatrix, QMatrix) {
    (
        antidiagonal_pair(&QMatrix::identity(p)),
        antidiagonal_pair(&shift(p)),
    )
}

/// Size `2k − 1`, basis `e₁…e_{k−1}, f₁…f_k`.
fn kronecker_block(k: usize) -> (QMatrix, QMatrix) {
    let n = 2 * k - 1;
    let mut a = QMatrix::zeros(n, n);
    let mut b = QMatrix::zeros(n, n);
    for i in 0..k - 1 {
        let fi = k - 1 + i;
        a[(i, fi)] = Rational::one();
        a[(fi, i)] = -Rational::one();
        b[(i, fi + 1)] = Rational::one();
        b[(fi + 1, i)] = -Rational::one();
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};
    use crate::pencil::congruence_transform;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn jg(l0: i64, h: Vec<usize>) -> JordanGroup {
        JordanGroup::new(Eigenvalue::rational(&rat(l0)), h)
    }

    #[test]
    fn canonical_examples() {
        let k1 = canonical_pencil(&JkInvariants::new(1, vec![1], vec![])).unwrap();
        assert_eq!(k1, SkewPencil::zero(1));

        let j = canonical_pencil(&JkInvariants::new(2, vec![], vec![jg(4, vec![1])])).unwrap();
        assert_eq!(
            j.a().to_rows(),
            vec![vec![rat(0), rat(4)], vec![rat(-4), rat(0)]]
        );
        assert_eq!(
            j.b().to_rows(),
            vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]
        );

        let inf = JkInvariants::new(
            2,
            vec![],
            vec![JordanGroup::new(Eigenvalue::Infinite, vec![1])],
        );
        let j = canonical_pencil(&inf).unwrap();
        assert_eq!(
            j.a().to_rows(),
            vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]
        );
        assert!(j.b().is_zero());

        let quad = JordanGroup::new(Eigenvalue::Finite(UniPoly::from_i64(&[1, 0, 1])), vec![1]);
        assert!(matches!(
            canonical_pencil(&JkInvariants::new(4, vec![], vec![quad])),
            Err(Error::NonRationalEigenvalue(_))
        ));
    }

    #[test]
    fn jordan_seven_two() {
        let inv = JkInvariants::new(4, vec![], vec![jg(7, vec![2])]);
        let got = jk_invariants(&canonical_pencil(&inv).unwrap(), &mut rng()).unwrap();
        assert_eq!(got, inv);
        assert!(got.kronecker.is_empty());
    }

    #[test]
    fn zero_pencil_is_trivial_kronecker() {
        let got = jk_invariants(&SkewPencil::zero(4), &mut rng()).unwrap();
        assert_eq!(got.kronecker, vec![1, 1, 1, 1]);
        assert!(got.jordan.is_empty());
    }

    #[test]
    fn mixed_round_trip_with_infinity() {
        let inv = JkInvariants::new(
            7,
            vec![2],
            vec![
                jg(1, vec![1]),
                JordanGroup::new(Eigenvalue::Infinite, vec![1]),
            ],
        );
        let p = canonical_pencil(&inv).unwrap();
        assert_eq!(jk_invariants(&p, &mut rng()).unwrap(), inv);
        // unimodular upper-triangular congruence with a permutation
        let mut t = QMatrix::identity(7);
        for i in 0..6 {
            t[(i, i + 1)] = rat(if i % 2 == 0 { 1 } else { -2 });
        }
        t[(6, 0)] = rat(1);
        let q = congruence_transform(&p, &t).unwrap();
        assert_eq!(jk_invariants(&q, &mut rng()).unwrap(), inv);
    }

    #[test]
    fn smith_char_poly_and_quadratic_factor() {
        // λ² + 1 as a 4×4 real block: A = ((0, J), (−Jᵀ, 0)) with J the companion
        let mut j = QMatrix::zeros(2, 2);
        j[(0, 1)] = rat(-1);
        j[(1, 0)] = rat(1);
        let p = SkewPencil::new(
            antidiagonal_pair(&j),
            antidiagonal_pair(&QMatrix::identity(2)),
        )
        .unwrap();
        let jd = jordan_data(&p, &mut rng()).unwrap();
        assert_eq!(jd.char_poly, UniPoly::from_i64(&[1, 0, 1]));
        assert_eq!(jd.groups.len(), 1);
        assert_eq!(jd.groups[0].half_sizes, vec![1]);
        assert_eq!(jd.groups[0].eigenvalue.weight(), 2);
    }

    #[test]
    fn mobius_back_maps_roots() {
        // ν = λ/(λ+μ₀); λ = 2, μ₀ = 3 → ν = 2/5
        let g = UniPoly::linear(&ratio(2, 5));
        assert_eq!(mobius_back(&g, &rat(3)), Eigenvalue::rational(&rat(2)));
        assert_eq!(
            mobius_back(&UniPoly::linear(&rat(1)), &rat(3)),
            Eigenvalue::Infinite
        );
    }

    #[test]
    fn derived_dimensions() {
        let inv = JkInvariants::new(9, vec![2, 1], vec![jg(0, vec![1]), jg(3, vec![1])]);
        assert_eq!(inv.block_dimension(), 8);
        let inv = JkInvariants::new(8, vec![2, 1], vec![jg(0, vec![1]), jg(3, vec![1])]);
        assert_eq!(inv.block_dimension(), 8);
        assert_eq!(inv.rank(), 6);
        assert_eq!(inv.core_dimension(), 3);
        assert_eq!(inv.mantle_dimension(), 7);
        assert_eq!(inv.finite_degree(), 2);
    }
}
