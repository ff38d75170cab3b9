//! Lie algebras given by structure constants, and the pencils
//! `A(x) + λA(a)` on the dual space.

pub mod catalog;

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::{
    rank, rank_over_fractions, rat, Matrix, MultiPoly, QMatrix, Rational, UniPoly,
};
use crate::pencil::{
    characteristic_polynomial, for_each_subset, jk_invariants, pencil_rank, pfaffian, JkInvariants,
    SkewPencil, MAX_REGULAR_ATTEMPTS,
};
use crate::poisson::{
    compatibility_check, completeness_check, extended_core, generic_char_poly, jacobi_check,
    sample_generic_point, CompletenessReport, GenericCharPoly, PolyPoissonPencil, Verdict,
};

pub use self::catalog::{by_name, catalog, catalog_names};

/// Structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`, zero-based, stored for
/// `i < j`.
/// One bracket `[e_i, e_j] = Σ c_k e_k` as `(i, j, [(k, c_k)])`, zero-based.
pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub name: Option<String>,
    dim: usize,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

impl LieAlgebra {
    /// Entries `(i, j, [(k, c_ij^k)])` with `i < j`. Repeated `(i, j, k)`
    /// entries add up.
    pub fn from_brackets(
        name: Option<String>,
        dim: usize,
        entries: Vec<BracketEntry>,
    ) -> Result<Self> {
        let mut brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, j, coeffs) in entries {
            if i >= j || j >= dim {
                return Err(Error::Shape(format!(
                    "bracket index pair ({}, {}) must satisfy i < j ≤ {dim}",
                    i + 1,
                    j + 1
                )));
            }
            let row = brackets.entry((i, j)).or_default();
            for (k, c) in coeffs {
                if k >= dim {
                    return Err(Error::Shape(format!(
                        "output index {} exceeds {dim}",
                        k + 1
                    )));
                }
                *row.entry(k).or_insert_with(Rational::zero) += c;
            }
            row.retain(|_, c| !c.is_zero());
        }
        brackets.retain(|_, r| !r.is_empty());
        Ok(LieAlgebra {
            name,
            dim,
            brackets,
        })
    }

    /// Full tensor `c[i][j][k]`; rejected unless antisymmetric in `i, j`.
    #[allow(clippy::needless_range_loop)]
    pub fn from_tensor(name: Option<String>, c: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let dim = c.len();
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = &c[i][j][k];
                    if *v != -c[j][i][k].clone() {
                        return Err(Error::NotSkew(format!(
                            "c_{}{}^{} is not antisymmetric",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                    if i < j && !v.is_zero() {
                        entries.push((i, j, vec![(k, v.clone())]));
                    }
                }
            }
        }
        Self::from_brackets(name, dim, entries)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Nonzero `(i, j, k, c_ij^k)` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), row)| row.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    /// `c_ij^k` for any `i, j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        let get = |a: usize, b: usize| {
            self.brackets
                .get(&(a, b))
                .and_then(|r| r.get(&k))
                .cloned()
                .unwrap_or_else(Rational::zero)
        };
        match i.cmp(&j) {
            std::cmp::Ordering::Less => get(i, j),
            std::cmp::Ordering::Greater => -get(j, i),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    /// First `(i, j, k, l)` where the Jacobi identity fails, checked over all
    /// index quadruples, or `None`. Cross-checked against the Jacobi identity
    /// of the Lie–Poisson tensor.
    #[allow(clippy::needless_range_loop)]
    pub fn validate(&self) -> Result<Option<(usize, usize, usize, usize)>> {
        let d = self.dim;
        let c: Vec<Vec<Vec<Rational>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| self.structure_constant(i, j, k)).collect())
                    .collect()
            })
            .collect();
        let mut first = None;
        'outer: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut s = Rational::zero();
                        for m in 0..d {
                            s += &c[i][j][m] * &c[m][k][l];
                            s += &c[j][k][m] * &c[m][i][l];
                            s += &c[k][i][m] * &c[m][j][l];
                        }
                        if !s.is_zero() {
                            first = Some((i, j, k, l));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let tensor = jacobi_check(&self.lie_poisson_matrix())?;
        if first.is_some() != tensor.is_some() {
            return Err(Error::InternalConsistency(format!(
                "structure-constant Jacobi {} but Lie–Poisson Jacobi {}",
                if first.is_some() { "fails" } else { "holds" },
                if tensor.is_some() { "fails" } else { "holds" }
            )));
        }
        Ok(first)
    }

    /// Validation as an error carrying the one-based quadruple.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate()? {
            None => Ok(()),
            Some((i, j, k, l)) => Err(Error::JacobiViolation {
                indices: vec![i + 1, j + 1, k + 1, l + 1],
                residual: "nonzero structure-constant sum".into(),
            }),
        }
    }

    /// `(Σ_k c_ij^k x_k)`.
    pub fn lie_poisson_matrix(&self) -> Matrix<MultiPoly> {
        let d = self.dim;
        Matrix::from_fn(d, d, |i, j| {
            let coeffs: Vec<Rational> = (0..d).map(|k| self.structure_constant(i, j, k)).collect();
            MultiPoly::linear(&coeffs).with_nvars(d)
        })
    }

    /// `(Σ_k c_ij^k a_k)`.
    pub fn frozen_matrix(&self, a: &[Rational]) -> QMatrix {
        let d = self.dim;
        Matrix::from_fn(d, d, |i, j| {
            (0..d).fold(Rational::zero(), |acc, k| {
                acc + self.structure_constant(i, j, k) * &a[k]
            })
        })
    }

    /// Rank of `A(x)` over Q(x): twice the half-rank, `d − ind g`.
    pub fn generic_rank(&self) -> usize {
        rank_over_fractions(&self.lie_poisson_matrix())
    }

    pub fn is_regular(&self, a: &[Rational]) -> bool {
        rank(&self.frozen_matrix(a)) == self.generic_rank()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiePencilSpec {
    pub algebra: LieAlgebra,
    pub frozen: Vec<Rational>,
    pub pencil: PolyPoissonPencil,
    pub regular: bool,
    /// `IRREGULAR_FROZEN_POINT` explanation when `a` is not regular.
    pub warning: Option<String>,
}

pub const IRREGULAR_FROZEN_POINT: &str = "IRREGULAR_FROZEN_POINT";
pub const UNSTABLE_SAMPLES: &str = "UNSTABLE_SAMPLES";

pub fn lie_pencil(g: &LieAlgebra, a: &[Rational]) -> Result<LiePencilSpec> {
    let d = g.dimension();
    if a.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.len(),
        });
    }
    let b = g
        .frozen_matrix(a)
        .map(|c| MultiPoly::constant(d, c.clone()));
    let pencil = PolyPoissonPencil::new(g.lie_poisson_matrix(), b)?;
    if let Some(ce) = compatibility_check(&pencil)? {
        return Err(Error::InternalConsistency(format!(
            "Lie–Poisson and frozen brackets incompatible: {}",
            ce.into_error()
        )));
    }
    let (ra, r) = (rank(&g.frozen_matrix(a)), g.generic_rank());
    let regular = ra == r;
    let warning = (!regular)
        .then(|| format!("{IRREGULAR_FROZEN_POINT}: rank A(a) = {ra} below generic rank {r}"));
    Ok(LiePencilSpec {
        algebra: g.clone(),
        frozen: a.to_vec(),
        pencil,
        regular,
        warning,
    })
}

/// Eigenvalue-free part of the invariants: Kronecker parameters and the
/// Jordan half-size multisets, one per (complex) eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JkShape {
    pub kronecker: Vec<usize>,
    pub jordan: Vec<Vec<usize>>,
}

impl JkShape {
    pub fn of(inv: &JkInvariants) -> Self {
        let mut jordan = Vec::new();
        for g in &inv.jordan {
            for _ in 0..g.eigenvalue.weight() {
                jordan.push(g.half_sizes.clone());
            }
        }
        jordan.sort();
        jordan.reverse();
        JkShape {
            kronecker: inv.kronecker.clone(),
            jordan,
        }
    }

    pub fn is_kronecker_type(&self) -> bool {
        self.jordan.is_empty()
    }

    pub fn has_nontrivial_jordan(&self) -> bool {
        self.jordan.iter().flatten().any(|&h| h > 1)
    }

    pub fn has_repeated_eigenvalue(&self) -> bool {
        self.jordan.iter().any(|h| h.len() > 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericJk {
    pub shape: JkShape,
    /// Invariants at the first sample realising the chosen shape.
    pub representative: JkInvariants,
    pub max_rank: usize,
    pub samples: usize,
    /// All max-rank samples agree.
    pub stable: bool,
    pub sample_shapes: Vec<JkShape>,
}

pub const DEFAULT_SAMPLES: usize = 7;

fn random_point<G: Rng + ?Sized>(d: usize, rng: &mut G) -> Vec<Rational> {
    (0..d).map(|_| rat(rng.random_range(-9..=9))).collect()
}

/// Invariants of `(A(x), A(a))` over random integer pairs, keeping the
/// samples of maximal pencil rank; the most frequent shape among those wins.
pub fn jk_invariants_generic<G: Rng + ?Sized>(
    g: &LieAlgebra,
    samples: usize,
    rng: &mut G,
) -> Result<GenericJk> {
    g.ensure_valid()?;
    let d = g.dimension();
    let mut found: Vec<(usize, JkInvariants)> = Vec::new();
    for _ in 0..samples.max(1) {
        let x = random_point(d, rng);
        let a = random_point(d, rng);
        let p = SkewPencil::new(g.frozen_matrix(&x), g.frozen_matrix(&a))?;
        found.push((pencil_rank(&p), jk_invariants(&p, rng)?));
    }
    let max_rank = found.iter().map(|(r, _)| *r).max().unwrap_or(0);
    let top: Vec<&JkInvariants> = found
        .iter()
        .filter(|(r, _)| *r == max_rank)
        .map(|(_, i)| i)
        .collect();
    let shapes: Vec<JkShape> = top.iter().map(|i| JkShape::of(i)).collect();
    let mut counts: BTreeMap<&JkShape, usize> = BTreeMap::new();
    for s in &shapes {
        *counts.entry(s).or_default() += 1;
    }
    let best = counts
        .iter()
        .max_by_key(|(_, c)| **c)
        .map(|(s, _)| (*s).clone())
        .expect("at least one sample");
    let representative = top[shapes.iter().position(|s| *s == best).expect("present")].clone();
    Ok(GenericJk {
        stable: counts.len() == 1,
        shape: best,
        representative,
        max_rank,
        samples: found.len(),
        sample_shapes: shapes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemiInvariant {
    /// `p_g`, content 1 with positive leading coefficient.
    pub poly: MultiPoly,
    pub rank: usize,
    /// `(x, a)` pairs where `p_{x,a}(λ) ∝ p_g(x − λa)` was confirmed.
    pub checked: Vec<(Vec<Rational>, Vec<Rational>)>,
}

/// Points at which the semi-invariant identity is confirmed.
pub const IDENTITY_POINTS: usize = 3;

/// Gcd of the Pfaffians of the principal `r×r` minors of `A(x)`.
///
/// With eigenvalues taken as roots of `A − λB`, the pointwise polynomial of
/// `(A(x), A(a))` is the monic form of `p_g(x − λa)`; this is checked at
/// random pairs with regular `a`.
pub fn fundamental_semiinvariant<G: Rng + ?Sized>(
    g: &LieAlgebra,
    rng: &mut G,
) -> Result<SemiInvariant> {
    g.ensure_valid()?;
    let d = g.dimension();
    let m = g.lie_poisson_matrix();
    let r = g.generic_rank();
    let mut failure = None;
    let mut acc = MultiPoly::zero(d);
    for_each_subset(d, r, |idx| {
        match pfaffian(&m.principal_minor(idx)) {
            Ok(pf) if !pf.is_zero() => {
                acc = if acc.is_zero() {
                    pf.normalized()
                } else {
                    acc.gcd(&pf)
                };
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
        failure.is_none() && !(acc.is_constant() && !acc.is_zero())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let poly = if acc.is_zero() {
        MultiPoly::one(d)
    } else {
        acc.with_nvars(d)
    };
    let poly = if poly.is_constant() {
        MultiPoly::one(d)
    } else {
        poly
    };

    let mut checked = Vec::new();
    for _ in 0..MAX_REGULAR_ATTEMPTS {
        if checked.len() == IDENTITY_POINTS {
            break;
        }
        let x = random_point(d, rng);
        let a = random_point(d, rng);
        if rank(&g.frozen_matrix(&a)) != r || rank(&g.frozen_matrix(&x)) != r {
            continue;
        }
        let p = SkewPencil::new(g.frozen_matrix(&x), g.frozen_matrix(&a))?;
        let local = characteristic_polynomial(&p)?.poly;
        let neg_a: Vec<Rational> = a.iter().map(|v| -v.clone()).collect();
        let line = poly.restrict_to_line(&x, &neg_a);
        if line.is_zero() || local.deg() > line.deg() {
            // the pair sits on a degeneracy locus; draw again
            continue;
        }
        if line.monic() != local {
            return Err(Error::InternalConsistency(format!(
                "p_(x,a) = {} but p_g(x − λa) = {}",
                local,
                line.monic()
            )));
        }
        checked.push((x, a));
    }
    if checked.len() < IDENTITY_POINTS {
        return Err(Error::NoRegularValue {
            attempts: MAX_REGULAR_ATTEMPTS,
        });
    }
    Ok(SemiInvariant {
        poly,
        rank: r,
        checked,
    })
}

/// `F_a` is complete iff the generic pencil has no Jordan blocks.
pub fn fa_completeness(jk: &GenericJk) -> Verdict {
    if !jk.stable {
        Verdict::Indeterminate
    } else if jk.shape.is_kronecker_type() {
        Verdict::Complete
    } else {
        Verdict::Incomplete
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FtildeReport {
    pub verdict: Verdict,
    pub frozen: Vec<Rational>,
    pub regular: bool,
    pub points: Vec<Vec<Rational>>,
    pub reports: Vec<CompletenessReport>,
    /// Diagnostics: irregularity, disagreement between points.
    pub notes: Vec<String>,
}

/// Completeness of `F̃_a` through the extended-core dimension test at each
/// point. Explicit `points` must be generic; otherwise `samples` points are
/// drawn.
pub fn ftilde_completeness<G: Rng + ?Sized>(
    g: &LieAlgebra,
    a: &[Rational],
    points: &[Vec<Rational>],
    samples: usize,
    rng: &mut G,
) -> Result<(FtildeReport, Option<GenericCharPoly>)> {
    let spec = lie_pencil(g, a)?;
    if !spec.regular {
        return Ok((
            FtildeReport {
                verdict: Verdict::Indeterminate,
                frozen: a.to_vec(),
                regular: false,
                points: Vec::new(),
                reports: Vec::new(),
                notes: spec.warning.into_iter().collect(),
            },
            None,
        ));
    }
    let gcp = generic_char_poly(&spec.pencil, rng)?;
    let pts: Vec<Vec<Rational>> = if points.is_empty() {
        (0..samples.max(1))
            .map(|_| sample_generic_point(&spec.pencil, &gcp, rng))
            .collect::<Result<_>>()?
    } else {
        points.to_vec()
    };
    let mut reports = Vec::new();
    for x0 in &pts {
        let pa = extended_core(&spec.pencil, &gcp, x0, rng)?;
        reports.push(completeness_check(&pa)?);
    }
    let mut notes = Vec::new();
    let first = reports[0].verdict;
    let verdict = if reports.iter().all(|r| r.verdict == first) {
        first
    } else {
        notes.push(format!(
            "{UNSTABLE_SAMPLES}: verdicts differ between points"
        ));
        Verdict::Indeterminate
    };
    Ok((
        FtildeReport {
            verdict,
            frozen: a.to_vec(),
            regular: true,
            points: pts,
            reports,
            notes,
        },
        Some(gcp),
    ))
}

/// Random regular frozen point.
pub fn sample_regular_point<G: Rng + ?Sized>(g: &LieAlgebra, rng: &mut G) -> Result<Vec<Rational>> {
    for _ in 0..MAX_REGULAR_ATTEMPTS {
        let a = random_point(g.dimension(), rng);
        if g.is_regular(&a) {
            return Ok(a);
        }
    }
    Err(Error::NoRegularValue {
        attempts: MAX_REGULAR_ATTEMPTS,
    })
}

/// Deterministic regular frozen point: unit vectors from the last basis
/// element backwards, then `(1, …, 1)`, then `(1, 2, …, d)`.
pub fn default_frozen_point(g: &LieAlgebra) -> Option<Vec<Rational>> {
    let d = g.dimension();
    let mut candidates: Vec<Vec<Rational>> = (0..d)
        .rev()
        .map(|i| (0..d).map(|k| rat((k == i) as i64)).collect())
        .collect();
    candidates.push(vec![rat(1); d]);
    candidates.push((1..=d as i64).map(rat).collect());
    if d == 0 {
        return Some(Vec::new());
    }
    candidates.into_iter().find(|a| g.is_regular(a))
}

/// `p_g` restricted to the line `x − λa`, as a polynomial in λ.
pub fn semiinvariant_on_line(p: &MultiPoly, x: &[Rational], a: &[Rational]) -> UniPoly {
    let neg: Vec<Rational> = a.iter().map(|v| -v.clone()).collect();
    p.restrict_to_line(x, &neg)
}
