//! Pointwise analysis at a generic point: extended core, completeness,
//! bi-involution and the eigenvalue lemma.

use num_traits::Zero;
use rand::Rng;

use super::{evaluate_at, GenericCharPoly, PolyPoissonPencil};
use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis, rat, Rational, Subspace, UniPoly};
use crate::pencil::{
    characteristic_polynomial, core_subspace, jk_invariants, kronecker_from_growth,
    pairing_certificate, pencil_rank, sample_regular_values, CharPoly, CoreReport, JkInvariants,
    SkewPencil, MAX_REGULAR_ATTEMPTS,
};

/// Checks rank, degree and denominator at `x0` against the generic values.
pub fn check_generic(
    p: &PolyPoissonPencil,
    gcp: &GenericCharPoly,
    x0: &[Rational],
) -> Result<(SkewPencil, CharPoly)> {
    let pt = evaluate_at(p, x0)?;
    let r = pencil_rank(&pt);
    if r != gcp.rank {
        return Err(Error::NonGenericPoint {
            reason: format!("rank {r} at the point, generic rank {}", gcp.rank),
        });
    }
    if gcp.denominator().eval(x0).is_zero() {
        return Err(Error::NonGenericPoint {
            reason: "characteristic polynomial denominator vanishes".into(),
        });
    }
    let cp = match characteristic_polynomial(&pt) {
        Ok(c) => c,
        Err(Error::InfiniteEigenvalue { rank_b, .. }) => {
            return Err(Error::NonGenericPoint {
                reason: format!("rank of B drops to {rank_b}"),
            })
        }
        Err(e) => return Err(e),
    };
    if cp.degree() != gcp.degree() {
        return Err(Error::NonGenericPoint {
            reason: format!(
                "characteristic degree {} at the point, generic {}",
                cp.degree(),
                gcp.degree()
            ),
        });
    }
    Ok((pt, cp))
}

/// Small integer point passing [`check_generic`], at most 50 draws.
pub fn sample_generic_point<G: Rng + ?Sized>(
    p: &PolyPoissonPencil,
    gcp: &GenericCharPoly,
    rng: &mut G,
) -> Result<Vec<Rational>> {
    let mut last = String::from("no attempts");
    for _ in 0..MAX_REGULAR_ATTEMPTS {
        let x0: Vec<Rational> = (0..p.dimension())
            .map(|_| rat(rng.random_range(-9..=9)))
            .collect();
        match check_generic(p, gcp, &x0) {
            Ok(_) => return Ok(x0),
            Err(Error::NonGenericPoint { reason }) => last = reason,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonGenericPoint { reason: last })
}

pub fn coefficient_gradients(gcp: &GenericCharPoly, x0: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    gcp.gradients_at(x0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointAnalysis {
    pub point: Vec<Rational>,
    pub pencil: SkewPencil,
    pub invariants: JkInvariants,
    pub char_poly: CharPoly,
    pub core: CoreReport,
    /// `dp_0(x0), …, dp_{N−1}(x0)`.
    pub gradients: Vec<Vec<Rational>>,
    pub extended: Subspace,
}

impl PointAnalysis {
    pub fn rank(&self) -> usize {
        self.invariants.rank()
    }

    pub fn target_dimension(&self) -> usize {
        self.invariants.dimension - self.rank() / 2
    }
}

/// `K̂ = K + span{dp_i}` at a generic point.
pub fn extended_core<G: Rng + ?Sized>(
    p: &PolyPoissonPencil,
    gcp: &GenericCharPoly,
    x0: &[Rational],
    rng: &mut G,
) -> Result<PointAnalysis> {
    let (pencil, char_poly) = check_generic(p, gcp, x0)?;
    let gradients = gcp.gradients_at(x0)?;
    let invariants = jk_invariants(&pencil, rng)?;
    let core = core_subspace(&pencil, rng)?;
    let span = Subspace::from_spanning(p.dimension(), gradients.clone())?;
    let extended = core.subspace.sum(&span)?;
    if extended.dim() > core.subspace.dim() + gcp.degree() {
        return Err(Error::InternalConsistency(format!(
            "extended core of dimension {} exceeds {} + {}",
            extended.dim(),
            core.subspace.dim(),
            gcp.degree()
        )));
    }
    Ok(PointAnalysis {
        point: x0.to_vec(),
        pencil,
        invariants,
        char_poly,
        core,
        gradients,
        extended,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Complete,
    Incomplete,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Complete => "COMPLETE",
            Verdict::Incomplete => "INCOMPLETE",
            Verdict::Indeterminate => "INDETERMINATE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How many of a factor's eigenvalue gradients leave the core.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorWitness {
    pub factor: UniPoly,
    pub degree: usize,
    /// `dim(K + span{df_i}) − dim K`, at most `degree`.
    pub escaping: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletenessReport {
    pub verdict: Verdict,
    pub rank: usize,
    pub char_degree: usize,
    pub dim_core: usize,
    pub dim_extended: usize,
    pub target: usize,
    pub jordan_2x2: bool,
    pub distinct_eigenvalues: bool,
    /// Dimension test.
    pub condition2: bool,
    /// Block structure plus per-factor escape test.
    pub condition3: bool,
    pub factors: Vec<FactorWitness>,
    /// Indices `i` with `dp_i(x0) ∈ K`.
    pub gradients_in_core: Vec<usize>,
    pub witness: Vec<String>,
}

/// Linear factors of the rational roots, then the remaining cofactor.
fn factor_split(p: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    for r in p.rational_roots() {
        let l = UniPoly::linear(&r);
        rest = rest.div_rem(&l).0;
        out.push(l);
    }
    if !rest.is_constant() {
        out.push(rest.monic());
    }
    out
}

/// For `p = f·h` with `f`, `h` coprime, `∂f ≡ ∂p · h⁻¹ (mod f)`, which gives
/// the coefficient gradients of `f` from those of `p`.
fn factor_gradients(
    p: &UniPoly,
    f: &UniPoly,
    grads: &[Vec<Rational>],
    n: usize,
) -> Vec<Vec<Rational>> {
    let h = p.div_rem(f).0;
    let Some(h_inv) = h.inverse_mod(f) else {
        return Vec::new();
    };
    let d = f.deg();
    let mut out = vec![vec![Rational::zero(); n]; d];
    for k in 0..n {
        let dp = UniPoly::new(grads.iter().map(|g| g[k].clone()).collect());
        let df = (&dp * &h_inv).rem(f);
        for (i, row) in out.iter_mut().enumerate() {
            row[k] = df.coeff(i);
        }
    }
    out
}

pub fn completeness_check(a: &PointAnalysis) -> Result<CompletenessReport> {
    let n = a.invariants.dimension;
    let core = &a.core.subspace;
    let target = a.target_dimension();
    let condition2 = a.extended.dim() == target;

    let jordan_2x2 = a
        .invariants
        .jordan
        .iter()
        .all(|g| g.half_sizes.iter().all(|&h| h == 1));
    let distinct = a.char_poly.is_squarefree();
    let mut witness = Vec::new();
    let gradients_in_core: Vec<usize> = a
        .gradients
        .iter()
        .enumerate()
        .filter(|(_, g)| core.contains(g))
        .map(|(i, _)| i)
        .collect();
    for i in &gradients_in_core {
        witness.push(format!("dp_{i} ∈ K"));
    }
    if !distinct {
        for (f, m) in a.char_poly.squarefree.iter().filter(|(_, m)| *m > 1) {
            witness.push(format!(
                "repeated eigenvalue factor ({})^{m}",
                f.to_string_in("λ")
            ));
        }
    }
    for g in &a.invariants.jordan {
        if let Some(h) = g.half_sizes.iter().find(|&&h| h > 1) {
            witness.push(format!("Jordan block of half-size {h} at {}", g.eigenvalue));
        }
    }

    let mut factors = Vec::new();
    if distinct {
        for f in factor_split(&a.char_poly.poly) {
            let fg = factor_gradients(&a.char_poly.poly, &f, &a.gradients, n);
            let escaping = core.sum(&Subspace::from_spanning(n, fg)?)?.dim() - core.dim();
            if escaping < f.deg() {
                witness.push(format!(
                    "factor {}: {escaping} of {} eigenvalue gradients leave K",
                    f.to_string_in("λ"),
                    f.deg()
                ));
            }
            factors.push(FactorWitness {
                degree: f.deg(),
                factor: f,
                escaping,
            });
        }
        let total: usize = factors.iter().map(|f| f.escaping).sum();
        if total != a.extended.dim() - core.dim() {
            return Err(Error::InternalConsistency(format!(
                "factor increments sum to {total}, extended core adds {}",
                a.extended.dim() - core.dim()
            )));
        }
    }
    let condition3 = jordan_2x2 && distinct && factors.iter().all(|f| f.escaping == f.degree);
    if condition2 != condition3 {
        return Err(Error::InternalConsistency(format!(
            "dimension test says {condition2}, block-structure test says {condition3}"
        )));
    }
    if a.char_poly.degree() == 0 {
        witness.push("Kronecker type: extended core equals the core".into());
    }
    Ok(CompletenessReport {
        verdict: if condition2 {
            Verdict::Complete
        } else {
            Verdict::Incomplete
        },
        rank: a.rank(),
        char_degree: a.char_poly.degree(),
        dim_core: core.dim(),
        dim_extended: a.extended.dim(),
        target,
        jordan_2x2,
        distinct_eigenvalues: distinct,
        condition2,
        condition3,
        factors,
        gradients_in_core,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionCertificate {
    pub point: Vec<Rational>,
    pub samples: Vec<Rational>,
    pub kernel_vectors: usize,
    pub gradient_vectors: usize,
    pub pairings: usize,
    /// `(u, v, form)` with form 0 = A(x0), 1 = B(x0).
    pub violation: Option<(usize, usize, usize)>,
}

impl InvolutionCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Pairs the kernels of `A(x0) + μ_j B(x0)` and the gradients `dp_i(x0)`
/// under both forms. `samples` defaults to `D + 2`, with `2D − 1` the largest
/// Kronecker block at `x0`.
pub fn involution_check<G: Rng + ?Sized>(
    p: &PolyPoissonPencil,
    gcp: &GenericCharPoly,
    x0: &[Rational],
    samples: Option<usize>,
    rng: &mut G,
) -> Result<InvolutionCertificate> {
    let (pt, _) = check_generic(p, gcp, x0)?;
    let count = match samples {
        Some(s) => s,
        None => {
            let core = core_subspace(&pt, rng)?;
            kronecker_from_growth(&core.growth)
                .first()
                .copied()
                .unwrap_or(0)
                + 2
        }
    };
    let mus = sample_regular_values(&pt, count, &[], rng)?;
    let mut family: Vec<Vec<Rational>> = Vec::new();
    for mu in &mus {
        family.extend(kernel_basis(&pt.member(mu)).basis().iter().cloned());
    }
    let kernel_vectors = family.len();
    let grads = gcp.gradients_at(x0)?;
    let gradient_vectors = grads.len();
    family.extend(grads);
    let cert = pairing_certificate(&family, &[pt.a(), pt.b()]);
    Ok(InvolutionCertificate {
        point: x0.to_vec(),
        samples: mus,
        kernel_vectors,
        gradient_vectors,
        pairings: cert.pairings,
        violation: cert.violation,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenLemmaItem {
    pub root: Rational,
    /// `dλ_j(x0) = −∇_x p / ∂_λ p` at `(x0, λ_j)`.
    pub gradient: Vec<Rational>,
    pub annihilated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenLemmaReport {
    pub point: Vec<Rational>,
    pub items: Vec<EigenLemmaItem>,
    /// Rational roots skipped for multiplicity above one.
    pub multiple: Vec<Rational>,
}

impl EigenLemmaReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.annihilated)
    }
}

/// Checks `(A(x0) − λ_j B(x0)) dλ_j(x0) = 0` at every simple rational root.
pub fn eigenvalue_lemma_check(
    p: &PolyPoissonPencil,
    gcp: &GenericCharPoly,
    x0: &[Rational],
) -> Result<EigenLemmaReport> {
    let (pt, cp) = check_generic(p, gcp, x0)?;
    if cp.rational_roots.is_empty() {
        return Err(Error::NoRationalRoot);
    }
    let grads = gcp.gradients_at(x0)?;
    let dpoly = cp.poly.derivative();
    let n = p.dimension();
    let mut items = Vec::new();
    let mut multiple = Vec::new();
    for (root, m) in &cp.rational_roots {
        if *m > 1 {
            multiple.push(root.clone());
            continue;
        }
        let slope = dpoly.eval(root);
        let gradient: Vec<Rational> = (0..n)
            .map(|k| {
                let dp = UniPoly::new(grads.iter().map(|g| g[k].clone()).collect());
                -dp.eval(root) / &slope
            })
            .collect();
        let m = pt.a().sub(&pt.b().scale(root));
        let annihilated = m.mul_vec(&gradient).iter().all(Zero::is_zero);
        items.push(EigenLemmaItem {
            root: root.clone(),
            gradient,
            annihilated,
        });
    }
    if items.is_empty() {
        return Err(Error::MultipleRoot);
    }
    Ok(EigenLemmaReport {
        point: x0.to_vec(),
        items,
        multiple,
    })
}
