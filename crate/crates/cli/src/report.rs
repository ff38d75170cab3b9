//! Analyses and their serialisable reports. Rationals are always strings.

use jkpencil::exactalg::{format_rational, Rational, UniPoly};
use jkpencil::liealg::{
    default_frozen_point, fa_completeness, ftilde_completeness, fundamental_semiinvariant,
    jk_invariants_generic, lie_pencil, GenericJk, LieAlgebra,
};
use jkpencil::pencil::{
    characteristic_polynomial_finite, core_subspace, isotropy_certificate, jk_invariants,
    jordan_data, pencil_rank, recursion_charpoly_check, CharPoly, IsotropyCertificate,
};
use jkpencil::poisson::{
    eigenvalue_lemma_check, involution_check, CompletenessReport, InvolutionCertificate,
};
use jkpencil::{exactalg::rank, Error, JkInvariants, Result, SkewPencil};
use rand::Rng;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "jkpencil";

/// Extra regular samples used for the isotropy certificate of a constant pencil.
pub const ISOTROPY_EXTRA_SAMPLES: usize = 3;
/// Evaluation points for `F̃_a` when none are given.
pub const DEFAULT_POINTS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, input_digest: String, seed: u64, report: T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input_digest,
            seed,
            report,
        }
    }
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn qv(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

fn lambda(p: &UniPoly) -> String {
    p.to_string_in("λ")
}

/// `(λ − r)^m` factors for rational roots, then the leftover in brackets.
pub fn factored(cp: &CharPoly) -> String {
    if cp.degree() == 0 {
        return "1".into();
    }
    let mut rest = cp.poly.clone();
    let mut parts = Vec::new();
    for (r, m) in &cp.rational_roots {
        let l = UniPoly::linear(r);
        rest = rest.div_rem(&l.pow(*m)).0;
        parts.push(if *m == 1 {
            format!("({})", lambda(&l))
        } else {
            format!("({})^{m}", lambda(&l))
        });
    }
    if !rest.is_constant() {
        parts.push(format!("({})", lambda(&rest)));
    }
    parts.join("·")
}

#[derive(Clone, Debug, Serialize)]
pub struct RootJson {
    /// Root of `det(A − λB)`.
    pub root: String,
    /// The same eigenvalue as a degeneracy point of `A + λB`.
    pub root_a_plus_lambda_b: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharPolyJson {
    pub degree: usize,
    /// Lowest degree first.
    pub coefficients: Vec<String>,
    pub display: String,
    pub factored: String,
    pub squarefree: bool,
    pub rational_roots: Vec<RootJson>,
}

impl CharPolyJson {
    pub fn of(cp: &CharPoly) -> Self {
        CharPolyJson {
            degree: cp.degree(),
            coefficients: qv(cp.poly.coeffs()),
            display: lambda(&cp.poly),
            factored: factored(cp),
            squarefree: cp.is_squarefree(),
            rational_roots: cp
                .rational_roots
                .iter()
                .map(|(r, m)| RootJson {
                    root: q(r),
                    root_a_plus_lambda_b: q(&-r.clone()),
                    multiplicity: *m,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanJson {
    pub eigenvalue: String,
    pub rational: Option<String>,
    pub degree: usize,
    pub half_sizes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JkJson {
    pub kronecker: Vec<usize>,
    pub jordan: Vec<JordanJson>,
    pub kronecker_type: bool,
}

impl JkJson {
    pub fn of(inv: &JkInvariants) -> Self {
        JkJson {
            kronecker: inv.kronecker.clone(),
            jordan: inv
                .jordan
                .iter()
                .map(|g| JordanJson {
                    eigenvalue: g.eigenvalue.to_string(),
                    rational: g.eigenvalue.as_rational().as_ref().map(q),
                    degree: g.eigenvalue.weight(),
                    half_sizes: g.half_sizes.clone(),
                })
                .collect(),
            kronecker_type: inv.is_kronecker_type(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub vectors: usize,
    pub pairings: usize,
    pub passed: bool,
    pub violation: Option<[usize; 3]>,
}

impl CertificateJson {
    fn of(c: &IsotropyCertificate) -> Self {
        CertificateJson {
            vectors: c.vectors,
            pairings: c.pairings,
            passed: c.passed(),
            violation: c.violation.map(|(a, b, f)| [a, b, f]),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreJson {
    pub dimension: usize,
    pub basis: Vec<Vec<String>>,
    pub growth: Vec<usize>,
    pub steps_to_stabilize: usize,
    pub samples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanDataJson {
    pub invariant_factors: Vec<String>,
    pub reparametrization: Option<String>,
    pub elementary_divisor_char_poly: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionIdentityJson {
    pub core_dimension: usize,
    /// `n − r/2 − N` with `N` counting infinite blocks.
    pub predicted: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilChecksJson {
    /// Pfaffian-gcd polynomial equals the elementary-divisor product.
    pub char_poly_algorithms_agree: bool,
    pub dimension_identity: DimensionIdentityJson,
    /// `det(B⁻¹A − λI) = p(λ)²`, present when `B` is invertible.
    pub recursion_identity: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilReport {
    pub dimension: usize,
    pub rank: usize,
    pub rank_b: usize,
    pub char_poly: CharPolyJson,
    pub infinite_eigenvalue: bool,
    pub jk_invariants: JkJson,
    pub jordan_data: JordanDataJson,
    pub core: CoreJson,
    pub mantle_dimension: usize,
    pub isotropy: CertificateJson,
    pub checks: PencilChecksJson,
}

pub fn analyze_pencil<G: Rng + ?Sized>(p: &SkewPencil, rng: &mut G) -> Result<PencilReport> {
    let n = p.dimension();
    let r = pencil_rank(p);
    let rank_b = rank(p.b());
    let cp = characteristic_polynomial_finite(p);
    let jd = jordan_data(p, rng)?;
    let inv = jk_invariants(p, rng)?;
    let core = core_subspace(p, rng)?;
    let iso = isotropy_certificate(p, &core.subspace, ISOTROPY_EXTRA_SAMPLES, rng)?;

    let agree = jd.char_poly == cp.poly;
    if !agree {
        return Err(Error::InternalConsistency(format!(
            "Pfaffian gcd {} differs from elementary-divisor product {}",
            lambda(&cp.poly),
            lambda(&jd.char_poly)
        )));
    }
    let predicted = n as i64 - (r / 2) as i64 - inv.total_degree() as i64;
    let dim_k = core.subspace.dim();
    if dim_k as i64 != predicted {
        return Err(Error::InternalConsistency(format!(
            "core dimension {dim_k} but n − r/2 − N = {predicted}"
        )));
    }
    if !iso.passed() {
        return Err(Error::InternalConsistency(
            "core family is not bi-isotropic".into(),
        ));
    }
    let recursion = if rank_b == n {
        Some(recursion_charpoly_check(p)?)
    } else {
        None
    };
    if recursion == Some(false) {
        return Err(Error::InternalConsistency(
            "det(B⁻¹A − λI) differs from the squared characteristic polynomial".into(),
        ));
    }
    Ok(PencilReport {
        dimension: n,
        rank: r,
        rank_b,
        char_poly: CharPolyJson::of(&cp),
        infinite_eigenvalue: inv.has_infinite(),
        jk_invariants: JkJson::of(&inv),
        jordan_data: JordanDataJson {
            invariant_factors: jd.invariant_factors.iter().map(lambda).collect(),
            reparametrization: jd.reparametrization.as_ref().map(q),
            elementary_divisor_char_poly: lambda(&jd.char_poly),
        },
        core: CoreJson {
            dimension: dim_k,
            basis: core.subspace.basis().iter().map(|v| qv(v)).collect(),
            growth: core.growth.clone(),
            steps_to_stabilize: core.steps_to_stabilize(),
            samples: qv(&core.samples),
        },
        mantle_dimension: inv.mantle_dimension(),
        isotropy: CertificateJson::of(&iso),
        checks: PencilChecksJson {
            char_poly_algorithms_agree: agree,
            dimension_identity: DimensionIdentityJson {
                core_dimension: dim_k,
                predicted,
                holds: true,
            },
            recursion_identity: recursion,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraJson {
    pub name: Option<String>,
    pub dimension: usize,
    pub generic_rank: usize,
    pub index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericJkJson {
    pub kronecker: Vec<usize>,
    /// Half-sizes per eigenvalue; eigenvalues move with the point.
    pub jordan_half_sizes: Vec<Vec<usize>>,
    pub kronecker_type: bool,
    pub samples: usize,
    pub max_rank: usize,
    pub stable: bool,
    pub representative: JkJson,
}

impl GenericJkJson {
    fn of(jk: &GenericJk) -> Self {
        GenericJkJson {
            kronecker: jk.shape.kronecker.clone(),
            jordan_half_sizes: jk.shape.jordan.clone(),
            kronecker_type: jk.shape.is_kronecker_type(),
            samples: jk.samples,
            max_rank: jk.max_rank,
            stable: jk.stable,
            representative: JkJson::of(&jk.representative),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairJson {
    pub x: Vec<String>,
    pub a: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiInvariantJson {
    pub polynomial: String,
    pub degree: usize,
    pub convention: &'static str,
    pub identity_checked_at: Vec<PairJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub factor: String,
    pub degree: usize,
    pub escaping: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionJson {
    pub samples: Vec<String>,
    pub kernel_vectors: usize,
    pub gradient_vectors: usize,
    pub pairings: usize,
    pub passed: bool,
    pub violation: Option<[usize; 3]>,
}

impl InvolutionJson {
    fn of(c: &InvolutionCertificate) -> Self {
        InvolutionJson {
            samples: qv(&c.samples),
            kernel_vectors: c.kernel_vectors,
            gradient_vectors: c.gradient_vectors,
            pairings: c.pairings,
            passed: c.passed(),
            violation: c.violation.map(|(a, b, f)| [a, b, f]),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaItemJson {
    pub root: String,
    pub gradient: Vec<String>,
    pub annihilated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaJson {
    /// `PASS`, `FAIL`, or the code of the reason the check was skipped.
    pub status: String,
    pub items: Vec<LemmaItemJson>,
    pub multiple_roots: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointJson {
    pub point: Vec<String>,
    pub char_poly: String,
    pub verdict: String,
    pub rank: usize,
    pub char_degree: usize,
    pub dim_core: usize,
    pub dim_extended: usize,
    pub target: usize,
    pub jordan_2x2: bool,
    pub distinct_eigenvalues: bool,
    pub condition2: bool,
    pub condition3: bool,
    pub factors: Vec<FactorJson>,
    pub witness: Vec<String>,
    pub involution: InvolutionJson,
    pub eigenvalue_lemma: LemmaJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct FtildeJson {
    pub verdict: String,
    pub notes: Vec<String>,
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieReport {
    pub algebra: AlgebraJson,
    pub frozen_point: Vec<String>,
    pub regular: bool,
    pub warnings: Vec<String>,
    pub generic_jk: GenericJkJson,
    pub semiinvariant: SemiInvariantJson,
    pub generic_char_poly: Option<String>,
    pub fa_verdict: String,
    pub ftilde: FtildeJson,
}

pub const SEMIINVARIANT_CONVENTION: &str =
    "p_(x,a)(λ) is the monic form of p_g(x − λa) for roots of A − λB, equivalently p_g(x + λa) for degeneracy of A + λB";

fn point_json(
    rep: &CompletenessReport,
    x0: &[Rational],
    char_poly: String,
    involution: InvolutionJson,
    lemma: LemmaJson,
) -> PointJson {
    PointJson {
        point: qv(x0),
        char_poly,
        verdict: rep.verdict.to_string(),
        rank: rep.rank,
        char_degree: rep.char_degree,
        dim_core: rep.dim_core,
        dim_extended: rep.dim_extended,
        target: rep.target,
        jordan_2x2: rep.jordan_2x2,
        distinct_eigenvalues: rep.distinct_eigenvalues,
        condition2: rep.condition2,
        condition3: rep.condition3,
        factors: rep
            .factors
            .iter()
            .map(|f| FactorJson {
                factor: lambda(&f.factor),
                degree: f.degree,
                escaping: f.escaping,
            })
            .collect(),
        witness: rep.witness.clone(),
        involution,
        eigenvalue_lemma: lemma,
    }
}

/// Full Lie-algebra analysis. `frozen` and `points` fall back to a default
/// regular point and to sampled generic points.
pub fn analyze_lie<G: Rng + ?Sized>(
    g: &LieAlgebra,
    frozen: Option<Vec<Rational>>,
    points: &[Vec<Rational>],
    samples: usize,
    rng: &mut G,
) -> Result<LieReport> {
    g.ensure_valid()?;
    let d = g.dimension();
    let r = g.generic_rank();
    let jk = jk_invariants_generic(g, samples, rng)?;
    let si = fundamental_semiinvariant(g, rng)?;
    let fa = fa_completeness(&jk);
    let a = match frozen {
        Some(a) => a,
        None => default_frozen_point(g).ok_or(Error::NoRegularValue { attempts: d + 2 })?,
    };
    let spec = lie_pencil(g, &a)?;
    let mut warnings: Vec<String> = spec.warning.iter().cloned().collect();
    if !jk.stable {
        warnings.push(format!(
            "{}: generic invariants differ between max-rank samples",
            jkpencil::liealg::UNSTABLE_SAMPLES
        ));
    }
    let (ft, gcp) = ftilde_completeness(g, &a, points, DEFAULT_POINTS, rng)?;
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let mut pts = Vec::new();
    if let Some(gcp) = &gcp {
        for (x0, rep) in ft.points.iter().zip(&ft.reports) {
            let inv = involution_check(&spec.pencil, gcp, x0, None, rng)?;
            if !inv.passed() {
                return Err(Error::InternalConsistency(format!(
                    "bi-involution fails at {:?}",
                    qv(x0)
                )));
            }
            let lemma = match eigenvalue_lemma_check(&spec.pencil, gcp, x0) {
                Ok(l) => LemmaJson {
                    status: if l.passed() { "PASS" } else { "FAIL" }.into(),
                    items: l
                        .items
                        .iter()
                        .map(|i| LemmaItemJson {
                            root: q(&i.root),
                            gradient: qv(&i.gradient),
                            annihilated: i.annihilated,
                        })
                        .collect(),
                    multiple_roots: qv(&l.multiple),
                },
                Err(e @ (Error::NoRationalRoot | Error::MultipleRoot)) => LemmaJson {
                    status: e.code().into(),
                    items: Vec::new(),
                    multiple_roots: Vec::new(),
                },
                Err(e) => return Err(e),
            };
            if lemma.status == "FAIL" {
                return Err(Error::InternalConsistency(format!(
                    "(A − λB)dλ ≠ 0 at {:?}",
                    qv(x0)
                )));
            }
            let cp = gcp.eval_at(x0).map(|p| lambda(&p)).unwrap_or_default();
            pts.push(point_json(rep, x0, cp, InvolutionJson::of(&inv), lemma));
        }
    }
    Ok(LieReport {
        algebra: AlgebraJson {
            name: g.name.clone(),
            dimension: d,
            generic_rank: r,
            index: d - r,
        },
        frozen_point: qv(&a),
        regular: spec.regular,
        warnings,
        generic_jk: GenericJkJson::of(&jk),
        semiinvariant: SemiInvariantJson {
            polynomial: si.poly.to_string_with(&names),
            degree: si.poly.total_degree(),
            convention: SEMIINVARIANT_CONVENTION,
            identity_checked_at: si
                .checked
                .iter()
                .map(|(x, a)| PairJson { x: qv(x), a: qv(a) })
                .collect(),
        },
        generic_char_poly: gcp.as_ref().map(|c| c.to_string_in(&names)),
        fa_verdict: fa.to_string(),
        ftilde: FtildeJson {
            verdict: ft.verdict.to_string(),
            notes: ft.notes.clone(),
            points: pts,
        },
    })
}
