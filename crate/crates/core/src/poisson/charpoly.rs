use num_traits::Zero;
use rand::Rng;

use super::{evaluate_at, PolyPoissonPencil};
use crate::error::{Error, Result};
use crate::exactalg::{rank, rank_over_fractions, rat, Matrix, MultiPoly, Rational, UniPoly};
use crate::pencil::{
    characteristic_polynomial, for_each_subset, pencil_rank, pfaffian, MAX_REGULAR_ATTEMPTS,
};

/// Points checked against the pointwise characteristic polynomial.
pub const CERTIFICATE_POINTS: usize = 3;

/// Generic characteristic polynomial `Σ p_i(x) λ^i` with `p_i = g_i / g_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericCharPoly {
    pub nvars: usize,
    /// Generic rank of the pencil over Q(x).
    pub rank: usize,
    /// `g_0, …, g_N` in `x_1..x_n`; `g_N` is the common denominator.
    pub numerators: Vec<MultiPoly>,
    /// Points where the degree was confirmed pointwise.
    pub certificate: Vec<Vec<Rational>>,
}

impl GenericCharPoly {
    pub fn degree(&self) -> usize {
        self.numerators.len() - 1
    }

    pub fn denominator(&self) -> &MultiPoly {
        self.numerators
            .last()
            .expect("at least the leading coefficient")
    }

    /// Coefficient numerators `g_0..g_{N−1}`.
    pub fn coefficient_numerators(&self) -> &[MultiPoly] {
        &self.numerators[..self.degree()]
    }

    /// Monic specialisation at `x0`, or `None` where the denominator vanishes.
    pub fn eval_at(&self, x0: &[Rational]) -> Option<UniPoly> {
        let den = self.denominator().eval(x0);
        if den.is_zero() {
            return None;
        }
        Some(UniPoly::new(
            self.numerators.iter().map(|g| g.eval(x0) / &den).collect(),
        ))
    }

    /// `dp_i(x0)` by the quotient rule on `g_i / g_N`.
    pub fn gradients_at(&self, x0: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let n = self.nvars;
        if x0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x0.len(),
            });
        }
        let den = self.denominator();
        let d0 = den.eval(x0);
        if d0.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let dgrad: Vec<Rational> = (0..n).map(|k| den.derivative(k).eval(x0)).collect();
        let d2 = &d0 * &d0;
        Ok(self
            .coefficient_numerators()
            .iter()
            .map(|g| {
                let g0 = g.eval(x0);
                (0..n)
                    .map(|k| (g.derivative(k).eval(x0) * &d0 - &g0 * &dgrad[k]) / &d2)
                    .collect()
            })
            .collect())
    }

    /// `λ^N + (g_{N−1}/g_N)·λ^{N−1} + …` with the given variable names.
    pub fn to_string_in(&self, names: &[String]) -> String {
        let den = self.denominator();
        let unit = den.constant_value() == Some(rat(1));
        let mut s = match self.degree() {
            0 => "1".to_string(),
            1 => "λ".to_string(),
            d => format!("λ^{d}"),
        };
        for (i, g) in self.coefficient_numerators().iter().enumerate().rev() {
            if g.is_zero() {
                continue;
            }
            let pow = match i {
                0 => String::new(),
                1 => "·λ".to_string(),
                _ => format!("·λ^{i}"),
            };
            let num = g.to_string_with(names);
            if unit && g.num_terms() == 1 {
                match num.strip_prefix('-') {
                    Some(rest) => s += &format!(" - {rest}{pow}"),
                    None => s += &format!(" + {num}{pow}"),
                }
            } else if unit {
                s += &format!(" + ({num}){pow}");
            } else {
                s += &format!(" + ({num})/({}){pow}", den.to_string_with(names));
            }
        }
        s
    }
}

/// Gcd over Q(x)[λ] of the Pfaffians of the principal `r×r` minors of
/// `A(x) − λB(x)`, made monic in λ.
///
/// The degree is confirmed against the pointwise characteristic polynomial at
/// random points; points where it jumps are resampled, and a
/// [`Error::DegreeJump`] is raised only if no clean points turn up.
pub fn generic_char_poly<G: Rng + ?Sized>(
    p: &PolyPoissonPencil,
    rng: &mut G,
) -> Result<GenericCharPoly> {
    let n = p.dimension();
    let lam = MultiPoly::var(n + 1, n);
    let lift = |m: &Matrix<MultiPoly>| m.map(|e| e.clone().with_nvars(n + 1));
    let (a, b) = (lift(p.a()), lift(p.b()));
    let pencil = Matrix::from_fn(n, n, |i, j| &a[(i, j)] - &(&lam * &b[(i, j)]));

    let r = rank_over_fractions(&pencil);
    let rank_b = rank_over_fractions(&b);
    if rank_b < r {
        return Err(Error::InfiniteEigenvalue {
            rank_b,
            pencil_rank: r,
        });
    }

    let mut failure = None;
    let mut g = MultiPoly::zero(n + 1);
    for_each_subset(n, r, |idx| {
        match pfaffian(&pencil.principal_minor(idx)) {
            Ok(pf) if !pf.is_zero() => {
                g = if g.is_zero() {
                    pf.normalized()
                } else {
                    g.gcd(&pf)
                };
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
        failure.is_none() && !(g.is_constant() && !g.is_zero())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if g.is_zero() {
        // r = 0: the empty Pfaffian is 1
        g = MultiPoly::one(n + 1);
    }
    let mut numerators: Vec<MultiPoly> = g
        .coefficients_in(n)
        .into_iter()
        .map(|c| c.with_nvars(n))
        .collect();
    // a constant denominator is scaled to one
    if let Some(c) = numerators.last().and_then(MultiPoly::constant_value) {
        let inv = c.recip();
        numerators = numerators.iter().map(|m| m.scale(&inv)).collect();
    }
    let mut out = GenericCharPoly {
        nvars: n,
        rank: r,
        numerators,
        certificate: Vec::new(),
    };
    out.certificate = degree_certificate(p, &out, rng)?;
    Ok(out)
}

fn degree_certificate<G: Rng + ?Sized>(
    p: &PolyPoissonPencil,
    gcp: &GenericCharPoly,
    rng: &mut G,
) -> Result<Vec<Vec<Rational>>> {
    let n = p.dimension();
    let mut points = Vec::new();
    let mut worst_jump = None;
    for _ in 0..MAX_REGULAR_ATTEMPTS {
        if points.len() == CERTIFICATE_POINTS {
            break;
        }
        let x0: Vec<Rational> = (0..n).map(|_| rat(rng.random_range(-9..=9))).collect();
        let Some(expected) = gcp.eval_at(&x0) else {
            continue;
        };
        let pt = evaluate_at(p, &x0)?;
        if pencil_rank(&pt) != gcp.rank || rank(pt.b()) != gcp.rank {
            continue;
        }
        let local = characteristic_polynomial(&pt)?;
        if local.degree() > gcp.degree() {
            worst_jump = Some(local.degree());
            continue;
        }
        if local.poly != expected {
            return Err(Error::InternalConsistency(format!(
                "pointwise characteristic polynomial {} differs from generic {} at {:?}",
                local.poly,
                expected,
                x0.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
        points.push(x0);
    }
    if points.len() < CERTIFICATE_POINTS {
        return match worst_jump {
            Some(d) => Err(Error::DegreeJump {
                generic: gcp.degree(),
                pointwise: d,
            }),
            None => Err(Error::NonGenericPoint {
                reason: "no point with generic rank and nonzero denominator".into(),
            }),
        };
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::exactalg::ratio;
    use crate::pencil::{canonical_pencil, Eigenvalue, JkInvariants, JordanGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(21)
    }

    #[test]
    fn heisenberg_is_lambda_minus_x3() {
        let g = generic_char_poly(&heisenberg(1), &mut rng()).unwrap();
        assert_eq!(g.rank, 2);
        assert_eq!(g.degree(), 1);
        let x0 = [rat(4), rat(-2), rat(5)];
        assert_eq!(g.eval_at(&x0).unwrap(), UniPoly::from_i64(&[-5, 1]));
        assert_eq!(
            g.gradients_at(&x0).unwrap(),
            vec![vec![rat(0), rat(0), rat(-1)]]
        );
        assert_eq!(g.certificate.len(), CERTIFICATE_POINTS);
        let names: Vec<String> = (1..=3).map(|i| format!("x{i}")).collect();
        assert_eq!(g.to_string_in(&names), "λ - x3");
        assert_eq!(g.denominator(), &MultiPoly::one(3));
    }

    #[test]
    fn quotient_rule_with_scaled_frozen_point() {
        let g = generic_char_poly(&heisenberg(2), &mut rng()).unwrap();
        let x0 = [rat(1), rat(1), rat(1)];
        assert_eq!(
            g.gradients_at(&x0).unwrap(),
            vec![vec![rat(0), rat(0), ratio(-1, 2)]]
        );
        assert_eq!(g.eval_at(&x0).unwrap(), UniPoly::linear(&ratio(1, 2)));
    }

    #[test]
    fn so3_is_constant() {
        let g = generic_char_poly(&so3([2, -1, 5]), &mut rng()).unwrap();
        assert_eq!(g.degree(), 0);
        assert!(g
            .gradients_at(&[rat(1), rat(2), rat(3)])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn constant_jordan_pencil() {
        let inv = JkInvariants::new(
            2,
            vec![],
            vec![JordanGroup::new(Eigenvalue::rational(&rat(7)), vec![1])],
        );
        let p = PolyPoissonPencil::from_constant(&canonical_pencil(&inv).unwrap());
        let g = generic_char_poly(&p, &mut rng()).unwrap();
        assert_eq!(
            g.eval_at(&[rat(0), rat(0)]).unwrap(),
            UniPoly::linear(&rat(7))
        );
        assert_eq!(
            g.gradients_at(&[rat(3), rat(1)]).unwrap(),
            vec![vec![rat(0), rat(0)]]
        );
    }

    #[test]
    fn singular_b_is_infinite() {
        let inv = JkInvariants::new(
            2,
            vec![],
            vec![JordanGroup::new(Eigenvalue::Infinite, vec![1])],
        );
        let p = PolyPoissonPencil::from_constant(&canonical_pencil(&inv).unwrap());
        assert!(matches!(
            generic_char_poly(&p, &mut rng()),
            Err(Error::InfiniteEigenvalue { .. })
        ));
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        // A = x1·ω, B = x2·ω on two coordinates: p = λ − x1/x2
        let p = PolyPoissonPencil::new(
            skew(2, vec![(0, 1, x(2, 0))]),
            skew(2, vec![(0, 1, x(2, 1))]),
        )
        .unwrap();
        let g = generic_char_poly(&p, &mut rng()).unwrap();
        assert!(matches!(
            g.gradients_at(&[rat(1), rat(0)]),
            Err(Error::DenominatorVanishes)
        ));
        // p_0 = −x1/x2: dp_0 = (−1/x2, x1/x2²) = (−1/2, 3/4) at (3, 2)
        assert_eq!(
            g.gradients_at(&[rat(3), rat(2)]).unwrap(),
            vec![vec![ratio(-1, 2), ratio(3, 4)]]
        );
    }
}
