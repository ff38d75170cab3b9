use rand::Rng;

use super::{sample_regular_values, SkewPencil};
use crate::error::Result;
use crate::exactalg::{kernel_basis, QMatrix, Rational, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct CoreReport {
    pub subspace: Subspace,
    /// `s_t = dim Σ_{i≤t} Ker(A + μ_i B)`; the last two entries agree.
    pub growth: Vec<usize>,
    pub samples: Vec<Rational>,
}

impl CoreReport {
    /// Steps needed to reach the final dimension; zero for a trivial core.
    pub fn steps_to_stabilize(&self) -> usize {
        let d = self.subspace.dim();
        if d == 0 {
            return 0;
        }
        self.growth
            .iter()
            .position(|&s| s == d)
            .map_or(0, |i| i + 1)
    }
}

/// Core subspace: kernels of `A + μB` at fresh regular values are summed
/// until one step adds nothing.
pub fn core_subspace<G: Rng + ?Sized>(p: &SkewPencil, rng: &mut G) -> Result<CoreReport> {
    let n = p.dimension();
    let mut sum = Subspace::zero(n);
    let mut growth = Vec::new();
    let mut samples: Vec<Rational> = Vec::new();
    loop {
        let mu = sample_regular_values(p, 1, &samples, rng)?.remove(0);
        let next = sum.sum(&kernel_basis(&p.member(&mu)))?;
        samples.push(mu);
        let grew = next.dim() > sum.dim();
        growth.push(next.dim());
        sum = next;
        if !grew {
            break;
        }
    }
    Ok(CoreReport {
        subspace: sum,
        growth,
        samples,
    })
}

/// Kronecker parameters from kernel-sum growth.
///
/// The increment `s_t − s_{t−1}` counts the blocks with `k_i ≥ t`.
pub fn kronecker_from_growth(growth: &[usize]) -> Vec<usize> {
    let mut inc = Vec::with_capacity(growth.len());
    let mut prev = 0;
    for &s in growth {
        inc.push(s - prev);
        prev = s;
    }
    inc.push(0);
    let mut ks = Vec::new();
    for t in 0..inc.len() - 1 {
        let count = inc[t].saturating_sub(inc[t + 1]);
        ks.extend(std::iter::repeat_n(t + 1, count));
    }
    ks.sort_unstable_by(|a, b| b.cmp(a));
    ks
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyCertificate {
    pub vectors: usize,
    /// Pair evaluations performed (both forms counted).
    pub pairings: usize,
    /// First violating pair `(u, v, form)` with form 0 = A, 1 = B.
    pub violation: Option<(usize, usize, usize)>,
}

impl IsotropyCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `uᵀ M v = 0` for every pair of `family` and every `M` in `forms`.
pub fn pairing_certificate(family: &[Vec<Rational>], forms: &[&QMatrix]) -> IsotropyCertificate {
    let mut pairings = 0;
    let mut violation = None;
    for (i, u) in family.iter().enumerate() {
        for (j, v) in family.iter().enumerate().skip(i + 1) {
            for (f, m) in forms.iter().enumerate() {
                pairings += 1;
                if violation.is_none() && !num_traits::Zero::is_zero(&m.bilinear(u, v)) {
                    violation = Some((i, j, f));
                }
            }
        }
    }
    IsotropyCertificate {
        vectors: family.len(),
        pairings,
        violation,
    }
}

/// Isotropy of `K + Σ Ker(A + μ_j B)` over `extra` fresh regular values,
/// checked on the concatenated bases under `A` and `B`.
pub fn isotropy_certificate<G: Rng + ?Sized>(
    p: &SkewPencil,
    core: &Subspace,
    extra: usize,
    rng: &mut G,
) -> Result<IsotropyCertificate> {
    let mus = sample_regular_values(p, extra, &[], rng)?;
    let mut family: Vec<Vec<Rational>> = core.basis().to_vec();
    for mu in &mus {
        family.extend(kernel_basis(&p.member(mu)).basis().iter().cloned());
    }
    Ok(pairing_certificate(&family, &[p.a(), p.b()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::pencil::{canonical_pencil, Eigenvalue, JkInvariants, JordanGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(3)
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|k| rat((k == i) as i64)).collect()
    }

    #[test]
    fn kronecker_k2_core_is_f_span() {
        let p = canonical_pencil(&JkInvariants::new(3, vec![2], vec![])).unwrap();
        let c = core_subspace(&p, &mut rng()).unwrap();
        let expect = Subspace::from_spanning(3, vec![e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(c.subspace, expect);
        assert_eq!(c.growth, vec![1, 2, 2]);
        assert_eq!(kronecker_from_growth(&c.growth), vec![2]);
    }

    #[test]
    fn jordan_only_core_is_zero() {
        let inv = JkInvariants::new(
            4,
            vec![],
            vec![JordanGroup::new(Eigenvalue::rational(&rat(2)), vec![2])],
        );
        let c = core_subspace(&canonical_pencil(&inv).unwrap(), &mut rng()).unwrap();
        assert_eq!(c.subspace.dim(), 0);
        assert_eq!(c.growth, vec![0]);
    }

    #[test]
    fn trivial_block_plus_jordan() {
        let inv = JkInvariants::new(
            3,
            vec![1],
            vec![JordanGroup::new(Eigenvalue::rational(&rat(-1)), vec![1])],
        );
        let c = core_subspace(&canonical_pencil(&inv).unwrap(), &mut rng()).unwrap();
        assert_eq!(
            c.subspace,
            Subspace::from_spanning(3, vec![e(3, 0)]).unwrap()
        );
    }

    #[test]
    fn growth_decoding() {
        // k = (3, 1, 1): increments 3, 1, 1, 0
        assert_eq!(kronecker_from_growth(&[3, 4, 5, 5]), vec![3, 1, 1]);
        assert_eq!(kronecker_from_growth(&[0]), Vec::<usize>::new());
    }

    #[test]
    fn isotropy_of_mixed_pencil() {
        let inv = JkInvariants::new(
            8,
            vec![3, 1],
            vec![JordanGroup::new(Eigenvalue::rational(&rat(5)), vec![1])],
        );
        let p = canonical_pencil(&inv).unwrap();
        let c = core_subspace(&p, &mut rng()).unwrap();
        let cert = isotropy_certificate(&p, &c.subspace, 3, &mut rng()).unwrap();
        assert!(cert.passed());
        assert!(cert.pairings > 0);
        // a non-isotropic pair is caught
        let omega = canonical_pencil(&JkInvariants::new(
            2,
            vec![],
            vec![JordanGroup::new(Eigenvalue::rational(&rat(0)), vec![1])],
        ))
        .unwrap();
        let bad = pairing_certificate(&[e(2, 0), e(2, 1)], &[omega.a(), omega.b()]);
        assert_eq!(bad.violation, Some((0, 1, 1)));
        assert_eq!(bad.pairings, 2);
    }
}
