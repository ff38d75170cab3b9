use jkpencil::pencil::generate::{random_invariants, random_unimodular};
use jkpencil::pencil::{
    canonical_pencil, characteristic_polynomial_finite, congruence_transform, core_subspace,
    homogeneous_char_degree, jk_invariants, jordan_data, pencil_rank,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..60 {
        let inv = random_invariants(14, &mut rng);
        let p = canonical_pencil(&inv).unwrap();
        let t = random_unimodular(inv.dimension, &mut rng);
        let q = congruence_transform(&p, &t).unwrap();

        assert_eq!(jk_invariants(&q, &mut rng).unwrap(), inv, "case {case}");
        let cp = characteristic_polynomial_finite(&q);
        assert_eq!(
            cp.poly,
            jordan_data(&q, &mut rng).unwrap().char_poly,
            "case {case}"
        );
        let core = core_subspace(&q, &mut rng).unwrap();
        let n = inv.dimension;
        let r = pencil_rank(&q);
        let big_n = homogeneous_char_degree(&q, &mut rng).unwrap();
        assert_eq!(core.subspace.dim(), n - r / 2 - big_n, "case {case}");
        assert_eq!(core.subspace.dim(), inv.core_dimension(), "case {case}");
    }
}
