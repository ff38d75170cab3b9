use jkpencil::exactalg::{rat, Rational};
use jkpencil::liealg::{catalog, lie_pencil, sample_regular_point};
use jkpencil::pencil::characteristic_polynomial;
use jkpencil::poisson::{
    compatibility_check, evaluate_at, generic_char_poly, sample_generic_point,
};
use jkpencil::{Matrix, MultiPoly, PolyPoissonPencil};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn generic_char_poly_matches_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for g in catalog() {
        let a = sample_regular_point(&g, &mut rng).unwrap();
        let spec = lie_pencil(&g, &a).unwrap();
        let gcp = generic_char_poly(&spec.pencil, &mut rng).unwrap();
        for _ in 0..5 {
            let x = sample_generic_point(&spec.pencil, &gcp, &mut rng).unwrap();
            let pointwise =
                characteristic_polynomial(&evaluate_at(&spec.pencil, &x).unwrap()).unwrap();
            assert_eq!(
                gcp.eval_at(&x).unwrap(),
                pointwise.poly,
                "{:?} at {x:?}",
                g.name
            );
        }
    }
}

fn scaled(m: &Matrix<MultiPoly>, c: &Rational) -> Matrix<MultiPoly> {
    let n = m.rows();
    Matrix::from_fn(n, n, |i, j| m[(i, j)].scale(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // A Lie–Poisson pencil stays compatible under any rescaling of B, and
    // every combination A + cB is again Poisson.
    #[test]
    fn lie_pencils_are_compatible(idx in 0usize..12, c in -5i64..=5, seed in any::<u64>()) {
        let algebras = catalog();
        let g = &algebras[idx % algebras.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_regular_point(g, &mut rng).unwrap();
        let spec = lie_pencil(g, &a).unwrap();
        let p = &spec.pencil;
        let q = PolyPoissonPencil::new(p.a().clone(), scaled(p.b(), &rat(c))).unwrap();
        prop_assert!(compatibility_check(&q).unwrap().is_none());
    }
}
