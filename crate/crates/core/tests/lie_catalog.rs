use jkpencil::exactalg::rat;
use jkpencil::liealg::{
    catalog, fa_completeness, ftilde_completeness, fundamental_semiinvariant,
    jk_invariants_generic, lie_pencil, sample_regular_point, semiinvariant_on_line,
    DEFAULT_SAMPLES,
};
use jkpencil::pencil::{characteristic_polynomial, core_subspace, SkewPencil};
use jkpencil::poisson::{
    compatibility_check, eigenvalue_lemma_check, generic_char_poly, involution_check,
    sample_generic_point, Verdict,
};
use jkpencil::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn catalog_pipeline_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for g in catalog() {
        let name = g.name.clone().unwrap();
        let d = g.dimension();
        let jk = jk_invariants_generic(&g, DEFAULT_SAMPLES, &mut rng).unwrap();
        assert!(jk.stable, "{name}");
        let si = fundamental_semiinvariant(&g, &mut rng).unwrap();
        let r = si.rank;
        assert_eq!(r, jk.max_rank, "{name}");

        let a = sample_regular_point(&g, &mut rng).unwrap();
        let spec = lie_pencil(&g, &a).unwrap();
        assert!(
            compatibility_check(&spec.pencil).unwrap().is_none(),
            "{name}"
        );
        let gcp = generic_char_poly(&spec.pencil, &mut rng).unwrap();
        assert_eq!(gcp.degree(), si.poly.total_degree(), "{name}");

        let x = sample_generic_point(&spec.pencil, &gcp, &mut rng).unwrap();
        let p = SkewPencil::new(g.frozen_matrix(&x), g.frozen_matrix(&a)).unwrap();
        let dim_k = core_subspace(&p, &mut rng).unwrap().subspace.dim();
        assert_eq!(si.poly.total_degree() + r / 2 + dim_k, d, "{name}");
        // semi-invariant along the line, sign convention of A − λB
        let line = semiinvariant_on_line(&si.poly, &x, &a);
        assert_eq!(
            line.monic(),
            characteristic_polynomial(&p).unwrap().poly,
            "{name}"
        );

        let (ft, _) = ftilde_completeness(&g, &a, &[], 2, &mut rng).unwrap();
        if fa_completeness(&jk) == Verdict::Complete {
            assert_eq!(ft.verdict, Verdict::Complete, "{name}");
        }
        if jk.shape.has_nontrivial_jordan() || jk.shape.has_repeated_eigenvalue() {
            assert_eq!(ft.verdict, Verdict::Incomplete, "{name}");
        }
        let cert = involution_check(&spec.pencil, &gcp, &x, None, &mut rng).unwrap();
        assert!(cert.passed(), "{name}");
        match eigenvalue_lemma_check(&spec.pencil, &gcp, &x) {
            Ok(rep) => assert!(rep.passed(), "{name}"),
            Err(Error::NoRationalRoot) | Err(Error::MultipleRoot) => {}
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

#[test]
fn named_fixture_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let by = |n: &str| jkpencil::liealg::by_name(n).unwrap();
    for n in ["so3", "e3"] {
        let jk = jk_invariants_generic(&by(n), DEFAULT_SAMPLES, &mut rng).unwrap();
        assert!(jk.shape.is_kronecker_type(), "{n}");
        assert_eq!(fa_completeness(&jk), Verdict::Complete);
    }
    let e3 = jk_invariants_generic(&by("e3"), DEFAULT_SAMPLES, &mut rng).unwrap();
    assert_eq!(e3.shape.kronecker, vec![2, 2]);
    let ab = jk_invariants_generic(&by("abelian4"), DEFAULT_SAMPLES, &mut rng).unwrap();
    assert_eq!(ab.shape.kronecker, vec![1, 1, 1, 1]);
    let (h, _) = ftilde_completeness(
        &by("heisenberg"),
        &[rat(0), rat(0), rat(1)],
        &[],
        3,
        &mut rng,
    )
    .unwrap();
    assert_eq!(h.verdict, Verdict::Incomplete);
    assert!(h
        .reports
        .iter()
        .all(|r| r.witness.iter().any(|w| w == "dp_0 ∈ K")));
    let (a, _) = ftilde_completeness(&by("aff1"), &[rat(0), rat(1)], &[], 3, &mut rng).unwrap();
    assert_eq!(a.verdict, Verdict::Complete);
}
