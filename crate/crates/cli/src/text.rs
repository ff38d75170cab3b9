//! Human-readable rendering of the reports.

use std::fmt::Write;

use crate::report::{JkJson, LieReport, PencilReport};

fn jk_lines(out: &mut String, jk: &JkJson) {
    let _ = writeln!(out, "  Kronecker blocks k: {:?}", jk.kronecker);
    if jk.jordan.is_empty() {
        let _ = writeln!(out, "  Jordan blocks: none");
    }
    for g in &jk.jordan {
        let _ = writeln!(
            out,
            "  Jordan ({}): half-sizes {:?}{}",
            g.eigenvalue,
            g.half_sizes,
            if g.degree > 1 {
                format!(" for each of {} conjugate eigenvalues", g.degree)
            } else {
                String::new()
            }
        );
    }
}

pub fn pencil(r: &PencilReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pencil of dimension {}", r.dimension);
    let _ = writeln!(s, "rank: {} (rank B = {})", r.rank, r.rank_b);
    let _ = writeln!(s, "characteristic polynomial: {}", r.char_poly.factored);
    let _ = writeln!(s, "  expanded: {}", r.char_poly.display);
    for root in &r.char_poly.rational_roots {
        let _ = writeln!(
            s,
            "  eigenvalue {} (multiplicity {}); A + λB degenerates at λ = {}",
            root.root, root.multiplicity, root.root_a_plus_lambda_b
        );
    }
    if r.infinite_eigenvalue {
        let _ = writeln!(s, "  infinite eigenvalue present");
    }
    let _ = writeln!(s, "Jordan-Kronecker invariants:");
    jk_lines(&mut s, &r.jk_invariants);
    let _ = writeln!(
        s,
        "core: dimension {}, growth {:?}",
        r.core.dimension, r.core.growth
    );
    for v in &r.core.basis {
        let _ = writeln!(s, "  ({})", v.join(", "));
    }
    let _ = writeln!(s, "mantle dimension: {}", r.mantle_dimension);
    let _ = writeln!(
        s,
        "isotropy: {} ({} pairings over {} vectors)",
        if r.isotropy.passed { "PASS" } else { "FAIL" },
        r.isotropy.pairings,
        r.isotropy.vectors
    );
    let _ = writeln!(
        s,
        "checks: algorithms agree {}, dim K = n − r/2 − N {}, recursion identity {}",
        r.checks.char_poly_algorithms_agree,
        r.checks.dimension_identity.holds,
        r.checks
            .recursion_identity
            .map_or("n/a".to_string(), |b| b.to_string())
    );
    s
}

pub fn lie(r: &LieReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Lie algebra {} of dimension {}, generic rank {}, index {}",
        r.algebra.name.as_deref().unwrap_or("(unnamed)"),
        r.algebra.dimension,
        r.algebra.generic_rank,
        r.algebra.index
    );
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let g = &r.generic_jk;
    let _ = writeln!(
        s,
        "generic invariants ({} samples, max rank {}, {}):",
        g.samples,
        g.max_rank,
        if g.stable { "stable" } else { "unstable" }
    );
    let _ = writeln!(s, "  Kronecker blocks k: {:?}", g.kronecker);
    let _ = writeln!(
        s,
        "  Jordan half-sizes per eigenvalue: {:?}",
        g.jordan_half_sizes
    );
    let _ = writeln!(
        s,
        "fundamental semi-invariant: {} (degree {})",
        r.semiinvariant.polynomial, r.semiinvariant.degree
    );
    let _ = writeln!(
        s,
        "  identity checked at {} pairs",
        r.semiinvariant.identity_checked_at.len()
    );
    let _ = writeln!(s, "frozen point a = ({})", r.frozen_point.join(", "));
    if let Some(c) = &r.generic_char_poly {
        let _ = writeln!(s, "generic characteristic polynomial: {c}");
    }
    let _ = writeln!(s, "F_a: {}", r.fa_verdict);
    let _ = writeln!(s, "F~_a: {}", r.ftilde.verdict);
    for n in &r.ftilde.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    for p in &r.ftilde.points {
        let _ = writeln!(s, "  at x = ({}): {}", p.point.join(", "), p.verdict);
        let _ = writeln!(
            s,
            "    dim K = {}, dim K^ = {}, target {}, N = {}",
            p.dim_core, p.dim_extended, p.target, p.char_degree
        );
        for w in &p.witness {
            let _ = writeln!(s, "    witness: {w}");
        }
        let _ = writeln!(
            s,
            "    involution: {} ({} pairings)",
            if p.involution.passed { "PASS" } else { "FAIL" },
            p.involution.pairings
        );
        let _ = writeln!(s, "    eigenvalue lemma: {}", p.eigenvalue_lemma.status);
    }
    s
}
