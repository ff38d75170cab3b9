//! Smith normal form over Q[λ] and gcd-free bases.

use super::matrix::Matrix;
use super::unipoly::UniPoly;

/// Invariant factors of `m`, monic, as the diagonal of its Smith form.
///
/// The result has `min(rows, cols)` entries; trailing zeros mark the rank
/// deficiency. Consecutive nonzero entries satisfy `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &Matrix<UniPoly>) -> Vec<UniPoly> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let size = rows.min(cols);
    let mut diag = Vec::with_capacity(size);
    for t in 0..size {
        if !reduce_corner(&mut a, t) {
            diag.resize(size, UniPoly::zero());
            return diag;
        }
        diag.push(a[(t, t)].monic());
    }
    diag
}

/// Brings `a[t..][t..]` to the shape `d ⊕ rest` with `d` dividing every
/// entry of `rest`. Returns `false` when the block is zero.
fn reduce_corner(a: &mut Matrix<UniPoly>, t: usize) -> bool {
    let (rows, cols) = (a.rows(), a.cols());
    loop {
        let Some((pi, pj)) = min_degree_entry(a, t) else {
            return false;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let piv = a[(t, t)].clone();

        let mut clean = true;
        for i in t + 1..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = a[(i, t)].div_rem(&piv);
            for j in t..cols {
                let s = &q * &a[(t, j)];
                a[(i, j)] = &a[(i, j)] - &s;
            }
            debug_assert_eq!(a[(i, t)], r);
            clean &= r.is_zero();
        }
        for j in t + 1..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = a[(t, j)].div_rem(&piv);
            for i in t..rows {
                let s = &q * &a[(i, t)];
                a[(i, j)] = &a[(i, j)] - &s;
            }
            clean &= r.is_zero();
        }
        if !clean {
            continue;
        }

        let bad_row = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_zero() && !piv.divides(&a[(i, j)])));
        match bad_row {
            Some(i) => {
                for j in t..cols {
                    a[(t, j)] = &a[(t, j)] + &a[(i, j)];
                }
            }
            None => return true,
        }
    }
}

fn min_degree_entry(a: &Matrix<UniPoly>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if let Some(d) = a[(i, j)].degree() {
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                    if d == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Pairwise coprime nonconstant monic polynomials such that every input is,
/// up to a unit, a product of powers of them. Output is sorted.
pub fn gcd_free_basis(polys: &[UniPoly]) -> Vec<UniPoly> {
    let mut basis: Vec<UniPoly> = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        let mut pending = vec![p.squarefree_part()];
        while let Some(mut f) = pending.pop() {
            if f.is_constant() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = f.gcd(&basis[i]);
                if g.is_constant() {
                    i += 1;
                    continue;
                }
                let b = basis.swap_remove(i);
                let (bq, _) = b.div_rem(&g);
                let (fq, _) = f.div_rem(&g);
                pending.push(bq.monic());
                pending.push(g);
                f = fq.monic();
                if f.is_constant() {
                    break;
                }
                i = 0;
            }
            if !f.is_constant() {
                basis.push(f.monic());
            }
        }
    }
    basis.sort();
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;
    use proptest::prelude::*;

    fn lin(root: i64) -> UniPoly {
        UniPoly::linear(&rat(root))
    }

    #[test]
    fn jordan_pair_example() {
        // ((0, λ0−λ), (−(λ0−λ), 0)) with λ0 = 3
        let e = UniPoly::from_i64(&[3, -1]);
        let m = Matrix::from_rows(vec![
            vec![UniPoly::zero(), e.clone()],
            vec![-e, UniPoly::zero()],
        ])
        .unwrap();
        assert_eq!(smith_normal_form(&m), vec![lin(3), lin(3)]);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(
            smith_normal_form(&Matrix::<UniPoly>::identity(3)),
            vec![UniPoly::one(); 3]
        );
        assert_eq!(
            smith_normal_form(&Matrix::<UniPoly>::zeros(2, 3)),
            vec![UniPoly::zero(); 2]
        );
    }

    #[test]
    fn non_divisible_diagonal() {
        // diag(λ−1, λ−2) has invariant factors 1, (λ−1)(λ−2)
        let m = Matrix::from_rows(vec![
            vec![lin(1), UniPoly::zero()],
            vec![UniPoly::zero(), lin(2)],
        ])
        .unwrap();
        assert_eq!(
            smith_normal_form(&m),
            vec![UniPoly::one(), &lin(1) * &lin(2)]
        );
    }

    #[test]
    fn gcd_free_basis_splits_common_factors() {
        let a = &lin(1) * &lin(2);
        let b = &lin(2) * &lin(3);
        let sq = UniPoly::from_i64(&[1, 0, 1]);
        let basis = gcd_free_basis(&[a, b, &sq * &lin(1)]);
        let mut expect = vec![lin(1), lin(2), lin(3), sq];
        expect.sort();
        assert_eq!(basis, expect);
    }

    fn unimodular(n: usize, ops: Vec<(usize, usize, i64, i64)>) -> Matrix<UniPoly> {
        let mut p = Matrix::<UniPoly>::identity(n);
        for (i, j, c0, c1) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            let c = UniPoly::from_i64(&[c0, c1]);
            for k in 0..n {
                let s = &c * &p[(j, k)];
                p[(i, k)] = &p[(i, k)] + &s;
            }
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn recovers_diagonal_under_unimodular_scrambling(
            l in prop::collection::vec(-2i64..=2, 3),
            ops_p in prop::collection::vec((0usize..3, 0usize..3, -1i64..=1, -1i64..=1), 0..4),
            ops_q in prop::collection::vec((0usize..3, 0usize..3, -1i64..=1, -1i64..=1), 0..4),
        ) {
            // D = diag(1, λ−a, (λ−a)(λ−b)) already forms a divisibility chain
            let d1 = lin(l[0]);
            let d2 = &d1 * &lin(l[1]);
            let mut d = Matrix::<UniPoly>::identity(3);
            d[(1, 1)] = d1.clone();
            d[(2, 2)] = d2.clone();
            let m = unimodular(3, ops_p).mul(&d).mul(&unimodular(3, ops_q));
            let s = smith_normal_form(&m);
            prop_assert_eq!(s, vec![UniPoly::one(), d1, d2.monic()]);
        }

        #[test]
        fn chain_divisibility(v in prop::collection::vec(-2i64..=2, 8)) {
            let m = Matrix::from_fn(2, 2, |i, j| {
                let k = 2 * (2 * i + j);
                UniPoly::from_i64(&[v[k], v[k + 1]])
            });
            let s = smith_normal_form(&m);
            if !s[1].is_zero() {
                prop_assert!(s[0].divides(&s[1]));
                // d1·d2 equals the monic determinant
                prop_assert_eq!(&s[0] * &s[1], m.determinant().monic());
            }
        }
    }
}
