use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rat, Matrix, QMatrix, Rational, Ring, UniPoly};

/// Pfaffian by expansion along the first row, memoised on index subsets.
///
/// Odd sizes give zero. Works over any [`Ring`], so polynomial entries are
/// expanded symbolically.
pub fn pfaffian<R: Ring>(m: &Matrix<R>) -> Result<R> {
    if !m.is_skew() {
        return Err(Error::NotSkew("pfaffian input".into()));
    }
    let n = m.rows();
    if n % 2 == 1 {
        return Ok(R::ring_zero());
    }
    assert!(n <= 64, "pfaffian expansion supports at most 64 rows");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(expand(m, full, &mut memo))
}

fn expand<R: Ring>(m: &Matrix<R>, mask: u64, memo: &mut HashMap<u64, R>) -> R {
    if mask == 0 {
        return R::ring_one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let mut rest = mask & !(1u64 << i);
    let mut sum = R::ring_zero();
    let mut positive = true;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= !(1u64 << j);
        let e = &m[(i, j)];
        if !e.ring_is_zero() {
            let sub = expand(m, mask & !(1u64 << i) & !(1u64 << j), memo);
            let term = e.times(&sub);
            sum = if positive {
                sum.plus(&term)
            } else {
                sum.minus(&term)
            };
        }
        positive = !positive;
    }
    memo.insert(mask, sum.clone());
    sum
}

/// Pfaffian over Q by skew elimination: `Pf(M) = m₀₁ · Pf(Schur complement)`.
///
/// The caller guarantees skew-symmetry.
pub fn pfaffian_field(m: &QMatrix) -> Rational {
    let n = m.rows();
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut a = m.clone();
    let mut acc = Rational::one();
    let mut size = n;
    while size > 0 {
        let Some(j) = (1..size).find(|&j| !a[(0, j)].is_zero()) else {
            return Rational::zero();
        };
        if j != 1 {
            a.swap_rows(1, j);
            a.swap_cols(1, j);
            acc = -acc;
        }
        let piv = a[(0, 1)].clone();
        acc *= &piv;
        let inv = piv.recip();
        let next = Matrix::from_fn(size - 2, size - 2, |i, k| {
            let (i, k) = (i + 2, k + 2);
            let corr = (&a[(i, 0)] * &a[(1, k)] - &a[(i, 1)] * &a[(0, k)]) * &inv;
            &a[(i, k)] + corr
        });
        a = next;
        size -= 2;
    }
    acc
}

/// `Pf(A − λB)` as a polynomial, by interpolation at `λ = 0, …, size/2`.
pub fn pencil_pfaffian(a: &QMatrix, b: &QMatrix) -> UniPoly {
    let n = a.rows();
    if n % 2 == 1 {
        return UniPoly::zero();
    }
    let xs: Vec<Rational> = (0..=(n / 2) as i64).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|l| pfaffian_field(&a.sub(&b.scale(l))))
        .collect();
    UniPoly::interpolate(&xs, &ys)
}
