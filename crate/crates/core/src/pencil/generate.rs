//! Random test instances: JK specifications with rational eigenvalues and
//! unimodular integer congruences.

use rand::seq::IndexedRandom;
use rand::Rng;

use super::{Eigenvalue, JkInvariants, JordanGroup};
use crate::exactalg::{rat, ratio, QMatrix, Rational};

/// Small eigenvalue pool; draws repeat often enough to exercise groups with
/// several blocks.
fn eigenvalue_pool() -> Vec<Rational> {
    vec![
        rat(-2),
        rat(-1),
        rat(0),
        rat(1),
        rat(2),
        rat(3),
        ratio(1, 2),
        ratio(-3, 2),
    ]
}

/// Random invariants of total dimension `1..=max_dim` mixing Kronecker blocks
/// (`k ≤ 3`), finite Jordan blocks (half-size `≤ 3`) and infinite Jordan
/// blocks (half-size `≤ 2`).
pub fn random_invariants<G: Rng + ?Sized>(max_dim: usize, rng: &mut G) -> JkInvariants {
    let target = rng.random_range(1..=max_dim.max(1));
    let pool = eigenvalue_pool();
    let mut kron = Vec::new();
    let mut jordan = Vec::new();
    let mut used = 0;
    while used < target {
        let left = target - used;
        match rng.random_range(0..10) {
            0..=3 => {
                let k = rng.random_range(1..=3usize.min(left.div_ceil(2)));
                used += 2 * k - 1;
                kron.push(k);
            }
            4..=7 if left >= 2 => {
                let h = rng.random_range(1..=3usize.min(left / 2));
                let ev = pool.choose(rng).expect("nonempty pool");
                used += 2 * h;
                jordan.push(JordanGroup::new(Eigenvalue::rational(ev), vec![h]));
            }
            8..=9 if left >= 2 => {
                let h = rng.random_range(1..=2usize.min(left / 2));
                used += 2 * h;
                jordan.push(JordanGroup::new(Eigenvalue::Infinite, vec![h]));
            }
            _ => {}
        }
    }
    JkInvariants::new(used, kron, jordan)
}

/// Product of a random permutation and integer elementary matrices; the
/// determinant is ±1.
pub fn random_unimodular<G: Rng + ?Sized>(n: usize, rng: &mut G) -> QMatrix {
    let mut m = QMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        let c = rat([-2, -1, 1, 2][rng.random_range(0..4)]);
        for k in 0..n {
            let add = &c * &m[(j, k)];
            m[(i, k)] += add;
        }
    }
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        m.swap_rows(i, j);
    }
    m
}
