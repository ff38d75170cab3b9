//! Seeded inputs shared by the benchmarks.

use jkpencil::pencil::generate::{random_invariants, random_unimodular};
use jkpencil::pencil::{canonical_pencil, congruence_transform};
use jkpencil::{JkInvariants, SkewPencil};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scrambled canonical pencils of dimension at most `max_dim` together with
/// the invariants they were built from.
pub fn scrambled_pencils(
    count: usize,
    max_dim: usize,
    seed: u64,
) -> Vec<(JkInvariants, SkewPencil)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let inv = random_invariants(max_dim, &mut rng);
            let p = canonical_pencil(&inv).expect("generated invariants are valid");
            let t = random_unimodular(inv.dimension, &mut rng);
            let q = congruence_transform(&p, &t).expect("unimodular congruence");
            (inv, q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        assert_eq!(scrambled_pencils(5, 10, 3), scrambled_pencils(5, 10, 3));
        assert!(scrambled_pencils(5, 10, 3)
            .iter()
            .all(|(i, p)| i.dimension == p.dimension()));
    }
}
