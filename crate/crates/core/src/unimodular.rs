//! Seeded random unimodular matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// A random `dim x dim` integer matrix of determinant `+-1` with every entry
/// in `[-bound, bound]`.
///
/// Built from the identity by a fixed number of elementary row operations
/// (transvections, swaps, negations); an operation that would push an entry
/// past `bound` is skipped. `bound == 0` yields the identity.
pub fn random_unimodular<R: Rng + ?Sized>(dim: usize, bound: u64, rng: &mut R) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> =
        (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    if bound == 0 {
        return m;
    }
    let limit = BigInt::from(bound);
    let steps = 6 * dim + 2;
    for _ in 0..steps {
        match rng.gen_range(0..6) {
            0 => {
                let i = rng.gen_range(0..dim);
                for x in m[i].iter_mut() {
                    *x = -&*x;
                }
            }
            1 if dim > 1 => {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                m.swap(i, j);
            }
            _ if dim > 1 => {
                let i = rng.gen_range(0..dim);
                let mut j = rng.gen_range(0..dim - 1);
                if j >= i {
                    j += 1;
                }
                let b = bound.min(i64::MAX as u64) as i64;
                let f = BigInt::from(rng.gen_range(-b..=b));
                let row: Vec<BigInt> = m[i].iter().zip(&m[j]).map(|(a, c)| a + &f * c).collect();
                if row.iter().all(|x| x.abs() <= limit) {
                    m[i] = row;
                }
            }
            _ => {}
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::determinant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn determinant_is_unit_and_entries_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=5 {
            for bound in [1u64, 3, 10] {
                let u = random_unimodular(dim, bound, &mut rng);
                assert!(determinant(&u).abs().is_one());
                assert!(u.iter().flatten().all(|x| x.abs() <= BigInt::from(bound)));
            }
        }
    }

    #[test]
    fn zero_bound_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unimodular(3, 0, &mut rng);
        assert_eq!(determinant(&u), BigInt::one());
        assert!(u
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == BigInt::from((i == j) as i64))));
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = random_unimodular(4, 10, &mut ChaCha8Rng::seed_from_u64(99));
        let b = random_unimodular(4, 10, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(a, b);
    }
}
