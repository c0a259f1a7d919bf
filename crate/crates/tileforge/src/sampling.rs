//! Reproducible random dilations with integer spectrum.
//!
//! Uniform random integer matrices almost never have an all-integer
//! spectrum, so the sampler builds one by construction: an upper
//! triangular core with diagonal entries of modulus at least two,
//! conjugated by a random unimodular matrix. Samples whose entries
//! outgrow the requested bound are rejected and redrawn.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratmath::IntMatrix;

pub struct DilationSampler {
    rng: ChaCha8Rng,
    dim: usize,
    entry_bound: i64,
}

impl DilationSampler {
    /// `entry_bound` caps the absolute value of every entry of the
    /// returned matrices (and of the triangular core's diagonal).
    pub fn new(seed: u64, dim: usize, entry_bound: i64) -> Self {
        assert!(dim >= 1, "empty dimension");
        assert!(entry_bound >= 2, "dilations need eigenvalues of modulus >= 2");
        DilationSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
            entry_bound,
        }
    }

    /// Draws the next dilation: integer spectrum, every eigenvalue of
    /// modulus at least two, entries within the bound.
    pub fn next_matrix(&mut self) -> IntMatrix {
        for _ in 0..100_000 {
            let t = self.triangular();
            let u = self.unimodular();
            let u_inv = u.adjugate().expect("unimodular");
            let a = u.mul(&t).mul(&u_inv);
            if self.within_bound(&a) {
                return a;
            }
        }
        unreachable!("rejection sampling stalled");
    }

    fn triangular(&mut self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            let magnitude = self.rng.random_range(2..=self.entry_bound);
            let value = if self.rng.random_bool(0.5) {
                magnitude
            } else {
                -magnitude
            };
            m.set(i, i, BigInt::from(value));
            for j in i + 1..self.dim {
                m.set(i, j, BigInt::from(self.rng.random_range(-1i64..=1)));
            }
        }
        m
    }

    /// Product of a few elementary row additions: determinant one, so the
    /// adjugate is the exact inverse.
    fn unimodular(&mut self) -> IntMatrix {
        let mut u = IntMatrix::identity(self.dim);
        if self.dim == 1 {
            return u;
        }
        let ops = self.rng.random_range(0..=2 * self.dim);
        for _ in 0..ops {
            let i = self.rng.random_range(0..self.dim);
            let mut j = self.rng.random_range(0..self.dim - 1);
            if j >= i {
                j += 1;
            }
            let sign = if self.rng.random_bool(0.5) { 1i64 } else { -1 };
            let mut e = IntMatrix::identity(self.dim);
            e.set(j, i, BigInt::from(sign));
            u = e.mul(&u);
        }
        u
    }

    fn within_bound(&self, a: &IntMatrix) -> bool {
        let bound = BigInt::from(self.entry_bound);
        (0..self.dim).all(|i| (0..self.dim).all(|j| a.at(i, j).abs() <= bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::is_dilation;

    #[test]
    fn samples_are_dilations_within_bound() {
        let mut sampler = DilationSampler::new(7, 2, 6);
        for _ in 0..50 {
            let a = sampler.next_matrix();
            let check = is_dilation(&a).unwrap();
            assert!(check.dilation, "sampled {:?}", a);
            let bound = BigInt::from(6);
            assert!((0..2).all(|i| (0..2).all(|j| a.at(i, j).abs() <= bound)));
        }
    }

    #[test]
    fn three_dimensional_samples() {
        let mut sampler = DilationSampler::new(11, 3, 5);
        for _ in 0..10 {
            let a = sampler.next_matrix();
            assert!(is_dilation(&a).unwrap().dilation);
        }
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let mut s1 = DilationSampler::new(42, 2, 6);
        let mut s2 = DilationSampler::new(42, 2, 6);
        let a: Vec<IntMatrix> = (0..5).map(|_| s1.next_matrix()).collect();
        let b: Vec<IntMatrix> = (0..5).map(|_| s2.next_matrix()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_diverge() {
        let mut s1 = DilationSampler::new(1, 2, 6);
        let mut s2 = DilationSampler::new(2, 2, 6);
        let a: Vec<IntMatrix> = (0..5).map(|_| s1.next_matrix()).collect();
        let b: Vec<IntMatrix> = (0..5).map(|_| s2.next_matrix()).collect();
        assert_ne!(a, b);
    }

    #[test]
    fn samples_decompose() {
        let mut sampler = DilationSampler::new(3, 2, 6);
        for _ in 0..20 {
            let a = sampler.next_matrix();
            let dec = crate::jordan::jordan_decompose(&a).unwrap();
            assert_eq!(dec.blocks.iter().map(|b| b.size).sum::<usize>(), 2);
        }
    }
}
