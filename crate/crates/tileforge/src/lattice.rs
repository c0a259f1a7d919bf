//! Integer lattices and the translation lattice of a digit system.
//!
//! Every full-rank sublattice of `Z^m` is stored by its column-style
//! Hermite basis (lower triangular, positive diagonal, entries left of the
//! diagonal reduced), so two lattices are equal exactly when their basis
//! matrices are equal.

use num_bigint::BigInt;
use num_traits::One;

use crate::digitset::DigitSet;
use crate::error::{Result, TileError};
use crate::ratmath::{hermite_basis, hermite_coordinates, vec_sub, IntMatrix, IntVector};

/// Iteration cap for the translation-lattice fixed point. A digit system
/// whose lattice chain is still shrinking after this many steps generates
/// a degenerate (lower-dimensional) tile.
pub const MAX_LATTICE_ITERATIONS: usize = 64;

/// Full-rank sublattice of `Z^m` in canonical Hermite form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    index: BigInt,
}

impl Lattice {
    /// The standard lattice `Z^m`.
    pub fn standard(dim: usize) -> Self {
        Lattice {
            dim,
            basis: IntMatrix::identity(dim),
            index: BigInt::one(),
        }
    }

    /// Lattice generated by the given integer vectors.
    pub fn from_generators(dim: usize, generators: &[IntVector]) -> Result<Self> {
        let basis = hermite_basis(dim, generators)?;
        let index = (0..dim).fold(BigInt::one(), |acc, i| acc * basis.at(i, i));
        Ok(Lattice { dim, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hermite basis matrix; columns generate the lattice.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<IntVector> {
        self.basis.columns()
    }

    /// Index `[Z^m : Γ]`, the product of the Hermite diagonal.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn is_standard(&self) -> bool {
        self.index.is_one()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` is a member.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVector> {
        hermite_coordinates(&self.basis, v)
    }
}

/// Checks `A·Γ ⊆ Γ`.
pub fn is_invariant_lattice(a: &IntMatrix, lattice: &Lattice) -> bool {
    lattice
        .basis_columns()
        .iter()
        .all(|b| lattice.contains(&a.mul_vec(b)))
}

/// Stable lattice of the digit system: the limit of the shrinking chain
/// `Γ_0 = Z^m`, `Γ_{k+1} = ⟨A·Γ_k, D, D - D⟩`, i.e. the largest lattice
/// reproduced by one expansion step. A complete residue system containing
/// zero stabilizes at `Z^m` itself; thinner digit systems settle on a
/// proper sublattice.
///
/// If the chain is still shrinking after [`MAX_LATTICE_ITERATIONS`] steps
/// the digits span too thin a set to tile any lattice and the attractor
/// is degenerate, reported as non-convergence.
pub fn translation_lattice(a: &IntMatrix, digits: &DigitSet) -> Result<Lattice> {
    assert!(a.is_square() && a.rows() == digits.dim(), "dimension mismatch");
    let dim = digits.dim();
    let mut fixed: Vec<IntVector> = Vec::new();
    for d in digits.digits() {
        fixed.push(d.clone());
        for e in digits.digits() {
            let diff = vec_sub(d, e);
            if !diff.iter().all(num_traits::Zero::is_zero) {
                fixed.push(diff);
            }
        }
    }
    fixed.sort();
    fixed.dedup();
    let mut current = Lattice::standard(dim);
    for _ in 0..MAX_LATTICE_ITERATIONS {
        let mut generators: Vec<IntVector> = current
            .basis_columns()
            .iter()
            .map(|b| a.mul_vec(b))
            .collect();
        generators.extend(fixed.iter().cloned());
        let next = Lattice::from_generators(dim, &generators)?;
        if next == current {
            assert!(digits.digits().iter().all(|d| current.contains(d)));
            assert!(is_invariant_lattice(a, &current));
            return Ok(current);
        }
        current = next;
    }
    Err(TileError::NonConvergence {
        iterations: MAX_LATTICE_ITERATIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitset::{centered_digit_set, DigitSet, Provenance};

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn vecs(v: &[&[i64]]) -> Vec<IntVector> {
        v.iter()
            .map(|r| r.iter().map(|&x| big(x)).collect())
            .collect()
    }

    #[test]
    fn standard_lattice_contains_everything() {
        let l = Lattice::standard(2);
        assert!(l.is_standard());
        assert_eq!(l.index(), &big(1));
        let v = vecs(&[&[-7, 12]]).remove(0);
        assert_eq!(l.coordinates(&v).unwrap(), v);
    }

    #[test]
    fn generated_lattice_membership() {
        let l = Lattice::from_generators(2, &vecs(&[&[3, 0], &[4, 3]])).unwrap();
        assert_eq!(l.index(), &big(9));
        assert!(!l.is_standard());
        assert!(l.contains(&vecs(&[&[3, 0]])[0]));
        assert!(l.contains(&vecs(&[&[4, 3]])[0]));
        assert!(l.contains(&vecs(&[&[7, 3]])[0]));
        assert!(!l.contains(&vecs(&[&[1, 0]])[0]));
    }

    #[test]
    fn generator_order_gives_same_lattice() {
        let l1 = Lattice::from_generators(2, &vecs(&[&[3, 0], &[4, 3], &[7, 3]])).unwrap();
        let l2 = Lattice::from_generators(2, &vecs(&[&[7, 3], &[3, 0], &[4, 3]])).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn rank_deficient_generators_rejected() {
        let err = Lattice::from_generators(2, &vecs(&[&[2, 4], &[1, 2]])).unwrap_err();
        assert_eq!(err, TileError::RankDeficient { rank: 1, dim: 2 });
    }

    #[test]
    fn invariance_check() {
        let a = IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]);
        assert!(is_invariant_lattice(&a, &Lattice::standard(2)));
        let doubled = Lattice::from_generators(2, &vecs(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(is_invariant_lattice(&a, &doubled));
        let skew = Lattice::from_generators(2, &vecs(&[&[2, 0], &[0, 1]])).unwrap();
        assert!(!is_invariant_lattice(&a, &skew));
    }

    #[test]
    fn translation_lattice_of_wide_shear_is_standard() {
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let d = centered_digit_set(&a).unwrap();
        let gamma = translation_lattice(&a, &d).unwrap();
        assert!(gamma.is_standard());
    }

    #[test]
    fn translation_lattice_keeps_proper_sublattice() {
        // Digits along 2Z x Z: differences never generate odd first
        // coordinates, and A preserves the sublattice.
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let digits = DigitSet::from_sorted(
            2,
            vecs(&[&[0, 0], &[0, 1], &[2, 0], &[2, 1]]),
            Provenance::CenteredCanonical { matrix: a.clone() },
        );
        let gamma = translation_lattice(&a, &digits).unwrap();
        assert_eq!(gamma.index(), &big(2));
        assert!(gamma.contains(&vecs(&[&[2, 0]])[0]));
        assert!(!gamma.contains(&vecs(&[&[1, 0]])[0]));
    }

    #[test]
    fn degenerate_digits_do_not_converge() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let digits = DigitSet::from_sorted(
            2,
            vecs(&[&[0, 0]]),
            Provenance::CenteredCanonical { matrix: a.clone() },
        );
        let err = translation_lattice(&a, &digits).unwrap_err();
        assert_eq!(
            err,
            TileError::NonConvergence {
                iterations: MAX_LATTICE_ITERATIONS
            }
        );
    }
}
