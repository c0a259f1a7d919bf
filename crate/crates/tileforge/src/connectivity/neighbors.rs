//! Candidate neighbor shifts of the attractor.
//!
//! A lattice shift `s` is a neighbor when the attractor meets its own
//! translate by `s`. Every neighbor satisfies `A·s = δ + s'` for some
//! digit difference `δ` and neighbor-or-zero `s'`, so starting from all
//! lattice points within the attractor's diameter and repeatedly deleting
//! shifts with no such successor leaves a superset of the true neighbors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

use crate::attractor::diameter_bound;
use crate::digitset::{enumerate_box, DigitSet};
use crate::error::{Result, TileError};
use crate::exec::{self, ExecMode};
use crate::lattice::{translation_lattice, Lattice};
use crate::ratmath::{ceil_to_int, vec_add, IntMatrix, IntVector};

/// Images of the lattice basis under `A`: the shifts whose overlap sets
/// the sufficient condition inspects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeNeighbors {
    /// `A·b` for each basis column `b`, in basis order.
    pub generators: Vec<IntVector>,
    /// Both signs of every generator, sorted.
    pub signed: Vec<IntVector>,
}

pub fn edge_neighbors(a: &IntMatrix, lattice: &Lattice) -> EdgeNeighbors {
    let generators: Vec<IntVector> = lattice
        .basis_columns()
        .iter()
        .map(|b| a.mul_vec(b))
        .collect();
    let mut signed: Vec<IntVector> = generators
        .iter()
        .cloned()
        .chain(generators.iter().map(|g| crate::ratmath::vec_neg(g)))
        .collect();
    signed.sort();
    signed.dedup();
    EdgeNeighbors { generators, signed }
}

/// Superset of the neighbor shifts, with the seed radius used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSet {
    /// Surviving shifts, sorted; never contains the origin.
    pub vectors: Vec<IntVector>,
    pub radius: BigInt,
}

/// Computes a finite superset of the neighbor shifts of `(A, D)`.
///
/// Seeds every nonzero translation-lattice point with max norm at most
/// `radius` (default: the attractor diameter bound, rounded up), then
/// prunes shifts with no successor under `s ↦ A·s - δ` until the set is
/// stable. The seed box is limited by `budget` candidate points.
pub fn neighbor_set_bounded(
    a: &IntMatrix,
    digits: &DigitSet,
    radius: Option<BigInt>,
    budget: u64,
) -> Result<NeighborSet> {
    neighbor_set_bounded_with(ExecMode::default(), a, digits, radius, budget)
}

pub fn neighbor_set_bounded_with(
    mode: ExecMode,
    a: &IntMatrix,
    digits: &DigitSet,
    radius: Option<BigInt>,
    budget: u64,
) -> Result<NeighborSet> {
    let dim = digits.dim();
    let lattice = translation_lattice(a, digits)?;
    let radius = match radius {
        Some(r) => r,
        None => ceil_to_int(&diameter_bound(a, digits)?),
    };
    assert!(!radius.is_negative(), "radius must be non-negative");
    let side: BigInt = &radius * 2u8 + 1u8;
    let candidates = side.pow(dim as u32);
    if candidates > BigInt::from(budget) {
        return Err(TileError::BudgetExceeded {
            needed: candidates,
            budget,
        });
    }
    let ranges: Vec<(BigInt, BigInt)> = (0..dim).map(|_| (-radius.clone(), radius.clone())).collect();
    let mut survivors: Vec<IntVector> = exec::filter_map_collect(mode, &enumerate_box(&ranges), |z| {
        if z.iter().all(Zero::is_zero) || !lattice.contains(z) {
            None
        } else {
            Some(z.clone())
        }
    });
    let differences = digits.differences();
    loop {
        let members: BTreeSet<IntVector> = survivors.iter().cloned().collect();
        let next = exec::filter_map_collect(mode, &survivors, |s| {
            let image = a.mul_vec(s);
            let keep = differences.iter().any(|delta| {
                let succ = vec_add(&image, delta);
                succ.iter().all(Zero::is_zero) || members.contains(&succ)
            });
            if keep {
                Some(s.clone())
            } else {
                None
            }
        });
        let stable = next.len() == survivors.len();
        survivors = next;
        if stable {
            break;
        }
    }
    Ok(NeighborSet {
        vectors: survivors,
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitset::centered_digit_set;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pts(v: &[&[i64]]) -> Vec<IntVector> {
        v.iter()
            .map(|r| r.iter().map(|&x| big(x)).collect())
            .collect()
    }

    #[test]
    fn edge_generators_of_wide_shear() {
        let a = IntMatrix::from_rows(&[vec![3, 4], vec![0, 3]]);
        let e = edge_neighbors(&a, &Lattice::standard(2));
        assert_eq!(e.generators, pts(&[&[3, 0], &[4, 3]]));
        assert_eq!(
            e.signed,
            pts(&[&[-4, -3], &[-3, 0], &[3, 0], &[4, 3]])
        );
    }

    #[test]
    fn interval_neighbors_are_plus_minus_one() {
        // A = [2], D = {0, 1}: the tile is [0, 1], neighbors ±1.
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        let n = neighbor_set_bounded(&a, &d, None, 1 << 20).unwrap();
        assert_eq!(n.vectors, pts(&[&[-1], &[1]]));
        assert_eq!(n.radius, big(2));
    }

    #[test]
    fn centered_interval_neighbors() {
        // A = [3], D = {-1, 0, 1}: the tile is [-1/2, 1/2], neighbors ±1.
        let a = IntMatrix::from_rows(&[vec![3]]);
        let d = centered_digit_set(&a).unwrap();
        let n = neighbor_set_bounded(&a, &d, None, 1 << 20).unwrap();
        assert_eq!(n.vectors, pts(&[&[-1], &[1]]));
    }

    #[test]
    fn unit_square_has_eight_neighbors() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let d = centered_digit_set(&a).unwrap();
        let n = neighbor_set_bounded(&a, &d, None, 1 << 20).unwrap();
        assert_eq!(
            n.vectors,
            pts(&[
                &[-1, -1],
                &[-1, 0],
                &[-1, 1],
                &[0, -1],
                &[0, 1],
                &[1, -1],
                &[1, 0],
                &[1, 1],
            ])
        );
    }

    #[test]
    fn explicit_radius_overrides_diameter() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        let n = neighbor_set_bounded(&a, &d, Some(big(5)), 1 << 20).unwrap();
        assert_eq!(n.vectors, pts(&[&[-1], &[1]]));
        assert_eq!(n.radius, big(5));
    }

    #[test]
    fn budget_guard() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let d = centered_digit_set(&a).unwrap();
        let err = neighbor_set_bounded(&a, &d, Some(big(100)), 100).unwrap_err();
        assert_eq!(
            err,
            TileError::BudgetExceeded {
                needed: big(201 * 201),
                budget: 100
            }
        );
    }

    #[test]
    fn modes_agree() {
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let d = centered_digit_set(&a).unwrap();
        let r = Some(big(5));
        let seq =
            neighbor_set_bounded_with(ExecMode::Sequential, &a, &d, r.clone(), 1 << 22).unwrap();
        let par = neighbor_set_bounded_with(ExecMode::Parallel, &a, &d, r, 1 << 22).unwrap();
        assert_eq!(seq, par);
    }
}
