//! Level sets of a digit system and their lattice connectivity.
//!
//! The level sets are `D_1 = D` and `D_{n+1} = A·D_n + D`: the points
//! reachable by expanding `n` digits. The attractor is connected exactly
//! when every level set is connected under steps from the translation
//! lattice basis, so scanning levels gives both evidence for and concrete
//! witnesses against connectivity.

use num_bigint::BigInt;

use crate::digitset::DigitSet;
use crate::error::{Result, TileError};
use crate::exec::{self, ExecMode};
use crate::lattice::Lattice;
use crate::ratmath::{IntMatrix, IntVector};

/// Connectivity of one level set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelConnectivity {
    pub level: usize,
    pub point_count: usize,
    pub connected: bool,
}

/// Computes the level set `D_n`, sorted and deduplicated. `D_0 = {0}`.
pub fn level_set(a: &IntMatrix, digits: &DigitSet, n: usize, budget: u64) -> Result<Vec<IntVector>> {
    level_set_with(ExecMode::default(), a, digits, n, budget)
}

pub fn level_set_with(
    mode: ExecMode,
    a: &IntMatrix,
    digits: &DigitSet,
    n: usize,
    budget: u64,
) -> Result<Vec<IntVector>> {
    assert_eq!(a.rows(), digits.dim(), "dimension mismatch");
    check_budget(digits, n, budget)?;
    let mut points: Vec<IntVector> = vec![vec![BigInt::from(0); digits.dim()]];
    for _ in 0..n {
        points = expand(mode, a, digits, &points);
    }
    Ok(points)
}

fn check_budget(digits: &DigitSet, n: usize, budget: u64) -> Result<()> {
    let needed = BigInt::from(digits.len().max(1)).pow(n as u32);
    if needed > BigInt::from(budget) {
        return Err(TileError::BudgetExceeded { needed, budget });
    }
    Ok(())
}

fn expand(mode: ExecMode, a: &IntMatrix, digits: &DigitSet, points: &[IntVector]) -> Vec<IntVector> {
    let mut next = exec::flat_map_collect(mode, points, |p| {
        let image = a.mul_vec(p);
        digits
            .digits()
            .iter()
            .map(|d| crate::ratmath::vec_add(&image, d))
            .collect::<Vec<_>>()
    });
    next.sort();
    next.dedup();
    next
}

/// Checks lattice connectivity of `D_1, ..., D_max_level`.
///
/// Every level must stay inside the lattice (they do whenever the lattice
/// is the translation lattice of the system); a stray point reports
/// [`TileError::NotInvariant`] for its level.
pub fn check_level_connectivity(
    a: &IntMatrix,
    digits: &DigitSet,
    lattice: &Lattice,
    max_level: usize,
    budget: u64,
) -> Result<Vec<LevelConnectivity>> {
    check_level_connectivity_with(ExecMode::default(), a, digits, lattice, max_level, budget)
}

pub fn check_level_connectivity_with(
    mode: ExecMode,
    a: &IntMatrix,
    digits: &DigitSet,
    lattice: &Lattice,
    max_level: usize,
    budget: u64,
) -> Result<Vec<LevelConnectivity>> {
    check_budget(digits, max_level, budget)?;
    let steps = lattice.basis_columns();
    let mut report = Vec::with_capacity(max_level);
    let mut points: Vec<IntVector> = vec![vec![BigInt::from(0); digits.dim()]];
    for level in 1..=max_level {
        points = expand(mode, a, digits, &points);
        if points.iter().any(|p| !lattice.contains(p)) {
            return Err(TileError::NotInvariant { level });
        }
        let check = super::graph::is_b_connected(&points, &steps);
        report.push(LevelConnectivity {
            level,
            point_count: points.len(),
            connected: check.connected,
        });
    }
    Ok(report)
}
