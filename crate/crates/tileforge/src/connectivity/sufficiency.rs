//! Sufficient condition for attractor connectivity.
//!
//! Let `F` be the closed centered unit cube, so `A·F` contains the
//! attractor up to lattice translations. If the digit set is connected
//! under translation-lattice steps, and for every edge shift `g = ±A·b`
//! (with `b` a lattice basis vector) the point set
//! `(A·F ∪ (g + A·F)) ∩ Γ` is lattice-connected, then the attractor is
//! connected. Failures leave the question open and come with witnesses.

use crate::digitset::{centered_digit_set_with, enumerate_box, CubeImage, DigitSet};
use crate::error::{Result, TileError};
use crate::exec::{self, ExecMode};
use crate::lattice::{translation_lattice, Lattice};
use crate::ratmath::{IntMatrix, IntVector};

use super::graph::{is_b_connected, ConnectivityCheck};
use super::neighbors::edge_neighbors;

/// Outcome of a connectivity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Connected,
    Disconnected,
    Inconclusive,
}

/// Which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Lattice connectivity of the digit set itself.
    DigitConnectivity,
    /// The hull-overlap sufficient condition.
    SufficientCondition,
    /// Connectivity of the level sets up to the given depth.
    LevelSets(usize),
    /// Per-block shell certificates.
    ShellCertificate,
    /// Jordan-form pipeline with certified blocks.
    Pipeline,
}

/// Two points in different components, proving a set is disconnected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentWitness {
    pub first: IntVector,
    pub second: IntVector,
}

/// Verdict with the criterion that produced it and, for non-connected
/// point sets, a pair of separated points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityVerdict {
    pub status: VerdictStatus,
    pub criterion: Criterion,
    pub witness: Option<ComponentWitness>,
}

/// Lattice connectivity of one hull overlap `(A·F ∪ (g + A·F)) ∩ Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCheck {
    pub shift: IntVector,
    pub point_count: usize,
    pub connected: bool,
}

/// Full record of a sufficient-condition run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficiencyReport {
    pub verdict: ConnectivityVerdict,
    /// Translation lattice, when its fixed point was reached.
    pub lattice: Option<Lattice>,
    pub digit_set: DigitSet,
    /// Whether the digit set is lattice-connected (the base case).
    pub digit_connected: Option<bool>,
    /// Whether `A·F ∩ Γ` equals the digit set exactly.
    pub digit_match: Option<bool>,
    pub edge_checks: Vec<EdgeCheck>,
    pub note: Option<String>,
}

fn witness_from(check: &ConnectivityCheck) -> Option<ComponentWitness> {
    if check.components.len() >= 2 {
        Some(ComponentWitness {
            first: check.components[0][0].clone(),
            second: check.components[1][0].clone(),
        })
    } else {
        None
    }
}

/// Integer points of `A·F ∪ (shift + A·F)` that lie in the lattice,
/// in lexicographic order.
fn hull_points(
    a: &IntMatrix,
    cube: &CubeImage,
    lattice: &Lattice,
    shift: Option<&IntVector>,
) -> Vec<IntVector> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let two = BigInt::from(2);
    let ranges: Vec<(BigInt, BigInt)> = a
        .row_abs_sums()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let f = s.div_floor(&two);
            let (mut lo, mut hi) = (-f.clone(), f.clone());
            if let Some(g) = shift {
                lo = lo.min(&g[i] - &f);
                hi = hi.max(&g[i] + &f);
            }
            (lo, hi)
        })
        .collect();
    enumerate_box(&ranges)
        .into_iter()
        .filter(|z| {
            let in_hull = cube.contains_closed(z)
                || shift.is_some_and(|g| cube.contains_closed(&crate::ratmath::vec_sub(z, g)));
            in_hull && lattice.contains(z)
        })
        .collect()
}

/// Runs the sufficient condition for the centered digit system of `a`.
///
/// The verdict is `Connected` when the digit set and every edge overlap
/// are lattice-connected; any failed check downgrades to `Inconclusive`
/// with a witness, since the condition is one-sided. A translation
/// lattice that never stabilizes (degenerate attractor) is reported as
/// inconclusive with a note rather than as an error.
pub fn sufficient_condition(a: &IntMatrix) -> Result<SufficiencyReport> {
    sufficient_condition_with(ExecMode::default(), a)
}

pub fn sufficient_condition_with(mode: ExecMode, a: &IntMatrix) -> Result<SufficiencyReport> {
    let digit_set = centered_digit_set_with(mode, a)?;
    let lattice = match translation_lattice(a, &digit_set) {
        Ok(l) => l,
        Err(TileError::NonConvergence { .. }) => {
            return Ok(SufficiencyReport {
                verdict: ConnectivityVerdict {
                    status: VerdictStatus::Inconclusive,
                    criterion: Criterion::SufficientCondition,
                    witness: None,
                },
                lattice: None,
                digit_set,
                digit_connected: None,
                digit_match: None,
                edge_checks: Vec::new(),
                note: Some(String::from(
                    "translation lattice did not stabilize; the attractor is degenerate",
                )),
            })
        }
        Err(e) => return Err(e),
    };
    let steps = lattice.basis_columns();
    let base = is_b_connected(digit_set.digits(), &steps);
    let cube = CubeImage::new(a)?;
    let hull = hull_points(a, &cube, &lattice, None);
    let digit_match = hull == digit_set.digits();
    let edges = edge_neighbors(a, &lattice);
    let checked: Vec<(EdgeCheck, ConnectivityCheck)> =
        exec::map_collect(mode, &edges.signed, |g| {
            let points = hull_points(a, &cube, &lattice, Some(g));
            let check = is_b_connected(&points, &steps);
            (
                EdgeCheck {
                    shift: g.clone(),
                    point_count: points.len(),
                    connected: check.connected,
                },
                check,
            )
        });
    let verdict = if !base.connected {
        ConnectivityVerdict {
            status: VerdictStatus::Inconclusive,
            criterion: Criterion::DigitConnectivity,
            witness: witness_from(&base),
        }
    } else if let Some((_, failing)) = checked.iter().find(|(e, _)| !e.connected) {
        ConnectivityVerdict {
            status: VerdictStatus::Inconclusive,
            criterion: Criterion::SufficientCondition,
            witness: witness_from(failing),
        }
    } else {
        ConnectivityVerdict {
            status: VerdictStatus::Connected,
            criterion: Criterion::SufficientCondition,
            witness: None,
        }
    };
    Ok(SufficiencyReport {
        verdict,
        lattice: Some(lattice),
        digit_set,
        digit_connected: Some(base.connected),
        digit_match: Some(digit_match),
        edge_checks: checked.into_iter().map(|(e, _)| e).collect(),
        note: None,
    })
}
