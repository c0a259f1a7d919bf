//! Connected digit sets by Jordan decomposition.
//!
//! For a dilation with integer spectrum, each Jordan block gets its
//! centered digit set, certified connected by its shell certificate. The
//! blockwise product is a connected digit system for the Jordan form, and
//! pushing it through the similarity `A = P J P^{-1}` yields a digit set
//! for `A` itself: a complete residue system whose attractor is
//! connected.

use crate::digitset::{
    block_digit_set, is_complete_residue_system, map_digit_set, product_digit_set, DigitSet,
    ResidueCheck,
};
use crate::error::Result;
use crate::jordan::{jordan_decompose, JordanDecomposition};
use crate::ratmath::IntMatrix;
use crate::spectrum::is_dilation;

use super::shell::{shell_certificate, ShellCertificate};
use super::sufficiency::{ConnectivityVerdict, Criterion, VerdictStatus};

/// One certified Jordan block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub certificate: ShellCertificate,
}

/// Everything the pipeline produces for one dilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub decomposition: JordanDecomposition,
    pub blocks: Vec<BlockReport>,
    /// Product digit set for the Jordan form, block coordinates in order.
    pub jordan_digits: DigitSet,
    /// Image of the Jordan digits under `P`: the digit set delivered
    /// for the input matrix.
    pub mapped_digits: DigitSet,
    pub residue: ResidueCheck,
    pub verdict: ConnectivityVerdict,
}

/// Builds a connected digit set for the dilation `a`.
///
/// Errors carry the reason the construction cannot apply: a non-integer
/// spectrum, an eigenvalue of modulus below two, or a block whose shell
/// certificate fails a check.
pub fn pipeline_connected_digits(a: &IntMatrix) -> Result<PipelineOutcome> {
    let check = is_dilation(a)?;
    if let Some(offending) = check.offending {
        return Err(crate::error::TileError::NotDilation {
            eigenvalue: offending,
        });
    }
    let decomposition = jordan_decompose(a)?;
    let mut blocks = Vec::with_capacity(decomposition.blocks.len());
    let mut parts = Vec::with_capacity(decomposition.blocks.len());
    for block in &decomposition.blocks {
        let certificate = shell_certificate(&block.eigenvalue, block.size)?;
        parts.push(block_digit_set(&block.eigenvalue, block.size)?);
        blocks.push(BlockReport { certificate });
    }
    let jordan_digits = product_digit_set(&parts);
    let mapped_digits = map_digit_set(&decomposition.p, &jordan_digits);
    let residue = is_complete_residue_system(a, &mapped_digits);
    let certified = blocks.iter().all(|b| b.certificate.passes()) && residue.complete;
    let verdict = ConnectivityVerdict {
        status: if certified {
            VerdictStatus::Connected
        } else {
            VerdictStatus::Inconclusive
        },
        criterion: Criterion::Pipeline,
        witness: None,
    };
    Ok(PipelineOutcome {
        decomposition,
        blocks,
        jordan_digits,
        mapped_digits,
        residue,
        verdict,
    })
}
