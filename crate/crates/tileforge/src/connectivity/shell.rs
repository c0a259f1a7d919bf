//! Connectivity certificate for the digit set of a single Jordan block.
//!
//! The digits of a `k x k` Jordan block with eigenvalue `λ` (|λ| ≥ 2) fill
//! a slab around the origin: an inner box whose integer points are all
//! digits, plus a thin shell hugging it. The certificate verifies, by
//! finite enumeration, the three facts the connectivity argument needs:
//!
//! 1. every integer point of the inner box is a digit, and every digit
//!    lies in the open outer box;
//! 2. every shell digit is within taxicab distance one of the inner box;
//! 3. the digit set is connected under unit steps.
//!
//! Boxes are measured on the first `k-1` coordinates; the last coordinate
//! of any digit always lies in `λ·(-1/2,1/2]`, which both boxes share.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::digitset::{block_digit_set, enumerate_box, DigitSet};
use crate::error::{Result, TileError};
use crate::ratmath::{IntMatrix, IntVector};

/// Finite connectivity certificate for one Jordan block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellCertificate {
    pub eigenvalue: BigInt,
    pub size: usize,
    pub digits: DigitSet,
    /// Digits inside the inner box.
    pub interior_count: usize,
    /// Digits outside the inner box, sorted.
    pub shell: Vec<IntVector>,
    pub inner_covered: bool,
    pub shell_adjacent: bool,
    pub digits_connected: bool,
}

impl ShellCertificate {
    pub fn passes(&self) -> bool {
        self.inner_covered && self.shell_adjacent && self.digits_connected
    }
}

/// Inclusive integer range of the last coordinate, `λ·(-1/2,1/2] ∩ Z`.
fn last_coordinate_range(eigenvalue: &BigInt) -> (BigInt, BigInt) {
    let two = BigInt::from(2);
    if eigenvalue.is_positive() {
        // -λ < 2z <= λ
        let hi = eigenvalue.div_floor(&two);
        let lo = -((eigenvalue - 1u8).div_floor(&two));
        (lo, hi)
    } else {
        // λ <= 2z < -λ
        let lo = -(-eigenvalue).div_floor(&two);
        let hi = (-eigenvalue - 1u8).div_floor(&two);
        (lo, hi)
    }
}

fn in_inner_box(z: &[BigInt], eigenvalue: &BigInt, last: &(BigInt, BigInt)) -> bool {
    let size = z.len();
    let side = eigenvalue.abs() - 1u8;
    let leading = z[..size - 1].iter().all(|c| c.abs() * 2 <= side);
    leading && last.0 <= z[size - 1] && z[size - 1] <= last.1
}

/// Builds and checks the certificate for the block `J(λ, k)`.
///
/// Fails with [`TileError::CertificateFailure`] naming the first check
/// that does not hold; `|λ| < 2` is rejected up front.
pub fn shell_certificate(eigenvalue: &BigInt, size: usize) -> Result<ShellCertificate> {
    let digits = block_digit_set(eigenvalue, size)?;
    let abs = eigenvalue.abs();
    let last = last_coordinate_range(eigenvalue);

    // Check 1a: inner box integer points are all digits.
    let inner_side = (&abs - 1u8).div_floor(&BigInt::from(2));
    let mut ranges: Vec<(BigInt, BigInt)> = vec![(-inner_side.clone(), inner_side.clone()); size - 1];
    ranges.push(last.clone());
    let inner_points = enumerate_box(&ranges);
    let covered = inner_points.iter().all(|p| digits.contains(p));
    // Check 1b: digits stay inside the open outer box.
    let outer_ok = digits.digits().iter().all(|d| {
        let leading = d[..size - 1].iter().all(|c| c.abs() * 2 < &abs + 1u8);
        leading && last.0 <= d[size - 1] && d[size - 1] <= last.1
    });
    let inner_covered = covered && outer_ok;

    let shell: Vec<IntVector> = digits
        .digits()
        .iter()
        .filter(|d| !in_inner_box(d, eigenvalue, &last))
        .cloned()
        .collect();
    let interior_count = digits.len() - shell.len();

    // Check 2: shell digits touch the inner box (taxicab distance <= 1,
    // doubled to stay in integers).
    let side = &abs - 1u8;
    let shell_adjacent = shell.iter().all(|s| {
        let overshoot: BigInt = s[..size - 1]
            .iter()
            .map(|c| {
                let d: BigInt = c.abs() * 2u8 - &side;
                if d.is_positive() {
                    d
                } else {
                    BigInt::zero()
                }
            })
            .sum();
        overshoot <= BigInt::from(2)
    });

    // Check 3: unit-step connectivity of the whole digit set.
    let steps = IntMatrix::identity(size).columns();
    let digits_connected = super::graph::is_b_connected(digits.digits(), &steps).connected;

    let cert = ShellCertificate {
        eigenvalue: eigenvalue.clone(),
        size,
        digits,
        interior_count,
        shell,
        inner_covered,
        shell_adjacent,
        digits_connected,
    };
    let failed = if !cert.inner_covered {
        Some("inner-cover")
    } else if !cert.shell_adjacent {
        Some("shell-adjacency")
    } else if !cert.digits_connected {
        Some("connectivity")
    } else {
        None
    };
    match failed {
        Some(check) => Err(TileError::CertificateFailure {
            check,
            eigenvalue: eigenvalue.clone(),
            size,
        }),
        None => Ok(cert),
    }
}
