//! Integer eigenvalue extraction and the dilation test.
//!
//! A matrix is in scope when its characteristic polynomial splits over the
//! integers; any rational eigenvalue of an integer matrix is an integer, so
//! trial division of the constant coefficient finds every candidate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TileError};
use crate::ratmath::IntMatrix;

/// Integer spectrum of a matrix: characteristic polynomial (ascending
/// coefficients, monic) and eigenvalues with algebraic multiplicities,
/// sorted by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenStructure {
    pub char_poly: Vec<BigInt>,
    pub eigenvalues: Vec<(BigInt, usize)>,
}

impl EigenStructure {
    /// Total multiplicity, equal to the dimension when the spectrum is integral.
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|(_, m)| m).sum()
    }
}

/// Factors the characteristic polynomial into integer roots.
///
/// Errors with `NotRationalSpectrum` when a non-linear integer factor
/// remains after all integer roots are removed.
pub fn integer_eigenvalues(a: &IntMatrix) -> Result<EigenStructure> {
    let char_poly = a.char_poly()?;
    let mut p = char_poly.clone();

    let mut eigenvalues: Vec<(BigInt, usize)> = Vec::new();

    // Zero roots first: strip the x^k factor.
    let mut zero_mult = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        eigenvalues.push((BigInt::zero(), zero_mult));
    }

    if p.len() > 1 {
        let constant = p[0].abs();
        for d in divisors_ascending(&constant) {
            for cand in [d.clone(), -d] {
                let mut mult = 0;
                while p.len() > 1 && eval(&p, &cand).is_zero() {
                    p = deflate(&p, &cand);
                    mult += 1;
                }
                if mult > 0 {
                    eigenvalues.push((cand, mult));
                }
            }
        }
    }

    if p.len() > 1 {
        return Err(TileError::NotRationalSpectrum {
            residual_degree: p.len() - 1,
        });
    }

    eigenvalues.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(EigenStructure {
        char_poly,
        eigenvalues,
    })
}

/// Result of the expansion test: every eigenvalue must have modulus at least
/// two. `offending` carries the first failing eigenvalue by value order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationCheck {
    pub dilation: bool,
    pub offending: Option<BigInt>,
    pub eigen: EigenStructure,
}

pub fn is_dilation(a: &IntMatrix) -> Result<DilationCheck> {
    let eigen = integer_eigenvalues(a)?;
    let offending = eigen
        .eigenvalues
        .iter()
        .map(|(l, _)| l)
        .find(|l| l.abs() < BigInt::from(2))
        .cloned();
    Ok(DilationCheck {
        dilation: offending.is_none(),
        offending,
        eigen,
    })
}

/// Horner evaluation of an ascending-coefficient polynomial.
fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Synthetic division by `(x - root)`; the remainder must be zero.
fn deflate(p: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + root * &carry;
        q[k] = carry.clone();
    }
    debug_assert!((&p[0] + root * carry).is_zero());
    q
}

/// Positive divisors of `n > 0`, ascending.
fn divisors_ascending(n: &BigInt) -> Vec<BigInt> {
    debug_assert!(n.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let q = n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
