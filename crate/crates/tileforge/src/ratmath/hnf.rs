//! Column-style Hermite normal form.
//!
//! A full-rank sublattice of `Z^m` gets a unique lower-triangular basis
//! matrix with positive diagonal in which every entry left of the diagonal is
//! reduced modulo the diagonal entry of its row. Lattice equality is then
//! plain matrix equality, which is what the fixed-point iteration in the
//! lattice module relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::int_matrix::IntMatrix;
use crate::error::{Result, TileError};

/// Canonical basis of the lattice generated by `generators` inside `Z^dim`.
///
/// Columns of the result form the basis. Errors with `RankDeficient` when the
/// generators do not span a finite-index sublattice.
pub fn hermite_basis(dim: usize, generators: &[Vec<BigInt>]) -> Result<IntMatrix> {
    for g in generators {
        assert_eq!(g.len(), dim, "generator dimension mismatch");
    }
    let mut cols: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|g| !g.iter().all(Zero::is_zero))
        .cloned()
        .collect();
    let mut pivot_cols: Vec<Vec<BigInt>> = Vec::with_capacity(dim);

    for row in 0..dim {
        // Combine columns until at most one has a nonzero entry at `row`.
        let mut acc: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(cols.len());
        for col in cols.drain(..) {
            if col[row].is_zero() {
                rest.push(col);
                continue;
            }
            acc = Some(match acc {
                None => col,
                Some(prev) => {
                    let (merged, reduced) = gcd_combine(&prev, &col, row);
                    if !reduced.iter().all(Zero::is_zero) {
                        rest.push(reduced);
                    }
                    merged
                }
            });
        }
        cols = rest;
        match acc {
            Some(p) => pivot_cols.push(p),
            None => {
                return Err(TileError::RankDeficient {
                    rank: pivot_cols.len(),
                    dim,
                })
            }
        }
    }

    // Positive diagonal.
    for (i, col) in pivot_cols.iter_mut().enumerate() {
        if col[i].is_negative() {
            for x in col.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    // Reduce entries left of each diagonal into [0, diagonal).
    for i in 0..dim {
        let (left, right) = pivot_cols.split_at_mut(i);
        let col_i = &right[0];
        for col_j in left.iter_mut() {
            let q = col_j[i].div_floor(&col_i[i]);
            if q.is_zero() {
                continue;
            }
            for r in i..dim {
                col_j[r] -= &q * &col_i[r];
            }
        }
    }

    let mut basis = IntMatrix::zero(dim, dim);
    for (j, col) in pivot_cols.iter().enumerate() {
        for i in 0..dim {
            basis.set(i, j, col[i].clone());
        }
    }
    Ok(basis)
}

/// Integer coordinates of `z` in the column basis `basis` (lower triangular),
/// or `None` when `z` is outside the lattice.
pub fn hermite_coordinates(basis: &IntMatrix, z: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = basis.rows();
    debug_assert_eq!(z.len(), n);
    let mut coords = vec![BigInt::zero(); n];
    for i in 0..n {
        let mut rem = z[i].clone();
        for (j, c) in coords.iter().enumerate().take(i) {
            rem -= basis.at(i, j) * c;
        }
        let (q, r) = rem.div_rem(basis.at(i, i));
        if !r.is_zero() {
            return None;
        }
        coords[i] = q;
    }
    Some(coords)
}

/// Column operations zeroing `b[row]` into `a[row]`: returns
/// `(x*a + y*b, (a[row]/g)*b - (b[row]/g)*a)` where `g = gcd` via Bezout.
fn gcd_combine(a: &[BigInt], b: &[BigInt], row: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let e = a[row].extended_gcd(&b[row]);
    let (g, x, y) = (e.gcd, e.x, e.y);
    let ag = &a[row] / &g;
    let bg = &b[row] / &g;
    let merged: Vec<BigInt> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| &x * ai + &y * bi)
        .collect();
    let reduced: Vec<BigInt> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| &ag * bi - &bg * ai)
        .collect();
    debug_assert_eq!(merged[row], g);
    debug_assert!(reduced[row].is_zero());
    (merged, reduced)
}
