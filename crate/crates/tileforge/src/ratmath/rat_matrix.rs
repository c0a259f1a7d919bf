//! Dense rational matrices: exact inverses, reduced row echelon form,
//! canonical kernel bases, and linear solving.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{RatVector, Rational};
use crate::error::{Result, TileError};

/// Row-major matrix over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_int_vec(&self, v: &[BigInt]) -> RatVector {
        let rv: Vec<Rational> = v
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        self.mul_vec(&rv)
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|a| a * c).collect(),
        )
    }

    /// Max row-sum norm `max_i sum_j |a_ij|`.
    pub fn row_sum_norm(&self) -> Rational {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).abs())
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Determinant: rows are scaled to integers, a fraction-free integer
    /// elimination runs, and the scaling is divided back out.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(TileError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scaled = Vec::with_capacity(n);
        let mut scale = BigInt::one();
        for i in 0..n {
            let row: Vec<Rational> = (0..n).map(|j| self.at(i, j).clone()).collect();
            let l = super::rational::denominator_lcm(&row);
            scaled.push(
                row.iter()
                    .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                    .collect::<Vec<BigInt>>(),
            );
            scale *= l;
        }
        let flat: Vec<BigInt> = scaled.into_iter().flatten().collect();
        let int_det = super::int_matrix::IntMatrix::new(n, n, flat).det()?;
        Ok(Rational::new(int_det, scale))
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(TileError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work.at(r, col).is_zero())
                .ok_or(TileError::Singular)?;
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = work.at(col, col).clone();
            work.scale_row(col, &p.recip());
            inv.scale_row(col, &p.recip());
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = work.at(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                work.sub_scaled_row(r, col, &f);
                inv.sub_scaled_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                self.swap_rows(p, row);
            }
            let inv = self.at(row, col).clone().recip();
            self.scale_row(row, &inv);
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.at(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                self.sub_scaled_row(r, row, &f);
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// Canonical kernel basis: for each free column, the solution with that
    /// free variable set to one and the others to zero, in ascending free
    /// column order. The zero matrix thus yields the standard basis.
    pub fn kernel_basis(&self) -> Vec<RatVector> {
        let mut work = self.clone();
        let pivots = work.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work.at(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `M x = b` exactly. Returns the particular solution with all
    /// free variables zero together with the canonical kernel basis.
    pub fn solve(&self, b: &[Rational]) -> Result<(RatVector, Vec<RatVector>)> {
        if b.len() != self.rows {
            return Err(TileError::Dimension {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(TileError::NoSolution);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Ok((x, self.kernel_basis()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.at(r, j) * c;
            self.set(r, j, v);
        }
    }

    /// `row_r -= f * row_src`
    fn sub_scaled_row(&mut self, r: usize, src: usize, f: &Rational) {
        for j in 0..self.cols {
            let v = self.at(r, j) - f * self.at(src, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}
