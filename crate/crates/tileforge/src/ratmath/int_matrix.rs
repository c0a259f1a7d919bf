//! Dense integer matrices with exact, fraction-free algorithms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat_matrix::RatMatrix;
use super::rational::{IntVector, Rational};
use crate::error::{Result, TileError};

/// Row-major matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    /// Builds from row slices of machine integers; handy in tests and the CLI.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(r, c, data)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Single Jordan block: `lambda` on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(lambda: &BigInt, size: usize) -> Self {
        let mut m = IntMatrix::zero(size, size);
        for i in 0..size {
            m.set(i, i, lambda.clone());
            if i + 1 < size {
                m.set(i, i + 1, BigInt::one());
            }
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

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, e: usize) -> IntMatrix {
        assert!(self.is_square());
        let mut out = IntMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
    }

    /// Row-sum bound `sum_j |a_ij|` for each row.
    pub fn row_abs_sums(&self) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).abs()).sum())
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination; every intermediate
    /// division is exact.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(TileError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Coefficients of `det(xI - M)` in ascending degree order; the leading
    /// coefficient (index `n`) is one. Uses the Faddeev-LeVerrier recurrence,
    /// whose divisions are exact over the integers.
    pub fn char_poly(&self) -> Result<Vec<BigInt>> {
        if !self.is_square() {
            return Err(TileError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut aux = IntMatrix::identity(n);
        for k in 1..=n {
            let m = self.mul(&aux);
            let trace: BigInt = (0..n).map(|i| m.at(i, i).clone()).sum();
            let c = -trace / BigInt::from(k as u64);
            coeffs[n - k] = c.clone();
            aux = m;
            for i in 0..n {
                let v = aux.at(i, i) + &c;
                aux.set(i, i, v);
            }
        }
        Ok(coeffs)
    }

    /// Adjugate matrix: `adj(M) = det(M) * M^{-1}`, integer for integer `M`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(TileError::Singular);
        }
        let inv = self.to_rational().inverse()?;
        let det_rat = Rational::from_integer(det);
        let n = self.rows;
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = inv.at(i, j) * &det_rat;
                debug_assert!(v.is_integer());
                out.set(i, j, v.to_integer());
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[")?;
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

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Vector sum.
pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Vector difference.
pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Vector negation.
pub fn vec_neg(a: &[BigInt]) -> IntVector {
    a.iter().map(|x| -x).collect()
}

/// Max-norm of an integer vector.
pub fn vec_inf_norm(a: &[BigInt]) -> BigInt {
    a.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}
