//! Integer Jordan decomposition.
//!
//! For a matrix with integer spectrum this produces integer `J` and `P` with
//! `A·P = P·J`, `J` the Jordan form. `P` is canonical and reproducible:
//! chains are picked top-down from deterministic kernel bases (a vector in
//! `ker (A-λI)^k` outside `ker (A-λI)^{k-1}` plus the taller chains, mapped
//! down by `A-λI`), each chain is scaled by one common rational so its
//! entries are integers with gcd one, and the sign makes the first nonzero
//! entry of the chain's eigenvector positive. Blocks are ordered by ascending
//! eigenvalue, then descending size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TileError};
use crate::ratmath::{denominator_lcm, IntMatrix, IntVector, RatMatrix, RatVector, Rational};
use crate::spectrum::integer_eigenvalues;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: BigInt,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub j: IntMatrix,
    pub p: IntMatrix,
    pub blocks: Vec<JordanBlock>,
}

pub fn jordan_decompose(a: &IntMatrix) -> Result<JordanDecomposition> {
    if !a.is_square() {
        return Err(TileError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let m = a.rows();
    let eigen = integer_eigenvalues(a)?;
    let ar = a.to_rational();

    let mut blocks = Vec::new();
    let mut p_columns: Vec<IntVector> = Vec::new();

    for (lambda, mult) in &eigen.eigenvalues {
        let shift = RatMatrix::identity(m).scale(&Rational::from_integer(lambda.clone()));
        let n = ar.sub(&shift);

        // Kernels of N^0, N^1, ... until the dimension reaches the algebraic
        // multiplicity; the index where it does is the tallest block size.
        let mut power = RatMatrix::identity(m);
        let mut kernels: Vec<Vec<RatVector>> = vec![Vec::new()];
        let mut dims = vec![0usize];
        while *dims.last().unwrap() < *mult {
            power = power.mul(&n);
            let basis = power.kernel_basis();
            assert!(
                basis.len() > *dims.last().unwrap(),
                "generalized eigenspace stopped growing before reaching multiplicity"
            );
            dims.push(basis.len());
            kernels.push(basis);
        }
        let tallest = dims.len() - 1;

        // Chains, tallest first; each stored bottom-up (eigenvector first).
        let mut chains: Vec<Vec<RatVector>> = Vec::new();
        for height in (1..=tallest).rev() {
            let taller = chains.iter().filter(|c| c.len() > height).count();
            let want = dims[height] - dims[height - 1] - taller;
            if want == 0 {
                continue;
            }
            let mut covered: Vec<RatVector> = kernels[height - 1].clone();
            covered.extend(
                chains
                    .iter()
                    .filter(|c| c.len() > height)
                    .map(|c| c[height - 1].clone()),
            );
            let mut picked = 0;
            for cand in &kernels[height] {
                if picked == want {
                    break;
                }
                if !extends_span(&covered, cand) {
                    continue;
                }
                let mut down = vec![cand.clone()];
                for _ in 1..height {
                    let next = n.mul_vec(down.last().unwrap());
                    down.push(next);
                }
                down.reverse();
                covered.push(cand.clone());
                chains.push(down);
                picked += 1;
            }
            assert_eq!(picked, want, "chain selection incomplete");
        }

        for chain in &chains {
            blocks.push(JordanBlock {
                eigenvalue: lambda.clone(),
                size: chain.len(),
            });
            p_columns.extend(integerize_chain(chain));
        }
    }

    let mut j = IntMatrix::zero(m, m);
    let mut offset = 0;
    for b in &blocks {
        let block = IntMatrix::jordan_block(&b.eigenvalue, b.size);
        for i in 0..b.size {
            for k in 0..b.size {
                j.set(offset + i, offset + k, block.at(i, k).clone());
            }
        }
        offset += b.size;
    }
    let mut p = IntMatrix::zero(m, m);
    for (col, v) in p_columns.iter().enumerate() {
        for (row, x) in v.iter().enumerate() {
            p.set(row, col, x.clone());
        }
    }

    let dec = JordanDecomposition { j, p, blocks };
    assert!(
        verify_similarity(a, &dec),
        "jordan decomposition failed its own certificate"
    );
    Ok(dec)
}

/// Exact certificate: `A·P = P·J` and `P` invertible.
pub fn verify_similarity(a: &IntMatrix, dec: &JordanDecomposition) -> bool {
    if !a.is_square() || dec.p.rows() != a.rows() || dec.j.rows() != a.rows() {
        return false;
    }
    match dec.p.det() {
        Ok(d) if !d.is_zero() => a.mul(&dec.p) == dec.p.mul(&dec.j),
        _ => false,
    }
}

/// True when `cand` is outside the span of `covered`.
fn extends_span(covered: &[RatVector], cand: &RatVector) -> bool {
    if covered.is_empty() {
        return !cand.iter().all(Zero::is_zero);
    }
    let cols = cand.len();
    let mut data = Vec::with_capacity((covered.len() + 1) * cols);
    for row in covered {
        data.extend(row.iter().cloned());
    }
    data.extend(cand.iter().cloned());
    let with = RatMatrix::new(covered.len() + 1, cols, data).rank();
    let mut base_data = Vec::with_capacity(covered.len() * cols);
    for row in covered {
        base_data.extend(row.iter().cloned());
    }
    let base = RatMatrix::new(covered.len(), cols, base_data).rank();
    with > base
}

/// Scales a whole chain by one rational so entries become integers with
/// gcd one and the eigenvector's first nonzero entry is positive.
fn integerize_chain(chain: &[RatVector]) -> Vec<IntVector> {
    let all: Vec<Rational> = chain.iter().flatten().cloned().collect();
    let lcm = denominator_lcm(&all);
    let scale = Rational::from_integer(lcm);
    let mut ints: Vec<IntVector> = chain
        .iter()
        .map(|v| v.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();
    let content = ints
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content > BigInt::one() {
        for v in ints.iter_mut() {
            for x in v.iter_mut() {
                *x = &*x / &content;
            }
        }
    }
    let flip = ints[0]
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if flip {
        for v in ints.iter_mut() {
            for x in v.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn canonical_shear() {
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]));
        assert_eq!(dec.p, IntMatrix::from_rows(&[vec![10, 0], vec![0, 1]]));
        assert_eq!(
            dec.blocks,
            vec![JordanBlock {
                eigenvalue: big(3),
                size: 2
            }]
        );
    }

    #[test]
    fn alternative_similarity_witness_accepted() {
        // Any P with A·P = P·J and det != 0 passes the certificate.
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let dec = JordanDecomposition {
            j: IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]),
            p: IntMatrix::from_rows(&[vec![10, 10], vec![0, 1]]),
            blocks: vec![JordanBlock {
                eigenvalue: big(3),
                size: 2,
            }],
        };
        assert!(verify_similarity(&a, &dec));
    }

    #[test]
    fn singular_p_rejected() {
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let dec = JordanDecomposition {
            j: IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]),
            p: IntMatrix::zero(2, 2),
            blocks: vec![],
        };
        assert!(!verify_similarity(&a, &dec));
    }

    #[test]
    fn diagonal_stays_diagonal() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, a);
        assert_eq!(dec.p, IntMatrix::identity(2));
    }

    #[test]
    fn symmetric_split() {
        let a = IntMatrix::from_rows(&[vec![4, 1], vec![1, 4]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, IntMatrix::from_rows(&[vec![3, 0], vec![0, 5]]));
        assert_eq!(dec.p, IntMatrix::from_rows(&[vec![1, 1], vec![-1, 1]]));
    }

    #[test]
    fn blocks_sorted_by_eigenvalue_then_size() {
        // Jordan matrix with blocks (2,2) and (3,1) decomposes to itself.
        let a = IntMatrix::from_rows(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, a);
        assert_eq!(dec.p, IntMatrix::identity(3));
        assert_eq!(
            dec.blocks,
            vec![
                JordanBlock {
                    eigenvalue: big(2),
                    size: 2
                },
                JordanBlock {
                    eigenvalue: big(3),
                    size: 1
                },
            ]
        );
    }

    #[test]
    fn one_dimensional() {
        let a = IntMatrix::from_rows(&[vec![-2]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, a);
        assert_eq!(dec.p, IntMatrix::identity(1));
    }

    #[test]
    fn repeated_eigenvalue_two_blocks() {
        // 2*I has two 1x1 blocks and P = I.
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, a);
        assert_eq!(dec.p, IntMatrix::identity(2));
        assert_eq!(dec.blocks.len(), 2);
    }

    #[test]
    fn irrational_spectrum_propagates() {
        let a = IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]);
        assert!(matches!(
            jordan_decompose(&a),
            Err(TileError::NotRationalSpectrum { .. })
        ));
    }

    #[test]
    fn mixed_negative_blocks() {
        // Conjugated matrix with eigenvalues -2 and 3.
        let a = IntMatrix::from_rows(&[vec![-2, 5], vec![0, 3]]);
        let dec = jordan_decompose(&a).unwrap();
        assert_eq!(dec.j, IntMatrix::from_rows(&[vec![-2, 0], vec![0, 3]]));
        assert!(verify_similarity(&a, &dec));
    }
}
