//! Digit sets for self-affine tiles.
//!
//! The centered canonical digit set of a dilation `A` is
//! `D_A = A(-1/2,1/2]^m ∩ Z^m`: one representative of every coset of
//! `A·Z^m` in `Z^m`, chosen inside the centered half-open parallelepiped.
//! Membership of an integer `z` is decided without fractions: with
//! `w = adj(A)·z` the condition `A^{-1}z ∈ (-1/2,1/2]^m` becomes
//! `-det < 2w_i <= det` coordinatewise (inequalities flipped for negative
//! determinant), which is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, TileError};
use crate::exec::{self, ExecMode};
use crate::ratmath::{rat, IntMatrix, IntVector, RatVector, Rational};

/// How a digit set was constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `A(-1/2,1/2]^m ∩ Z^m` for the recorded matrix.
    CenteredCanonical { matrix: IntMatrix },
    /// Centered canonical set of a single Jordan block.
    Block { eigenvalue: BigInt, size: usize },
    /// Cartesian product of block digit sets, coordinates concatenated.
    Product { parts: Vec<Provenance> },
    /// Image of another digit set under an integer map.
    Mapped {
        map: IntMatrix,
        source: Box<Provenance>,
    },
}

impl Provenance {
    /// Short tag used in reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::CenteredCanonical { .. } => "centered-canonical",
            Provenance::Block { .. } => "block",
            Provenance::Product { .. } => "product",
            Provenance::Mapped { .. } => "mapped",
        }
    }
}

/// Finite set of integer digit vectors, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSet {
    dim: usize,
    digits: Vec<IntVector>,
    provenance: Provenance,
}

impl DigitSet {
    pub(crate) fn from_sorted(dim: usize, digits: Vec<IntVector>, provenance: Provenance) -> Self {
        debug_assert!(digits.windows(2).all(|w| w[0] < w[1]), "digits not sorted");
        debug_assert!(digits.iter().all(|d| d.len() == dim));
        DigitSet {
            dim,
            digits,
            provenance,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[IntVector] {
        &self.digits
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.digits.binary_search_by(|d| d.as_slice().cmp(v)).is_ok()
    }

    /// All pairwise differences `d' - d`, deduplicated and sorted.
    pub fn differences(&self) -> Vec<IntVector> {
        let mut out = Vec::with_capacity(self.digits.len() * self.digits.len());
        for a in &self.digits {
            for b in &self.digits {
                out.push(crate::ratmath::vec_sub(a, b));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// One digit per line, coordinates comma-separated, lexicographic order.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for d in &self.digits {
            let row: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// Exact membership tests for the image of the centered unit cube under
/// an integer matrix `M` with nonzero determinant.
///
/// With `w = adj(M)·z`, `M^{-1}z` lands in the cube exactly when every
/// `2w_i` lies in the determinant-scaled interval, so both variants run
/// entirely on integers.
#[derive(Debug, Clone)]
pub struct CubeImage {
    adj: IntMatrix,
    det: BigInt,
}

impl CubeImage {
    pub fn new(m: &IntMatrix) -> Result<Self> {
        let det = m.det()?;
        if det.is_zero() {
            return Err(TileError::Singular);
        }
        Ok(CubeImage {
            adj: m.adjugate()?,
            det,
        })
    }

    /// `z ∈ M(-1/2,1/2]^m`.
    pub fn contains_half_open(&self, z: &[BigInt]) -> bool {
        let w = self.adj.mul_vec(z);
        if self.det.is_positive() {
            w.iter().all(|wi| {
                let d = wi * 2;
                -&self.det < d && d <= self.det
            })
        } else {
            w.iter().all(|wi| {
                let d = wi * 2;
                self.det <= d && d < -&self.det
            })
        }
    }

    /// `z ∈ M[-1/2,1/2]^m`.
    pub fn contains_closed(&self, z: &[BigInt]) -> bool {
        let bound = self.det.abs();
        self.adj
            .mul_vec(z)
            .iter()
            .all(|wi| (wi * 2u8).abs() <= bound)
    }
}

/// Centered canonical digit set of a matrix with nonzero determinant.
pub fn centered_digit_set(a: &IntMatrix) -> Result<DigitSet> {
    centered_digit_set_with(ExecMode::default(), a)
}

pub fn centered_digit_set_with(mode: ExecMode, a: &IntMatrix) -> Result<DigitSet> {
    if !a.is_square() {
        return Err(TileError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let image = CubeImage::new(a)?;
    // Coordinate i of any member is bounded by (row sum + 1)/2.
    let ranges: Vec<(BigInt, BigInt)> = a
        .row_abs_sums()
        .iter()
        .map(|s| {
            let b = (s + BigInt::one()).div_floor(&BigInt::from(2));
            (-b.clone(), b)
        })
        .collect();
    let candidates = enumerate_box(&ranges);
    let mut digits = exec::filter_map_collect(mode, &candidates, |z| {
        if image.contains_half_open(z) {
            Some(z.clone())
        } else {
            None
        }
    });
    digits.sort();
    let expected = a.det()?.abs();
    assert_eq!(
        BigInt::from(digits.len()),
        expected,
        "centered digit set has wrong cardinality for {:?}",
        a
    );
    Ok(DigitSet::from_sorted(
        a.rows(),
        digits,
        Provenance::CenteredCanonical { matrix: a.clone() },
    ))
}

/// Witness for a failed complete-residue-system check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueWitness {
    Cardinality { expected: BigInt, actual: usize },
    SharedResidue { first: IntVector, second: IntVector },
}

/// Result of [`is_complete_residue_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCheck {
    pub complete: bool,
    pub witness: Option<ResidueWitness>,
}

/// Checks that `digits` represents every coset of `A·Z^m` exactly once.
///
/// Two digits collide exactly when `A^{-1}(d - d')` is integral, i.e. when
/// `adj(A)·d ≡ adj(A)·d' (mod det A)` coordinatewise.
pub fn is_complete_residue_system(a: &IntMatrix, digits: &DigitSet) -> ResidueCheck {
    let det = match a.det() {
        Ok(d) => d,
        Err(_) => {
            return ResidueCheck {
                complete: false,
                witness: Some(ResidueWitness::Cardinality {
                    expected: BigInt::zero(),
                    actual: digits.len(),
                }),
            }
        }
    };
    let expected = det.abs();
    if det.is_zero() || BigInt::from(digits.len()) != expected {
        return ResidueCheck {
            complete: false,
            witness: Some(ResidueWitness::Cardinality {
                expected,
                actual: digits.len(),
            }),
        };
    }
    let adj = a.adjugate().expect("nonsingular by the det check");
    let modulus = expected;
    let mut seen: std::collections::BTreeMap<Vec<BigInt>, usize> = std::collections::BTreeMap::new();
    for (idx, d) in digits.digits().iter().enumerate() {
        let class: Vec<BigInt> = adj
            .mul_vec(d)
            .into_iter()
            .map(|w| w.mod_floor(&modulus))
            .collect();
        if let Some(&prev) = seen.get(&class) {
            return ResidueCheck {
                complete: false,
                witness: Some(ResidueWitness::SharedResidue {
                    first: digits.digits()[prev].clone(),
                    second: d.clone(),
                }),
            };
        }
        seen.insert(class, idx);
    }
    ResidueCheck {
        complete: true,
        witness: None,
    }
}

/// Centered canonical digit set of a single Jordan block.
pub fn block_digit_set(eigenvalue: &BigInt, size: usize) -> Result<DigitSet> {
    if eigenvalue.abs() < BigInt::from(2) {
        return Err(TileError::NotDilation {
            eigenvalue: eigenvalue.clone(),
        });
    }
    assert!(size > 0, "empty Jordan block");
    let block = IntMatrix::jordan_block(eigenvalue, size);
    let set = centered_digit_set(&block)?;
    Ok(DigitSet::from_sorted(
        size,
        set.digits,
        Provenance::Block {
            eigenvalue: eigenvalue.clone(),
            size,
        },
    ))
}

/// Cartesian product with coordinates concatenated in argument order.
pub fn product_digit_set(parts: &[DigitSet]) -> DigitSet {
    let dim = parts.iter().map(|p| p.dim()).sum();
    let mut digits: Vec<IntVector> = vec![Vec::new()];
    for part in parts {
        let mut next = Vec::with_capacity(digits.len() * part.len());
        for prefix in &digits {
            for d in part.digits() {
                let mut v = prefix.clone();
                v.extend(d.iter().cloned());
                next.push(v);
            }
        }
        digits = next;
    }
    DigitSet::from_sorted(
        dim,
        digits,
        Provenance::Product {
            parts: parts.iter().map(|p| p.provenance.clone()).collect(),
        },
    )
}

/// Image of a digit set under an invertible integer map.
pub fn map_digit_set(map: &IntMatrix, source: &DigitSet) -> DigitSet {
    assert_eq!(map.cols(), source.dim(), "map dimension mismatch");
    let mut digits: Vec<IntVector> = source.digits().iter().map(|d| map.mul_vec(d)).collect();
    digits.sort();
    digits.dedup();
    assert_eq!(
        digits.len(),
        source.len(),
        "digit map collapsed digits; map not injective"
    );
    DigitSet::from_sorted(
        map.rows(),
        digits,
        Provenance::Mapped {
            map: map.clone(),
            source: Box::new(source.provenance.clone()),
        },
    )
}

/// The `2^k` corners of the centered parallelepiped of a Jordan block:
/// `(1/2)(λε_1+ε_2, ..., λε_{k-1}+ε_k, λε_k)` over sign vectors `ε`,
/// with `ε = +1` enumerated before `ε = -1`, first coordinate outermost.
pub fn parallelepiped_corners(eigenvalue: &BigInt, size: usize) -> Vec<RatVector> {
    assert!(size > 0);
    let lambda = Rational::from_integer(eigenvalue.clone());
    let half = rat(1, 2);
    let signs = [Rational::one(), -Rational::one()];
    let mut corners = Vec::with_capacity(1 << size);
    let mut eps = vec![0usize; size];
    loop {
        let corner: RatVector = (0..size)
            .map(|j| {
                let lead = &lambda * &signs[eps[j]];
                let tail = if j + 1 < size {
                    signs[eps[j + 1]].clone()
                } else {
                    Rational::zero()
                };
                (lead + tail) * &half
            })
            .collect();
        corners.push(corner);
        let mut i = size;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if eps[i] == 0 {
                eps[i] = 1;
                eps.iter_mut().skip(i + 1).for_each(|e| *e = 0);
                break true;
            }
        };
        if !advanced {
            return corners;
        }
    }
}

/// All integer points in the closed box given by inclusive ranges,
/// in lexicographic order.
pub(crate) fn enumerate_box(ranges: &[(BigInt, BigInt)]) -> Vec<IntVector> {
    let mut total: u128 = 1;
    for (lo, hi) in ranges {
        if hi < lo {
            return Vec::new();
        }
        let width = (hi - lo + BigInt::one())
            .to_u128()
            .expect("box side out of range");
        total = total
            .checked_mul(width)
            .expect("integer box overflows the candidate counter");
    }
    assert!(total <= 1 << 28, "integer box too large to enumerate");
    let mut out = Vec::with_capacity(total as usize);
    let mut cur: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    loop {
        out.push(cur.clone());
        let mut i = ranges.len();
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                for j in i + 1..ranges.len() {
                    cur[j] = ranges[j].0.clone();
                }
                break true;
            }
        };
        if !advanced {
            return out;
        }
    }
}
