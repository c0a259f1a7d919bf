//! Exact finite approximations of the attractor.
//!
//! The attractor of `(A, D)` is the set of sums `Σ_{j≥1} A^{-j} d_j` over
//! digit sequences. Truncating at depth `n` gives the point cloud
//! `{Σ_{j=1}^n A^{-j} d_j}`, which covers the attractor to within a
//! computable gap. The recursion runs on adjugate-scaled integers so no
//! rational reduction happens until the end.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::digitset::DigitSet;
use crate::error::{Result, TileError};
use crate::exec::{self, ExecMode};
use crate::ratmath::{rat_int, IntMatrix, IntVector, RatVector, Rational};

/// Cap on the search for a contracting power of `A^{-1}`.
const MAX_CONTRACTION_POWER: usize = 256;

/// Upper bound on the attractor diameter in the max norm.
///
/// With `q = ‖A^{-k}‖ < 1` for the smallest such `k`, every attractor
/// point is bounded by `max_d ‖d‖ · Σ_{j=1}^k ‖A^{-j}‖ / (1 - q)`, and the
/// diameter by twice that.
pub fn diameter_bound(a: &IntMatrix, digits: &DigitSet) -> Result<Rational> {
    let inv = a.to_rational().inverse()?;
    let one = rat_int(1);
    let mut power = inv.clone();
    let mut partial_sum = power.row_sum_norm();
    let mut steps = 1;
    while power.row_sum_norm() >= one {
        if steps >= MAX_CONTRACTION_POWER {
            return Err(TileError::NonConvergence {
                iterations: MAX_CONTRACTION_POWER,
            });
        }
        power = power.mul(&inv);
        partial_sum += power.row_sum_norm();
        steps += 1;
    }
    let max_digit = digits
        .digits()
        .iter()
        .map(|d| crate::ratmath::vec_inf_norm(d))
        .max()
        .unwrap_or_else(BigInt::zero);
    let radius = Rational::from_integer(max_digit) * partial_sum / (one - power.row_sum_norm());
    Ok(radius * rat_int(2))
}

/// Distance bound between the depth-`n` cloud and the full attractor:
/// every attractor point is within this of some cloud point (max norm).
pub fn gap_bound(a: &IntMatrix, digits: &DigitSet, depth: usize) -> Result<Rational> {
    let diameter = diameter_bound(a, digits)?;
    let inv = a.to_rational().inverse()?;
    let mut power = crate::ratmath::RatMatrix::identity(a.rows());
    for _ in 0..depth {
        power = power.mul(&inv);
    }
    Ok(power.row_sum_norm() * diameter / rat_int(2))
}

/// Depth-`n` approximation of the attractor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileCloud {
    pub depth: usize,
    /// Points in lexicographic order, no duplicates.
    pub points: Vec<RatVector>,
    /// Max-norm distance within which the cloud covers the attractor.
    pub gap: Rational,
}

impl TileCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One point per line, coordinates comma-separated.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// Computes the depth-`n` point cloud `{Σ_{j=1}^n A^{-j} d_j}`.
pub fn approximate(a: &IntMatrix, digits: &DigitSet, depth: usize, budget: u64) -> Result<TileCloud> {
    approximate_with(ExecMode::default(), a, digits, depth, budget)
}

pub fn approximate_with(
    mode: ExecMode,
    a: &IntMatrix,
    digits: &DigitSet,
    depth: usize,
    budget: u64,
) -> Result<TileCloud> {
    assert_eq!(a.rows(), digits.dim(), "dimension mismatch");
    let needed = BigInt::from(digits.len().max(1)).pow(depth as u32);
    if needed > BigInt::from(budget) {
        return Err(TileError::BudgetExceeded { needed, budget });
    }
    let det = a.det()?;
    if det.is_zero() {
        return Err(TileError::Singular);
    }
    let adj = a.adjugate()?;
    // Integer-scaled recursion: points at step k are w / det^k, and
    // w_{k+1} = adj(A)·(w_k + det^k · d).
    let mut scale = BigInt::from(1);
    let mut cloud: Vec<IntVector> = vec![vec![BigInt::zero(); a.rows()]];
    for _ in 0..depth {
        let mut next = exec::flat_map_collect(mode, &cloud, |w| {
            let mut out = Vec::with_capacity(digits.len());
            for d in digits.digits() {
                let shifted: IntVector = w
                    .iter()
                    .zip(d.iter())
                    .map(|(wi, di)| wi + di * &scale)
                    .collect();
                out.push(adj.mul_vec(&shifted));
            }
            out
        });
        next.sort();
        next.dedup();
        cloud = next;
        scale *= &det;
    }
    let gap = gap_bound(a, digits, depth)?;
    let mut points: Vec<RatVector> = exec::map_collect(mode, &cloud, |w| {
        w.iter()
            .map(|wi| Rational::new(wi.clone(), scale.clone()))
            .collect()
    });
    points.sort();
    Ok(TileCloud {
        depth,
        points,
        gap,
    })
}

/// Axis-aligned window in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Viewport {
    pub min_x: Rational,
    pub max_x: Rational,
    pub min_y: Rational,
    pub max_y: Rational,
}

impl Viewport {
    /// Bounding box of a planar cloud, padded by its gap bound.
    pub fn around(cloud: &TileCloud) -> Viewport {
        assert!(!cloud.is_empty(), "empty cloud has no bounding box");
        assert_eq!(cloud.points[0].len(), 2, "viewport is planar");
        let mut min_x = cloud.points[0][0].clone();
        let mut max_x = min_x.clone();
        let mut min_y = cloud.points[0][1].clone();
        let mut max_y = min_y.clone();
        for p in &cloud.points {
            if p[0] < min_x {
                min_x = p[0].clone();
            }
            if p[0] > max_x {
                max_x = p[0].clone();
            }
            if p[1] < min_y {
                min_y = p[1].clone();
            }
            if p[1] > max_y {
                max_y = p[1].clone();
            }
        }
        Viewport {
            min_x: min_x - &cloud.gap,
            max_x: max_x + &cloud.gap,
            min_y: min_y - &cloud.gap,
            max_y: max_y + &cloud.gap,
        }
    }
}

/// Binary raster of a planar cloud.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
    /// Row-major, top row first.
    pub pixels: Vec<bool>,
}

impl RasterImage {
    pub fn occupied(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// Binary PGM (P5), 255 for occupied pixels.
    pub fn pgm_bytes(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.pixels.iter().map(|&p| if p { 255u8 } else { 0u8 }));
        out
    }
}

/// Rasterizes a two-dimensional cloud onto a `width x height` grid.
///
/// Pixel mapping is exact: column `⌊(x - min_x)·W / (max_x - min_x)⌋`
/// clamped to the grid, rows measured from the top. A viewport of zero
/// width or height maps everything to index 0.
pub fn rasterize(
    cloud: &TileCloud,
    width: usize,
    height: usize,
    viewport: Option<Viewport>,
) -> Result<RasterImage> {
    rasterize_with(ExecMode::default(), cloud, width, height, viewport)
}

pub fn rasterize_with(
    mode: ExecMode,
    cloud: &TileCloud,
    width: usize,
    height: usize,
    viewport: Option<Viewport>,
) -> Result<RasterImage> {
    let dim = cloud.points.first().map_or(2, Vec::len);
    if dim != 2 {
        return Err(TileError::Dimension {
            expected: 2,
            found: dim,
        });
    }
    assert!(width > 0 && height > 0, "raster must have positive size");
    let viewport = viewport.unwrap_or_else(|| Viewport::around(cloud));
    let span_x = &viewport.max_x - &viewport.min_x;
    let span_y = &viewport.max_y - &viewport.min_y;
    let cell = |offset: Rational, span: &Rational, count: usize| -> usize {
        if span.is_zero() {
            return 0;
        }
        let scaled = offset * rat_int(count as i64) / span.clone();
        let idx = crate::ratmath::floor_to_int(&scaled);
        if idx.is_negative() {
            0
        } else {
            idx.to_usize().unwrap_or(count - 1).min(count - 1)
        }
    };
    let indices = exec::map_collect(mode, &cloud.points, |p| {
        let col = cell(&p[0] - &viewport.min_x, &span_x, width);
        let row = cell(&viewport.max_y - &p[1], &span_y, height);
        (row, col)
    });
    let mut pixels = vec![false; width * height];
    for (row, col) in indices {
        pixels[row * width + col] = true;
    }
    Ok(RasterImage {
        width,
        height,
        viewport,
        pixels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitset::centered_digit_set;
    use crate::ratmath::rat;

    #[test]
    fn diameter_of_doubling_interval() {
        // A = [2], D = {0, 1}: attractor is [0, 1], diameter bound
        // 2·1·(1/2)/(1 - 1/2) = 2.
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        assert_eq!(diameter_bound(&a, &d).unwrap(), rat_int(2));
    }

    #[test]
    fn diameter_of_tripling_interval() {
        // A = [3], D = {-1, 0, 1}: bound 2·1·(1/3)/(2/3) = 1.
        let a = IntMatrix::from_rows(&[vec![3]]);
        let d = centered_digit_set(&a).unwrap();
        assert_eq!(diameter_bound(&a, &d).unwrap(), rat_int(1));
    }

    #[test]
    fn diameter_needs_second_power_for_wide_shear() {
        // ‖A^{-1}‖ = 13/9 > 1, ‖A^{-2}‖ = 23/27 < 1.
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let d = centered_digit_set(&a).unwrap();
        let bound = diameter_bound(&a, &d).unwrap();
        let max_digit = rat_int(4);
        let expected = rat_int(2) * max_digit * (rat(13, 9) + rat(23, 27)) / (rat_int(1) - rat(23, 27));
        assert_eq!(bound, expected);
    }

    #[test]
    fn gap_halves_with_depth_for_doubling() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        assert_eq!(gap_bound(&a, &d, 0).unwrap(), rat_int(1));
        assert_eq!(gap_bound(&a, &d, 3).unwrap(), rat(1, 8));
    }

    #[test]
    fn binary_expansion_cloud() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 3, 1 << 20).unwrap();
        let expect: Vec<RatVector> = (0..8).map(|k| vec![rat(k, 8)]).collect();
        assert_eq!(cloud.points, expect);
        assert_eq!(cloud.gap, rat(1, 8));
    }

    #[test]
    fn negative_base_cloud_is_sorted() {
        // A = [-2], D = {-1, 0}: depth-2 points (d1·(-2) + d2)/4.
        let a = IntMatrix::from_rows(&[vec![-2]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 2, 1 << 20).unwrap();
        let expect: Vec<RatVector> = vec![
            vec![rat(-1, 4)],
            vec![rat(0, 1)],
            vec![rat(1, 4)],
            vec![rat(1, 2)],
        ];
        assert_eq!(cloud.points, expect);
    }

    #[test]
    fn depth_zero_is_origin() {
        let a = IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 0, 16).unwrap();
        assert_eq!(cloud.points, vec![vec![rat_int(0), rat_int(0)]]);
    }

    #[test]
    fn budget_enforced() {
        let a = IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]);
        let d = centered_digit_set(&a).unwrap();
        let err = approximate(&a, &d, 8, 100).unwrap_err();
        assert_eq!(
            err,
            TileError::BudgetExceeded {
                needed: BigInt::from(9u32).pow(8),
                budget: 100
            }
        );
    }

    #[test]
    fn cloud_matches_direct_sum_oracle() {
        // Brute force Σ A^{-j} d_j over all digit words of length 2.
        let a = IntMatrix::from_rows(&[vec![0, -2], vec![2, 0]]);
        let d = centered_digit_set(&a).unwrap();
        let inv = a.to_rational().inverse().unwrap();
        let inv2 = inv.mul(&inv);
        let mut expect: Vec<RatVector> = Vec::new();
        for d1 in d.digits() {
            for d2 in d.digits() {
                let p1 = inv.mul_int_vec(d1);
                let p2 = inv2.mul_int_vec(d2);
                expect.push(p1.iter().zip(&p2).map(|(x, y)| x + y).collect());
            }
        }
        expect.sort();
        expect.dedup();
        let cloud = approximate(&a, &d, 2, 1 << 20).unwrap();
        assert_eq!(cloud.points, expect);
    }

    #[test]
    fn raster_of_unit_interval_tile() {
        // Planar tile from diag(2, 2): depth-2 cloud on a 4x4 grid covers
        // every cell of the quarter-lattice.
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 2, 1 << 20).unwrap();
        assert_eq!(cloud.len(), 16);
        let vp = Viewport {
            min_x: rat(-1, 8),
            max_x: rat(7, 8),
            min_y: rat(-1, 8),
            max_y: rat(7, 8),
        };
        let img = rasterize(&cloud, 4, 4, Some(vp)).unwrap();
        assert_eq!(img.occupied(), 16);
        let bytes = img.pgm_bytes();
        assert!(bytes.starts_with(b"P5\n4 4\n255\n"));
        assert_eq!(bytes.len(), 11 + 16);
    }

    #[test]
    fn raster_rejects_one_dimensional_cloud() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 1, 16).unwrap();
        let err = rasterize(&cloud, 8, 8, None).unwrap_err();
        assert_eq!(
            err,
            TileError::Dimension {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn degenerate_viewport_collapses_to_origin_pixel() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 1, 16).unwrap();
        let vp = Viewport {
            min_x: rat_int(0),
            max_x: rat_int(0),
            min_y: rat_int(0),
            max_y: rat_int(5),
        };
        let img = rasterize(&cloud, 3, 3, Some(vp)).unwrap();
        assert!(img.pixels.iter().enumerate().all(|(i, &p)| !p || i % 3 == 0));
    }

    #[test]
    fn modes_agree_on_cloud_and_raster() {
        let a = IntMatrix::from_rows(&[vec![3, 10], vec![0, 3]]);
        let d = centered_digit_set(&a).unwrap();
        let seq = approximate_with(ExecMode::Sequential, &a, &d, 3, 1 << 20).unwrap();
        let par = approximate_with(ExecMode::Parallel, &a, &d, 3, 1 << 20).unwrap();
        assert_eq!(seq, par);
        let img_s = rasterize_with(ExecMode::Sequential, &seq, 32, 32, None).unwrap();
        let img_p = rasterize_with(ExecMode::Parallel, &par, 32, 32, None).unwrap();
        assert_eq!(img_s, img_p);
    }

    #[test]
    fn csv_output() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let d = centered_digit_set(&a).unwrap();
        let cloud = approximate(&a, &d, 1, 16).unwrap();
        assert_eq!(cloud.to_csv(), "0\n1/2\n");
    }
}
