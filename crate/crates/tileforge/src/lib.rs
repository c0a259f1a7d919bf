//! Exact-arithmetic analysis of self-affine tiles.
//!
//! An expanding integer matrix `A` (a *dilation*: every eigenvalue has
//! modulus at least two) together with a digit set `D` of `|det A|` integer
//! vectors defines a compact attractor `T` satisfying `A(T) = ∪_{d∈D} (T+d)`.
//! This crate decides structural questions about such tiles without ever
//! leaving exact rational arithmetic:
//!
//! - [`digitset`] builds the centered canonical digit set `A(-1/2,1/2]^m ∩ ℤ^m`
//!   and its block/product/mapped variants, and checks complete-residue-system
//!   status with witnesses.
//! - [`spectrum`] and [`jordan`] find integer eigenvalues and an integer
//!   Jordan decomposition `A·P = P·J` with a canonical, reproducible `P`.
//! - [`lattice`] computes Hermite-normal-form bases and the lattice of
//!   translations left invariant by the subdivision.
//! - [`connectivity`] runs the discrete connectivity machinery: level sets,
//!   edge-neighbor unions, shell certificates for Jordan blocks, bounded
//!   neighbor-set pruning, and the end-to-end pipeline verdict.
//! - [`attractor`] produces exact rational point clouds of the tile and
//!   deterministic raster images.
//!
//! No floating point participates in any decision; every comparison against
//! the half-open cube `(-1/2, 1/2]^m` is exact. Hot enumeration loops are
//! data-parallel when the default `parallel` feature is enabled and fall back
//! to sequential iteration without it; results are byte-identical either way.

#![forbid(unsafe_code)]

pub mod attractor;
pub mod connectivity;
pub mod digitset;
pub mod error;
pub mod exec;
pub mod jordan;
pub mod lattice;
pub mod ratmath;
pub mod sampling;
pub mod spectrum;

pub use error::TileError;
pub use exec::ExecMode;

/// Default cap on the number of enumerated points (level sets, clouds).
pub const DEFAULT_POINT_BUDGET: u64 = 1 << 22;
