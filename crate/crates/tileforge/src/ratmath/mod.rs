//! Exact rational and integer linear algebra.
//!
//! Everything downstream (digit sets, Jordan forms, lattices, clouds) reduces
//! to the operations here: fraction-free determinants, exact inverses and
//! solvers, integer characteristic polynomials, and column-style Hermite
//! normal forms.

mod hnf;
mod int_matrix;
mod rat_matrix;
mod rational;

pub use hnf::{hermite_basis, hermite_coordinates};
pub use int_matrix::{vec_add, vec_inf_norm, vec_neg, vec_sub, IntMatrix};
pub use rat_matrix::RatMatrix;
pub use rational::{
    abs_sum, ceil_to_int, denominator_lcm, floor_to_int, in_half_open_unit_cube, parse_rational,
    rat, rat_int, IntVector, RatVector, Rational,
};
