//! Exact rational and integer linear algebra.

mod charpoly;
mod factor;
mod field;
mod hnf;
mod matrix;
mod poly;
mod sturm;
mod subspace;

pub use charpoly::{char_min_poly, char_poly, min_poly};
pub use factor::{
    factor_poly, factor_squarefree_integer, irreducible_factors, is_irreducible, PrimeField,
};
pub use field::{
    common_denominator, floor, gcd_all, primitive_integer_vector, qb, qi, qr, Field, Rationals, Q,
};
pub use hnf::{
    hnf, integer_left_kernel, lattice_meet_subspace, lattice_rows_q, solve_integer, IntMatrix,
    IntegerLattice,
};
pub use matrix::{generic as linalg, RationalMatrix};
pub use poly::{generic as polyops, RationalPolynomial};
pub use sturm::{
    count_real_roots, cyclotomic_order, cyclotomic_part, is_palindromic, reciprocal_transform,
    sturm_sequence,
};
pub use subspace::{
    column_space, eventual_image, eventual_left_image, kernel_left, kernel_right, left_nilspace,
    restricted_inverse_apply, RationalSubspace,
};
