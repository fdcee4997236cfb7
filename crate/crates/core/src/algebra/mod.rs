//! Exact and approximate coefficient fields, Laurent polynomials in
//! `x, y, z, λ`, dense matrices over them and the linear algebra used by
//! the factorization builders.

pub mod field;
pub mod jordan;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod series;

pub use field::{Field, GaussRat, Ring, DEFAULT_TOL};
pub use jordan::{
    berkowitz, char_poly, jordan_block, jordan_family, jordan_inverse, r_of, rt_of, shift_down,
    shift_up, JordanKind, PolyMatrix, ScalarMatrix, UniPoly,
};
pub use linalg::{
    adjugate_det, adjugate_det_unchecked, cayley_hamilton_adjugate, field_inverse, from_constant,
    laurent_inverse, null_vector, scalar_inverse, solve_particular, to_constant,
};
pub use matrix::{permutation_matrix, shuffle_matrix, Matrix};
pub use num_complex::Complex64;
pub use poly::{xyz_poly, Mono, Poly};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{
    matrix_from_json, matrix_to_json, poly_from_json, poly_to_json, Scalar, ScalarField,
};
pub use series::{trunc_inverse, TruncSeries};
