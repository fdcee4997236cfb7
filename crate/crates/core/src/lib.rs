//! Matrix factorizations of `xyz` over `k[[x, y, z]]`: the loop/band word
//! combinatorics that index them, explicit constructions, their
//! morphisms, and the band-module side.

pub mod algebra;
pub mod bandmod;
pub mod canonical;
pub mod error;
pub mod mfcore;
pub mod words;

pub use algebra::{
    Complex64, Field, GaussRat, Matrix, Mono, Poly, PolyMatrix, Rational, Ring, Scalar, ScalarField,
};
pub use error::{Error, Result};
pub use words::{BandDatum, LoopDatum, NormalWord, Word};
