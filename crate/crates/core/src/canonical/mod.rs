//! Builders for the canonical factorizations of `xyz` attached to loop
//! data, their degenerate variants, and `λ`-families.

mod degenerate;
mod forms;
mod psi;
mod sweep;

pub use degenerate::{build_deg, degenerate_r, DegVariant};
pub use forms::{
    alt_permutation, alt_permutation_matrix, band_parity, build_lmf_raw, build_phi, build_phi_alt,
    constant_inverse, is_degenerate_pair, phi_kronecker, phi_lambda_free, raw_to_canonical_witness,
    RawWitness,
};
pub use psi::{
    complete_psi, complete_psi_series, extract_family, substitute, LambdaFamily, PowerCache,
    SeriesCompletion,
};
pub use sweep::{canonical_sweep, normal_words, sweep_word, SweepFailure, SweepSummary};
