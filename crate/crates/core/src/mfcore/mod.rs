//! Matrix factorizations of `xyz` at desk scale: verification, morphisms,
//! shift and transpose, unit reduction, twisted complexes, periodic
//! splittings and explicit isomorphism diagrams.

mod diagrams;
mod matfac;
mod periodic;
mod reduce;
mod report;
mod twisted;

pub use diagrams::{completion_diagram, completion_pair, degenerate_reduction_diagram, Diagram};
pub use matfac::{
    compose, differential, direct_sum, direct_sum_all, is_closed, is_homotopy_witness, shift_mf,
    signed_permutation_witness, transpose_mf, verify_mf, verify_mf_block_unit, verify_mf_tol,
    IsoWitness, MFMorphism, MatFac, Parity,
};
pub use periodic::{
    degenerate_periodic_decompose, field_roots, jordan_transition, numeric_roots,
    periodic_decompose, PeriodicDecomposition,
};
pub use reduce::{
    find_unit, reduce_all_units, reduce_all_units_traced, reduce_unit, FactorSide, ReductionWitness,
};
pub use report::{Report, Status};
pub use twisted::{
    build_twisted, twist_gamma, twisted_similarity_check, TwistSpec, TwistedWitness,
};

use serde_json::json;

use crate::algebra::{matrix_to_json, poly_to_json, Poly, ScalarField};
use crate::error::Result;

/// Both squares of the degenerate-to-alternative diagram commute exactly.
pub fn check_degenerate_reduction<F: ScalarField>(
    tau: usize,
    lam: &Poly<F>,
    rho: usize,
) -> Result<Report> {
    let d = degenerate_reduction_diagram(tau, lam, rho)?;
    let inputs = json!({ "tau": tau, "lambda": poly_to_json(lam), "rho": rho });
    let witness = json!({ "v0": matrix_to_json(&d.v0), "v1": matrix_to_json(&d.v1) });
    Ok(Report::new("degenerate_reduction", inputs, d.commutes()).with_witness(witness))
}

/// The completion family factors `xyz` exactly, and its diagram commutes
/// modulo total degree above `d`.
pub fn check_completion_remark<F: ScalarField>(lam: &Poly<F>, d: i32) -> Result<Report> {
    let (phi, psi) = completion_pair(lam);
    let exact = verify_mf(&phi, &psi);
    let diag = completion_diagram(lam, d)?;
    let truncated = diag.commutes_truncated(d);
    let inputs = json!({ "lambda": poly_to_json(lam), "degree": d });
    let witness = json!({ "v0": matrix_to_json(&diag.v0), "v1": matrix_to_json(&diag.v1) });
    Ok(Report::new("completion", inputs, exact && truncated)
        .with_witness(witness)
        .with_note(format!(
            "factorization exact: {exact}; squares commute mod degree > {d}: {truncated}"
        )))
}
