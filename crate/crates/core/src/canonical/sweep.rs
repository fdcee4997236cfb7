//! Bulk verification of canonical factorizations over ranges of words,
//! ranks and eigenvalues.

use super::forms::{build_phi, is_degenerate_pair, phi_unchecked};
use super::psi::{complete_psi_series, extract_family, LambdaFamily, PowerCache};
use crate::algebra::{jordan_block, Field, Matrix, Poly, DEFAULT_TOL};
use crate::mfcore::verify_mf_block_unit;
use crate::words::{is_normal, NormalWord, Word};

/// All normal words of length `3τ` with entries in `lo..=hi`.
pub fn normal_words(tau: usize, lo: i32, hi: i32) -> Vec<NormalWord> {
    let len = 3 * tau;
    let span = (hi - lo + 1) as usize;
    let total = span.pow(len as u32);
    let mut out = Vec::new();
    let mut entries = vec![lo; len];
    for mut code in 0..total {
        for e in entries.iter_mut().rev() {
            *e = lo + (code % span) as i32;
            code /= span;
        }
        let w = Word::new(entries.clone()).expect("length is a multiple of three");
        if is_normal(&w) {
            out.push(NormalWord::new(w).expect("checked normal"));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SweepFailure {
    pub word: Word,
    pub lambda: String,
    pub rho: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub words: usize,
    pub cases: usize,
    /// Cases whose opposite factor is a polynomial matrix.
    pub polynomial_cases: usize,
    /// Cases certified over the power series ring only.
    pub series_cases: usize,
    pub skipped_degenerate: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.polynomial_cases + self.series_cases == self.cases
    }
}

/// Symbolic completion of `φ(w, λ, 1)` as `λ`-families of the adjugate and
/// the unit factor.
struct Families<F: Field> {
    adj: LambdaFamily<F>,
    unit: LambdaFamily<F>,
    polynomial: bool,
}

fn families<F: Field>(w: &Word) -> Option<Families<F>> {
    let sc = complete_psi_series(&phi_unchecked(w, &Poly::lambda(), 1)).ok()?;
    Some(Families {
        adj: extract_family(&sc.adj),
        unit: extract_family(&Matrix::scalar(1, sc.unit.clone())),
        polynomial: sc.is_polynomial(),
    })
}

/// Checks `φ(w, λ₀, ρ)` for every requested `λ₀` and `ρ ≤ rho_max`, skipping
/// degenerate pairs. The completion is computed once per word with `λ`
/// symbolic, giving `φ(1)·A(λ) = xyz·u(λ)·I`; substituting `J_ρ(λ₀)` for `λ`
/// yields the identity `φ(ρ)·A(J) = A(J)·φ(ρ) = xyz·(I ⊗ u(J))`, which is
/// checked exactly. When `u` is a single term this is the polynomial
/// factorization `(φ, A·u^{-1})`; otherwise `u(J)` is a unit series and the
/// case is a factorization over the power series ring. Words without a
/// symbolic completion are completed case by case.
pub fn sweep_word<F: Field>(
    w: &NormalWord,
    lambdas: &[F],
    rho_max: usize,
    summary: &mut SweepSummary,
) {
    let mut caches = jordan_caches(lambdas, rho_max);
    sweep_word_cached(w, lambdas, rho_max, &mut caches, summary);
}

/// Powers of `J_ρ(λ₀)` for each requested `λ₀` and `ρ`, shared across words.
fn jordan_caches<F: Field>(lambdas: &[F], rho_max: usize) -> Vec<Vec<PowerCache<F>>> {
    lambdas
        .iter()
        .map(|l| {
            (1..=rho_max)
                .map(|rho| {
                    PowerCache::new(jordan_block(rho, &Poly::constant(l.clone()))).expect("square")
                })
                .collect()
        })
        .collect()
}

fn sweep_word_cached<F: Field>(
    w: &NormalWord,
    lambdas: &[F],
    rho_max: usize,
    caches: &mut [Vec<PowerCache<F>>],
    summary: &mut SweepSummary,
) {
    summary.words += 1;
    let fams = families::<F>(w.word());
    for (li, lam0) in lambdas.iter().enumerate() {
        let lam = Poly::constant(lam0.clone());
        if is_degenerate_pair(w, &lam) {
            summary.skipped_degenerate += rho_max;
            continue;
        }
        for rho in 1..=rho_max {
            summary.cases += 1;
            let fail = |reason: String| SweepFailure {
                word: w.word().clone(),
                lambda: format!("{lam0:?}"),
                rho,
                reason,
            };
            let phi = match build_phi(w, &lam, rho) {
                Ok(p) => p,
                Err(e) => {
                    summary.failures.push(fail(e.to_string()));
                    continue;
                }
            };
            let checked = match &fams {
                Some(f) => {
                    let cache = &mut caches[li][rho - 1];
                    f.adj
                        .substitute_with(cache)
                        .and_then(|adj| Ok((adj, f.unit.substitute_with(cache)?)))
                        .map(|(adj, u)| {
                            (
                                verify_mf_block_unit(&phi, &adj, &u, DEFAULT_TOL),
                                f.polynomial,
                            )
                        })
                }
                None => complete_psi_series(&phi).map(|sc| {
                    let u = Matrix::scalar(1, sc.unit.clone());
                    (
                        verify_mf_block_unit(&phi, &sc.adj, &u, DEFAULT_TOL),
                        sc.is_polynomial(),
                    )
                }),
            };
            match checked {
                Ok((true, true)) => summary.polynomial_cases += 1,
                Ok((true, false)) => summary.series_cases += 1,
                Ok((false, _)) => summary.failures.push(fail("φ·adj ≠ xyz·u·I".into())),
                Err(e) => summary.failures.push(fail(e.to_string())),
            }
        }
    }
}

/// [`sweep_word`] over every normal word with `τ ≤ tau_max` and entries in
/// `lo..=hi`.
pub fn canonical_sweep<F: Field>(
    tau_max: usize,
    lo: i32,
    hi: i32,
    rho_max: usize,
    lambdas: &[F],
) -> SweepSummary {
    let mut summary = SweepSummary::default();
    let mut caches = jordan_caches(lambdas, rho_max);
    for tau in 1..=tau_max {
        for w in normal_words(tau, lo, hi) {
            sweep_word_cached(&w, lambdas, rho_max, &mut caches, &mut summary);
        }
    }
    summary
}
