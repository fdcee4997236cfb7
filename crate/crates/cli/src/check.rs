use clap::Subcommand;
use mfxyz::algebra::{matrix_to_json, shuffle_matrix, Matrix, Mono, Poly, Rational, Ring};
use mfxyz::bandmod::degenerate_resolution;
use mfxyz::canonical::{build_deg, build_lmf_raw, build_phi, complete_psi, DegVariant};
use mfxyz::mfcore::{
    check_completion_remark, check_degenerate_reduction, direct_sum_all, periodic_decompose,
    reduce_all_units, verify_mf, MatFac, Report,
};
use mfxyz::words::{
    band_to_loop, delta_row, dual_band, flip_loop, loop_to_band, normalize, positivity_row,
    shift_band_steps, BandDatum, LoopDatum,
};
use mfxyz::{word, Error, NormalWord, PolyMatrix, Scalar, ScalarField, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::build::{certify, lambda};
use crate::config::RunConfig;
use crate::output::{parse_word, CliResult, Output};
use crate::with_field;

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    /// Re-verify the worked examples: the localized factor, word conversions,
    /// shift, flip and dual, periodic splitting, diagrams and resolutions.
    ReferenceVectors,
    /// Seeded randomized invariants.
    Properties {
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
    /// Split the canonical factorization of a periodic word into summands.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Number of repetitions of `--word`.
        #[arg(long = "N", default_value_t = 1)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Degenerate-to-alternative diagram and unit reduction of the degenerate pair.
    Reductions {
        #[arg(long, default_value_t = 1)]
        tau: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Resolution of the degenerate band module.
    Bandmod {
        #[arg(long, default_value_t = 1)]
        mu: usize,
    },
}

type Q = Rational;
type P = Poly<Q>;

fn term(a: i32, b: i32, c: i32, lam: i32, coef: i64) -> P {
    Poly::term(Mono::xyz(a, b, c).with_lambda(lam), Q::from_int(coef))
}

fn sum(ts: &[P]) -> P {
    ts.iter().fold(P::zero(), |acc, t| acc.add(t))
}

fn nw(w: Word) -> NormalWord {
    NormalWord::new(w).expect("reference word is normal")
}

/// Runs `f`, turning library errors into a failed report.
fn report(check: &str, inputs: Value, f: impl FnOnce() -> Result<(bool, String), Error>) -> Report {
    match f() {
        Ok((ok, note)) => Report::new(check, inputs, ok).with_note(note),
        Err(e) => Report::new(check, inputs, false).with_note(format!("{}: {e}", e.code())),
    }
}

fn localized_factor() -> Report {
    report(
        "localized_factor",
        json!({ "word": [3, -2, 2], "rank": 1 }),
        || {
            let raw: PolyMatrix<Q> = build_lmf_raw(&nw(word![3, -2, 2]), &P::lambda(), 1)?;
            let z = P::zero();
            let phi = Matrix::from_rows(vec![
                vec![term(0, 0, 1, 0, 1), z.clone(), z.clone()],
                vec![
                    term(0, 2, 0, 0, 1),
                    term(1, 0, 0, 0, 1),
                    term(0, 0, 1, 0, -1),
                ],
                vec![term(2, 0, 0, 1, -1), z.clone(), term(0, 1, 0, 0, 1)],
            ]);
            let psi_ref = Matrix::from_rows(vec![
                vec![term(1, 1, 0, 0, 1), z.clone(), z.clone()],
                vec![
                    sum(&[term(0, 3, 0, 0, -1), term(2, 0, 1, 1, 1)]),
                    term(0, 1, 1, 0, 1),
                    term(0, 0, 2, 0, 1),
                ],
                vec![term(3, 0, 0, 1, 1), z.clone(), term(1, 0, 1, 0, 1)],
            ]);
            let psi = complete_psi(&raw)?;
            let ok = raw == phi && psi == psi_ref && verify_mf(&raw, &psi);
            Ok((
                ok,
                "Φ and Ψ match the worked example; ΦΨ = ΨΦ = xyz·I".into(),
            ))
        },
    )
}

fn conversion() -> Report {
    let lw = word![8, 2, 3, -1, -1, -4, -1, 0, 5, 0, -2, 1, 0, 4, 6];
    let bw = word![6, 0, 2, -1, 0, -3, 0, 0, 5, 0, -2, 1, -1, 3, 4];
    report(
        "loop_to_band",
        json!({ "word": lw.entries(), "param": "lambda" }),
        || {
            let row = vec![1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1];
            let l = LoopDatum::new(nw(lw.clone()), Scalar::lambda(), 1)?;
            let b = loop_to_band(&l)?;
            let ok = positivity_row(&lw) == row
                && delta_row(&bw) == row
                && b.word == bw
                && b.lambda == Scalar::lambda().neg()
                && band_to_loop(&b)? == l;
            Ok((
                ok,
                format!("band datum {} with parameter {}", b.word, b.lambda),
            ))
        },
    )
}

fn shift_example() -> Report {
    let bw = word![6, 0, 2, -1, 0, -3, 0, 0, 5, 0, -2, 1, -1, 3, 4];
    report(
        "band_shift",
        json!({ "word": bw.entries(), "param": "lambda" }),
        || {
            let s = shift_band_steps(&BandDatum::new(bw.clone(), Scalar::lambda(), 1)?)?;
            let raw = word![
                -8, 0, -6, 0, -4, 0, 0, 0, -1, 0, 2, 0, 0, 0, -5, 0, 0, 0, 1, 0, 4, 0, 1, 0, 1, 0,
                -3, 0, -2, 0
            ];
            let normal = word![-6, 1, -4, 1, -3, -1, 0, 2, -5, 1, 0, 4, 0, 1, 0, 1, 0, -2, 1, 0, 1];
            let last =
                word![-7, 1, -5, 1, -3, 0, 0, 2, -6, 1, -1, 4, -1, 1, -1, 1, 0, -2, 1, -1, 1];
            let ok = s.raw_reverse == raw
                && s.reversed_loop.word.equivalent_up_to_shift(&normal)
                && s.result.word.equivalent_up_to_shift(&last);
            Ok((ok, format!("shifted band word {}", s.result.word)))
        },
    )
}

fn flip_dual() -> Report {
    report(
        "flip_dual_shift",
        json!({ "loop": [3, -2, 2], "band": [2, -3, 1] }),
        || {
            let lam = Scalar::lambda();
            let eta = lam.neg();
            let l = LoopDatum::new(nw(word![3, -2, 2]), eta.clone(), 1)?;
            let f = flip_loop(&l)?;
            let b = BandDatum::new(word![2, -3, 1], lam.clone(), 1)?;
            let d = dual_band(&b)?;
            let s = shift_band_steps(&b)?;
            let target = word![-2, 1, -1, 0, 2, 0];
            let ok = f.word.word() == &word![-2, 3, -1]
                && f.eta == eta.inv()?
                && d.word == word![-2, 3, -1]
                && d.lambda == lam.inv()?
                && loop_to_band(&l)? == b
                && s.result.word.equivalent_up_to_shift(&target)
                && s.result.lambda == lam.inv()?.neg();
            Ok((ok, "flip, dual and shift parameters η⁻¹, λ⁻¹, −λ⁻¹".into()))
        },
    )
}

fn normalize_example() -> Report {
    report("normalize", json!({ "word": [-3, 0, -2, 0, 2, 0] }), || {
        let (n, trace) = normalize(&word![-3, 0, -2, 0, 2, 0])?;
        let ok = n.word().equivalent_up_to_shift(&word![-2, 1, -1, 0, 2, 0])
            && trace.replay(&word![-3, 0, -2, 0, 2, 0])? == *n.word();
        Ok((
            ok,
            format!("normal form {} in {} moves", n.word(), trace.len()),
        ))
    })
}

fn decompose_report<F: ScalarField>(
    base: &Word,
    n: usize,
    lam: &Poly<F>,
    rho: usize,
    tol: f64,
) -> Report {
    let inputs = json!({ "word": base.entries(), "N": n, "lambda": mfxyz::algebra::poly_to_json(lam), "rank": rho });
    report("periodic_decompose", inputs, || {
        let w = NormalWord::new(base.concat_power(n))?;
        let d = periodic_decompose(&w, lam, rho)?;
        let sum = direct_sum_all(&d.summands);
        let exact = F::EXACT
            && &(&d.v * d.whole.phi()) * &d.v_inv == *sum.phi()
            && &(&d.v * d.whole.psi()) * &d.v_inv == *sum.psi();
        let ok = if F::EXACT { exact } else { d.residual <= tol };
        Ok((
            ok,
            format!("{} summands, residual {:e}", d.summands.len(), d.residual),
        ))
    })
}

fn reduction_reports<F: ScalarField>(tau: usize, lam: &Poly<F>, rho: usize) -> Vec<Report> {
    let mut out = Vec::new();
    out.push(match check_degenerate_reduction(tau, lam, rho) {
        Ok(r) => r,
        Err(e) => Report::new(
            "degenerate_reduction",
            json!({ "tau": tau, "rho": rho }),
            false,
        )
        .with_note(format!("{}: {e}", e.code())),
    });
    out.push(report(
        "unit_reduction",
        json!({ "tau": tau, "rank": rho }),
        || {
            let (phi, psi) = build_deg(tau, lam, rho, DegVariant::Full)?;
            let red = reduce_all_units(&MatFac::new(phi, psi)?)?;
            Ok((
                red.size() == 3 * tau * rho,
                format!("{} reduced to {}", 4 * tau * rho, red.size()),
            ))
        },
    ));
    out
}

fn resolution_report(mu: usize) -> Report {
    report("degenerate_resolution", json!({ "mu": mu }), || {
        let r = degenerate_resolution::<Q>(mu)?;
        Ok((
            r.composite_vanishes(),
            format!("π·φ̃ ≡ 0 mod xyz, φ̃ is {}×{}", r.phi.rows(), r.phi.cols()),
        ))
    })
}

fn reference_vectors() -> Vec<Report> {
    let mut v = vec![
        localized_factor(),
        conversion(),
        shift_example(),
        flip_dual(),
        normalize_example(),
    ];
    for rho in 1..=2 {
        v.push(decompose_report(
            &word![3, -2, 2],
            2,
            &P::from_i64(4),
            rho,
            0.0,
        ));
    }
    for l in [P::from_i64(2), P::from_i64(-1), P::constant(Q::new(1, 2))] {
        v.extend(reduction_reports(1, &l, 1));
    }
    v.push(match check_completion_remark(&P::from_i64(2), 10) {
        Ok(r) => r,
        Err(e) => Report::new("completion", json!({ "lambda": 2, "degree": 10 }), false)
            .with_note(e.to_string()),
    });
    v.extend((1..=3).map(resolution_report));
    v
}

fn random_word(rng: &mut ChaCha8Rng, tau: usize) -> Word {
    Word::new((0..3 * tau).map(|_| rng.gen_range(-3..=3)).collect()).expect("nonempty")
}

fn properties(cfg: &RunConfig, count: usize) -> Vec<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lams = [
        Q::from_int(1),
        Q::from_int(2),
        Q::from_int(-1),
        Q::new(3, 2),
    ];
    let mut out = Vec::new();
    for k in 0..count {
        let tau = rng.gen_range(1..=2);
        let w = random_word(&mut rng, tau);
        let lam = P::constant(lams[rng.gen_range(0..lams.len())].clone());
        let rho = rng.gen_range(1..=2);
        let inputs = json!({ "case": k, "word": w.entries(), "lambda": mfxyz::algebra::poly_to_json(&lam), "rank": rho });
        out.push(report(
            "normalize_replay",
            inputs.clone(),
            || match normalize(&w) {
                Err(Error::NonHyperbolic) => Ok((true, "not hyperbolic".into())),
                Err(e) => Err(e),
                Ok((n, t)) => Ok((t.replay(&w)? == *n.word(), format!("{} moves", t.len()))),
            },
        ));
        let Ok((n, _)) = normalize(&w) else { continue };
        out.push(report("loop_band_roundtrip", inputs.clone(), || {
            let l = LoopDatum::new(n.clone(), Scalar::lambda(), rho)?;
            match loop_to_band(&l) {
                Ok(b) => Ok((band_to_loop(&b)? == l, format!("band word {}", b.word))),
                Err(Error::PeriodicDegenerate) => Ok((true, "periodic degenerate".into())),
                Err(e) => Err(e),
            }
        }));
        out.push(report("canonical_completion", inputs.clone(), || {
            let phi = match build_phi(&n, &lam, rho) {
                Err(Error::DegenerateDatum) => return Ok((true, "degenerate datum".into())),
                r => r?,
            };
            let ok = certify(&phi, cfg).is_ok();
            Ok((ok, format!("{}×{} certified", phi.rows(), phi.cols())))
        }));
        let (m1, n1, m2, n2) = (
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
        );
        let a: PolyMatrix<Q> = Matrix::from_fn(m1, n1, |_, _| P::from_i64(rng.gen_range(-5..=5)));
        let b: PolyMatrix<Q> = Matrix::from_fn(m2, n2, |_, _| P::from_i64(rng.gen_range(-5..=5)));
        out.push(report(
            "shuffle_kron",
            json!({ "case": k, "a": matrix_to_json(&a), "b": matrix_to_json(&b) }),
            || {
                let lhs = &(&shuffle_matrix::<P>(m1, m2) * &a.kron(&b)) * &shuffle_matrix(n2, n1);
                Ok((lhs == b.kron(&a), format!("{m1}×{n1} ⊗ {m2}×{n2}")))
            },
        ));
    }
    out
}

fn suite_output(suite: &str, reports: Vec<Report>) -> Output {
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        text += &format!("{status}  {}  {}\n", r.check, r.notes.join("; "));
    }
    text += &format!("{suite}: {} checks, {failed} failed\n", reports.len());
    let json = json!({ "suite": suite, "passed": reports.len() - failed, "failed": failed, "reports": reports });
    Output::checked(json, text, failed == 0)
}

pub fn run(cmd: &CheckCmd, cfg: &RunConfig) -> CliResult<Output> {
    Ok(match cmd {
        CheckCmd::ReferenceVectors => suite_output("reference-vectors", reference_vectors()),
        CheckCmd::Properties { count } => suite_output("properties", properties(cfg, *count)),
        CheckCmd::Decompose {
            word,
            n,
            lambda: l,
            rank,
        } => {
            let base = parse_word(word)?;
            let r = with_field!(cfg, F => decompose_report::<F>(&base, *n, &lambda::<F>(l, cfg)?, *rank, cfg.tol));
            suite_output("decompose", vec![r])
        }
        CheckCmd::Reductions {
            tau,
            lambda: l,
            rank,
        } => {
            let rs =
                with_field!(cfg, F => reduction_reports::<F>(*tau, &lambda::<F>(l, cfg)?, *rank));
            suite_output("reductions", rs)
        }
        CheckCmd::Bandmod { mu } => suite_output("bandmod", vec![resolution_report(*mu)]),
    })
}
