use clap::{Args, ValueEnum};
use mfxyz::algebra::{matrix_to_json, Matrix, Poly, UniPoly};
use mfxyz::bandmod::{build_module_generators, build_theta, TMatrix};
use mfxyz::canonical::{
    build_deg, build_lmf_raw, build_phi, build_phi_alt, complete_psi_series, DegVariant,
    SeriesCompletion,
};
use mfxyz::mfcore::{verify_mf_block_unit, verify_mf_tol};
use mfxyz::{Error, NormalWord, PolyMatrix, Scalar, ScalarField};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{matrix_text, parse_word, text_grid, CliError, CliResult, Output};
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    Phi,
    Psi,
    PhiAlt,
    LmfRaw,
    Deg,
    DegReduced,
    Theta,
    Generators,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub kind: BuildKind,
    /// Loop word (phi, psi, phi-alt, lmf-raw) or band word (theta, generators).
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// `λ`, `η` or a number; `lambda` keeps it symbolic.
    #[arg(long, allow_hyphen_values = true, default_value = "lambda")]
    pub lambda: String,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Period of the degenerate word `(2,2,2)^τ`.
    #[arg(long, default_value_t = 1)]
    pub tau: usize,
    /// Multiplicity for band-side builders; defaults to `--rank`.
    #[arg(long)]
    pub mult: Option<usize>,
}

/// Completes `φ` over the power series ring and checks the completion
/// certificate before anything is printed.
pub fn certify<F: ScalarField>(
    phi: &PolyMatrix<F>,
    cfg: &RunConfig,
) -> CliResult<SeriesCompletion<F>> {
    let c = complete_psi_series(phi)?;
    if !verify_mf_block_unit(phi, &c.adj, &Matrix::scalar(1, c.unit.clone()), cfg.tol) {
        return Err(CliError::Domain(Error::NotAMatrixFactorization));
    }
    Ok(c)
}

pub fn lambda<F: ScalarField>(s: &str, cfg: &RunConfig) -> CliResult<Poly<F>> {
    Ok(Scalar::parse(s, cfg.numeric())?.to_poly::<F>()?)
}

fn normal(a: &BuildArgs) -> CliResult<NormalWord> {
    let w = a
        .word
        .as_deref()
        .ok_or_else(|| CliError::Usage("--word is required".into()))?;
    Ok(NormalWord::new(parse_word(w)?)?)
}

fn single<F: ScalarField>(name: &str, m: &PolyMatrix<F>, extra: Value) -> Output {
    let mut j = json!({ name: matrix_to_json(m) });
    if let (Value::Object(o), Value::Object(e)) = (&mut j, extra) {
        o.extend(e);
    }
    Output::new(
        j,
        format!("{name} ({}×{})\n{}", m.rows(), m.cols(), matrix_text(m)),
    )
}

fn pair<F: ScalarField>(
    phi: &PolyMatrix<F>,
    psi: &PolyMatrix<F>,
    cfg: &RunConfig,
) -> CliResult<Output> {
    if !verify_mf_tol(phi, psi, cfg.tol) {
        return Err(CliError::Domain(Error::NotAMatrixFactorization));
    }
    let json = json!({ "phi": matrix_to_json(phi), "psi": matrix_to_json(psi), "verified": true });
    let text = format!(
        "phi ({n}×{n})\n{}psi ({n}×{n})\n{}",
        matrix_text(phi),
        matrix_text(psi),
        n = phi.rows()
    );
    Ok(Output::new(json, text))
}

fn unipoly_json<F: ScalarField>(p: &UniPoly<F>) -> CliResult<Value> {
    let cs = p
        .coeffs()
        .iter()
        .map(|c| Scalar::from_poly(c).map(|s| s.to_json()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Value::Array(cs))
}

fn tmatrix_json<F: ScalarField>(m: &TMatrix<F>) -> CliResult<Value> {
    let entries = m
        .entries()
        .iter()
        .map(unipoly_json)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries }))
}

fn tmatrix_text<F: ScalarField>(m: &TMatrix<F>) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect();
    text_grid(&cells)
}

fn build_generic<F: ScalarField>(a: &BuildArgs, cfg: &RunConfig) -> CliResult<Output> {
    let lam: Poly<F> = lambda(&a.lambda, cfg)?;
    let mult = a.mult.unwrap_or(a.rank);
    match a.kind {
        BuildKind::Phi | BuildKind::PhiAlt => {
            let w = normal(a)?;
            let phi = if a.kind == BuildKind::Phi {
                build_phi(&w, &lam, a.rank)?
            } else {
                build_phi_alt(&w, &lam, a.rank)?
            };
            let c = certify(&phi, cfg)?;
            Ok(single(
                "phi",
                &phi,
                json!({ "verified": true, "polynomial_completion": c.is_polynomial() }),
            ))
        }
        BuildKind::LmfRaw => {
            let w = normal(a)?;
            let phi = build_lmf_raw(&w, &lam, a.rank)?;
            certify(&phi, cfg)?;
            Ok(single("phi", &phi, json!({ "verified": true })))
        }
        BuildKind::Psi => {
            let w = normal(a)?;
            let phi = build_phi(&w, &lam, a.rank)?;
            let c = certify(&phi, cfg)?;
            if c.is_polynomial() {
                let psi = c.psi()?;
                return pair(&phi, &psi, cfg);
            }
            let psi = c.psi_truncated(cfg.degree)?;
            let mut out = single(
                "psi",
                &psi,
                json!({ "truncated_at": cfg.degree, "adjugate": matrix_to_json(&c.adj), "unit": mfxyz::algebra::poly_to_json(&c.unit) }),
            );
            out.text = format!(
                "power-series completion, unit {}, truncated at degree {}\n{}",
                c.unit, cfg.degree, out.text
            );
            Ok(out)
        }
        BuildKind::Deg | BuildKind::DegReduced => {
            let v = if a.kind == BuildKind::Deg {
                DegVariant::Full
            } else {
                DegVariant::Reduced
            };
            let (phi, psi) = build_deg(a.tau, &lam, a.rank, v)?;
            pair(&phi, &psi, cfg)
        }
        BuildKind::Theta => {
            let w = parse_word(
                a.word
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--word is required".into()))?,
            )?;
            let t = build_theta(&w, &lam, mult);
            let names = [
                "n_minus", "n_plus", "l_cyclic", "l_minus", "m_minus", "m_plus",
            ];
            let mut json = serde_json::Map::new();
            let mut text = String::new();
            for (name, m) in names.iter().zip(t.maps()) {
                json.insert((*name).into(), tmatrix_json(m)?);
                text += &format!("{name}\n{}", tmatrix_text(m));
            }
            Ok(Output::new(Value::Object(json), text))
        }
        BuildKind::Generators => {
            let w = parse_word(
                a.word
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--word is required".into()))?,
            )?;
            let g = build_module_generators(&w, &lam, mult);
            let mut out = single(
                "generators",
                g.matrix(),
                json!({ "rank": g.rank(), "count": g.count() }),
            );
            out.text = format!("rank {}, {} generators\n{}", g.rank(), g.count(), out.text);
            Ok(out)
        }
    }
}

pub fn run(a: &BuildArgs, cfg: &RunConfig) -> CliResult<Output> {
    with_field!(cfg, F => build_generic::<F>(a, cfg))
}
