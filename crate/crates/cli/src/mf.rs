use std::io::Read;

use clap::{Args, Subcommand};
use mfxyz::algebra::{matrix_from_json, matrix_to_json};
use mfxyz::canonical::build_phi;
use mfxyz::mfcore::{
    reduce_all_units_traced, shift_mf, transpose_mf, twisted_similarity_check, verify_mf_tol,
    MatFac, Report,
};
use mfxyz::{NormalWord, ScalarField};
use serde_json::{json, Value};

use crate::build::{certify, lambda};
use crate::config::RunConfig;
use crate::output::{matrix_text, parse_word, CliError, CliResult, Output};
use crate::with_field;

#[derive(Debug, Subcommand)]
pub enum MfCmd {
    /// Check `φψ = ψφ = xyz·I`; exit 1 if it fails.
    Verify(MfInput),
    /// The shifted factorization `(ψ, φ)`.
    Shift(MfInput),
    /// The transposed factorization `(ψᵀ, φᵀ)`.
    Transpose(MfInput),
    /// Eliminate constant invertible entries.
    Reduce(MfInput),
    /// Exhibit a canonical factorization as a twisted complex of rank-one copies.
    Twist(MfInput),
}

/// A factorization `{"phi": matrix, "psi": matrix}` as JSON, `@file` or `-`
/// for stdin, or the canonical one for `--word/--lambda/--rank`.
#[derive(Debug, Args)]
pub struct MfInput {
    pub input: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "lambda")]
    pub lambda: String,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

impl MfInput {
    fn canonical(&self) -> CliResult<Option<NormalWord>> {
        match (&self.word, &self.input) {
            (Some(w), None) => Ok(Some(NormalWord::new(parse_word(w)?)?)),
            (None, Some(_)) => Ok(None),
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give a factorization or --word, not both".into(),
            )),
            (None, None) => Err(CliError::Usage("missing factorization".into())),
        }
    }

    fn json(&self) -> CliResult<Value> {
        let src = self.input.as_deref().unwrap_or_default();
        let text = if src == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            s
        } else if let Some(p) = src.strip_prefix('@') {
            std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{p}: {e}")))?
        } else {
            src.to_string()
        };
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("factorization JSON: {e}")))
    }
}

fn matrices<F: ScalarField>(
    inp: &MfInput,
    cfg: &RunConfig,
) -> CliResult<(mfxyz::PolyMatrix<F>, mfxyz::PolyMatrix<F>)> {
    if let Some(w) = inp.canonical()? {
        let phi = build_phi(&w, &lambda::<F>(&inp.lambda, cfg)?, inp.rank)?;
        let psi = certify(&phi, cfg)?.psi()?;
        return Ok((phi, psi));
    }
    let v = inp.json()?;
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| CliError::Usage(format!("missing `{k}`")))
    };
    Ok((
        matrix_from_json(get("phi")?)?,
        matrix_from_json(get("psi")?)?,
    ))
}

fn load<F: ScalarField>(inp: &MfInput, cfg: &RunConfig) -> CliResult<MatFac<F>> {
    let (phi, psi) = matrices(inp, cfg)?;
    Ok(MatFac::new(phi, psi)?)
}

fn mf_output<F: ScalarField>(m: &MatFac<F>, extra: Value) -> Output {
    let mut json = m.to_json();
    if let (Value::Object(o), Value::Object(e)) = (&mut json, extra) {
        o.extend(e);
    }
    let n = m.size();
    Output::new(
        json,
        format!(
            "phi ({n}×{n})\n{}psi ({n}×{n})\n{}",
            matrix_text(m.phi()),
            matrix_text(m.psi())
        ),
    )
}

fn run_generic<F: ScalarField>(cmd: &MfCmd, cfg: &RunConfig) -> CliResult<Output> {
    match cmd {
        MfCmd::Verify(inp) => {
            let (phi, psi) = matrices::<F>(inp, cfg)?;
            let ok = verify_mf_tol(&phi, &psi, cfg.tol);
            let r = Report::new("mf_verify", json!({ "size": phi.rows() }), ok);
            let text = format!(
                "{} ({}×{})\n",
                if ok { "pass" } else { "FAIL" },
                phi.rows(),
                phi.cols()
            );
            Ok(Output::checked(
                serde_json::to_value(&r).expect("report"),
                text,
                ok,
            ))
        }
        MfCmd::Shift(inp) => Ok(mf_output(&shift_mf(&load::<F>(inp, cfg)?), json!({}))),
        MfCmd::Transpose(inp) => Ok(mf_output(&transpose_mf(&load::<F>(inp, cfg)?), json!({}))),
        MfCmd::Reduce(inp) => {
            let (red, trace) = reduce_all_units_traced(&load::<F>(inp, cfg)?)?;
            let steps: Vec<Value> = trace
                .iter()
                .map(|(side, (i, j))| json!({ "factor": side, "row": i, "col": j }))
                .collect();
            let mut out = mf_output(&red, json!({ "eliminated": steps }));
            out.text = format!("{} units eliminated\n{}", trace.len(), out.text);
            Ok(out)
        }
        MfCmd::Twist(inp) => {
            let w = inp
                .canonical()?
                .ok_or_else(|| CliError::Usage("twist needs --word".into()))?;
            let lam = lambda::<F>(&inp.lambda, cfg)?;
            let t = twisted_similarity_check(&w, &lam, inp.rank)?;
            let mc = t.spec.maurer_cartan_holds()?;
            let extra = json!({
                "conjugation": matrix_to_json(&t.conjugation),
                "blocks": inp.rank,
                "maurer_cartan": mc,
            });
            let mut out = mf_output(&t.twisted, extra);
            out.code = u8::from(!mc);
            out.text = format!(
                "{} rank-one blocks, Maurer-Cartan {}\n{}",
                inp.rank,
                if mc { "holds" } else { "FAILS" },
                out.text
            );
            Ok(out)
        }
    }
}

pub fn run(cmd: &MfCmd, cfg: &RunConfig) -> CliResult<Output> {
    with_field!(cfg, F => run_generic::<F>(cmd, cfg))
}
