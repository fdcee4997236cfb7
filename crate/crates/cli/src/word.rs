use clap::{Args, Subcommand, ValueEnum};
use mfxyz::words::{
    band_to_loop, dual_band, flip_loop, loop_to_band, normalize, shift_band_steps, BandDatum,
    LoopDatum,
};
use mfxyz::Scalar;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{parse_word, CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Loop,
    Band,
}

#[derive(Debug, Subcommand)]
pub enum WordCmd {
    /// Reduce a loop word to normal form and print the moves used.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Convert a loop datum to its band datum or back.
    Convert(DatumArgs),
    /// Band datum of the shifted band module, with intermediate words.
    Shift(DatumArgs),
    /// Flip a loop datum or dualize a band datum.
    Flip(DatumArgs),
    /// Split a word as a power of its primitive base.
    Periodicity {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

/// A datum as JSON (`{"word":…,"param":…,"rank":…}`) or as separate flags.
#[derive(Debug, Args)]
pub struct DatumArgs {
    #[arg(long, value_enum, default_value = "loop")]
    pub kind: Kind,
    /// Datum JSON.
    #[arg(allow_hyphen_values = true)]
    pub datum: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Holonomy or eigenvalue, e.g. `lambda`, `-1`, `3/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

enum Datum {
    Loop(LoopDatum),
    Band(BandDatum),
}

impl Datum {
    fn to_json(&self) -> Value {
        match self {
            Datum::Loop(d) => d.to_json(),
            Datum::Band(d) => d.to_json(),
        }
    }
}

fn datum_text(d: &Datum) -> String {
    match d {
        Datum::Loop(l) => format!("loop {}  param {}  rank {}", l.word.word(), l.eta, l.rank),
        Datum::Band(b) => format!("band {}  param {}  mult {}", b.word, b.lambda, b.mult),
    }
}

fn read_datum(a: &DatumArgs, kind: Kind, cfg: &RunConfig) -> CliResult<Datum> {
    let v = match (&a.datum, &a.word) {
        (Some(s), None) => serde_json::from_str::<Value>(s)
            .map_err(|e| CliError::Usage(format!("datum JSON: {e}")))?,
        (None, Some(w)) => {
            let word = parse_word(w)?;
            let param = Scalar::parse(a.param.as_deref().unwrap_or("lambda"), cfg.numeric())?;
            json!({ "word": word.entries(), "param": param.to_json(), "rank": a.rank })
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give a datum JSON or --word, not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("missing datum".into())),
    };
    Ok(match kind {
        Kind::Loop => Datum::Loop(LoopDatum::from_json(&v)?),
        Kind::Band => Datum::Band(BandDatum::from_json(&v)?),
    })
}

pub fn run(cmd: &WordCmd, cfg: &RunConfig) -> CliResult<Output> {
    match cmd {
        WordCmd::Normalize { word } => {
            let w = parse_word(word)?;
            let (nw, trace) = normalize(&w)?;
            let moves: Vec<String> = trace.moves.iter().map(ToString::to_string).collect();
            let text = format!(
                "{}\nmoves: {}\n",
                nw.word(),
                if moves.is_empty() {
                    "none".into()
                } else {
                    moves.join(", ")
                }
            );
            Ok(Output::new(
                json!({ "input": w.entries(), "normal": nw.word().entries(), "trace": trace }),
                text,
            ))
        }
        WordCmd::Periodicity { word } => {
            let w = parse_word(word)?;
            let (base, n) = w.periodicity();
            Ok(Output::new(
                json!({ "base": base.entries(), "N": n }),
                format!("{base} ^ {n}\n"),
            ))
        }
        WordCmd::Convert(a) => {
            let out = match read_datum(a, a.kind, cfg)? {
                Datum::Loop(l) => Datum::Band(loop_to_band(&l)?),
                Datum::Band(b) => Datum::Loop(band_to_loop(&b)?),
            };
            Ok(Output::new(out.to_json(), datum_text(&out) + "\n"))
        }
        WordCmd::Flip(a) => {
            let out = match read_datum(a, a.kind, cfg)? {
                Datum::Loop(l) => Datum::Loop(flip_loop(&l)?),
                Datum::Band(b) => Datum::Band(dual_band(&b)?),
            };
            Ok(Output::new(out.to_json(), datum_text(&out) + "\n"))
        }
        WordCmd::Shift(a) => {
            let Datum::Band(b) = read_datum(a, Kind::Band, cfg)? else {
                unreachable!()
            };
            let s = shift_band_steps(&b)?;
            let json = json!({
                "loop": s.loop_datum.to_json(),
                "raw_reverse": s.raw_reverse.entries(),
                "reversed_loop": s.reversed_loop.to_json(),
                "result": s.result.to_json(),
            });
            let text = format!(
                "{}\nraw reverse {}\n{}\n{}\n",
                datum_text(&Datum::Loop(s.loop_datum)),
                s.raw_reverse,
                datum_text(&Datum::Loop(s.reversed_loop)),
                datum_text(&Datum::Band(s.result)),
            );
            Ok(Output::new(json, text))
        }
    }
}
