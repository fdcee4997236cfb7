use serde_json::{json, Value};

use super::normalize::normalize;
use super::word::{NormalWord, Word};
use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// `(w′, η, ρ)`: a normal loop word with holonomy parameter and rank.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopDatum {
    pub word: NormalWord,
    pub eta: Scalar,
    pub rank: usize,
}

/// `(w, λ, μ)`: a band word with eigenvalue and multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct BandDatum {
    pub word: Word,
    pub lambda: Scalar,
    pub mult: usize,
}

fn check_param(p: &Scalar, n: usize) -> Result<()> {
    if !p.is_unit() {
        return Err(Error::NonUnitLambda);
    }
    if n == 0 {
        return Err(Error::InvalidInput(
            "rank/multiplicity must be positive".into(),
        ));
    }
    Ok(())
}

/// Whether `s` equals the integer `v` (within tolerance when approximate).
pub fn scalar_is(s: &Scalar, v: i64) -> bool {
    match s {
        Scalar::Laurent(_) => *s == Scalar::int(v),
        Scalar::Approx(c) => {
            (c - num_complex::Complex64::new(v as f64, 0.0)).norm() <= crate::algebra::DEFAULT_TOL
        }
    }
}

fn parity_sign(w: &Word) -> i64 {
    w.l_sum() + w.tau() as i64
}

impl LoopDatum {
    pub fn new(word: NormalWord, eta: Scalar, rank: usize) -> Result<Self> {
        check_param(&eta, rank)?;
        Ok(LoopDatum { word, eta, rank })
    }

    /// `w′ = (2,2,2)^τ` with `η = (−1)^τ`.
    pub fn is_degenerate(&self) -> bool {
        let tau = self.word.tau() as i64;
        self.word.is_all_twos() && scalar_is(&self.eta, if tau % 2 == 0 { 1 } else { -1 })
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": "loop", "word": self.word.entries(), "param": self.eta.to_json(), "rank": self.rank })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (w, p, r) = parse_datum(v, "loop")?;
        LoopDatum::new(NormalWord::new(w)?, p, r)
    }
}

impl BandDatum {
    pub fn new(word: Word, lambda: Scalar, mult: usize) -> Result<Self> {
        check_param(&lambda, mult)?;
        Ok(BandDatum { word, lambda, mult })
    }

    /// `w = (0,0,0)^τ` with `λ = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.word.is_all_zeros() && scalar_is(&self.lambda, 1)
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": "band", "word": self.word.entries(), "param": self.lambda.to_json(), "rank": self.mult })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (w, p, r) = parse_datum(v, "band")?;
        BandDatum::new(w, p, r)
    }
}

fn parse_datum(v: &Value, kind: &str) -> Result<(Word, Scalar, usize)> {
    let bad = |why: &str| Error::InvalidInput(format!("{kind} datum JSON: {why}"));
    if let Some(k) = v.get("kind").and_then(Value::as_str) {
        if k != kind {
            return Err(bad(&format!("expected kind `{kind}`, got `{k}`")));
        }
    }
    let word: Word =
        serde_json::from_value(v.get("word").cloned().ok_or_else(|| bad("missing word"))?)
            .map_err(|e| bad(&e.to_string()))?;
    let param = Scalar::from_json(v.get("param").ok_or_else(|| bad("missing param"))?)?;
    let rank = v
        .get("rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing rank"))? as usize;
    Ok((word, param, rank))
}

/// Indicator row `𝟙_{w′_j ≥ 1}`.
pub fn positivity_row(w: &Word) -> Vec<u8> {
    w.entries().iter().map(|&x| u8::from(x >= 1)).collect()
}

/// `δ_j = 0` when `w_j < 0`, or when `w_j = 0` and a first nonzero entry
/// on either side of its zero run is negative; `1` otherwise.
pub fn delta_row(w: &Word) -> Vec<u8> {
    let e = w.entries();
    let n = e.len() as isize;
    (0..n)
        .map(|j| {
            let v = e[j as usize];
            if v < 0 {
                return 0;
            }
            if v > 0 {
                return 1;
            }
            let seek = |step: isize| (1..n).map(|k| w.at(j + step * k)).find(|&x| x != 0);
            let neg = [seek(1), seek(-1)].into_iter().flatten().any(|x| x < 0);
            u8::from(!neg)
        })
        .collect()
}

pub fn loop_to_band(d: &LoopDatum) -> Result<BandDatum> {
    let tau = d.word.tau();
    let deg = d.is_degenerate();
    if deg && tau >= 2 {
        return Err(Error::PeriodicDegenerate);
    }
    let pos = positivity_row(&d.word);
    let n = pos.len();
    let band: Vec<i32> = (0..n)
        .map(|j| {
            let s = pos[(j + n - 1) % n] + pos[j] + pos[(j + 1) % n];
            d.word.entries()[j] + 1 - s as i32
        })
        .collect();
    let band = Word::new(band)?;
    let lambda = d.eta.sign_times(parity_sign(&band));
    let mult = if deg { d.rank + 1 } else { d.rank };
    BandDatum::new(band, lambda, mult)
}

pub fn band_to_loop(d: &BandDatum) -> Result<LoopDatum> {
    let tau = d.word.tau();
    let deg = d.is_degenerate();
    if deg && tau >= 2 {
        return Err(Error::PeriodicDegenerate);
    }
    if deg && d.mult == 1 {
        return Err(Error::MultiplicityOne);
    }
    let delta = delta_row(&d.word);
    let n = delta.len();
    let lw: Vec<i32> = (0..n)
        .map(|j| {
            let s = delta[(j + n - 1) % n] + delta[j] + delta[(j + 1) % n];
            d.word.entries()[j] - 1 + s as i32
        })
        .collect();
    let lw = NormalWord::new(Word::new(lw)?)?;
    let eta = d.lambda.sign_times(parity_sign(&d.word));
    let rank = if deg { d.mult - 1 } else { d.mult };
    LoopDatum::new(lw, eta, rank)
}

/// `(normal form of 1 − w′, η^{-1}, ρ)`.
pub fn flip_loop(d: &LoopDatum) -> Result<LoopDatum> {
    let flipped = Word::new(d.word.entries().iter().map(|x| 1 - x).collect())?;
    let (nw, _) = normalize(&flipped)?;
    LoopDatum::new(nw, d.eta.inv()?, d.rank)
}

/// `(−w, λ^{-1}, μ)`.
pub fn dual_band(d: &BandDatum) -> Result<BandDatum> {
    let w = Word::new(d.word.entries().iter().map(|x| -x).collect())?;
    BandDatum::new(w, d.lambda.inv()?, d.mult)
}

/// `(−l₁′,0,−n_τ′,0,−m_τ′,0,−l_τ′,0,…,−n₁′,0,−m₁′,0)`, length `6τ`.
pub fn reverse_raw(w: &Word) -> Word {
    let e = w.entries();
    let n = e.len();
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        out.push(-e[(n - k) % n]);
        out.push(0);
    }
    Word::new(out).expect("length 6τ")
}

/// Intermediate results of the band shift.
#[derive(Clone, Debug)]
pub struct ShiftSteps {
    pub loop_datum: LoopDatum,
    pub raw_reverse: Word,
    pub reversed_loop: LoopDatum,
    pub result: BandDatum,
}

pub fn shift_band_steps(d: &BandDatum) -> Result<ShiftSteps> {
    let loop_datum = band_to_loop(d)?;
    let raw_reverse = reverse_raw(&loop_datum.word);
    let (nw, _) = normalize(&raw_reverse)?;
    let reversed_loop = LoopDatum::new(nw, loop_datum.eta.inv()?, loop_datum.rank)?;
    let result = loop_to_band(&reversed_loop)?;
    Ok(ShiftSteps {
        loop_datum,
        raw_reverse,
        reversed_loop,
        result,
    })
}

/// Band datum of the shifted module.
pub fn shift_band(d: &BandDatum) -> Result<BandDatum> {
    shift_band_steps(d).map(|s| s.result)
}
