//! Realization-tagged scalars and the JSON encodings of scalars,
//! polynomials and matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use super::field::{Field, GaussRat, Ring};
use super::matrix::Matrix;
use super::poly::{Mono, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// A parameter value: exact Laurent polynomial in `λ` over the Gaussian
/// rationals, or a double-precision complex number.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Laurent(BTreeMap<i32, GaussRat>),
    Approx(Complex64),
}

impl Scalar {
    pub fn from_laurent(terms: impl IntoIterator<Item = (i32, GaussRat)>) -> Self {
        let mut map: BTreeMap<i32, GaussRat> = BTreeMap::new();
        for (k, c) in terms {
            let e = map.entry(k).or_default();
            *e = e.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        Scalar::Laurent(map)
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_laurent([(0, GaussRat::real(r))])
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_int(n))
    }

    /// The formal parameter `λ`.
    pub fn lambda() -> Self {
        Self::from_laurent([(1, GaussRat::one())])
    }

    pub fn approx(re: f64, im: f64) -> Self {
        Scalar::Approx(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Laurent(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Laurent(m) => m.is_empty(),
            Scalar::Approx(c) => Ring::is_zero(c),
        }
    }

    /// Exact units are single terms `c·λ^k`; approximate units are nonzero.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Laurent(m) => m.len() == 1,
            Scalar::Approx(c) => !Ring::is_zero(c),
        }
    }

    fn same_realization(&self, o: &Self) -> Result<()> {
        if self.is_exact() != o.is_exact() {
            return Err(Error::RealizationMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_realization(o)?;
        Ok(match (self, o) {
            (Scalar::Laurent(a), Scalar::Laurent(b)) => {
                Self::from_laurent(a.iter().chain(b.iter()).map(|(k, c)| (*k, c.clone())))
            }
            (Scalar::Approx(a), Scalar::Approx(b)) => Scalar::Approx(a + b),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_realization(o)?;
        Ok(match (self, o) {
            (Scalar::Laurent(a), Scalar::Laurent(b)) => {
                let mut t = Vec::new();
                for (i, x) in a {
                    for (j, y) in b {
                        t.push((i + j, x.mul(y)));
                    }
                }
                Self::from_laurent(t)
            }
            (Scalar::Approx(a), Scalar::Approx(b)) => Scalar::Approx(a * b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Laurent(a) => Scalar::Laurent(a.iter().map(|(k, c)| (*k, c.neg())).collect()),
            Scalar::Approx(c) => Scalar::Approx(-c),
        }
    }

    /// Inverse of a unit.
    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Laurent(a) if a.len() == 1 => {
                let (k, c) = a.iter().next().unwrap();
                Ok(Self::from_laurent([(
                    -k,
                    c.inv().ok_or(Error::NonUnitLambda)?,
                )]))
            }
            Scalar::Approx(c) if !Ring::is_zero(c) => Ok(Scalar::Approx(1.0 / c)),
            _ => Err(Error::NonUnitLambda),
        }
    }

    /// `(−1)^e · self`.
    pub fn sign_times(&self, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Realize in a concrete coefficient field as a `λ`-only polynomial.
    pub fn to_poly<F: ScalarField>(&self) -> Result<Poly<F>> {
        F::poly_from_scalar(self)
    }

    /// Read back a `λ`-only polynomial.
    pub fn from_poly<F: ScalarField>(p: &Poly<F>) -> Result<Self> {
        if !p.is_scalar() {
            return Err(Error::InvalidInput("polynomial is not a scalar".into()));
        }
        Ok(F::scalar_from_terms(
            &p.terms()
                .iter()
                .map(|(m, c)| (m.lambda(), c.clone()))
                .collect::<Vec<_>>(),
        ))
    }

    /// Parse command-line shorthand: `lambda`/`λ`, integers, `p/q`,
    /// decimals, Gaussian forms like `1+i`, and with `numeric` a complex
    /// literal like `1.3+0.7i`.
    pub fn parse(s: &str, numeric: bool) -> Result<Self> {
        let t = s.trim();
        let err = || Error::InvalidInput(format!("cannot parse scalar `{s}`"));
        if t.starts_with('{') {
            let v: Value = serde_json::from_str(t).map_err(|_| err())?;
            return Self::from_json(&v);
        }
        if numeric {
            let c: Complex64 = parse_complex(t).ok_or_else(err)?;
            return Ok(Scalar::Approx(c));
        }
        match t {
            "lambda" | "λ" | "eta" | "η" => return Ok(Self::lambda()),
            "-lambda" | "-λ" | "-eta" | "-η" => return Ok(Self::lambda().neg()),
            "1/lambda" | "lambda^-1" | "λ^-1" => return Self::lambda().inv(),
            _ => {}
        }
        let g: GaussRat = t.parse().map_err(|_| err())?;
        Ok(Self::from_laurent([(0, g)]))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Laurent(m) => {
                let mut obj = Map::new();
                for (k, c) in m {
                    obj.insert(k.to_string(), Value::String(c.to_string()));
                }
                json!({ "laurent": obj })
            }
            Scalar::Approx(c) => json!({ "re": c.re, "im": c.im }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |why: &str| Error::InvalidInput(format!("scalar JSON: {why}"));
        if let Some(l) = v.get("laurent") {
            let obj = l
                .as_object()
                .ok_or_else(|| bad("laurent must be an object"))?;
            let mut terms = Vec::new();
            for (k, c) in obj {
                let k: i32 = k
                    .parse()
                    .map_err(|_| bad("exponent keys must be integers"))?;
                let c = match c {
                    Value::String(s) => {
                        s.parse::<GaussRat>().map_err(|_| bad("bad coefficient"))?
                    }
                    Value::Number(n) => n
                        .as_i64()
                        .map(|i| GaussRat::real(Rational::from_int(i)))
                        .ok_or_else(|| bad("non-integer numeric coefficient"))?,
                    _ => return Err(bad("coefficient must be a string")),
                };
                terms.push((k, c));
            }
            return Ok(Self::from_laurent(terms));
        }
        match (
            v.get("re").and_then(Value::as_f64),
            v.get("im").and_then(Value::as_f64),
        ) {
            (Some(re), Some(im)) => Ok(Scalar::approx(re, im)),
            _ => match v {
                Value::Number(n) if n.is_i64() => Ok(Self::int(n.as_i64().unwrap())),
                Value::String(s) => Self::parse(s, false),
                _ => Err(bad("expected {\"laurent\":…} or {\"re\":…,\"im\":…}")),
            },
        }
    }
}

fn parse_complex(t: &str) -> Option<Complex64> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|r| Complex64::new(r, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(k, c)| (*c == '+' || *c == '-') && !body[..*k].ends_with(['e', 'E']))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        o => o,
    };
    Some(Complex64::new(re.parse().ok()?, im.parse().ok()?))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Laurent(m) => {
                let p = Poly::<GaussRat>::from_terms(
                    m.iter().map(|(k, c)| (Mono::lam(*k), c.clone())).collect(),
                );
                write!(f, "{p}")
            }
            Scalar::Approx(c) => write!(f, "{}{:+}i", c.re, c.im),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficient fields that can be fed from and read back into [`Scalar`].
pub trait ScalarField: Field {
    fn poly_from_scalar(s: &Scalar) -> Result<Poly<Self>>;
    fn scalar_from_terms(terms: &[(i32, Self)]) -> Scalar;
}

impl ScalarField for GaussRat {
    fn poly_from_scalar(s: &Scalar) -> Result<Poly<Self>> {
        match s {
            Scalar::Laurent(m) => Ok(Poly::from_terms(
                m.iter().map(|(k, c)| (Mono::lam(*k), c.clone())).collect(),
            )),
            Scalar::Approx(_) => Err(Error::RealizationMismatch),
        }
    }
    fn scalar_from_terms(terms: &[(i32, Self)]) -> Scalar {
        Scalar::from_laurent(terms.iter().cloned())
    }
}

impl ScalarField for Rational {
    fn poly_from_scalar(s: &Scalar) -> Result<Poly<Self>> {
        match s {
            Scalar::Laurent(m) => {
                let mut t = Vec::new();
                for (k, c) in m {
                    if !c.im.is_zero() {
                        return Err(Error::RealizationMismatch);
                    }
                    t.push((Mono::lam(*k), c.re.clone()));
                }
                Ok(Poly::from_terms(t))
            }
            Scalar::Approx(_) => Err(Error::RealizationMismatch),
        }
    }
    fn scalar_from_terms(terms: &[(i32, Self)]) -> Scalar {
        Scalar::from_laurent(terms.iter().map(|(k, c)| (*k, GaussRat::real(c.clone()))))
    }
}

impl ScalarField for Complex64 {
    fn poly_from_scalar(s: &Scalar) -> Result<Poly<Self>> {
        match s {
            Scalar::Approx(c) => Ok(Poly::constant(*c)),
            Scalar::Laurent(m) if m.keys().all(|k| *k == 0) => Ok(Poly::constant(
                m.get(&0).map_or(Complex64::new(0.0, 0.0), GaussRat::to_c64),
            )),
            Scalar::Laurent(_) => Err(Error::RealizationMismatch),
        }
    }
    fn scalar_from_terms(terms: &[(i32, Self)]) -> Scalar {
        let c = terms.iter().filter(|(k, _)| *k == 0).map(|(_, c)| *c).sum();
        Scalar::Approx(c)
    }
}

/// `[{"exp":[a,b,c], "coef": Scalar}, …]`, grouping `λ` powers per monomial.
pub fn poly_to_json<F: ScalarField>(p: &Poly<F>) -> Value {
    let mut groups: BTreeMap<(i32, i32, i32), Vec<(i32, F)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        groups
            .entry((m.x(), m.y(), m.z()))
            .or_default()
            .push((m.lambda(), c.clone()));
    }
    Value::Array(
        groups
            .into_iter()
            .map(|((a, b, c), t)| json!({ "exp": [a, b, c], "coef": F::scalar_from_terms(&t).to_json() }))
            .collect(),
    )
}

pub fn poly_from_json<F: ScalarField>(v: &Value) -> Result<Poly<F>> {
    let bad = || Error::InvalidInput("polynomial JSON must be a list of {exp, coef}".into());
    let arr = v.as_array().ok_or_else(bad)?;
    let mut acc = Poly::zero();
    for t in arr {
        let e = t.get("exp").and_then(Value::as_array).ok_or_else(bad)?;
        if e.len() != 3 {
            return Err(bad());
        }
        let e: Vec<i64> = e
            .iter()
            .map(|x| x.as_i64().ok_or_else(bad))
            .collect::<Result<_>>()?;
        if e.iter().any(|&x| x < 0) {
            return Err(Error::InvalidInput(
                "negative exponent in polynomial JSON".into(),
            ));
        }
        let c = Scalar::from_json(t.get("coef").ok_or_else(bad)?)?.to_poly::<F>()?;
        acc = acc.add(&c.mul(&Poly::monomial(
            e[0] as i32,
            e[1] as i32,
            e[2] as i32,
            F::one(),
        )));
    }
    Ok(acc)
}

/// `{"rows": n, "cols": m, "entries": [row-major polynomials]}`.
pub fn matrix_to_json<F: ScalarField>(m: &Matrix<Poly<F>>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json<F: ScalarField>(v: &Value) -> Result<Matrix<Poly<F>>> {
    let bad = || Error::InvalidInput("matrix JSON must have rows, cols, entries".into());
    let r = v.get("rows").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let c = v.get("cols").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let e = v.get("entries").and_then(Value::as_array).ok_or_else(bad)?;
    let data = e.iter().map(poly_from_json).collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(r, c, data)
}
