//! Sparse polynomials in `x, y, z` whose coefficients are Laurent polynomials
//! in `λ`. The `λ` exponent is folded into the monomial, so a coefficient
//! `c·λ^k` of `x^a y^b z^c` is the single term `(a, b, c, k) ↦ c`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Ring};
use crate::error::{Error, Result};

/// Exponent vector `[x, y, z, λ]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(pub [i16; 4]);

impl Mono {
    pub const ONE: Mono = Mono([0; 4]);

    pub fn xyz(a: i32, b: i32, c: i32) -> Mono {
        Mono([a as i16, b as i16, c as i16, 0])
    }

    pub fn lam(k: i32) -> Mono {
        Mono([0, 0, 0, k as i16])
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        let (a, b) = (self.0, o.0);
        Mono([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    #[inline]
    pub fn div(self, o: Mono) -> Mono {
        let (a, b) = (self.0, o.0);
        Mono([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]])
    }

    pub fn inv(self) -> Mono {
        Mono::ONE.div(self)
    }

    pub fn x(self) -> i32 {
        self.0[0] as i32
    }
    pub fn y(self) -> i32 {
        self.0[1] as i32
    }
    pub fn z(self) -> i32 {
        self.0[2] as i32
    }
    pub fn lambda(self) -> i32 {
        self.0[3] as i32
    }

    /// Total degree in `x, y, z`.
    pub fn degree(self) -> i32 {
        self.x() + self.y() + self.z()
    }

    pub fn is_scalar(self) -> bool {
        self.0[0] == 0 && self.0[1] == 0 && self.0[2] == 0
    }

    pub fn has_negative_xyz(self) -> bool {
        self.0[0] < 0 || self.0[1] < 0 || self.0[2] < 0
    }

    /// Divisible by `xyz` (all three exponents positive).
    pub fn divisible_by_xyz(self) -> bool {
        self.0[0] > 0 && self.0[1] > 0 && self.0[2] > 0
    }

    pub fn with_lambda(self, k: i32) -> Mono {
        let mut e = self.0;
        e[3] = k as i16;
        Mono(e)
    }
}

/// Sparse polynomial; terms are sorted by monomial and carry no zero
/// coefficients, so structural equality is value equality (exact fields).
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    terms: Vec<(Mono, F)>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Poly { terms: Vec::new() }
    }
}

impl<F: Field> Poly<F> {
    /// Build from arbitrary terms: sorts, merges and drops zeros. Negative
    /// `x, y, z` exponents are kept (Laurent use).
    pub fn from_terms(mut terms: Vec<(Mono, F)>) -> Self {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1.add_assign(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    /// Single term; zero coefficient gives the zero polynomial.
    pub fn term(m: Mono, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// `c·x^a y^b z^c`; any negative exponent yields zero.
    pub fn monomial(a: i32, b: i32, c: i32, coef: F) -> Self {
        if a < 0 || b < 0 || c < 0 {
            return Self::zero();
        }
        Self::term(Mono::xyz(a, b, c), coef)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 0, F::one())
    }
    pub fn y() -> Self {
        Self::monomial(0, 1, 0, F::one())
    }
    pub fn z() -> Self {
        Self::monomial(0, 0, 1, F::one())
    }
    /// `xyz`.
    pub fn xyz() -> Self {
        Self::monomial(1, 1, 1, F::one())
    }

    /// The formal parameter `λ`.
    pub fn lambda() -> Self {
        Self::term(Mono::lam(1), F::one())
    }

    /// `x^e` with negative powers read as zero.
    pub fn x_pow(e: i32) -> Self {
        Self::monomial(e, 0, 0, F::one())
    }
    pub fn y_pow(e: i32) -> Self {
        Self::monomial(0, e, 0, F::one())
    }
    pub fn z_pow(e: i32) -> Self {
        Self::monomial(0, 0, e, F::one())
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> F {
        match self.terms.binary_search_by(|t| t.0.cmp(&m)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// No `x, y, z` appears (a Laurent polynomial in `λ` only).
    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_scalar())
    }

    /// A single term: a unit of the Laurent ring in all variables.
    pub fn as_monomial(&self) -> Option<(Mono, &F)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c)),
            _ => None,
        }
    }

    /// Unit of the scalar ring: a single term `c·λ^k`, `c ≠ 0`.
    pub fn is_scalar_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((m, _)) if m.is_scalar())
    }

    /// Inverse of a single-term polynomial in the Laurent ring.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(Self::term(m.inv(), c.inv()?))
    }

    pub fn has_negative_xyz(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.has_negative_xyz())
    }

    pub fn has_lambda(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.lambda() != 0)
    }

    /// Maximum total degree in `x, y, z`; `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.mul(c)))
                .filter(|t| !t.1.is_zero())
                .collect(),
        }
    }

    pub fn mul_term(&self, m: Mono, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), b.mul(c)))
                .filter(|t| !t.1.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    /// Drop every monomial of total degree above `d`.
    pub fn truncate(&self, d: i32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .cloned()
                .collect(),
        }
    }

    /// Image in `k[x,y,z]/(xyz)`: drop monomials divisible by `xyz`.
    pub fn reduce_mod_xyz(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.divisible_by_xyz())
                .cloned()
                .collect(),
        }
    }

    /// Drop terms with coefficient magnitude at most `tol` (no-op when exact).
    pub fn chop(&self, tol: f64) -> Self {
        if F::EXACT {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.abs() > tol)
                .cloned()
                .collect(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Substitute a value for `λ`; negative powers need an invertible value.
    pub fn eval_lambda(&self, v: &F) -> Result<Self> {
        let inv = if self.terms.iter().any(|(m, _)| m.lambda() < 0) {
            Some(v.inv().ok_or(Error::NonUnitLambda)?)
        } else {
            None
        };
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let k = m.lambda();
            let base = if k < 0 { inv.as_ref().unwrap() } else { v };
            let mut p = F::one();
            for _ in 0..k.unsigned_abs() {
                p = p.mul(base);
            }
            out.push((m.with_lambda(0), c.mul(&p)));
        }
        Ok(Self::from_terms(out))
    }

    /// Split by powers of `λ`: `self = Σ_k coeffs[k]·λ^k`.
    pub fn lambda_coeffs(&self) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Vec<(Mono, F)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.lambda())
                .or_default()
                .push((m.with_lambda(0), c.clone()));
        }
        out.into_iter()
            .map(|(k, v)| (k, Self::from_terms(v)))
            .collect()
    }

    /// Value as a constant field element, if the polynomial is one.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    /// Exact quotient `q` with `self = q·b`, allowing Laurent powers of `λ`
    /// but not negative powers of `x, y, z`.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionNotExact);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((m, c)) = b.as_monomial() {
            let ci = c.inv().ok_or(Error::DivisionNotExact)?;
            let q = self.mul_term(m.inv(), &ci);
            if q.has_negative_xyz() {
                return Err(Error::DivisionNotExact);
            }
            return Ok(q);
        }
        let lam_lo = |p: &Self| p.terms.iter().map(|(m, _)| m.lambda()).min().unwrap_or(0);
        let floor = lam_lo(self) - lam_lo(b);
        let (bm, bc) = b.terms.last().map(|(m, c)| (*m, c.clone())).unwrap();
        let bci = bc.inv().ok_or(Error::DivisionNotExact)?;
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.terms.last().cloned() {
            let qm = rm.div(bm);
            if qm.has_negative_xyz() || qm.lambda() < floor {
                return Err(Error::DivisionNotExact);
            }
            let qc = rc.mul(&bci);
            r = Ring::sub(&r, &b.mul_term(qm, &qc));
            q.push((qm, qc));
        }
        Ok(Self::from_terms(q))
    }

    /// Fold the `λ`-exponent ordering out: terms ordered by graded
    /// reverse-lex in `x, y, z`, then `λ`, for display.
    fn display_order(&self) -> Vec<&(Mono, F)> {
        let mut v: Vec<&(Mono, F)> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let (p, q) = (a.0, b.0);
            q.degree()
                .cmp(&p.degree())
                .then(q.x().cmp(&p.x()))
                .then(q.y().cmp(&p.y()))
                .then(q.lambda().cmp(&p.lambda()))
        });
        v
    }
}

impl<F: Field> Ring for Poly<F> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        if o.terms.is_empty() {
            return self.clone();
        }
        if self.terms.is_empty() {
            return o.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.terms, &o.terms);
        if a.is_empty() || b.is_empty() {
            return Poly::zero();
        }
        if a.len() == 1 {
            return o.mul_term(a[0].0, &a[0].1);
        }
        if b.len() == 1 {
            return self.mul_term(b[0].0, &b[0].1);
        }
        let mut out = Vec::with_capacity(a.len() * b.len());
        for (ma, ca) in a {
            for (mb, cb) in b {
                out.push((ma.mul(*mb), ca.mul(cb)));
            }
        }
        Poly::from_terms(out)
    }

    fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    fn add_assign(&mut self, o: &Self) {
        if o.terms.is_empty() {
            return;
        }
        if self.terms.is_empty() {
            self.terms = o.terms.clone();
            return;
        }
        *self = Ring::add(&*self, o);
    }

    fn distance(&self, o: &Self) -> f64 {
        if self == o {
            return 0.0;
        }
        Ring::sub(self, o)
            .terms
            .iter()
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.display_order() {
            let mut body = String::new();
            for (name, e) in [("λ", m.lambda()), ("x", m.x()), ("y", m.y()), ("z", m.z())] {
                match e {
                    0 => {}
                    1 => body.push_str(name),
                    e if e < 0 => body.push_str(&format!("{name}^({e})")),
                    e => body.push_str(&format!("{name}^{e}")),
                }
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let mag = if mag.contains(['+', '-']) || (mag.contains('i') && !body.is_empty()) {
                format!("({mag})")
            } else {
                mag
            };
            let term = if body.is_empty() {
                mag
            } else if mag == "1" {
                body
            } else {
                format!("{mag}{body}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand used by the builders.
pub fn xyz_poly<F: Field>(a: i32, b: i32, c: i32, coef: i64) -> Poly<F> {
    Poly::monomial(a, b, c, F::from_i64(coef))
}
