use std::collections::BTreeMap;

use crate::algebra::{
    adjugate_det, laurent_inverse, trunc_inverse, Field, Matrix, Mono, Poly, PolyMatrix, Ring,
    ScalarMatrix, TruncSeries, DEFAULT_TOL,
};
use crate::error::{Error, Result};

/// The part of a polynomial free of `x, y, z`.
fn constant_part<F: Field>(p: &Poly<F>) -> Poly<F> {
    Poly::from_terms(
        p.terms()
            .iter()
            .filter(|(m, _)| m.is_scalar())
            .cloned()
            .collect(),
    )
}

/// Split `det = (xyz)^a·u` with `u` invertible in the power series ring,
/// i.e. the `x, y, z`-free part of `u` a single Laurent term.
fn split_det<F: Field>(det: &Poly<F>) -> Option<(i32, Poly<F>)> {
    if det.is_zero() {
        return None;
    }
    let xyz = Poly::xyz();
    let mut u = det.clone();
    let mut a = 0;
    loop {
        let c = constant_part(&u);
        if !c.is_zero() {
            return c.is_scalar_unit().then_some((a, u));
        }
        u = u.exact_div(&xyz).ok()?;
        a += 1;
    }
}

/// A factor `φ` of `xyz` over the power series ring: `φ·adj = adj·φ =
/// xyz·u·I` exactly, with `u` a unit series. The opposite factor is
/// `adj·u^{-1}`, a polynomial matrix exactly when `u` is a single term.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCompletion<F: Field> {
    pub adj: PolyMatrix<F>,
    pub unit: Poly<F>,
}

impl<F: Field> SeriesCompletion<F> {
    pub fn is_polynomial(&self) -> bool {
        self.unit.as_monomial().is_some()
    }

    /// The opposite factor, when it is a polynomial matrix.
    pub fn psi(&self) -> Result<PolyMatrix<F>> {
        let inv = self.unit.monomial_inverse().ok_or(Error::NotAFactorOfXYZ)?;
        Ok(self.adj.map(|e| e.mul(&inv)))
    }

    /// The opposite factor modulo monomials of degree above `d`.
    pub fn psi_truncated(&self, d: i32) -> Result<PolyMatrix<F>> {
        let inv = trunc_inverse(&TruncSeries::new(self.unit.clone(), d))?;
        Ok(self.adj.map(|e| e.mul(inv.poly()).truncate(d)))
    }
}

/// [`complete_psi`] over the power series ring: accepts `det φ = (xyz)^a·u`
/// for any unit series `u`.
pub fn complete_psi_series<F: Field>(phi: &PolyMatrix<F>) -> Result<SeriesCompletion<F>> {
    if !phi.is_square() {
        return Err(Error::ShapeMismatch(
            "complete_psi needs a square matrix".into(),
        ));
    }
    let (adj, det) = adjugate_det(phi)?;
    let (adj, det) = (adj.map(|e| e.chop(DEFAULT_TOL)), det.chop(DEFAULT_TOL));
    let (a, unit) = split_det(&det).ok_or(Error::NotAFactorOfXYZ)?;
    let scale = Poly::monomial((a - 1).abs(), (a - 1).abs(), (a - 1).abs(), F::one());
    let adj = adj.try_map(|e| match a {
        0 => Ok(e.mul(&scale)),
        1 => Ok(e.clone()),
        _ => e.exact_div(&scale).map_err(|_| Error::NotAFactorOfXYZ),
    })?;
    Ok(SeriesCompletion { adj, unit })
}

/// The opposite factor `ψ = xyz·adj(φ)/det(φ)`.
pub fn complete_psi<F: Field>(phi: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
    complete_psi_series(phi)?.psi()
}

/// Coefficient matrices of a matrix depending on `λ`: `M = Σ_k M_k λ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaFamily<F: Field> {
    rows: usize,
    cols: usize,
    coeffs: BTreeMap<i32, PolyMatrix<F>>,
}

impl<F: Field> LambdaFamily<F> {
    pub fn extract(m: &PolyMatrix<F>) -> Self {
        let (rows, cols) = m.shape();
        let mut coeffs: BTreeMap<i32, PolyMatrix<F>> = BTreeMap::new();
        for i in 0..rows {
            for j in 0..cols {
                for (k, p) in m.get(i, j).lambda_coeffs() {
                    coeffs
                        .entry(k)
                        .or_insert_with(|| Matrix::zeros(rows, cols))
                        .set(i, j, p);
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LambdaFamily { rows, cols, coeffs }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, PolyMatrix<F>> {
        &self.coeffs
    }

    /// `Σ_k M_k ⊗ Λ^k`.
    pub fn substitute(&self, big: &ScalarMatrix<F>) -> Result<PolyMatrix<F>> {
        self.substitute_with(&mut PowerCache::new(big.clone())?)
    }

    /// [`Self::substitute`] reusing the powers of `Λ` held in `cache`.
    pub fn substitute_with(&self, cache: &mut PowerCache<F>) -> Result<PolyMatrix<F>> {
        let r = cache.size();
        let mut terms: Vec<(usize, usize, Mono, F)> = Vec::new();
        for (&k, c) in &self.coeffs {
            kron_terms(&mut terms, c, cache.power(k)?);
        }
        terms.sort_unstable_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
        let mut out: PolyMatrix<F> = Matrix::zeros(self.rows * r, self.cols * r);
        let mut start = 0;
        while start < terms.len() {
            let (i, j) = (terms[start].0, terms[start].1);
            let end = start
                + terms[start..]
                    .iter()
                    .take_while(|t| (t.0, t.1) == (i, j))
                    .count();
            out.set(
                i,
                j,
                Poly::from_terms(
                    terms[start..end]
                        .iter()
                        .map(|t| (t.2, t.3.clone()))
                        .collect(),
                ),
            );
            start = end;
        }
        Ok(out)
    }

    /// Evaluation at a scalar `λ₀`.
    pub fn evaluate(&self, lam: &Poly<F>) -> Result<PolyMatrix<F>> {
        self.substitute(&Matrix::scalar(1, lam.clone()))
    }
}

/// Integer powers of a fixed square matrix, computed on demand.
#[derive(Clone, Debug)]
pub struct PowerCache<F: Field> {
    base: ScalarMatrix<F>,
    inverse: Option<ScalarMatrix<F>>,
    powers: BTreeMap<i32, ScalarMatrix<F>>,
}

impl<F: Field> PowerCache<F> {
    pub fn new(base: ScalarMatrix<F>) -> Result<Self> {
        if !base.is_square() {
            return Err(Error::ShapeMismatch(
                "substituted matrix must be square".into(),
            ));
        }
        Ok(PowerCache {
            base,
            inverse: None,
            powers: BTreeMap::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.base.rows()
    }

    pub fn power(&mut self, k: i32) -> Result<&ScalarMatrix<F>> {
        if !self.powers.contains_key(&k) {
            let p = if k >= 0 {
                self.base.pow(k as u32)
            } else {
                if self.inverse.is_none() {
                    self.inverse =
                        Some(laurent_inverse(&self.base).ok_or(Error::SingularLambda)?.0);
                }
                self.inverse.as_ref().unwrap().pow((-k) as u32)
            };
            self.powers.insert(k, p);
        }
        Ok(&self.powers[&k])
    }
}

/// The terms of `a ⊗ b` as `(row, column, monomial, coefficient)`.
fn kron_terms<F: Field>(
    out: &mut Vec<(usize, usize, Mono, F)>,
    a: &PolyMatrix<F>,
    b: &PolyMatrix<F>,
) {
    let (br, bc) = b.shape();
    let nz_b: Vec<(usize, usize, &Poly<F>)> = (0..br)
        .flat_map(|i| (0..bc).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, b.get(i, j)))
        .filter(|(_, _, v)| !v.is_zero())
        .collect();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let av = a.get(i, j);
            for (ma, ca) in av.terms() {
                for &(p, q, bv) in &nz_b {
                    for (mb, cb) in bv.terms() {
                        out.push((i * br + p, j * bc + q, ma.mul(*mb), ca.mul(cb)));
                    }
                }
            }
        }
    }
}

pub fn extract_family<F: Field>(m: &PolyMatrix<F>) -> LambdaFamily<F> {
    LambdaFamily::extract(m)
}

pub fn substitute<F: Field>(fam: &LambdaFamily<F>, big: &ScalarMatrix<F>) -> Result<PolyMatrix<F>> {
    fam.substitute(big)
}
