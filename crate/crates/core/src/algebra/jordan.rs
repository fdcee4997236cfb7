//! Jordan blocks, the cyclic matrices `R_N`, characteristic polynomials and
//! univariate polynomials in `t`.

use std::fmt;

use super::field::{Field, Ring};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

pub type PolyMatrix<F> = Matrix<Poly<F>>;

/// Matrices whose entries are Laurent polynomials in `λ` alone.
pub type ScalarMatrix<F> = Matrix<Poly<F>>;

/// Which member of the Jordan family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanKind {
    /// `J_ρ(λ) = λI + J_ρ`.
    J { rho: usize },
    /// `J_ρ(λ)^{-1} = Σ_j (-1)^j λ^{-j-1} J_ρ^j`.
    Jinv { rho: usize },
    /// `R_N(λ) = J_N + λK_N^{N-1}`.
    R { n: usize },
    /// `R_N^T(λ^{-1}) = K_N + λ^{-1}J_N^{N-1}`.
    RTInv { n: usize },
    /// `R_N(J_ρ(λ)) = J_N⊗I_ρ + K_N^{N-1}⊗J_ρ(λ)`.
    RJ { n: usize, rho: usize },
    /// `R_N^T(J_ρ(λ)^{-1}) = K_N⊗I_ρ + J_N^{N-1}⊗J_ρ(λ)^{-1}`.
    RTJinv { n: usize, rho: usize },
}

/// Nilpotent shift `J_n` (ones on the superdiagonal).
pub fn shift_up<F: Field>(n: usize) -> ScalarMatrix<F> {
    Matrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            Poly::one()
        } else {
            Poly::zero()
        }
    })
}

/// `K_n = J_n^T` (ones on the subdiagonal).
pub fn shift_down<F: Field>(n: usize) -> ScalarMatrix<F> {
    shift_up::<F>(n).transpose()
}

fn check_unit<F: Field>(lam: &Poly<F>) -> Result<Poly<F>> {
    if !lam.is_scalar_unit() {
        return Err(Error::NonUnitLambda);
    }
    lam.monomial_inverse().ok_or(Error::NonUnitLambda)
}

/// `J_ρ(λ)`.
pub fn jordan_block<F: Field>(rho: usize, lam: &Poly<F>) -> ScalarMatrix<F> {
    &Matrix::scalar(rho, lam.clone()) + &shift_up(rho)
}

/// `J_ρ(λ)^{-1}`; `λ` must be a unit.
pub fn jordan_inverse<F: Field>(rho: usize, lam: &Poly<F>) -> Result<ScalarMatrix<F>> {
    let li = check_unit(lam)?;
    let n = shift_up::<F>(rho);
    let mut out = Matrix::zeros(rho, rho);
    let mut npow = Matrix::identity(rho);
    let mut coef = li.clone();
    for _ in 0..rho {
        out = &out + &npow.scale(&coef);
        npow = &npow * &n;
        coef = coef.mul(&li).neg();
    }
    Ok(out)
}

/// `R_N(A) = J_N⊗I + K_N^{N-1}⊗A` for square `A`.
pub fn r_of<F: Field>(n: usize, a: &ScalarMatrix<F>) -> ScalarMatrix<F> {
    let k = a.rows();
    &shift_up::<F>(n).kron(&Matrix::identity(k)) + &shift_down::<F>(n).pow(n as u32 - 1).kron(a)
}

/// `R_N^T(B) = K_N⊗I + J_N^{N-1}⊗B` for square `B`.
pub fn rt_of<F: Field>(n: usize, b: &ScalarMatrix<F>) -> ScalarMatrix<F> {
    let k = b.rows();
    &shift_down::<F>(n).kron(&Matrix::identity(k)) + &shift_up::<F>(n).pow(n as u32 - 1).kron(b)
}

/// Build a member of the Jordan family at parameter `λ`.
pub fn jordan_family<F: Field>(kind: JordanKind, lam: &Poly<F>) -> Result<ScalarMatrix<F>> {
    let positive = |v: usize| {
        if v == 0 {
            Err(Error::InvalidInput("sizes must be positive".into()))
        } else {
            Ok(())
        }
    };
    match kind {
        JordanKind::J { rho } => {
            positive(rho)?;
            check_unit(lam)?;
            Ok(jordan_block(rho, lam))
        }
        JordanKind::Jinv { rho } => {
            positive(rho)?;
            jordan_inverse(rho, lam)
        }
        JordanKind::R { n } => {
            positive(n)?;
            check_unit(lam)?;
            Ok(r_of(n, &Matrix::scalar(1, lam.clone())))
        }
        JordanKind::RTInv { n } => {
            positive(n)?;
            let li = check_unit(lam)?;
            Ok(rt_of(n, &Matrix::scalar(1, li)))
        }
        JordanKind::RJ { n, rho } => {
            positive(n)?;
            positive(rho)?;
            check_unit(lam)?;
            Ok(r_of(n, &jordan_block(rho, lam)))
        }
        JordanKind::RTJinv { n, rho } => {
            positive(n)?;
            positive(rho)?;
            Ok(rt_of(n, &jordan_inverse(rho, lam)?))
        }
    }
}

/// Dense univariate polynomial in `t`; `coeffs[k]` multiplies `t^k`.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<Poly<F>>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<Poly<F>>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `c·t^e`.
    pub fn monomial(e: usize, c: Poly<F>) -> Self {
        let mut v = vec![Poly::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    /// `t - a`.
    pub fn linear(a: Poly<F>) -> Self {
        Self::new(vec![a.neg(), Poly::one()])
    }

    pub fn coeffs(&self) -> &[Poly<F>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl<F: Field> Ring for UniPoly<F> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        UniPoly {
            coeffs: vec![Poly::one()],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Poly::zero();
        Self::new(
            (0..n)
                .map(|k| {
                    self.coeffs
                        .get(k)
                        .unwrap_or(&z)
                        .add(o.coeffs.get(k).unwrap_or(&z))
                })
                .collect(),
        )
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Poly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j].add_assign(&a.mul(b));
            }
        }
        Self::new(v)
    }
    fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
    fn distance(&self, o: &Self) -> f64 {
        let d = self.sub(o);
        d.coeffs
            .iter()
            .map(|c| c.distance(&Poly::zero()))
            .fold(0.0, f64::max)
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let tp = match k {
                0 => String::new(),
                1 => "t".into(),
                k => format!("t^{k}"),
            };
            let cs = c.to_string();
            parts.push(match (cs.as_str(), tp.is_empty()) {
                (_, true) => cs,
                ("1", false) => tp,
                ("-1", false) => format!("-{tp}"),
                _ if c.len() == 1 => format!("{cs}{tp}"),
                _ => format!("({cs}){tp}"),
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Berkowitz: coefficients `c_0 = 1, c_1, …, c_n` with
/// `det(tI − A) = Σ c_k t^{n−k}`. Division-free, so valid over any ring.
pub fn berkowitz<T: Ring>(a: &Matrix<T>) -> Vec<T> {
    let n = a.rows();
    let mut v = vec![T::one()];
    for r in 0..n {
        let mut col = Vec::with_capacity(r + 2);
        col.push(T::one());
        col.push(a.get(r, r).neg());
        let mut x: Vec<T> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for _ in 0..r {
            let mut s = T::zero();
            for (j, xj) in x.iter().enumerate() {
                let rj = a.get(r, j);
                if !rj.is_zero() && !xj.is_zero() {
                    s.add_assign(&rj.mul(xj));
                }
            }
            col.push(s.neg());
            let mut nx = vec![T::zero(); r];
            for (i, nxi) in nx.iter_mut().enumerate() {
                for (j, xj) in x.iter().enumerate() {
                    let aij = a.get(i, j);
                    if !aij.is_zero() && !xj.is_zero() {
                        nxi.add_assign(&aij.mul(xj));
                    }
                }
            }
            x = nx;
        }
        let mut nv = vec![T::zero(); r + 2];
        for (i, nvi) in nv.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                let c = &col[i - j];
                if !c.is_zero() && !vj.is_zero() {
                    nvi.add_assign(&c.mul(vj));
                }
            }
        }
        v = nv;
    }
    v
}

/// `det(tI − M)` for a square matrix over Laurent scalars.
pub fn char_poly<F: Field>(m: &ScalarMatrix<F>) -> Result<UniPoly<F>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(
            "char_poly of non-square matrix".into(),
        ));
    }
    let mut c = berkowitz(m);
    c.reverse();
    Ok(UniPoly::new(c))
}
