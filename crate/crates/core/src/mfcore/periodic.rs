//! Splitting factorizations of periodic words into `N` summands indexed by
//! the `N`-th roots of the parameter.

use num_complex::Complex64;

use crate::algebra::{
    field_inverse, from_constant, jordan_block, null_vector, r_of, shuffle_matrix,
    solve_particular, to_constant, Field, Matrix, Poly, PolyMatrix, DEFAULT_TOL,
};
use crate::canonical::{build_deg, build_phi, DegVariant};
use crate::error::{Error, Result};
use crate::words::{NormalWord, Word};

use super::matfac::{direct_sum_all, MatFac};

/// `λ_k = |λ|^{1/N} e^{i(arg λ + 2πk)/N}`, `k = 0, …, N−1`.
pub fn numeric_roots(lam: Complex64, n: usize) -> Vec<Complex64> {
    let r = lam.norm().powf(1.0 / n as f64);
    let arg = lam.arg();
    (0..n)
        .map(|k| Complex64::from_polar(r, (arg + 2.0 * std::f64::consts::PI * k as f64) / n as f64))
        .collect()
}

/// The `N`-th roots of a constant `λ` in the field, in the order above.
pub fn field_roots<F: Field>(lam: &Poly<F>, n: usize) -> Result<Vec<F>> {
    let c = lam
        .as_constant()
        .ok_or_else(|| Error::InvalidInput("parameter must be a constant".into()))?;
    if c.is_zero() {
        return Err(Error::NonUnitLambda);
    }
    numeric_roots(c.to_c64(), n)
        .into_iter()
        .map(|z| {
            let r = F::from_c64(z).ok_or(Error::RootsNotRepresentable)?;
            let mut p = F::one();
            for _ in 0..n {
                p = p.mul(&r);
            }
            let ok = if F::EXACT {
                p == c
            } else {
                p.distance(&c) <= DEFAULT_TOL * (1.0 + c.abs())
            };
            if ok {
                Ok(r)
            } else {
                Err(Error::RootsNotRepresentable)
            }
        })
        .collect()
}

/// `P` with `R·P = P·⊕_k J_ρ(λ_k)`: generalized eigenvector chains of `R`.
pub fn jordan_transition<F: Field>(r: &Matrix<F>, roots: &[F], rho: usize) -> Result<Matrix<F>> {
    let n = r.rows();
    let tol = if F::EXACT { 0.0 } else { 1e-8 };
    let mut cols: Vec<Vec<F>> = Vec::with_capacity(n);
    for mu in roots {
        let shifted = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                r.get(i, j).sub(mu)
            } else {
                r.get(i, j).clone()
            }
        });
        let mut v = null_vector(&shifted, tol).ok_or(Error::SingularBaseChange)?;
        cols.push(v.clone());
        for _ in 1..rho {
            v = solve_particular(&shifted, &v, tol).ok_or(Error::SingularBaseChange)?;
            cols.push(v.clone());
        }
    }
    if cols.len() != n {
        return Err(Error::ShapeMismatch(
            "Jordan chains do not fill the space".into(),
        ));
    }
    Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

/// Summands `φ(w̃′, λ_k, ρ)` and a constant `V` with
/// `φ(w′,λ,ρ) = V^{-1}·(⊕_k φ(w̃′,λ_k,ρ))·V`, and likewise for `ψ`.
#[derive(Clone, Debug)]
pub struct PeriodicDecomposition<F: Field> {
    pub period: usize,
    pub base_word: Word,
    pub roots: Vec<F>,
    pub summands: Vec<MatFac<F>>,
    pub whole: MatFac<F>,
    pub v: PolyMatrix<F>,
    pub v_inv: PolyMatrix<F>,
    /// Max-norm of `V·φ·V^{-1} − ⊕φ_k` and of the `ψ` analogue.
    pub residual: f64,
}

fn residual<F: Field>(
    whole: &MatFac<F>,
    sum: &MatFac<F>,
    v: &PolyMatrix<F>,
    v_inv: &PolyMatrix<F>,
) -> f64 {
    let a = &(v * whole.phi()) * v_inv;
    let b = &(v * whole.psi()) * v_inv;
    a.distance(sum.phi()).max(b.distance(sum.psi()))
}

fn finish<F: Field>(
    period: usize,
    base_word: Word,
    roots: Vec<F>,
    summands: Vec<MatFac<F>>,
    whole: MatFac<F>,
    u: Matrix<F>,
) -> Result<PeriodicDecomposition<F>> {
    let tol = if F::EXACT { 0.0 } else { 1e-12 };
    let u_inv = field_inverse(&u, tol).ok_or(Error::SingularBaseChange)?;
    let (v, v_inv) = (from_constant(&u_inv), from_constant(&u));
    let sum = direct_sum_all(&summands);
    let res = residual(&whole, &sum, &v, &v_inv);
    if F::EXACT && res != 0.0 {
        return Err(Error::WitnessNotFound);
    }
    Ok(PeriodicDecomposition {
        period,
        base_word,
        roots,
        summands,
        whole,
        v,
        v_inv,
        residual: res,
    })
}

pub fn periodic_decompose<F: Field>(
    w: &NormalWord,
    lam: &Poly<F>,
    rho: usize,
) -> Result<PeriodicDecomposition<F>> {
    let (base, period) = w.periodicity();
    let base_nw = NormalWord::new(base.clone())?;
    let whole = MatFac::from_phi(build_phi(w, lam, rho)?)?;
    let roots = field_roots(lam, period)?;
    let summands = roots
        .iter()
        .map(|mu| MatFac::from_phi(build_phi(&base_nw, &Poly::constant(mu.clone()), rho)?))
        .collect::<Result<Vec<_>>>()?;
    let n = 3 * base.tau();
    let r =
        to_constant(&r_of(period, &jordan_block(rho, lam))).ok_or(Error::RootsNotRepresentable)?;
    let p = jordan_transition(&r, &roots, rho)?;
    let id_n = Matrix::<F>::identity(period);
    let u = &(&id_n.kron(&shuffle_matrix(rho, n)) * &p.kron(&Matrix::identity(n)))
        * &id_n.kron(&shuffle_matrix(n, rho));
    finish(period, base, roots, summands, whole, u)
}

/// The degenerate form `(φ_deg, ψ_deg)((2,2,2)^τ, λ, ρ)` split into `τ`
/// degenerate forms of period one.
pub fn degenerate_periodic_decompose<F: Field>(
    tau: usize,
    lam: &Poly<F>,
    rho: usize,
) -> Result<PeriodicDecomposition<F>> {
    let (phi, psi) = build_deg(tau, lam, rho, DegVariant::Full)?;
    let whole = MatFac::new(phi, psi)?;
    let roots = field_roots(lam, tau)?;
    let summands = roots
        .iter()
        .map(|mu| {
            let (a, b) = build_deg(1, &Poly::constant(mu.clone()), rho, DegVariant::Full)?;
            MatFac::new(a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    let r = to_constant(&r_of(tau, &jordan_block(rho, lam))).ok_or(Error::RootsNotRepresentable)?;
    let p = jordan_transition(&r, &roots, rho)?;
    let u =
        &Matrix::<F>::identity(4).kron(&p) * &shuffle_matrix(tau, 4).kron(&Matrix::identity(rho));
    finish(tau, Word::new(vec![2, 2, 2])?, roots, summands, whole, u)
}
