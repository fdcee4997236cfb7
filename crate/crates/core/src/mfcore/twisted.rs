//! Rigid twisted complexes: block upper-triangular factorizations assembled
//! from shifted summands and odd twisting data.

use std::collections::BTreeMap;

use crate::algebra::{
    jordan_block, jordan_inverse, shift_down, shift_up, shuffle_matrix, Field, Matrix, Poly,
    PolyMatrix, Ring,
};
use crate::canonical::{build_phi, complete_psi, extract_family};
use crate::error::{Error, Result};
use crate::words::NormalWord;

use super::matfac::{shift_mf, MFMorphism, MatFac, Parity};

/// Summands with their shifts in `ℤ/2`, and odd twists `(γ_ij, δ_ij)`
/// from summand `j` to summand `i` for `i < j`.
#[derive(Clone, Debug)]
pub struct TwistSpec<F: Field> {
    pub blocks: Vec<(MatFac<F>, u8)>,
    pub twists: BTreeMap<(usize, usize), MFMorphism<F>>,
}

impl<F: Field> TwistSpec<F> {
    pub fn new(blocks: Vec<(MatFac<F>, u8)>) -> Self {
        TwistSpec {
            blocks,
            twists: BTreeMap::new(),
        }
    }

    pub fn with_twist(mut self, i: usize, j: usize, m: MFMorphism<F>) -> Self {
        self.twists.insert((i, j), m);
        self
    }

    /// Any summand carries an odd shift.
    pub fn uses_shifts(&self) -> bool {
        self.blocks.iter().any(|(_, k)| k % 2 == 1)
    }

    fn shifted(&self) -> Vec<MatFac<F>> {
        self.blocks
            .iter()
            .map(|(m, k)| if k % 2 == 1 { shift_mf(m) } else { m.clone() })
            .collect()
    }

    /// `(φ, ψ, γ, δ)` assembled as block matrices.
    pub fn assemble(&self) -> Result<[PolyMatrix<F>; 4]> {
        let parts = self.shifted();
        let sizes: Vec<usize> = parts.iter().map(MatFac::size).collect();
        let offs: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let total: usize = sizes.iter().sum();
        let phi = Matrix::block_diag(&parts.iter().map(|m| m.phi().clone()).collect::<Vec<_>>());
        let psi = Matrix::block_diag(&parts.iter().map(|m| m.psi().clone()).collect::<Vec<_>>());
        let mut gamma = Matrix::zeros(total, total);
        let mut delta = Matrix::zeros(total, total);
        for (&(i, j), t) in &self.twists {
            if i >= j || j >= parts.len() {
                return Err(Error::InvalidInput(format!(
                    "twist ({i},{j}) is not strictly upper"
                )));
            }
            if t.parity != Parity::Odd {
                return Err(Error::InvalidInput("twists must be odd".into()));
            }
            if t.first.shape() != (sizes[i], sizes[j]) || t.second.shape() != (sizes[i], sizes[j]) {
                return Err(Error::ShapeMismatch(format!("twist ({i},{j})")));
            }
            gamma.set_block(offs[i], offs[j], &t.first);
            delta.set_block(offs[i], offs[j], &t.second);
        }
        Ok([phi, psi, gamma, delta])
    }

    /// `ψγ + δφ + δγ = 0` and `φδ + γψ + γδ = 0`.
    pub fn maurer_cartan_holds(&self) -> Result<bool> {
        let [phi, psi, g, d] = self.assemble()?;
        let a = &(&(&psi * &g) + &(&d * &phi)) + &(&d * &g);
        let b = &(&(&phi * &d) + &(&g * &psi)) + &(&g * &d);
        Ok(a.is_zero() && b.is_zero())
    }
}

/// `(φ + γ, ψ + δ)`, after checking the Maurer–Cartan equation.
pub fn build_twisted<F: Field>(spec: &TwistSpec<F>) -> Result<MatFac<F>> {
    if !spec.maurer_cartan_holds()? {
        return Err(Error::MaurerCartanViolated);
    }
    let [phi, psi, g, d] = spec.assemble()?;
    MatFac::new(&phi + &g, &psi + &d)
}

/// A rank-`ρ` canonical factorization exhibited as a twisted complex of
/// `ρ` rank-one copies.
#[derive(Clone, Debug)]
pub struct TwistedWitness<F: Field> {
    pub spec: TwistSpec<F>,
    pub twisted: MatFac<F>,
    /// Constant permutation `S` with `S·φ(w′,λ,ρ)·S^T = φ + γ`.
    pub conjugation: PolyMatrix<F>,
}

/// Superdiagonal twist blocks of `φ`: `−x^{l₁′−1}K^{3τ−1}` one step above the
/// diagonal when `l₁′ ≥ 1`; `(−1)^{j+1}λ^{−j−1}x^{−l₁′}J^{3τ−1}` at distance
/// `j` when `l₁′ ≤ 0`.
pub fn twist_gamma<F: Field>(w: &NormalWord, lam: &Poly<F>, dist: usize) -> Result<PolyMatrix<F>> {
    let n = 3 * w.tau();
    let l1 = w.l(1);
    if l1 >= 1 {
        if dist != 1 {
            return Ok(Matrix::zeros(n, n));
        }
        return Ok(shift_down::<F>(n)
            .pow(n as u32 - 1)
            .scale(&Poly::monomial(l1 - 1, 0, 0, F::one()).neg()));
    }
    let li = lam.monomial_inverse().ok_or(Error::NonUnitLambda)?;
    let sign = if dist % 2 == 1 {
        F::one()
    } else {
        F::one().neg()
    };
    let c = li
        .pow(dist as u32 + 1)
        .mul(&Poly::monomial(-l1, 0, 0, sign));
    Ok(shift_up::<F>(n).pow(n as u32 - 1).scale(&c))
}

fn jordan_power<F: Field>(rho: usize, lam: &Poly<F>, k: i32) -> Result<PolyMatrix<F>> {
    Ok(if k >= 0 {
        jordan_block(rho, lam).pow(k as u32)
    } else {
        jordan_inverse(rho, lam)?.pow((-k) as u32)
    })
}

pub fn twisted_similarity_check<F: Field>(
    w: &NormalWord,
    lam: &Poly<F>,
    rho: usize,
) -> Result<TwistedWitness<F>> {
    let n = 3 * w.tau();
    let phi1 = build_phi(w, lam, 1)?;
    let psi1 = complete_psi(&phi1)?;
    let base = MatFac::new(phi1, psi1.clone())?;
    let sym_psi = complete_psi(&build_phi(w, &Poly::lambda(), 1)?)?;
    let fam = extract_family(&sym_psi);
    let powers: BTreeMap<i32, PolyMatrix<F>> = fam
        .coeffs()
        .keys()
        .map(|&k| Ok((k, jordan_power(rho, lam, k)?)))
        .collect::<Result<_>>()?;
    let mut spec = TwistSpec::new(vec![(base, 0); rho]);
    for a in 0..rho {
        for b in a + 1..rho {
            let gamma = twist_gamma(w, lam, b - a)?;
            let mut delta: PolyMatrix<F> = Matrix::zeros(n, n);
            for (k, mk) in fam.coeffs() {
                let c = powers[k].get(a, b);
                if !c.is_zero() {
                    delta = &delta + &mk.scale(c);
                }
            }
            if gamma.is_zero() && delta.is_zero() {
                continue;
            }
            spec = spec.with_twist(a, b, MFMorphism::odd(gamma, delta));
        }
    }
    let twisted = build_twisted(&spec)?;
    let s: PolyMatrix<F> = shuffle_matrix(n, rho);
    let phi = build_phi(w, lam, rho)?;
    let psi = complete_psi(&phi)?;
    let st = s.transpose();
    if &(&s * &phi) * &st != *twisted.phi() || &(&s * &psi) * &st != *twisted.psi() {
        return Err(Error::WitnessNotFound);
    }
    Ok(TwistedWitness {
        spec,
        twisted,
        conjugation: s,
    })
}
