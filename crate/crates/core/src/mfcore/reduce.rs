//! Elimination of constant invertible entries.

use serde::{Deserialize, Serialize};

use crate::algebra::{permutation_matrix, Field, Matrix, Poly, PolyMatrix};
use crate::error::{Error, Result};

use super::matfac::{shift_mf, MatFac};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorSide {
    First,
    Second,
}

/// Vertical maps of the reduction diagram. `left` acts on the source of `φ`
/// (and the target of `ψ`), `mid` on the target of `φ`. The squares are
/// `mid·φ = bottom_phi·left` and `left·ψ = bottom_psi·mid`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionWitness<F: Field> {
    pub left: PolyMatrix<F>,
    pub mid: PolyMatrix<F>,
    pub bottom_phi: PolyMatrix<F>,
    pub bottom_psi: PolyMatrix<F>,
}

impl<F: Field> ReductionWitness<F> {
    pub fn commutes(&self, m: &MatFac<F>) -> bool {
        &self.mid * m.phi() == &self.bottom_phi * &self.left
            && &self.left * m.psi() == &self.bottom_psi * &self.mid
    }
}

fn to_corner(n: usize, k: usize) -> Vec<usize> {
    (0..n)
        .filter(|&i| i != k)
        .chain(std::iter::once(k))
        .collect()
}

fn is_unit_entry<F: Field>(e: &Poly<F>) -> bool {
    e.is_scalar_unit()
}

/// Reduce along the unit at `pos` of `φ`.
fn reduce_first<F: Field>(
    m: &MatFac<F>,
    (i, j): (usize, usize),
) -> Result<(MatFac<F>, ReductionWitness<F>)> {
    let n = m.size();
    if i >= n || j >= n {
        return Err(Error::InvalidInput(format!(
            "position ({i},{j}) outside a {n}x{n} factor"
        )));
    }
    let u = m.phi().get(i, j);
    if !is_unit_entry(u) {
        return Err(Error::NotAUnit);
    }
    let ui = u.monomial_inverse().ok_or(Error::NotAUnit)?;
    let pr: PolyMatrix<F> = permutation_matrix(&to_corner(n, i));
    let pc: PolyMatrix<F> = permutation_matrix(&to_corner(n, j));
    let phi = &(&pr * m.phi()) * &pc.transpose();
    let psi = &(&pc * m.psi()) * &pr.transpose();
    let k = n - 1;
    let c = phi.block(0, 0, k, k);
    let d = phi.block(0, k, k, 1);
    let et = phi.block(k, 0, 1, k);
    let red_phi = &c - &(&d * &et).scale(&ui);
    let red_psi = psi.block(0, 0, k, k);

    let mut l = Matrix::identity(n);
    l.set_block(k, 0, &et.scale(&ui));
    let mut mm = Matrix::identity(n);
    mm.set_block(0, k, &d.scale(&ui).neg());
    mm.set(k, k, ui.clone());
    let w = ReductionWitness {
        left: &l * &pc,
        mid: &mm * &pr,
        bottom_phi: red_phi.direct_sum(&Matrix::identity(1)),
        bottom_psi: red_psi.direct_sum(&Matrix::scalar(1, Poly::xyz())),
    };
    let reduced = MatFac::new(red_phi, red_psi)?;
    Ok((reduced, w))
}

/// One reduction step along the unit entry at `pos` of the chosen factor.
/// The reduced pair is verified and the witness diagram checked exactly.
pub fn reduce_unit<F: Field>(
    m: &MatFac<F>,
    side: FactorSide,
    pos: (usize, usize),
) -> Result<(MatFac<F>, ReductionWitness<F>)> {
    let (red, w) = match side {
        FactorSide::First => reduce_first(m, pos)?,
        FactorSide::Second => {
            let (r, w) = reduce_first(&shift_mf(m), pos)?;
            let w = ReductionWitness {
                left: w.mid,
                mid: w.left,
                bottom_phi: w.bottom_psi,
                bottom_psi: w.bottom_phi,
            };
            (shift_mf(&r), w)
        }
    };
    if F::EXACT && !w.commutes(m) {
        return Err(Error::InvalidInput(
            "reduction diagram does not commute".into(),
        ));
    }
    Ok((red, w))
}

/// First unit entry in row-major order, `φ` before `ψ`.
pub fn find_unit<F: Field>(m: &MatFac<F>) -> Option<(FactorSide, (usize, usize))> {
    let n = m.size();
    for (side, mat) in [(FactorSide::First, m.phi()), (FactorSide::Second, m.psi())] {
        for i in 0..n {
            for j in 0..n {
                if is_unit_entry(mat.get(i, j)) {
                    return Some((side, (i, j)));
                }
            }
        }
    }
    None
}

/// Reduce until no unit entries remain, recording each step.
pub fn reduce_all_units_traced<F: Field>(
    m: &MatFac<F>,
) -> Result<(MatFac<F>, Vec<(FactorSide, (usize, usize))>)> {
    let mut cur = m.clone();
    let mut steps = Vec::new();
    while let Some((side, pos)) = find_unit(&cur) {
        cur = reduce_unit(&cur, side, pos)?.0;
        steps.push((side, pos));
    }
    Ok((cur, steps))
}

pub fn reduce_all_units<F: Field>(m: &MatFac<F>) -> Result<MatFac<F>> {
    Ok(reduce_all_units_traced(m)?.0)
}
