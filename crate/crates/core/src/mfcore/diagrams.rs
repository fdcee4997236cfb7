//! Explicit isomorphism diagrams: the degenerate form against the
//! alternative canonical form, and a family that only splits after
//! completion.

use crate::algebra::{
    field_inverse, from_constant, to_constant, trunc_inverse, Field, Matrix, Poly, PolyMatrix,
    Ring, TruncSeries,
};
use crate::canonical::{build_deg, build_phi_alt, complete_psi, degenerate_r, DegVariant};
use crate::error::{Error, Result};
use crate::words::{NormalWord, Word};

/// A three-column commutative diagram with vertical maps `v0, v1, v2`:
/// `v1·top_phi = bottom_phi·v0` and `v2·top_psi = bottom_psi·v1`.
#[derive(Clone, Debug)]
pub struct Diagram<F: Field> {
    pub top_phi: PolyMatrix<F>,
    pub top_psi: PolyMatrix<F>,
    pub bottom_phi: PolyMatrix<F>,
    pub bottom_psi: PolyMatrix<F>,
    pub v0: PolyMatrix<F>,
    pub v1: PolyMatrix<F>,
    pub v2: PolyMatrix<F>,
}

impl<F: Field> Diagram<F> {
    /// The two squares, each as `(left side, right side)`.
    pub fn squares(&self) -> [(PolyMatrix<F>, PolyMatrix<F>); 2] {
        [
            (&self.v1 * &self.top_phi, &self.bottom_phi * &self.v0),
            (&self.v2 * &self.top_psi, &self.bottom_psi * &self.v1),
        ]
    }

    pub fn commutes(&self) -> bool {
        self.squares().iter().all(|(a, b)| a == b)
    }

    /// Both squares agree after dropping monomials of total degree above `d`.
    pub fn commutes_truncated(&self, d: i32) -> bool {
        self.squares()
            .iter()
            .all(|(a, b)| a.map(|e| e.truncate(d)) == b.map(|e| e.truncate(d)))
    }
}

/// The base change from `(φ_deg, ψ_deg)((2,2,2)^τ, λ, ρ)` to
/// `(φ_alt ⊕ xyz·I, ψ_alt ⊕ I)` built from `(I − R)^{-1}`.
pub fn degenerate_reduction_diagram<F: Field>(
    tau: usize,
    lam: &Poly<F>,
    rho: usize,
) -> Result<Diagram<F>> {
    let k = tau * rho;
    let r = degenerate_r(tau, lam, rho);
    let i_minus_r = to_constant(&(&Matrix::identity(k) - &r))
        .ok_or_else(|| Error::InvalidInput("parameter must be a constant".into()))?;
    let tol = if F::EXACT { 0.0 } else { 1e-12 };
    let q = from_constant(&field_inverse(&i_minus_r, tol).ok_or(Error::SingularBaseChange)?);
    let (top_phi, top_psi) = build_deg(tau, lam, rho, DegVariant::Full)?;
    let w = NormalWord::new(Word::new([2, 2, 2].repeat(tau))?)?;
    let alt = build_phi_alt(&w, lam, rho)?;
    let alt_psi = complete_psi(&alt)?;
    let bottom_phi = alt.direct_sum(&Matrix::scalar(k, Poly::xyz()));
    let bottom_psi = alt_psi.direct_sum(&Matrix::identity(k));
    let ik = Matrix::<Poly<F>>::identity(k);
    let col = Matrix::vconcat(&[
        ik.scale(&Poly::y()),
        ik.scale(&Poly::z()),
        ik.scale(&Poly::x()),
    ])?;
    let row = Matrix::hconcat(&[
        ik.scale(&Poly::x()),
        ik.scale(&Poly::y()),
        ik.scale(&Poly::z()),
    ])?;
    let mut v0 = Matrix::identity(4 * k);
    v0.set_block(0, 3 * k, &(&col * &q).neg());
    v0.set_block(3 * k, 3 * k, &q.neg());
    let mut v1 = Matrix::zeros(4 * k, 4 * k);
    v1.set_block(0, k, &Matrix::identity(3 * k));
    v1.set_block(3 * k, 0, &ik);
    v1.set_block(3 * k, k, &(&q * &row));
    Ok(Diagram {
        top_phi,
        top_psi,
        bottom_phi,
        bottom_psi,
        v2: v0.clone(),
        v0,
        v1,
    })
}

/// The pair `([[z, λ−y],[0, xy]], [[xy, −λ+y],[0, z]])`.
pub fn completion_pair<F: Field>(lam: &Poly<F>) -> (PolyMatrix<F>, PolyMatrix<F>) {
    let (x, y, z) = (Poly::<F>::x(), Poly::<F>::y(), Poly::<F>::z());
    let ly = lam.sub(&y);
    let phi = Matrix::from_rows(vec![
        vec![z.clone(), ly.clone()],
        vec![Poly::zero(), x.mul(&y)],
    ]);
    let psi = Matrix::from_rows(vec![vec![x.mul(&y), ly.neg()], vec![Poly::zero(), z]]);
    (phi, psi)
}

/// The completion diagram with `(λ − y)^{-1}` replaced by its expansion up
/// to total degree `d`.
pub fn completion_diagram<F: Field>(lam: &Poly<F>, d: i32) -> Result<Diagram<F>> {
    if lam.has_lambda() || !lam.is_scalar_unit() {
        return Err(Error::NonUnitConstantTerm);
    }
    let (phi, psi) = completion_pair(lam);
    let (x, y, z) = (Poly::<F>::x(), Poly::<F>::y(), Poly::<F>::z());
    let ly = lam.sub(&y);
    let u = trunc_inverse(&TruncSeries::new(ly.clone(), d))?
        .poly()
        .clone();
    let o = Poly::<F>::one;
    let zero = Poly::<F>::zero;
    let v0 = Matrix::from_rows(vec![vec![o(), zero()], vec![z.mul(&u), o()]]);
    let v1 = Matrix::from_rows(vec![vec![x.mul(&y), ly.neg()], vec![u, zero()]]);
    Ok(Diagram {
        top_phi: phi,
        top_psi: psi,
        bottom_phi: Matrix::diagonal(vec![Poly::xyz(), o()]),
        bottom_psi: Matrix::diagonal(vec![o(), Poly::xyz()]),
        v2: v0.clone(),
        v0,
        v1,
    })
}
