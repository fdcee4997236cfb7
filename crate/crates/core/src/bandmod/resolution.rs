//! The free resolution of the Macaulayfied degenerate band module.

use crate::algebra::{jordan_block, Field, Matrix, Poly, PolyMatrix, Ring};
use crate::canonical::{build_deg, DegVariant};
use crate::error::{Error, Result};

/// `(φ̃, π)` for multiplicity `μ`, with `π·φ̃ ≡ 0 mod xyz`.
#[derive(Clone, Debug)]
pub struct DegenerateResolution<F: Field> {
    pub phi: PolyMatrix<F>,
    pub pi: PolyMatrix<F>,
    /// `π·φ̃` reduced modulo `xyz`.
    pub composite: PolyMatrix<F>,
}

impl<F: Field> DegenerateResolution<F> {
    pub fn composite_vanishes(&self) -> bool {
        self.composite.is_zero()
    }
}

fn sym<F: Field>() -> Poly<F> {
    Poly::monomial(1, 1, 0, F::one())
        .add(&Poly::monomial(0, 1, 1, F::one()))
        .add(&Poly::monomial(1, 0, 1, F::one()))
}

pub fn degenerate_resolution<F: Field>(mu: usize) -> Result<DegenerateResolution<F>> {
    if mu == 0 {
        return Err(Error::InvalidInput("multiplicity must be positive".into()));
    }
    let (phi, pi) = if mu == 1 {
        (
            Matrix::scalar(1, Poly::xyz().neg()),
            Matrix::scalar(1, sym()),
        )
    } else {
        let k = mu - 1;
        let (phi, _) = build_deg(1, &Poly::one(), k, DegVariant::Reduced)?;
        let mono = |a, b, c| Poly::monomial(a, b, c, F::one());
        let ik = Matrix::<Poly<F>>::identity(k);
        let mut pi = Matrix::zeros(mu, 3 * k + 1);
        pi.set(0, 0, sym());
        pi.set(0, 1, mono(1, 0, 1).mul(&Poly::x()));
        let b1 = &jordan_block(k, &Poly::one()).scale(&mono(2, 0, 1)) + &ik.scale(&mono(2, 1, 0));
        pi.set_block(1, 1, &b1);
        pi.set_block(1, 1 + k, &ik.scale(&mono(1, 2, 0).add(&mono(0, 2, 1))));
        pi.set_block(1, 1 + 2 * k, &ik.scale(&mono(0, 1, 2).add(&mono(1, 0, 2))));
        (phi, pi)
    };
    let composite = (&pi * &phi).map(Poly::reduce_mod_xyz);
    Ok(DegenerateResolution { phi, pi, composite })
}
