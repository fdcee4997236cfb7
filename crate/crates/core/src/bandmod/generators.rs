//! Generator matrices of the modules attached to band data.

use crate::algebra::{jordan_block, Field, Matrix, Poly, PolyMatrix, Ring};
use crate::words::Word;

pub fn plus(a: i32) -> i32 {
    a.max(0)
}

pub fn minus(a: i32) -> i32 {
    (-a).max(0)
}

/// Columns generating a submodule of `A^r`, `A = k[[x,y,z]]/(xyz)`, with
/// every entry reduced (no monomial divisible by `xyz`).
#[derive(Clone, Debug, PartialEq)]
pub struct GenMatrix<F: Field> {
    m: PolyMatrix<F>,
}

impl<F: Field> GenMatrix<F> {
    pub fn new(m: PolyMatrix<F>) -> Self {
        GenMatrix {
            m: m.map(Poly::reduce_mod_xyz),
        }
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.m
    }

    pub fn rank(&self) -> usize {
        self.m.rows()
    }

    pub fn count(&self) -> usize {
        self.m.cols()
    }

    pub fn column(&self, j: usize) -> Vec<Poly<F>> {
        self.m.column(j)
    }

    pub fn is_reduced(&self) -> bool {
        self.m
            .entries()
            .iter()
            .all(|e| e.terms().iter().all(|(mo, _)| !mo.divisible_by_xyz()))
    }
}

fn diag_blocks<F: Field>(w: &Word, mu: usize, f: impl Fn(usize) -> Poly<F>) -> PolyMatrix<F> {
    let tau = w.tau();
    Matrix::block_diag(
        &(1..=tau)
            .map(|i| Matrix::scalar(mu, f(i)))
            .collect::<Vec<_>>(),
    )
}

/// Diagonal blocks `x^{l_i^-+2}y·I`, superdiagonal blocks `zx^{l_{i+1}^++2}·I`
/// and the corner `zx^{l_1^++2}·J_μ(λ)`.
pub fn pi_x<F: Field>(w: &Word, lam: &Poly<F>, mu: usize) -> PolyMatrix<F> {
    let tau = w.tau();
    let mut m = diag_blocks(w, mu, |i| Poly::monomial(minus(w.l(i)) + 2, 1, 0, F::one()));
    for i in 1..tau {
        let c: PolyMatrix<F> =
            Matrix::scalar(mu, Poly::monomial(plus(w.l(i + 1)) + 2, 0, 1, F::one()));
        m.set_block((i - 1) * mu, i * mu, &c);
    }
    let corner = jordan_block(mu, lam).scale(&Poly::monomial(plus(w.l(1)) + 2, 0, 1, F::one()));
    let r0 = (tau - 1) * mu;
    let cur = m.block(r0, 0, mu, mu);
    m.set_block(r0, 0, &(&cur + &corner));
    m
}

/// Diagonal blocks `(xy^{m_i^++2} + y^{m_i^-+2}z)·I`.
pub fn pi_y<F: Field>(w: &Word, mu: usize) -> PolyMatrix<F> {
    diag_blocks(w, mu, |i| {
        Poly::monomial(1, plus(w.m(i)) + 2, 0, F::one()).add(&Poly::monomial(
            0,
            minus(w.m(i)) + 2,
            1,
            F::one(),
        ))
    })
}

/// Diagonal blocks `(yz^{n_i^++2} + z^{n_i^-+2}x)·I`.
pub fn pi_z<F: Field>(w: &Word, mu: usize) -> PolyMatrix<F> {
    diag_blocks(w, mu, |i| {
        Poly::monomial(0, 1, plus(w.n(i)) + 2, F::one()).add(&Poly::monomial(
            1,
            0,
            minus(w.n(i)) + 2,
            F::one(),
        ))
    })
}

/// `(π_x | π_y | π_z | x²y²I | y²z²I | z²x²I)`.
pub fn build_module_generators<F: Field>(w: &Word, lam: &Poly<F>, mu: usize) -> GenMatrix<F> {
    let k = w.tau() * mu;
    let sq = |a, b, c| Matrix::scalar(k, Poly::monomial(a, b, c, F::one()));
    let parts = [
        pi_x(w, lam, mu),
        pi_y(w, mu),
        pi_z(w, mu),
        sq(2, 2, 0),
        sq(0, 2, 2),
        sq(2, 0, 2),
    ];
    GenMatrix::new(Matrix::hconcat(&parts).expect("equal heights"))
}
