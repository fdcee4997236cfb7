//! The hexagon of maps over `k[t]` attached to a band datum.

use crate::algebra::{berkowitz, jordan_block, Field, Matrix, Poly, Ring, UniPoly};
use crate::words::Word;

use super::generators::{minus, plus};

pub type TMatrix<F> = Matrix<UniPoly<F>>;

/// Six `τμ × τμ` matrices: two from the `n`-vertex (`t^{n_i^-+1}`,
/// `t^{n_i^++1}`), two from the `m`-vertex (`t^{m_i^-+1}`, `t^{m_i^++1}`), and
/// from the `l`-vertex the diagonal `t^{l_i^-+1}` and the cyclic map with
/// `t^{l_{i+1}^++1}` above the diagonal and `t^{l_1^++1}J_μ(λ)` in the corner.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleTheta<F: Field> {
    pub n_minus: TMatrix<F>,
    pub n_plus: TMatrix<F>,
    pub m_minus: TMatrix<F>,
    pub m_plus: TMatrix<F>,
    pub l_minus: TMatrix<F>,
    pub l_cyclic: TMatrix<F>,
}

fn t_pow<F: Field>(e: i32) -> UniPoly<F> {
    UniPoly::monomial(e as usize, Poly::one())
}

fn t_diag<F: Field>(w: &Word, mu: usize, e: impl Fn(usize) -> i32) -> TMatrix<F> {
    let tau = w.tau();
    Matrix::from_fn(tau * mu, tau * mu, |a, b| {
        if a == b {
            t_pow(e(a / mu + 1) + 1)
        } else {
            UniPoly::zero()
        }
    })
}

pub fn build_theta<F: Field>(w: &Word, lam: &Poly<F>, mu: usize) -> TripleTheta<F> {
    let tau = w.tau();
    let mut cyc: TMatrix<F> = Matrix::zeros(tau * mu, tau * mu);
    for i in 1..tau {
        for r in 0..mu {
            cyc.set((i - 1) * mu + r, i * mu + r, t_pow(plus(w.l(i + 1)) + 1));
        }
    }
    let j = jordan_block(mu, lam);
    let e = plus(w.l(1)) as usize + 1;
    for a in 0..mu {
        for b in 0..mu {
            let c = j.get(a, b);
            if !c.is_zero() {
                let (ra, cb) = ((tau - 1) * mu + a, b);
                let cur = cyc.get(ra, cb).clone();
                cyc.set(ra, cb, cur.add(&UniPoly::monomial(e, c.clone())));
            }
        }
    }
    TripleTheta {
        n_minus: t_diag(w, mu, |i| minus(w.n(i))),
        n_plus: t_diag(w, mu, |i| plus(w.n(i))),
        m_minus: t_diag(w, mu, |i| minus(w.m(i))),
        m_plus: t_diag(w, mu, |i| plus(w.m(i))),
        l_minus: t_diag(w, mu, |i| minus(w.l(i))),
        l_cyclic: cyc,
    }
}

impl<F: Field> TripleTheta<F> {
    pub fn maps(&self) -> [&TMatrix<F>; 6] {
        [
            &self.n_minus,
            &self.n_plus,
            &self.l_cyclic,
            &self.l_minus,
            &self.m_minus,
            &self.m_plus,
        ]
    }

    /// Every nonzero entry is divisible by `t`.
    pub fn all_entries_vanish_at_zero(&self) -> bool {
        self.maps().iter().all(|m| {
            m.entries()
                .iter()
                .all(|e| e.is_zero() || e.valuation() >= Some(1))
        })
    }

    /// The determinant of the cyclic map is a unit times a power of `t`, so
    /// the map is invertible over `k((t))`.
    pub fn cyclic_invertible_over_laurent(&self) -> bool {
        let c = berkowitz(&self.l_cyclic);
        let n = self.l_cyclic.rows();
        let det = &c[n];
        let nonzero: Vec<&Poly<F>> = det.coeffs().iter().filter(|p| !p.is_zero()).collect();
        nonzero.len() == 1 && nonzero[0].is_scalar_unit()
    }
}
