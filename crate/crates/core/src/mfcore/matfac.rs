//! Matrix factorizations of `xyz`, morphisms between them and the
//! 2-periodic differential.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    matrix_from_json, matrix_to_json, Field, Matrix, Mono, Poly, PolyMatrix, Ring, ScalarField,
    DEFAULT_TOL,
};
use crate::canonical::complete_psi;
use crate::error::{Error, Result};

fn close<F: Field>(a: &Poly<F>, b: &Poly<F>, tol: f64) -> bool {
    if F::EXACT {
        a == b
    } else {
        a.distance(b) <= tol
    }
}

/// `a·b = xyz·(I ⊗ U)`, checked row by row over the nonzero pattern
/// without forming the product. `U = [1]` gives `xyz·I`.
fn product_is_xyz_block<F: Field>(
    a: &PolyMatrix<F>,
    b: &PolyMatrix<F>,
    u: &PolyMatrix<F>,
    tol: f64,
) -> bool {
    let n = a.rows();
    let r = u.rows();
    if r == 0 || n % r != 0 {
        return false;
    }
    if F::EXACT {
        return exact_product_is_xyz_block(a, b, u);
    }
    let rows_b: Vec<Vec<(usize, &Poly<F>)>> = (0..n)
        .map(|k| {
            b.row(k)
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .collect()
        })
        .collect();
    let target = u.map(|e| e.mul(&Poly::xyz()));
    let mut acc: Vec<Poly<F>> = vec![Poly::zero(); n];
    let mut touched: Vec<usize> = Vec::new();
    for i in 0..n {
        for (k, aik) in a.row(i).iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for &(j, bkj) in &rows_b[k] {
                if acc[j].is_zero() {
                    touched.push(j);
                }
                acc[j].add_assign(&aik.mul(bkj));
            }
        }
        let (blk, p) = (i / r, i % r);
        let mut ok = (0..r).all(|q| close(&acc[blk * r + q], target.get(p, q), tol));
        for &j in &touched {
            if j / r != blk && !close(&acc[j], &Poly::zero(), tol) {
                ok = false;
            }
        }
        for &j in &touched {
            acc[j] = Poly::zero();
        }
        for q in 0..r {
            acc[blk * r + q] = Poly::zero();
        }
        touched.clear();
        if !ok {
            return false;
        }
    }
    true
}

/// Exact variant: each product row is gathered as `(column, monomial,
/// coefficient)` triples, merged once, and compared with the target row.
fn exact_product_is_xyz_block<F: Field>(
    a: &PolyMatrix<F>,
    b: &PolyMatrix<F>,
    u: &PolyMatrix<F>,
) -> bool {
    let n = a.rows();
    let r = u.rows();
    let xyz = Mono::xyz(1, 1, 1);
    let rows_b: Vec<Vec<(usize, &Poly<F>)>> = (0..n)
        .map(|k| {
            b.row(k)
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .collect()
        })
        .collect();
    let mut prod: Vec<(usize, Mono, F)> = Vec::new();
    let mut merged: Vec<(usize, Mono, F)> = Vec::new();
    let mut want: Vec<(usize, Mono, F)> = Vec::new();
    for i in 0..n {
        prod.clear();
        for (k, aik) in a.row(i).iter().enumerate() {
            for &(j, bkj) in &rows_b[k] {
                for (ma, ca) in aik.terms() {
                    for (mb, cb) in bkj.terms() {
                        prod.push((j, ma.mul(*mb), ca.mul(cb)));
                    }
                }
            }
        }
        prod.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        merged.clear();
        for (j, m, c) in prod.drain(..) {
            match merged.last_mut() {
                Some(last) if last.0 == j && last.1 == m => last.2.add_assign(&c),
                _ => merged.push((j, m, c)),
            }
        }
        merged.retain(|t| !t.2.is_zero());
        let (blk, p) = (i / r, i % r);
        want.clear();
        for q in 0..r {
            for (m, c) in u.get(p, q).terms() {
                want.push((blk * r + q, m.mul(xyz), c.clone()));
            }
        }
        if merged != want {
            return false;
        }
    }
    true
}

/// `φ·adj = adj·φ = xyz·(I ⊗ U)`: with `U` invertible over the power series
/// ring this certifies `(φ, adj·(I ⊗ U)^{-1})` as a factorization of `xyz`.
pub fn verify_mf_block_unit<F: Field>(
    phi: &PolyMatrix<F>,
    adj: &PolyMatrix<F>,
    u: &PolyMatrix<F>,
    tol: f64,
) -> bool {
    let n = phi.rows();
    phi.is_square()
        && adj.shape() == (n, n)
        && u.is_square()
        && product_is_xyz_block(phi, adj, u, tol)
        && product_is_xyz_block(adj, phi, u, tol)
}

/// `φψ = ψφ = xyz·I`, exactly for exact fields and within `tol` otherwise.
pub fn verify_mf_tol<F: Field>(phi: &PolyMatrix<F>, psi: &PolyMatrix<F>, tol: f64) -> bool {
    let n = phi.rows();
    if !phi.is_square() || psi.shape() != (n, n) {
        return false;
    }
    let one = Matrix::identity(1);
    product_is_xyz_block(phi, psi, &one, tol) && product_is_xyz_block(psi, phi, &one, tol)
}

pub fn verify_mf<F: Field>(phi: &PolyMatrix<F>, psi: &PolyMatrix<F>) -> bool {
    verify_mf_tol(phi, psi, DEFAULT_TOL)
}

/// A verified matrix factorization `(φ, ψ)` of `xyz`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatFac<F: Field> {
    phi: PolyMatrix<F>,
    psi: PolyMatrix<F>,
}

impl<F: Field> MatFac<F> {
    pub fn new(phi: PolyMatrix<F>, psi: PolyMatrix<F>) -> Result<Self> {
        if !verify_mf(&phi, &psi) {
            return Err(Error::NotAMatrixFactorization);
        }
        Ok(MatFac { phi, psi })
    }

    /// Completes `φ` with `ψ = xyz·φ^{-1}`.
    pub fn from_phi(phi: PolyMatrix<F>) -> Result<Self> {
        let psi = complete_psi(&phi)?;
        Self::new(phi, psi)
    }

    pub(crate) fn new_unchecked(phi: PolyMatrix<F>, psi: PolyMatrix<F>) -> Self {
        debug_assert!(verify_mf(&phi, &psi));
        MatFac { phi, psi }
    }

    pub fn phi(&self) -> &PolyMatrix<F> {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix<F> {
        &self.psi
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn into_parts(self) -> (PolyMatrix<F>, PolyMatrix<F>) {
        (self.phi, self.psi)
    }

    /// The trivial factorization `(1, xyz)`.
    pub fn unit_phi() -> Self {
        MatFac {
            phi: Matrix::identity(1),
            psi: Matrix::scalar(1, Poly::xyz()),
        }
    }

    /// The trivial factorization `(xyz, 1)`.
    pub fn unit_psi() -> Self {
        MatFac {
            phi: Matrix::scalar(1, Poly::xyz()),
            psi: Matrix::identity(1),
        }
    }

    pub fn empty() -> Self {
        MatFac {
            phi: Matrix::zeros(0, 0),
            psi: Matrix::zeros(0, 0),
        }
    }
}

impl<F: ScalarField> MatFac<F> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "phi": matrix_to_json(&self.phi), "psi": matrix_to_json(&self.psi) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::InvalidInput(format!("missing `{k}`")))
        };
        Self::new(
            matrix_from_json(get("phi")?)?,
            matrix_from_json(get("psi")?)?,
        )
    }
}

/// `(ψ, φ)`.
pub fn shift_mf<F: Field>(m: &MatFac<F>) -> MatFac<F> {
    MatFac::new_unchecked(m.psi.clone(), m.phi.clone())
}

/// `(−φ^T, −ψ^T)`.
pub fn transpose_mf<F: Field>(m: &MatFac<F>) -> MatFac<F> {
    MatFac::new_unchecked(m.phi.transpose().neg(), m.psi.transpose().neg())
}

/// Block-diagonal sum.
pub fn direct_sum<F: Field>(a: &MatFac<F>, b: &MatFac<F>) -> MatFac<F> {
    MatFac::new_unchecked(a.phi.direct_sum(&b.phi), a.psi.direct_sum(&b.psi))
}

pub fn direct_sum_all<F: Field>(parts: &[MatFac<F>]) -> MatFac<F> {
    let phis: Vec<_> = parts.iter().map(|m| m.phi.clone()).collect();
    let psis: Vec<_> = parts.iter().map(|m| m.psi.clone()).collect();
    MatFac::new_unchecked(Matrix::block_diag(&phis), Matrix::block_diag(&psis))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, o: Parity) -> Self {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A homogeneous morphism. Even: `(α, β)` with `α` on the source of `φ`
/// and `β` on its target. Odd: `(γ, δ)` with `γ` from the source of `φ` to
/// the source of `ψ'` and `δ` the other way.
#[derive(Clone, Debug, PartialEq)]
pub struct MFMorphism<F: Field> {
    pub parity: Parity,
    pub first: PolyMatrix<F>,
    pub second: PolyMatrix<F>,
}

impl<F: Field> MFMorphism<F> {
    pub fn even(alpha: PolyMatrix<F>, beta: PolyMatrix<F>) -> Self {
        MFMorphism {
            parity: Parity::Even,
            first: alpha,
            second: beta,
        }
    }

    pub fn odd(gamma: PolyMatrix<F>, delta: PolyMatrix<F>) -> Self {
        MFMorphism {
            parity: Parity::Odd,
            first: gamma,
            second: delta,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::even(Matrix::identity(n), Matrix::identity(n))
    }

    pub fn zero(parity: Parity, rows: usize, cols: usize) -> Self {
        MFMorphism {
            parity,
            first: Matrix::zeros(rows, cols),
            second: Matrix::zeros(rows, cols),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    fn check_shape(&self, src: &MatFac<F>, dst: &MatFac<F>) -> Result<()> {
        let want = (dst.size(), src.size());
        if self.first.shape() != want || self.second.shape() != want {
            return Err(Error::ShapeMismatch(format!(
                "morphism blocks {:?}/{:?}, expected {want:?}",
                self.first.shape(),
                self.second.shape()
            )));
        }
        Ok(())
    }

    /// As a block matrix on `M⁰ ⊕ M¹`, where `φ: M⁰ → M¹`.
    fn to_block(&self) -> PolyMatrix<F> {
        let (r, c) = self.first.shape();
        let mut out = Matrix::zeros(2 * r, 2 * c);
        match self.parity {
            Parity::Even => {
                out.set_block(0, 0, &self.first);
                out.set_block(r, c, &self.second);
            }
            Parity::Odd => {
                out.set_block(r, 0, &self.first);
                out.set_block(0, c, &self.second);
            }
        }
        out
    }

    fn from_block(parity: Parity, b: &PolyMatrix<F>) -> Self {
        let (r, c) = (b.rows() / 2, b.cols() / 2);
        match parity {
            Parity::Even => Self::even(b.block(0, 0, r, c), b.block(r, c, r, c)),
            Parity::Odd => Self::odd(b.block(r, 0, r, c), b.block(0, c, r, c)),
        }
    }
}

/// The differential on morphisms from `src = (φ, ψ)` to `dst = (φ', ψ')`:
/// even `(α, β) ↦ (φ'α − βφ, ψ'β − αψ)`, odd `(γ, δ) ↦ (ψ'γ + δφ, φ'δ + γψ)`.
pub fn differential<F: Field>(
    src: &MatFac<F>,
    dst: &MatFac<F>,
    m: &MFMorphism<F>,
) -> Result<MFMorphism<F>> {
    m.check_shape(src, dst)?;
    let (phi0, psi0, phi1, psi1) = (&src.phi, &src.psi, &dst.phi, &dst.psi);
    Ok(match m.parity {
        Parity::Even => {
            let (a, b) = (&m.first, &m.second);
            MFMorphism::odd(&(phi1 * a) - &(b * phi0), &(psi1 * b) - &(a * psi0))
        }
        Parity::Odd => {
            let (g, d) = (&m.first, &m.second);
            MFMorphism::even(&(psi1 * g) + &(d * phi0), &(phi1 * d) + &(g * psi0))
        }
    })
}

pub fn is_closed<F: Field>(src: &MatFac<F>, dst: &MatFac<F>, m: &MFMorphism<F>) -> Result<bool> {
    Ok(differential(src, dst, m)?.is_zero())
}

/// `g ∘ f` for `f: A → B`, `g: B → C`; parities add.
pub fn compose<F: Field>(g: &MFMorphism<F>, f: &MFMorphism<F>) -> Result<MFMorphism<F>> {
    if g.first.cols() != f.first.rows() {
        return Err(Error::ShapeMismatch(format!(
            "compose: {}x{} after {}x{}",
            g.first.rows(),
            g.first.cols(),
            f.first.rows(),
            f.first.cols()
        )));
    }
    let b = &g.to_block() * &f.to_block();
    Ok(MFMorphism::from_block(g.parity.add(f.parity), &b))
}

/// `d(h) = f`: the odd `h` exhibits the closed even `f` as null-homotopic.
pub fn is_homotopy_witness<F: Field>(
    src: &MatFac<F>,
    dst: &MatFac<F>,
    f: &MFMorphism<F>,
    h: &MFMorphism<F>,
) -> Result<bool> {
    if h.parity == f.parity {
        return Ok(false);
    }
    Ok(differential(src, dst, h)? == *f)
}

/// An explicit isomorphism `(A, B)`: `φ' = A·φ·B^{-1}` and `ψ' = B·ψ·A^{-1}`,
/// with both inverses supplied.
#[derive(Clone, Debug, PartialEq)]
pub struct IsoWitness<F: Field> {
    pub a: PolyMatrix<F>,
    pub a_inv: PolyMatrix<F>,
    pub b: PolyMatrix<F>,
    pub b_inv: PolyMatrix<F>,
}

impl<F: Field> IsoWitness<F> {
    pub fn check(&self, src: &MatFac<F>, dst: &MatFac<F>) -> bool {
        let n = src.size();
        if dst.size() != n || self.a.shape() != (n, n) || self.b.shape() != (n, n) {
            return false;
        }
        let id = Matrix::identity(n);
        &self.a * &self.a_inv == id
            && &self.b * &self.b_inv == id
            && &(&self.a * &src.phi) * &self.b_inv == dst.phi
            && &(&self.b * &src.psi) * &self.a_inv == dst.psi
    }
}

/// Search for a signed cyclic-permutation isomorphism between two
/// factorizations of equal size: both index sets are rotated by the same
/// amount and the remaining sign pattern is solved by 2-colouring.
pub fn signed_permutation_witness<F: Field>(
    src: &MatFac<F>,
    dst: &MatFac<F>,
) -> Option<IsoWitness<F>> {
    let n = src.size();
    if dst.size() != n {
        return None;
    }
    for shift in 0..n.max(1) {
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let pm: PolyMatrix<F> = crate::algebra::permutation_matrix(&perm);
        let phi = &(&pm * &src.phi) * &pm.transpose();
        let Some((rs, cs)) = sign_pattern(&phi, &dst.phi) else {
            continue;
        };
        let dr = Matrix::diagonal(rs.iter().map(|&s| Poly::from_i64(s)).collect());
        let dc = Matrix::diagonal(cs.iter().map(|&s| Poly::from_i64(s)).collect());
        let a = &dr * &pm;
        let b = &dc * &pm;
        let w = IsoWitness {
            a_inv: a.transpose(),
            b_inv: b.transpose(),
            a,
            b,
        };
        if w.check(src, dst) {
            return Some(w);
        }
    }
    None
}

/// Signs `r_i, c_j` with `r_i·x_ij·c_j = y_ij`, if they exist.
fn sign_pattern<F: Field>(x: &PolyMatrix<F>, y: &PolyMatrix<F>) -> Option<(Vec<i64>, Vec<i64>)> {
    let n = x.rows();
    let mut rs = vec![0i64; n];
    let mut cs = vec![0i64; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (x.get(i, j), y.get(i, j));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let s = if a == b {
                1
            } else if a.neg() == *b {
                -1
            } else {
                return None;
            };
            edges.push((i, j, s));
        }
    }
    for start in 0..n {
        if rs[start] != 0 {
            continue;
        }
        rs[start] = 1;
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j, s) in &edges {
                match (rs[i], cs[j]) {
                    (0, 0) => {}
                    (r, 0) => {
                        cs[j] = r * s;
                        changed = true;
                    }
                    (0, c) => {
                        rs[i] = c * s;
                        changed = true;
                    }
                    (r, c) => {
                        if r * c != s {
                            return None;
                        }
                    }
                }
            }
        }
    }
    for c in cs.iter_mut() {
        if *c == 0 {
            *c = 1;
        }
    }
    Some((rs, cs))
}
