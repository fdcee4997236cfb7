use crate::algebra::{
    jordan_block, jordan_inverse, laurent_inverse, permutation_matrix, r_of, rt_of, shift_up,
    Field, Matrix, Poly, PolyMatrix, Ring,
};
use crate::error::{Error, Result};
use crate::words::{NormalWord, Word};

/// `c·x^a y^b z^c`, zero when any exponent is negative.
fn mono<F: Field>(a: i32, b: i32, c: i32, coef: i64) -> Poly<F> {
    Poly::monomial(a, b, c, F::from_i64(coef))
}

/// `(−x)^a`, zero for `a < 0`.
fn neg_x_pow<F: Field>(a: i32) -> Poly<F> {
    mono(a, 0, 0, if a.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Block layout shared by the canonical and raw forms: index
/// `(3i + slot)ρ + r` with slots `s, t, u`. Scalar blocks are `c·I_ρ`.
struct Layout<F: Field> {
    rho: usize,
    m: PolyMatrix<F>,
}

impl<F: Field> Layout<F> {
    fn new(tau: usize, rho: usize) -> Self {
        Layout {
            rho,
            m: Matrix::zeros(3 * tau * rho, 3 * tau * rho),
        }
    }

    fn scalar(&mut self, a: usize, b: usize, c: Poly<F>) {
        if c.is_zero() {
            return;
        }
        for r in 0..self.rho {
            let e = self.m.get_mut(a * self.rho + r, b * self.rho + r);
            *e = e.add(&c);
        }
    }

    fn block(&mut self, a: usize, b: usize, c: &Poly<F>, blk: &PolyMatrix<F>) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rho {
            for j in 0..self.rho {
                let v = blk.get(i, j);
                if !v.is_zero() {
                    let e = self.m.get_mut(a * self.rho + i, b * self.rho + j);
                    *e = e.add(&c.mul(v));
                }
            }
        }
    }

    fn u(&self, i: usize) -> usize {
        3 * i + 2
    }
}

fn check_rank(rho: usize) -> Result<()> {
    if rho == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    Ok(())
}

fn check_unit<F: Field>(lam: &Poly<F>) -> Result<()> {
    if !lam.is_scalar_unit() {
        return Err(Error::NonUnitLambda);
    }
    Ok(())
}

/// `(2,2,2)^τ` with `λ = 1`.
pub fn is_degenerate_pair<F: Field>(w: &Word, lam: &Poly<F>) -> bool {
    w.is_all_twos() && *lam == Poly::one()
}

/// The canonical factor `φ(w′, λ, ρ)`.
pub fn build_phi<F: Field>(w: &NormalWord, lam: &Poly<F>, rho: usize) -> Result<PolyMatrix<F>> {
    check_rank(rho)?;
    check_unit(lam)?;
    if is_degenerate_pair(w, lam) {
        return Err(Error::DegenerateDatum);
    }
    Ok(phi_unchecked(w, lam, rho))
}

pub(crate) fn phi_unchecked<F: Field>(w: &Word, lam: &Poly<F>, rho: usize) -> PolyMatrix<F> {
    let tau = w.tau();
    let mut g = Layout::new(tau, rho);
    for i in 0..tau {
        let (m, n) = (w.m(i + 1), w.n(i + 1));
        let (s, t, u) = (3 * i, 3 * i + 1, 3 * i + 2);
        g.scalar(s, s, Poly::z());
        g.scalar(t, t, Poly::x());
        g.scalar(u, u, Poly::y());
        g.scalar(s, t, mono(0, m - 1, 0, -1));
        g.scalar(t, s, mono(0, -m, 0, -1));
        g.scalar(t, u, mono(0, 0, n - 1, -1));
        g.scalar(u, t, mono(0, 0, -n, -1));
        if i + 1 < tau {
            let l = w.l(i + 2);
            g.scalar(u, 3 * (i + 1), mono(l - 1, 0, 0, -1));
            g.scalar(3 * (i + 1), u, mono(-l, 0, 0, -1));
        }
    }
    let l1 = w.l(1);
    let last = g.u(tau - 1);
    g.block(last, 0, &mono(l1 - 1, 0, 0, -1), &jordan_block(rho, lam));
    if l1 <= 0 {
        let ji = jordan_inverse(rho, lam).expect("unit checked");
        g.block(0, last, &mono(-l1, 0, 0, -1), &ji);
    }
    g.m
}

/// The alternative canonical form: rows and columns grouped by slot, with
/// the cyclic structure carried by `R_τ(J_ρ(λ))` and `R_τ^T(J_ρ(λ)^{-1})`.
pub fn build_phi_alt<F: Field>(w: &NormalWord, lam: &Poly<F>, rho: usize) -> Result<PolyMatrix<F>> {
    check_rank(rho)?;
    check_unit(lam)?;
    if is_degenerate_pair(w, lam) {
        return Err(Error::DegenerateDatum);
    }
    let tau = w.tau();
    let diag = |f: &dyn Fn(usize) -> Poly<F>| {
        Matrix::block_diag(
            &(0..tau)
                .map(|i| Matrix::scalar(rho, f(i + 1)))
                .collect::<Vec<_>>(),
        )
    };
    let n = tau * rho;
    let r = r_of(tau, &jordan_block(rho, lam));
    let rt = rt_of(tau, &jordan_inverse(rho, lam)?);
    let grid = vec![
        vec![
            Some(Matrix::scalar(n, Poly::z())),
            Some(diag(&|i| mono(0, w.m(i) - 1, 0, -1))),
            Some(&diag(&|i| mono(-w.l(i), 0, 0, -1)) * &rt),
        ],
        vec![
            Some(diag(&|i| mono(0, -w.m(i), 0, -1))),
            Some(Matrix::scalar(n, Poly::x())),
            Some(diag(&|i| mono(0, 0, w.n(i) - 1, -1))),
        ],
        vec![
            Some(&r * &diag(&|i| mono(w.l(i) - 1, 0, 0, -1))),
            Some(diag(&|i| mono(0, 0, -w.n(i), -1))),
            Some(Matrix::scalar(n, Poly::y())),
        ],
    ];
    Matrix::from_blocks(&grid)
}

/// `perm[new] = old` taking `(i, slot, r)` ordering to `(slot, i, r)`.
pub fn alt_permutation(tau: usize, rho: usize) -> Vec<usize> {
    let mut perm = vec![0; 3 * tau * rho];
    for i in 0..tau {
        for slot in 0..3 {
            for r in 0..rho {
                perm[slot * tau * rho + i * rho + r] = (3 * i + slot) * rho + r;
            }
        }
    }
    perm
}

/// The permutation matrix `P` with `P·φ·P^T = φ_alt`.
pub fn alt_permutation_matrix<F: Field>(tau: usize, rho: usize) -> PolyMatrix<F> {
    permutation_matrix(&alt_permutation(tau, rho))
}

/// The factor produced from a loop with local system, before the sign
/// and Jordan base changes.
pub fn build_lmf_raw<F: Field>(w: &NormalWord, eta: &Poly<F>, rho: usize) -> Result<PolyMatrix<F>> {
    check_rank(rho)?;
    check_unit(eta)?;
    if w.is_all_twos() {
        return Err(Error::NonCylinderFree);
    }
    let tau = w.tau();
    let mut g = Layout::new(tau, rho);
    for i in 0..tau {
        let (m, n) = (w.m(i + 1), w.n(i + 1));
        let (s, t, u) = (3 * i, 3 * i + 1, 3 * i + 2);
        g.scalar(s, s, Poly::z());
        g.scalar(t, t, Poly::x());
        g.scalar(u, u, Poly::y());
        g.scalar(s, t, mono(0, m - 1, 0, -1));
        g.scalar(t, s, mono(0, -m, 0, 1));
        g.scalar(t, u, mono(0, 0, n - 1, -1));
        g.scalar(u, t, mono(0, 0, -n, 1));
        if i + 1 < tau {
            let l = w.l(i + 2);
            g.scalar(u, 3 * (i + 1), neg_x_pow::<F>(l - 1).neg());
            g.scalar(3 * (i + 1), u, neg_x_pow::<F>(-l).neg());
        }
    }
    let l1 = w.l(1);
    let last = g.u(tau - 1);
    g.block(
        last,
        0,
        &neg_x_pow::<F>(l1 - 1).neg(),
        &jordan_block(rho, eta).transpose(),
    );
    if l1 <= 0 {
        g.block(
            0,
            last,
            &neg_x_pow::<F>(-l1).neg(),
            &jordan_inverse(rho, eta)?.transpose(),
        );
    }
    Ok(g.m)
}

/// `Σ l_i + τ` for the band word converted from `w′`.
pub fn band_parity(w: &Word) -> i64 {
    let tau = w.tau();
    let pos = |x: i32| i64::from(x >= 1);
    (1..=tau)
        .map(|i| {
            let prev_n = w.n(if i == 1 { tau } else { i - 1 });
            w.l(i) as i64 + 1 - pos(prev_n) - pos(w.l(i)) - pos(w.m(i))
        })
        .sum::<i64>()
        + tau as i64
}

/// Base change from the raw factor to the canonical one.
#[derive(Clone, Debug)]
pub struct RawWitness<F: Field> {
    pub d_left: PolyMatrix<F>,
    pub d_right: PolyMatrix<F>,
    pub lambda: Poly<F>,
}

/// Sign diagonal `D` and anti-diagonal Jordan conjugation `Q` with
/// `(D⊗Q)·raw(w′,η,ρ)·(D⊗Q^{-1}) = φ(w′,λ,ρ)`, `λ = (−1)^† η`.
pub fn raw_to_canonical_witness<F: Field>(
    w: &NormalWord,
    eta: &Poly<F>,
    rho: usize,
) -> Result<RawWitness<F>> {
    let raw = build_lmf_raw(w, eta, rho)?;
    let sign: i64 = if band_parity(w).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    let lambda = eta.scale(&F::from_i64(sign));
    let target = build_phi(w, &lambda, rho)?;

    let raw1 = build_lmf_raw(w, &Poly::<F>::one(), 1)?;
    let tgt1 = phi_unchecked(w, &Poly::from_i64(sign), 1);
    let d = sign_coloring(&raw1, &tgt1).ok_or(Error::WitnessNotFound)?;

    let exchange: PolyMatrix<F> = permutation_matrix(&(0..rho).rev().collect::<Vec<_>>());
    let s = Matrix::diagonal(
        (0..rho)
            .map(|k| Poly::from_i64(if sign < 0 && k % 2 == 1 { -1 } else { 1 }))
            .collect(),
    );
    let q = &s * &exchange;
    let q_inv = &exchange * &s;
    let dm = Matrix::diagonal(d.iter().map(|&v| Poly::from_i64(v)).collect());
    let d_left = dm.kron(&q);
    let d_right = dm.kron(&q_inv);
    if &(&d_left * &raw) * &d_right != target {
        return Err(Error::WitnessNotFound);
    }
    Ok(RawWitness {
        d_left,
        d_right,
        lambda,
    })
}

/// `±1` diagonal `D` with `D·a·D = b`, found by propagating signs along
/// nonzero off-diagonal entries.
fn sign_coloring<F: Field>(a: &PolyMatrix<F>, b: &PolyMatrix<F>) -> Option<Vec<i64>> {
    let n = a.rows();
    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (a.get(i, j), b.get(i, j));
            if p.is_zero() != q.is_zero() {
                return None;
            }
            if p.is_zero() {
                continue;
            }
            let rel = if p == q {
                1
            } else if p.neg() == *q {
                -1
            } else {
                return None;
            };
            if i == j {
                if rel != 1 {
                    return None;
                }
                continue;
            }
            edges[i].push((j, rel));
            edges[j].push((i, rel));
        }
    }
    let mut d = vec![0i64; n];
    for root in 0..n {
        if d[root] != 0 {
            continue;
        }
        d[root] = 1;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(u, rel) in &edges[v] {
                let want = d[v] * rel;
                if d[u] == 0 {
                    d[u] = want;
                    stack.push(u);
                } else if d[u] != want {
                    return None;
                }
            }
        }
    }
    Some(d)
}

/// `φ(w′,0,1)`, the `λ`-free part at rank one.
pub fn phi_lambda_free<F: Field>(w: &Word) -> PolyMatrix<F> {
    let tau = w.tau();
    let mut m = phi_unchecked(w, &Poly::one(), 1);
    let last = 3 * tau - 1;
    m.set(last, 0, m.get(last, 0).sub(&mono(w.l(1) - 1, 0, 0, -1)));
    m.set(0, last, m.get(0, last).sub(&mono(-w.l(1), 0, 0, -1)));
    m
}

/// `φ(w′,0,1)⊗I_ρ − x^{l₁′−1}K^{3τ−1}⊗J_ρ(λ) − x^{−l₁′}J^{3τ−1}⊗J_ρ(λ)^{-1}`.
pub fn phi_kronecker<F: Field>(w: &NormalWord, lam: &Poly<F>, rho: usize) -> Result<PolyMatrix<F>> {
    check_rank(rho)?;
    let n = 3 * w.tau();
    let l1 = w.l(1);
    let k = shift_up::<F>(n).transpose().pow(n as u32 - 1);
    let j = shift_up::<F>(n).pow(n as u32 - 1);
    let base = phi_lambda_free::<F>(w).kron(&Matrix::identity(rho));
    let low = k
        .scale(&mono(l1 - 1, 0, 0, 1))
        .kron(&jordan_block(rho, lam));
    let high = j
        .scale(&mono(-l1, 0, 0, 1))
        .kron(&jordan_inverse(rho, lam)?);
    Ok(&(&base - &low) - &high)
}

/// Inverse of a constant base-change matrix, when it exists.
pub fn constant_inverse<F: Field>(m: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    laurent_inverse(m).map(|(inv, _)| inv)
}
