use crate::algebra::{jordan_block, r_of, Field, Matrix, Poly, PolyMatrix, Ring};
use crate::error::{Error, Result};

/// Which degenerate presentation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegVariant {
    Full,
    Reduced,
}

fn xyz_mono<F: Field>(a: i32, b: i32, c: i32, coef: i64) -> Poly<F> {
    Poly::monomial(a, b, c, F::from_i64(coef))
}

/// `R_τ(J_ρ(λ))`.
pub fn degenerate_r<F: Field>(tau: usize, lam: &Poly<F>, rho: usize) -> PolyMatrix<F> {
    r_of(tau, &jordan_block(rho, lam))
}

/// The degenerate pair for `(2,2,2)^τ`, size `4τρ` (full), or the
/// `(3ρ+1)`-size reduced pair at `τ = 1, λ = 1`.
pub fn build_deg<F: Field>(
    tau: usize,
    lam: &Poly<F>,
    rho: usize,
    variant: DegVariant,
) -> Result<(PolyMatrix<F>, PolyMatrix<F>)> {
    if !lam.is_scalar_unit() {
        return Err(Error::NonUnitLambda);
    }
    match variant {
        DegVariant::Full => {
            if tau == 0 || rho == 0 {
                return Err(Error::InvalidInput("τ and ρ must be positive".into()));
            }
            Ok(full(tau, lam, rho))
        }
        DegVariant::Reduced => {
            if tau != 1 || *lam != Poly::one() {
                return Err(Error::InvalidInput(
                    "reduced degenerate form needs τ = 1 and λ = 1".into(),
                ));
            }
            Ok(reduced(rho))
        }
    }
}

fn full<F: Field>(tau: usize, lam: &Poly<F>, rho: usize) -> (PolyMatrix<F>, PolyMatrix<F>) {
    let n = tau * rho;
    let s = |p: Poly<F>| Some(Matrix::scalar(n, p));
    let zero = || None;
    let r = degenerate_r(tau, lam, rho);
    let x = || Poly::x();
    let phi = vec![
        vec![s(xyz_mono(1, 0, 1, -1)), zero(), zero(), zero()],
        vec![s(Poly::z()), s(Poly::y().neg()), zero(), zero()],
        vec![zero(), s(x()), s(Poly::z().neg()), zero()],
        vec![
            Some(r.scale(&x().neg())),
            zero(),
            s(Poly::y()),
            s(xyz_mono(1, 1, 0, -1)),
        ],
    ];
    let psi = vec![
        vec![s(Poly::y().neg()), zero(), zero(), zero()],
        vec![s(Poly::z().neg()), s(xyz_mono(1, 0, 1, -1)), zero(), zero()],
        vec![
            s(x().neg()),
            s(xyz_mono(2, 0, 0, -1)),
            s(xyz_mono(1, 1, 0, -1)),
            zero(),
        ],
        vec![
            Some(&r - &Matrix::identity(n)),
            s(x().neg()),
            s(Poly::y().neg()),
            s(Poly::z().neg()),
        ],
    ];
    (fill(&phi, n), fill(&psi, n))
}

fn fill<F: Field>(grid: &[Vec<Option<PolyMatrix<F>>>], n: usize) -> PolyMatrix<F> {
    let mut out = Matrix::zeros(4 * n, 4 * n);
    for (a, row) in grid.iter().enumerate() {
        for (b, blk) in row.iter().enumerate() {
            if let Some(blk) = blk {
                out.set_block(a * n, b * n, blk);
            }
        }
    }
    out
}

fn reduced<F: Field>(rho: usize) -> (PolyMatrix<F>, PolyMatrix<F>) {
    if rho == 0 {
        return (
            Matrix::scalar(1, Poly::xyz().neg()),
            Matrix::scalar(1, Poly::from_i64(-1)),
        );
    }
    let n = 3 * rho + 1;
    let j1 = jordan_block::<F>(rho, &Poly::one());
    let j0 = jordan_block::<F>(rho, &Poly::zero());
    let mut phi = Matrix::zeros(n, n);
    // rows: 1 | ρ | ρ | ρ ; columns: ρ | ρ | ρ | 1
    phi.set(0, 0, xyz_mono(1, 0, 1, -1));
    for r in 0..rho {
        phi.set(1 + r, r, Poly::z());
        phi.set(1 + r, rho + r, Poly::y().neg());
        phi.set(1 + rho + r, rho + r, Poly::x());
        phi.set(1 + rho + r, 2 * rho + r, Poly::z().neg());
        phi.set(1 + 2 * rho + r, 2 * rho + r, Poly::y());
    }
    phi.set_block(1 + 2 * rho, 0, &j1.scale(&Poly::x().neg()));
    phi.set(3 * rho, 3 * rho, xyz_mono(1, 1, 0, -1));

    // rows: ρ | ρ | ρ | 1 ; columns: 1 | ρ | ρ | ρ
    let mut psi = Matrix::zeros(n, n);
    psi.set(0, 0, Poly::y().neg());
    psi.set(rho, 0, Poly::z().neg());
    psi.set(2 * rho, 0, Poly::x().neg());
    let blocks: [[(Poly<F>, &PolyMatrix<F>); 3]; 3] = [
        [
            (xyz_mono(1, 1, 0, -1), &j0),
            (xyz_mono(0, 2, 0, -1), &j0),
            (xyz_mono(0, 1, 1, -1), &j0),
        ],
        [
            (xyz_mono(1, 0, 1, -1), &j1),
            (xyz_mono(0, 1, 1, -1), &j0),
            (xyz_mono(0, 0, 2, -1), &j0),
        ],
        [
            (xyz_mono(2, 0, 0, -1), &j1),
            (xyz_mono(1, 1, 0, -1), &j1),
            (xyz_mono(1, 0, 1, -1), &j0),
        ],
    ];
    for (a, row) in blocks.iter().enumerate() {
        for (b, (c, jm)) in row.iter().enumerate() {
            psi.set_block(a * rho, 1 + b * rho, &jm.transpose().scale(c));
        }
    }
    psi.set(3 * rho, rho, Poly::x().neg());
    psi.set(3 * rho, 2 * rho, Poly::y().neg());
    psi.set(3 * rho, 3 * rho, Poly::z().neg());
    (phi, psi)
}
