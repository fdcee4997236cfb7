//! Adjugates, determinants and inverses over the polynomial ring, plus
//! dense solves over a coefficient field.

use super::field::{Field, Ring};
use super::jordan::{berkowitz, PolyMatrix};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Gauss–Jordan over the Laurent ring in `x, y, z, λ`, pivoting only on
/// single-term entries. Returns `(M^{-1}, det M)` with a single-term
/// determinant, or `None` when some column offers no single-term pivot.
pub fn laurent_inverse<F: Field>(m: &PolyMatrix<F>) -> Option<(PolyMatrix<F>, Poly<F>)> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut a: Vec<Vec<Poly<F>>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<Poly<F>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                .collect()
        })
        .collect();
    let mut det = Poly::one();
    for col in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for r in col..n {
            if let Some((_, c)) = a[r][col].as_monomial() {
                let score = if F::EXACT {
                    if r == col {
                        2.0
                    } else {
                        1.0
                    }
                } else {
                    c.abs()
                };
                if best.is_none_or(|(_, s)| score > s) {
                    best = Some((r, score));
                }
            }
        }
        let (p, _) = best?;
        if p != col {
            a.swap(p, col);
            inv.swap(p, col);
            det = det.neg();
        }
        let piv = a[col][col].clone();
        let piv_inv = piv.monomial_inverse()?;
        det = det.mul(&piv);
        for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
            if !v.is_zero() {
                *v = v.mul(&piv_inv);
            }
        }
        let prow = a[col].clone();
        let pinv = inv[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (j, pj) in prow.iter().enumerate() {
                if !pj.is_zero() {
                    a[r][j] = a[r][j].sub(&f.mul(pj));
                }
            }
            for (j, pj) in pinv.iter().enumerate() {
                if !pj.is_zero() {
                    inv[r][j] = inv[r][j].sub(&f.mul(pj));
                }
            }
        }
    }
    Some((Matrix::from_rows(inv), det))
}

/// `(adj M, det M)` without the internal product check.
pub fn adjugate_det_unchecked<F: Field>(m: &PolyMatrix<F>) -> Result<(PolyMatrix<F>, Poly<F>)> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("adjugate of non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok((Matrix::zeros(0, 0), Poly::one()));
    }
    if let Some((inv, det)) = laurent_inverse(m) {
        let adj = inv.scale(&det);
        if !adj.entries().iter().any(Poly::has_negative_xyz) {
            return Ok((adj, det));
        }
    }
    Ok(cayley_hamilton_adjugate(m))
}

/// Division-free adjugate from the characteristic polynomial:
/// `adj A = (−1)^{n+1}(A^{n−1} + c_1A^{n−2} + … + c_{n−1}I)`.
pub fn cayley_hamilton_adjugate<F: Field>(m: &PolyMatrix<F>) -> (PolyMatrix<F>, Poly<F>) {
    let n = m.rows();
    let c = berkowitz(m);
    let mut b = Matrix::identity(n);
    for ck in c.iter().take(n).skip(1) {
        b = &(m * &b) + &Matrix::scalar(n, ck.clone());
    }
    let flip = n % 2 == 0;
    let adj = if flip { b.neg() } else { b };
    let det = if n % 2 == 1 { c[n].neg() } else { c[n].clone() };
    (adj, det)
}

/// `(adj M, det M)`, verifying `M·adj = adj·M = det·I`.
pub fn adjugate_det<F: Field>(m: &PolyMatrix<F>) -> Result<(PolyMatrix<F>, Poly<F>)> {
    let (adj, det) = adjugate_det_unchecked(m)?;
    let target = Matrix::scalar(m.rows(), det.clone());
    if (m * &adj) != target || (&adj * m) != target {
        let (adj, det) = cayley_hamilton_adjugate(m);
        let target = Matrix::scalar(m.rows(), det.clone());
        if F::EXACT {
            assert!(
                (m * &adj) == target && (&adj * m) == target,
                "adjugate identity failed"
            );
        }
        return Ok((adj, det));
    }
    Ok((adj, det))
}

/// Inverse of a matrix whose entries are Laurent scalars; pivots must be
/// units.
pub fn scalar_inverse<F: Field>(m: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    if m.entries().iter().any(|e| !e.is_scalar()) {
        return None;
    }
    laurent_inverse(m).map(|(inv, _)| inv)
}

fn negligible<F: Field>(c: &F, tol: f64) -> bool {
    if F::EXACT {
        c.is_zero()
    } else {
        c.abs() <= tol
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<F: Field>(a: &mut [Vec<F>], ncols: usize, tol: f64) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            if negligible(&row[c], tol) {
                continue;
            }
            let s = if F::EXACT { 1.0 } else { row[c].abs() };
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
                if F::EXACT {
                    break;
                }
            }
        }
        let Some((p, _)) = best else { continue };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = v.sub(&f.mul(pv));
                }
            }
            if !F::EXACT {
                row[c] = F::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A particular solution of `A x = b` (free variables set to zero).
pub fn solve_particular<F: Field>(a: &Matrix<F>, b: &[F], tol: f64) -> Option<Vec<F>> {
    let (n, m) = a.shape();
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, m + 1, tol);
    if pivots.last() == Some(&m) {
        return None;
    }
    let mut x = vec![F::zero(); m];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][m].clone();
    }
    Some(x)
}

/// A nonzero vector in the kernel of `A`, if any.
pub fn null_vector<F: Field>(a: &Matrix<F>, tol: f64) -> Option<Vec<F>> {
    let (n, m) = a.shape();
    let mut rows: Vec<Vec<F>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let pivots = rref(&mut rows, m, tol);
    let free = (0..m).find(|c| !pivots.contains(c))?;
    let mut x = vec![F::zero(); m];
    x[free] = F::one();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][free].neg();
    }
    Some(x)
}

/// Inverse over the coefficient field.
pub fn field_inverse<F: Field>(a: &Matrix<F>, tol: f64) -> Option<Matrix<F>> {
    let n = a.rows();
    if n != a.cols() {
        return None;
    }
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug, n, tol);
    if pivots.len() < n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug[i][n + j].clone()))
}

/// Entries as plain field constants, when every entry is one.
pub fn to_constant<F: Field>(m: &PolyMatrix<F>) -> Option<Matrix<F>> {
    m.entries()
        .iter()
        .map(Poly::as_constant)
        .collect::<Option<Vec<F>>>()
        .map(|d| Matrix::from_vec(m.rows(), m.cols(), d).expect("shape preserved"))
}

pub fn from_constant<F: Field>(m: &Matrix<F>) -> PolyMatrix<F> {
    m.map(|c| Poly::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type P = Poly<Rational>;

    #[test]
    fn diagonal_pair() {
        let m = Matrix::from_rows(vec![
            vec![P::z(), P::zero()],
            vec![P::zero(), P::x().mul(&P::y())],
        ]);
        let (adj, det) = adjugate_det(&m).unwrap();
        assert_eq!(det, P::xyz());
        assert_eq!(
            adj,
            Matrix::from_rows(vec![
                vec![P::x().mul(&P::y()), P::zero()],
                vec![P::zero(), P::z()]
            ])
        );
    }

    #[test]
    fn one_by_one() {
        let p = P::x().add(&P::y());
        let (adj, det) = adjugate_det(&Matrix::scalar(1, p.clone())).unwrap();
        assert_eq!(adj, Matrix::identity(1));
        assert_eq!(det, p);
    }

    #[test]
    fn cayley_hamilton_agrees_with_elimination() {
        let m = Matrix::from_rows(vec![
            vec![P::z(), P::zero(), P::zero()],
            vec![P::y().mul(&P::y()).neg(), P::x(), P::z().neg()],
            vec![
                P::lambda().mul(&P::x().mul(&P::x())).neg(),
                P::zero(),
                P::y(),
            ],
        ]);
        let (a1, d1) = adjugate_det_unchecked(&m).unwrap();
        let (a2, d2) = cayley_hamilton_adjugate(&m);
        assert_eq!(a1, a2);
        assert_eq!(d1, d2);
    }

    #[test]
    fn field_solves() {
        let a = Matrix::from_rows(vec![
            vec![Rational::from_int(1), Rational::from_int(1)],
            vec![Rational::from_int(2), Rational::from_int(2)],
        ]);
        let v = null_vector(&a, 0.0).unwrap();
        assert_eq!(v, vec![Rational::from_int(-1), Rational::from_int(1)]);
        assert!(
            solve_particular(&a, &[Rational::from_int(1), Rational::from_int(3)], 0.0).is_none()
        );
        assert!(field_inverse(&a, 0.0).is_none());
    }
}
