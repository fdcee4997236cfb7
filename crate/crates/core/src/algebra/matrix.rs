//! Dense matrices over any [`Ring`], with products that skip zero entries.

use std::fmt;

use super::field::Ring;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Rows of equal length; panics otherwise.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<U>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    fn same_shape(&self, o: &Self, what: &str) -> Result<()> {
        if self.shape() != o.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|e| if e.is_zero() { T::zero() } else { e.mul(c) })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let nz: Vec<Vec<usize>> = (0..o.rows)
            .map(|k| (0..o.cols).filter(|&j| !o.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &nz[k] {
                    let p = a.mul(o.get(k, j));
                    out.data[i * o.cols + j].add_assign(&p);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Kronecker product; block `(i, j)` is `self[i][j]·o`.
    pub fn kron(&self, o: &Self) -> Self {
        let (p, q) = o.shape();
        let mut out = Self::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * p + k, j * q + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, o);
        out
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            out.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        out
    }

    /// Assemble from a grid of blocks; `None` stands for a zero block whose
    /// size is inferred from its row and column.
    pub fn from_blocks(grid: &[Vec<Option<Self>>]) -> Result<Self> {
        let nr = grid.len();
        let nc = grid.first().map_or(0, Vec::len);
        let mut heights = vec![None; nr];
        let mut widths = vec![None; nc];
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != nc {
                return Err(Error::ShapeMismatch("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    for (slot, v) in [(&mut heights[bi], b.rows), (&mut widths[bj], b.cols)] {
                        match slot {
                            Some(s) if *s != v => {
                                return Err(Error::ShapeMismatch("block sizes disagree".into()))
                            }
                            _ => *slot = Some(v),
                        }
                    }
                }
            }
        }
        let heights: Vec<usize> = heights
            .into_iter()
            .map(|h| h.ok_or_else(|| Error::ShapeMismatch("block row of zeros has no size".into())))
            .collect::<Result<_>>()?;
        let widths: Vec<usize> = widths
            .into_iter()
            .map(|w| {
                w.ok_or_else(|| Error::ShapeMismatch("block column of zeros has no size".into()))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    out.set_block(r0, c0, b);
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `out[i][j] = self[rows[i]][cols[j]]`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn hconcat(parts: &[Self]) -> Result<Self> {
        let r = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != r) {
            return Err(Error::ShapeMismatch("hconcat row counts differ".into()));
        }
        let grid = vec![parts.iter().cloned().map(Some).collect()];
        Self::from_blocks(&grid)
    }

    pub fn vconcat(parts: &[Self]) -> Result<Self> {
        let grid: Vec<Vec<Option<Self>>> = parts.iter().cloned().map(|p| vec![Some(p)]).collect();
        Self::from_blocks(&grid)
    }

    /// Largest entrywise [`Ring::distance`].
    pub fn distance(&self, o: &Self) -> f64 {
        if self.shape() != o.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    /// Unit vector `e_k` of length `n` as an `n×1` column.
    pub fn unit_column(n: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.set(k, 0, T::one());
        m
    }
}

/// Permutation matrix with `P[i][perm[i]] = 1`, so `(P·M)` row `i` is row
/// `perm[i]` of `M`.
pub fn permutation_matrix<T: Ring>(perm: &[usize]) -> Matrix<T> {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &p) in perm.iter().enumerate() {
        m.set(i, p, T::one());
    }
    m
}

/// Perfect shuffle `S_{p,q}`: `S_{m1,m2}(A⊗B)S_{n2,n1} = B⊗A`.
pub fn shuffle_matrix<T: Ring>(p: usize, q: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..q {
            m.set(j * p + i, i * q + j, T::one());
        }
    }
    m
}

impl<'a, T: Ring> std::ops::Mul for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &'a Matrix<T>) -> Matrix<T> {
        self.try_mul(o).expect("matrix product shape")
    }
}

impl<'a, T: Ring> std::ops::Add for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &'a Matrix<T>) -> Matrix<T> {
        self.try_add(o).expect("matrix sum shape")
    }
}

impl<'a, T: Ring> std::ops::Sub for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &'a Matrix<T>) -> Matrix<T> {
        self.try_sub(o).expect("matrix difference shape")
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    /// Aligned text rendering, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
        let mut widths = vec![0; self.cols];
        for (k, c) in cells.iter().enumerate() {
            let w = c.chars().count();
            widths[k % self.cols.max(1)] = widths[k % self.cols.max(1)].max(w);
        }
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                let c = &cells[i * self.cols + j];
                let pad = widths[j] - c.chars().count();
                write!(f, "{}{}", " ".repeat(pad), c)?;
                if j + 1 < self.cols {
                    write!(f, "  ")?;
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type M = Matrix<Rational>;

    fn int(rows: &[&[i64]]) -> M {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn kron_with_identity_is_block_diagonal() {
        let b = int(&[&[1, 2], &[3, 4]]);
        let k = M::identity(2).kron(&b);
        assert_eq!(k, b.direct_sum(&b));
        assert_eq!(b.kron(&M::identity(1)), b);
    }

    #[test]
    fn shuffle_basics() {
        assert_eq!(shuffle_matrix::<Rational>(1, 3), M::identity(3));
        let s = shuffle_matrix::<Rational>(2, 2);
        assert_eq!(
            s,
            int(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
        let s23 = shuffle_matrix::<Rational>(2, 3);
        assert_eq!(s23.transpose(), shuffle_matrix(3, 2));
        assert_eq!(&s23 * &shuffle_matrix(3, 2), M::identity(6));
    }

    #[test]
    fn block_assembly() {
        let a = int(&[&[1]]);
        let b = int(&[&[2, 3]]);
        let m = M::from_blocks(&[
            vec![Some(a.clone()), Some(b)],
            vec![None, Some(int(&[&[4, 5]]))],
        ])
        .unwrap();
        assert_eq!(m, int(&[&[1, 2, 3], &[0, 4, 5]]));
        assert!(M::from_blocks(&[vec![None]]).is_err());
    }

    #[test]
    fn product_shape_error() {
        assert!(matches!(
            int(&[&[1, 2]]).try_mul(&int(&[&[1, 2]])),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
