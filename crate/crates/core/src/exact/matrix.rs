use super::{Domain, Field, Rational, Ring, UniPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix (determinant {det})")]
    Singular { det: String },
}

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Mat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn scalar(n: usize, c: R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diag(d: &[R]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Panics on ragged input. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn column(v: Vec<R>) -> Self {
        Mat { rows: v.len(), cols: 1, entries: v }
    }

    pub fn row_vector(v: Vec<R>) -> Self {
        Mat { rows: 1, cols: v.len(), entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Panics on a shape mismatch.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    /// Left scalar multiplication `c * self`.
    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| c.mul(a))
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Commutator `self*o - o*self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    fn from_rows_sized(rows: usize, cols: usize, v: Vec<Vec<R>>) -> Self {
        Mat { rows, cols, entries: v.into_iter().flatten().collect() }
    }

    fn require_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.rows - 1, cols: self.cols - 1, entries }
    }
}

impl<R: Domain> Mat<R> {
    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<R, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut a = self.to_rows();
        let mut sign = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return Ok(R::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = R::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Transposed cofactor matrix, so that `m * adj(m) = det(m) * Id`.
    pub fn adjugate(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det()?;
                adj.set(j, i, if (i + j) % 2 == 1 { c.neg() } else { c });
            }
        }
        Ok(adj)
    }
}

impl<R: Field> Mat<R> {
    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(MatrixError::Singular { det: "0".into() })?;
            a.swap(c, p);
            inv.swap(c, p);
            let s = a[c][c].inv().expect("nonzero pivot");
            for j in 0..n {
                a[c][j] = a[c][j].mul(&s);
                inv[c][j] = inv[c][j].mul(&s);
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&f.mul(&a[c][j]));
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[c][j]));
                }
            }
        }
        Ok(Self::from_rows_sized(n, n, inv))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let s = a[r][c].inv().expect("nonzero pivot");
            for j in c..self.cols {
                a[r][j] = a[r][j].mul(&s);
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..self.cols {
                    a[i][j] = a[i][j].sub(&f.mul(&a[r][j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Self::from_rows_sized(self.rows, self.cols, a), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<R>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![R::zero(); self.cols];
                v[f] = R::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[R]) -> Option<Vec<R>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![R::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl Mat<Rational> {
    /// `det(self - t*Id)` as a polynomial in `t`.
    pub fn char_poly(&self) -> Result<UniPoly, MatrixError> {
        self.require_square()?;
        let t = UniPoly::var();
        let shifted = Mat::from_rows_sized(
            self.rows,
            self.cols,
            self.to_rows()
                .into_iter()
                .enumerate()
                .map(|(i, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(j, c)| {
                            let c = UniPoly::constant(c);
                            if i == j {
                                c.sub(&t)
                            } else {
                                c
                            }
                        })
                        .collect()
                })
                .collect(),
        );
        shifted.det()
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| super::int(v)).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::<Rational>::identity(2).det().unwrap(), int(1));
        let tri = Mat::from_rows(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[]), p(&[0, 1])]]);
        assert_eq!(tri.det().unwrap(), p(&[0, 0, 1]));
        let m = Mat::from_rows(vec![vec![p(&[0, 1]), p(&[1, 1])], vec![p(&[-1, 1]), p(&[0, 1])]]);
        assert_eq!(m.det().unwrap(), p(&[1]));
        let nz = Mat::<Rational>::zeros(2, 3);
        assert!(matches!(nz.det(), Err(MatrixError::NotSquare { .. })));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = Mat::from_ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // cofactor expansion along the first row
        assert_eq!(m.det().unwrap(), int(-2));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(Mat::<Rational>::zeros(0, 0).char_poly().unwrap(), UniPoly::one());
        let d = Mat::diag(&[int(2), int(3)]);
        assert_eq!(d.char_poly().unwrap(), p(&[6, -5, 1]));
        assert_eq!(Mat::<Rational>::identity(2).char_poly().unwrap(), p(&[1, -2, 1]));
    }

    #[test]
    fn inverse_and_singular() {
        let m = Mat::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), Mat::identity(2));
        let s = Mat::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(matches!(s.inverse(), Err(MatrixError::Singular { .. })));
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Mat::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul(&Mat::column(v)).is_zero());
        }
        assert!(m.solve(&[int(1), int(3)]).is_none());
        let x = m.solve(&[int(1), int(2)]).unwrap();
        assert_eq!(m.mul(&Mat::column(x)), Mat::column(vec![int(1), int(2)]));
    }
}
