//! Dense matrices over an exact field.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows.iter().take(self.rows)).finish()
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(p: &Poly<S>) -> Self {
        let n = p.degree().expect("companion of zero polynomial");
        let lead = p.leading().unwrap().inv().expect("zero leading coefficient");
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = S::one();
        }
        for i in 0..n {
            m[(i, n - 1)] = -(p.coeffs()[i].clone() * lead.clone());
        }
        m
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

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_columns(columns: &[Vec<S>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + a.clone() * b.clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Scalar multiple of the identity, returning the scalar.
    pub fn as_scalar(&self) -> Option<S> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self[(0, 0)].clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                if i == j {
                    self[(i, j)] == c
                } else {
                    self[(i, j)].is_zero()
                }
            })
        });
        ok.then_some(c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (ii, i) in rows.clone().enumerate() {
            for (jj, j) in cols.clone().enumerate() {
                m[(ii, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Fraction-free (Bareiss) forward elimination. Returns the echelon
    /// form, the pivot columns and the sign of the row permutation.
    fn bareiss(&self) -> (Self, Vec<usize>, bool) {
        let mut a = self.clone();
        let mut prev_inv = S::one();
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
                negated = !negated;
            }
            let piv = a[(r, c)].clone();
            for i in r + 1..a.rows {
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = (piv.clone() * a[(i, j)].clone() - f.clone() * a[(r, j)].clone())
                        * prev_inv.clone();
                    a[(i, j)] = v;
                }
            }
            prev_inv = piv.inv().expect("nonzero pivot");
            pivots.push(c);
            r += 1;
        }
        (a, pivots, negated)
    }

    pub fn det(&self) -> S {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let (a, pivots, negated) = self.bareiss();
        if pivots.len() < n {
            return S::zero();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negated {
            -d
        } else {
            d
        }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a[(r, c)].inv().expect("nonzero pivot");
            for j in c..a.cols {
                let v = a[(r, j)].clone() * inv.clone();
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (a, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>, LinearError> {
        if b.len() != self.rows {
            return Err(LinearError::Dimension(format!(
                "rhs has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (a, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = a[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self, LinearError> {
        if !self.is_square() {
            return Err(LinearError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = S::one();
        }
        let (a, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinearError::Singular);
        }
        Ok(a.submatrix(0..n, n..2 * n))
    }

    /// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Poly<S> {
        assert!(self.is_square(), "charpoly of non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next[(i, i)].clone() + coeffs[n - k + 1].clone();
                next[(i, i)] = v;
            }
            m = next;
            let t = self.mul(&m).trace();
            let kinv = S::from_i64(k as i64).inv().expect("characteristic zero");
            coeffs[n - k] = -(t * kinv);
        }
        Poly::new(coeffs)
    }

    /// Row-space basis of the given vectors (as rows of the returned echelon form).
    pub fn row_space(vectors: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_vec(vectors.len(), dim, vectors.concat());
        let (a, pivots) = m.rref();
        (0..pivots.len()).map(|i| a.row(i).to_vec()).collect()
    }
}

/// Incrementally maintained echelon basis; used for span computations.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    dim: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for j in *p..self.dim {
                if !row[j].is_zero() {
                    w[j] = w[j].clone() - f.clone() * row[j].clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.dim);
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        let w: Vec<S> = w.into_iter().map(|x| x * inv.clone()).collect();
        self.rows.push((p, w));
        true
    }

    pub fn vectors(&self) -> Vec<Vec<S>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::scalar::{rat, Rational};
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_and_inverse() {
        assert_eq!(q(&[&[2, 0], &[0, 3]]).det(), rat(6, 1));
        let m = q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.det(), rat(-2, 1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(LinearError::Singular));
    }

    #[test]
    fn charpoly_identity() {
        let p = Matrix::<Rational>::identity(2).charpoly();
        assert_eq!(p.coeffs(), &[rat(1, 1), rat(-2, 1), rat(1, 1)]);
    }

    #[test]
    fn nullspace_shapes() {
        assert_eq!(Matrix::<Rational>::zeros(3, 3).nullspace().len(), 3);
        assert!(Matrix::<Rational>::identity(3).nullspace().is_empty());
        let proj = q(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        let ns = proj.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(proj.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_matches_bareiss() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), rat(0, 1));
    }

    #[test]
    fn echelon_basis_span() {
        let mut b = EchelonBasis::<Rational>::new(3);
        assert!(b.insert(&[rat(1, 1), rat(1, 1), rat(0, 1)]));
        assert!(b.insert(&[rat(0, 1), rat(1, 1), rat(1, 1)]));
        assert!(!b.insert(&[rat(1, 1), rat(2, 1), rat(1, 1)]));
        assert_eq!(b.len(), 2);
    }
}
