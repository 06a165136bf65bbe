//! Dense matrices over `F_p` and echelon-form subspace bookkeeping.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, lift_symmetric, mul_mod, neg_mod, reduce_i64, sub_mod, Fp};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        Matrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod `p`.
    pub fn from_i64_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| reduce_i64(v, p)).collect();
        Ok(Matrix {
            rows: rows.len(),
            cols,
            p,
            data,
        })
    }

    /// Builds a `rows × columns.len()` matrix whose columns are the given residue vectors.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len(), p);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn from_rows_raw(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < p));
        Matrix { rows, cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn entry(&self, i: usize, j: usize) -> Fp {
        Fp::from_residue(self.get(i, j), self.p)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.p;
        let mut out = Matrix::zeros(self.rows, rhs.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = add_mod(*o, mul_mod(a, b, p), p);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p))
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, add_mod)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, sub_mod)
    }

    fn zip_with(&self, rhs: &Matrix, f: fn(u64, u64, u64) -> u64) -> Matrix {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b, self.p))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let data = self.data.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        Matrix { data, ..*self }
    }

    /// `self += c * rhs` in place.
    pub fn add_scaled(&mut self, c: u64, rhs: &Matrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        if c == 0 {
            return;
        }
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = add_mod(*a, mul_mod(c, b, p), p);
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols, self.p);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols, self.p);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn hstack(p: u64, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols, p);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(p: u64, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(rows, cols, p);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    /// Matrix entries flattened row-major; used as coordinates of a map.
    pub fn flatten(&self) -> Vec<u64> {
        self.data.clone()
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = inv_mod(m.get(r, c), p);
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, mul_mod(v, inv, p));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = sub_mod(m.get(i, j), mul_mod(f, m.get(r, j), p), p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Ax = 0}` as column vectors; its size is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0; self.cols];
                v[f] = 1 % p;
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = neg_mod(r.get(i, f), p);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Ax = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.p != b.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: b.p,
            });
        }
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows, right-hand side {}",
                self.rows, b.rows
            )));
        }
        let aug = Matrix::hstack(self.p, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, b.cols, self.p);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, r.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Vector form of [`Matrix::solve`] for a single right-hand side.
    pub fn solve_vec(&self, b: &[u64]) -> Option<Vec<u64>> {
        let rhs = Matrix::from_columns(self.p, self.rows, &[b.to_vec()]);
        self.solve(&rhs)
            .expect("shared modulus")
            .map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.p, n, &[self, &Matrix::identity(n, self.p)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> u64 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| add_mod(acc, self.get(i, i), self.p))
    }

    /// Entries lifted to `(-p/2, p/2]`.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| lift_symmetric(v, self.p)).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} mod {}]{:?}", self.rows, self.cols, self.p, self.to_i64_rows())
    }
}

/// A subspace of `F_p^n` kept in reduced echelon form, remembering how each
/// echelon row was assembled from the vectors that were inserted.
#[derive(Clone, Debug)]
pub struct Basis {
    p: u64,
    ambient: usize,
    vectors: Vec<Vec<u64>>,
    echelon: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    // echelon[k] = sum_j transform[k][j] * vectors[j]
    transform: Vec<Vec<u64>>,
}

impl Basis {
    pub fn empty(p: u64, ambient: usize) -> Self {
        Basis {
            p,
            ambient,
            vectors: Vec::new(),
            echelon: Vec::new(),
            pivots: Vec::new(),
            transform: Vec::new(),
        }
    }

    /// Basis of the span, keeping the first independent vectors in order.
    pub fn span<I>(p: u64, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut b = Basis::empty(p, ambient);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The residual of `v` after elimination against the echelon rows.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r = v.to_vec();
        for (row, &c) in self.echelon.iter().zip(&self.pivots) {
            let f = r[c];
            if f != 0 {
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the current vectors; returns whether it was added.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let p = self.p;
        let n = self.vectors.len();
        let mut r = v.clone();
        let mut t = vec![0u64; n + 1];
        t[n] = 1 % p;
        for (k, (row, &c)) in self.echelon.iter().zip(&self.pivots).enumerate() {
            let f = r[c];
            if f != 0 {
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
                for (j, &tk) in self.transform[k].iter().enumerate() {
                    t[j] = sub_mod(t[j], mul_mod(f, tk, p), p);
                }
            }
        }
        let Some(c) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[c], p);
        r.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
        t.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
        for tr in &mut self.transform {
            tr.push(0);
        }
        for (row, tr) in self.echelon.iter_mut().zip(self.transform.iter_mut()) {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
                for (x, &y) in tr.iter_mut().zip(&t) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.echelon.insert(pos, r);
        self.transform.insert(pos, t);
        self.vectors.push(v);
        true
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut coords = vec![0u64; self.vectors.len()];
        let mut r = v.to_vec();
        for ((row, &c), tr) in self.echelon.iter().zip(&self.pivots).zip(&self.transform) {
            let f = r[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                *x = sub_mod(*x, mul_mod(f, y, p), p);
            }
            for (x, &y) in coords.iter_mut().zip(tr) {
                *x = add_mod(*x, mul_mod(f, y, p), p);
            }
        }
        r.iter().all(|&x| x == 0).then_some(coords)
    }

    /// Standard basis indices complementing the subspace (the non-pivot columns).
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// The inserted vectors as the columns of an `ambient × len` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.p, self.ambient, &self.vectors)
    }
}

/// Standard unit vector.
pub fn unit_vector(p: u64, n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1 % p;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(2, 5);
        assert_eq!(a.solve_vec(&[1, 2]), Some(vec![1, 2]));
    }

    #[test]
    fn solve_rank_deficient_inconsistent() {
        let a = m(5, &[&[1, 1], &[2, 2]]);
        assert_eq!(a.solve_vec(&[1, 3]), None);
    }

    #[test]
    fn solve_scalar_inverse() {
        let a = m(5, &[&[2]]);
        assert_eq!(a.solve_vec(&[1]), Some(vec![3]));
    }

    #[test]
    fn solve_rejects_mixed_moduli() {
        let a = Matrix::identity(2, 5);
        let b = Matrix::zeros(2, 1, 7);
        assert!(matches!(a.solve(&b), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(2, 2, 3).kernel_basis().len(), 2);
        assert!(Matrix::identity(3, 3).kernel_basis().is_empty());
        assert_eq!(m(3, &[&[1, 2]]).kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(101, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, 101));
        assert!(m(101, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn basis_coordinates_follow_inserted_vectors() {
        let mut b = Basis::empty(7, 3);
        assert!(b.insert(vec![1, 1, 0]));
        assert!(b.insert(vec![0, 1, 1]));
        assert!(!b.insert(vec![1, 2, 1]));
        assert_eq!(b.coordinates(&[1, 3, 2]), Some(vec![1, 2]));
        assert_eq!(b.coordinates(&[1, 0, 0]), None);
        assert_eq!(b.complement_indices().len(), 1);
    }
}
