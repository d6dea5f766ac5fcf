//! Dense matrices and row spaces over an exact field.
//!
//! Everything downstream reduces to Gaussian elimination here: Hom-space
//! kernels, subspace membership for the radical filtration, factorization
//! solves for almost-split certification.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged row lengths".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[K::Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, f.add(&cur, &f.mul(a, b)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("add".into()));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &K::Elem) -> Matrix<K> {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix<K> {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product A v.
    pub fn apply(&self, v: &[K::Elem]) -> Result<Vec<K::Elem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("apply".into()));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !f.is_zero(a) && !f.is_zero(&v[j]) {
                    out[i] = f.add(&out[i], &f.mul(a, &v[j]));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; returns (rref matrix with zero rows dropped,
    /// pivot columns).
    pub fn rref(&self) -> (Matrix<K>, Vec<usize>) {
        let f = self.field.clone();
        let mut rows: Vec<Vec<K::Elem>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(sel) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, sel);
            let inv = f.inv(&rows[r][c]).expect("pivot nonzero");
            for x in rows[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            for i in 0..rows.len() {
                if i != r && !f.is_zero(&rows[i][c]) {
                    let factor = rows[i][c].clone();
                    for j in 0..self.cols {
                        let t = f.mul(&factor, &rows[r][j]);
                        rows[i][j] = f.sub(&rows[i][j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(pivots.len());
        let m = Matrix::from_rows(f, rows).expect("rectangular");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space { v : A v = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vec<K::Elem>> {
        let f = &self.field;
        let (rr, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rr.at(i, fc));
            }
            out.push(v);
        }
        out
    }

    /// Solve A x = b; None when inconsistent. Returns one solution.
    pub fn solve(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        if b.len() != self.rows {
            return None;
        }
        let f = self.field.clone();
        let mut aug = Matrix::zero(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (rr, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = rr.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// True iff the matrix is square and invertible.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn render(&self) -> String {
        let f = &self.field;
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| f.render(self.at(i, j))).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                let body = row
                    .iter()
                    .map(|s| format!("{s:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("[{body}]")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A subspace of k^n kept in reduced row echelon form. Supports incremental
/// span construction and exact membership tests.
#[derive(Clone, Debug)]
pub struct Subspace<K: Field> {
    field: K,
    ambient: usize,
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn empty(field: K, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: K, ambient: usize, vecs: &[Vec<K::Elem>]) -> Self {
        let mut s = Subspace::empty(field, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis_rows(&self) -> &[Vec<K::Elem>] {
        &self.rows
    }

    fn reduce(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[pc]) {
                let factor = v[pc].clone();
                for j in 0..self.ambient {
                    let t = f.mul(&factor, &row[j]);
                    v[j] = f.sub(&v[j], &t);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Inserts v into the span; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[K::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // back-substitute into existing rows to keep full reduction
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[pc]) {
                let factor = row[pc].clone();
                for j in 0..self.ambient {
                    let t = f.mul(&factor, &v[j]);
                    row[j] = f.sub(&row[j], &t);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// Exact subspace containment: self ⊆ other.
    pub fn subset_of(&self, other: &Subspace<K>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_space(&self, other: &Subspace<K>) -> bool {
        self.dim() == other.dim() && self.subset_of(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Rationals> {
        let q = Rationals;
        Matrix::from_rows(
            q,
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| q.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = qm(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let (rr, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rr.rows(), 2);
    }

    #[test]
    fn kernel_is_killed() {
        let m = qm(vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            let out = m.apply(v).unwrap();
            assert!(out.iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = qm(vec![vec![1, 1], vec![0, 1]]);
        let q = Rationals;
        let b = vec![q.from_i64(3), q.from_i64(1)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
        let sing = qm(vec![vec![1, 1], vec![1, 1]]);
        assert!(sing.solve(&[q.from_i64(0), q.from_i64(1)]).is_none());
    }

    #[test]
    fn subspace_membership() {
        let q = Rationals;
        let v1: Vec<_> = [1, 0, 1].iter().map(|&x| q.from_i64(x)).collect();
        let v2: Vec<_> = [0, 1, 1].iter().map(|&x| q.from_i64(x)).collect();
        let mut s = Subspace::empty(q, 3);
        assert!(s.insert(&v1));
        assert!(s.insert(&v2));
        assert!(!s.insert(&v1));
        let sum: Vec<_> = [1, 1, 2].iter().map(|&x| q.from_i64(x)).collect();
        assert!(s.contains(&sum));
        let off: Vec<_> = [1, 1, 1].iter().map(|&x| q.from_i64(x)).collect();
        assert!(!s.contains(&off));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn matrix_product_shapes() {
        let a = qm(vec![vec![1, 2]]);
        let b = qm(vec![vec![3], vec![4]]);
        let c = a.mul(&b).unwrap();
        assert_eq!((c.rows(), c.cols()), (1, 1));
        assert_eq!(c.at(0, 0), &Rationals.from_i64(11));
        assert!(b.mul(&b).is_err());
    }
}
