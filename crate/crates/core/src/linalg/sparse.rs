//! Row-compressed sparse matrices and the linear-operator abstraction used by
//! Krylov methods.

use crate::error::{check_dim, Result};
use crate::linalg::matrix::Matrix;
use crate::scalar::Field;

/// Anything that can be applied to a coordinate vector.
pub trait LinearOperator<F: Field>: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[F]) -> Vec<F>;
}

/// Sparse matrix stored as sorted nonzero entries per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i].push((i, F::one()));
        }
        m
    }

    /// Build from columns given as sparse (row, value) lists.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, F)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    m.entries[*i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn from_dense(d: &Matrix<F>) -> Self {
        let mut m = Self::zeros(d.rows(), d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let v = d.get(i, j);
                if !v.is_zero() {
                    m.entries[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                d.set(i, *j, v.clone());
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row_entries(&self, i: usize) -> &[(usize, F)] {
        &self.entries[i]
    }
    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.entries[i].iter().find(|(c, _)| *c == j).map_or_else(F::zero, |(_, v)| v.clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        check_dim(self.cols, v.len())?;
        Ok(self.apply_unchecked(v))
    }

    fn apply_unchecked(&self, v: &[F]) -> Vec<F> {
        self.entries
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (j, a) in row {
                    let b = &v[*j];
                    if !b.is_zero() {
                        acc += &a.mul_ref(b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                t.entries[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        check_dim(self.cols, o.rows)?;
        let mut out = Self::zeros(self.rows, o.cols);
        let mut acc: Vec<F> = vec![F::zero(); o.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; o.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &o.entries[*k] {
                    if !mark[*j] {
                        mark[*j] = true;
                        touched.push(*j);
                    }
                    acc[*j] += &a.mul_ref(b);
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = std::mem::replace(&mut acc[j], F::zero());
                mark[j] = false;
                if !v.is_zero() {
                    out.entries[i].push((j, v));
                }
            }
            touched.clear();
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (i, row) in self.entries.iter().enumerate() {
            out.entries[i] = row.iter().map(|(j, v)| (*j, v.mul_ref(s))).collect();
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        check_dim(self.rows, o.rows)?;
        check_dim(self.cols, o.cols)?;
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let (a, b) = (&self.entries[i], &o.entries[i]);
            let (mut p, mut r) = (0, 0);
            let row = &mut out.entries[i];
            while p < a.len() || r < b.len() {
                let take_a = r >= b.len() || (p < a.len() && a[p].0 < b[r].0);
                let take_b = p >= a.len() || (r < b.len() && b[r].0 < a[p].0);
                if take_a {
                    row.push(a[p].clone());
                    p += 1;
                } else if take_b {
                    row.push(b[r].clone());
                    r += 1;
                } else {
                    let v = a[p].1.clone() + &b[r].1;
                    if !v.is_zero() {
                        row.push((a[p].0, v));
                    }
                    p += 1;
                    r += 1;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&(-F::one())))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for (i, row) in self.entries.iter().enumerate() {
            if let Some((_, v)) = row.iter().find(|(j, _)| *j == i) {
                t += v;
            }
        }
        t
    }

    /// Trace of `self * o` without forming the product.
    pub fn trace_product(&self, o: &Self) -> F {
        let mut t = F::zero();
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row {
                let b = o.get(*k, i);
                if !b.is_zero() {
                    t += &a.mul_ref(&b);
                }
            }
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().filter_map(|(j, v)| {
                    let w = f(v);
                    (!w.is_zero()).then_some((*j, w))
                }).collect())
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }
}

impl<F: Field> LinearOperator<F> for SparseMatrix<F> {
    fn dim(&self) -> usize {
        self.cols
    }
    fn apply(&self, v: &[F]) -> Vec<F> {
        self.apply_unchecked(v)
    }
}

impl<F: Field> LinearOperator<F> for Matrix<F> {
    fn dim(&self) -> usize {
        self.cols()
    }
    fn apply(&self, v: &[F]) -> Vec<F> {
        self.mul_vec(v).expect("operator applied to vector of wrong length")
    }
}
