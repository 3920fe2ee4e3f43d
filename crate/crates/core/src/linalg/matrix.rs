//! Dense exact matrices and elimination.

use crate::error::{check_dim, Error, Result};
use crate::scalar::{Field, Rational};
use num_traits::Zero;
use std::fmt;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_literal()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Result of a combined rank, kernel and solve computation.
#[derive(Clone, Debug)]
pub struct KernelSolve<F> {
    pub rank: usize,
    /// Echelonized kernel basis (each vector has a unit at one free column).
    pub kernel: Vec<Vec<F>>,
    /// Least-lexicographic particular solution (free variables set to zero).
    pub solution: Option<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_dim(c, row.len())?;
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_dim(rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise conjugate (identity over the rationals).
    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul_ref(s)).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        check_dim(self.rows, o.rows)?;
        check_dim(self.cols, o.cols)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        check_dim(self.rows, o.rows)?;
        check_dim(self.cols, o.cols)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        check_dim(self.cols, o.rows)?;
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let t = a.mul_ref(b);
                        *out.get_mut(i, j) += &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &a.mul_ref(b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidInput("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Gauss-Jordan reduction to the unique reduced row echelon form.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = F::one() / m.get(r, c);
            for j in c..m.cols {
                let v = m.get(r, j).mul_ref(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let t = f.mul_ref(rv);
                    *m.get_mut(i, j) -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Echelonized basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Rank, kernel and (if `rhs` is given) a particular solution of `self x = rhs`.
    pub fn rank_kernel_solve(&self, rhs: Option<&[F]>) -> Result<KernelSolve<F>> {
        let Some(b) = rhs else {
            let e = self.rref();
            return Ok(KernelSolve { rank: e.pivots.len(), kernel: kernel_from_rref(&e, self.cols), solution: None });
        };
        check_dim(self.rows, b.len())?;
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let e = aug.rref();
        let consistent = !e.pivots.contains(&self.cols);
        let coeff_pivots: Vec<usize> = e.pivots.iter().copied().filter(|&p| p < self.cols).collect();
        let solution = consistent.then(|| {
            let mut x = vec![F::zero(); self.cols];
            for (r, &p) in coeff_pivots.iter().enumerate() {
                x[p] = e.matrix.get(r, self.cols).clone();
            }
            x
        });
        let restricted = Echelon { matrix: e.matrix, pivots: coeff_pivots };
        let kernel = kernel_from_rref(&restricted, self.cols);
        Ok(KernelSolve { rank: restricted.pivots.len(), kernel, solution })
    }

    /// Solve `self x = rhs`, returning the least-lexicographic solution.
    pub fn solve(&self, rhs: &[F]) -> Result<Option<Vec<F>>> {
        Ok(self.rank_kernel_solve(Some(rhs))?.solution)
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(F::zero()) };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det.mul_ref(&piv);
            let inv = F::one() / &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).mul_ref(&inv);
                for j in c..n {
                    let t = f.mul_ref(m.get(c, j));
                    *m.get_mut(i, j) -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Computation("matrix is singular".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| e.matrix.get(i, n + j).clone()))
    }

    /// Sub-matrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

fn kernel_from_rref<F: Field>(e: &Echelon<F>, cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &p) in e.pivots.iter().enumerate() {
            let x = e.matrix.get(r, free);
            if !x.is_zero() {
                v[p] = -x.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Reduce a list of vectors to the canonical RREF basis of their span.
pub fn echelon_basis<F: Field>(vectors: &[Vec<F>], ambient: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix { rows: vectors.len(), cols: ambient, data: vectors.iter().flatten().cloned().collect() };
    let e = m.rref();
    (0..e.pivots.len()).map(|r| e.matrix.row(r).to_vec()).collect()
}

/// Exact signature (n_plus, n_minus, n_zero) of a symmetric rational matrix,
/// computed by diagonalizing under congruence.
pub fn signature(sym: &Matrix<Rational>) -> Result<(usize, usize, usize)> {
    if !sym.is_square() {
        return Err(Error::InvalidInput("signature of a non-square matrix".into()));
    }
    let n = sym.rows();
    let mut a = sym.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Find a nonzero diagonal pivot, creating one from an off-diagonal entry if needed.
        let mut pivot = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
        if pivot.is_none() {
            let mut found = None;
            'outer: for &i in &active {
                for &j in &active {
                    if i != j && !a.get(i, j).is_zero() {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            match found {
                None => break,
                Some((i, j)) => {
                    // Replace basis vector i by e_i + e_j; the new diagonal is 2 a_ij.
                    for c in 0..n {
                        let v = a.get(i, c).clone() + a.get(j, c);
                        a.set(i, c, v);
                    }
                    for r in 0..n {
                        let v = a.get(r, i).clone() + a.get(r, j);
                        a.set(r, i, v);
                    }
                    pivot = Some(i);
                }
            }
        }
        let p = pivot.unwrap();
        let d = a.get(p, p).clone();
        if d > Rational::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
        for &i in &others {
            let f = a.get(i, p).clone() / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &others {
                let t = &f * a.get(p, j);
                *a.get_mut(i, j) -= &t;
            }
            a.set(i, p, Rational::zero());
            a.set(p, i, Rational::zero());
        }
        active.retain(|&i| i != p);
    }
    Ok((pos, neg, n - pos - neg))
}

/// Whether a symmetric rational matrix is positive definite.
pub fn is_positive_definite(sym: &Matrix<Rational>) -> Result<bool> {
    let (p, _, _) = signature(sym)?;
    Ok(p == sym.rows())
}
