//! Minimal polynomials, Jordan-Chevalley decomposition and exponentials of
//! nilpotent operators.

use crate::error::{precondition, Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::poly::Poly;
use crate::linalg::sparse::LinearOperator;
use crate::scalar::{Field, Rational};
use num_traits::One;

/// Incremental echelon reducer. Each stored vector has a unit at its pivot
/// and zeros at all earlier pivots, so reducing in insertion order is exact.
#[derive(Clone, Debug, Default)]
pub struct Reducer<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Reducer<F> {
    pub fn new() -> Self {
        Reducer { rows: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    /// Stored `(pivot, row)` pairs in insertion order.
    pub fn rows(&self) -> &[(usize, Vec<F>)] {
        &self.rows
    }

    /// Reduce `w` in place; returns the coefficients used for each stored row.
    pub fn reduce(&self, w: &mut [F]) -> Vec<F> {
        let mut used = Vec::with_capacity(self.rows.len());
        for (p, r) in &self.rows {
            let c = w[*p].clone();
            if !c.is_zero() {
                for (a, b) in w.iter_mut().zip(r) {
                    if !b.is_zero() {
                        *a -= &c.mul_ref(b);
                    }
                }
            }
            used.push(c);
        }
        used
    }

    /// Insert a vector assumed already reduced; returns false for zero vectors.
    pub fn insert_reduced(&mut self, mut w: Vec<F>) -> bool {
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = F::one() / &w[p];
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        self.rows.push((p, w));
        true
    }

    /// Reduce then insert; returns true when the span grew.
    pub fn insert(&mut self, mut w: Vec<F>) -> bool {
        self.reduce(&mut w);
        self.insert_reduced(w)
    }

    pub fn contains(&self, w: &[F]) -> bool {
        let mut v = w.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }
}

/// Minimal polynomial of `v` under `op` together with its Krylov basis.
pub fn local_minimal_polynomial<F: Field, O: LinearOperator<F> + ?Sized>(op: &O, v: &[F]) -> (Poly<F>, Vec<Vec<F>>) {
    // Reduced Krylov vectors u_k with combos c_k such that u_k = c_k(A) v.
    let mut rows: Vec<(usize, Vec<F>, Poly<F>)> = Vec::new();
    let mut current = v.to_vec();
    let mut combo = Poly::<F>::one();
    let mut krylov = Vec::new();
    loop {
        for (p, r, c) in &rows {
            let f = current[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in current.iter_mut().zip(r) {
                if !b.is_zero() {
                    *a -= &f.mul_ref(b);
                }
            }
            combo = combo.sub(&c.scale(&f));
        }
        let Some(p) = current.iter().position(|x| !x.is_zero()) else {
            return (combo.monic(), krylov);
        };
        let inv = F::one() / &current[p];
        let normalized: Vec<F> = current.iter().map(|x| x.mul_ref(&inv)).collect();
        let ncombo = combo.scale(&inv);
        krylov.push(normalized.clone());
        let next = op.apply(&normalized);
        let next_combo = ncombo.mul(&Poly::t());
        rows.push((p, normalized, ncombo));
        current = next;
        combo = next_combo;
    }
}

/// Minimal polynomial of a linear operator (monic).
///
/// Krylov sequences are started only from basis vectors outside the
/// invariant subspace accumulated so far; the answer is the lcm of the
/// local minimal polynomials.
pub fn minimal_polynomial<F: Field, O: LinearOperator<F> + ?Sized>(op: &O) -> Poly<F> {
    let n = op.dim();
    let mut span = Reducer::<F>::new();
    let mut mu = Poly::<F>::one();
    for j in 0..n {
        if span.len() == n {
            break;
        }
        let mut e = vec![F::zero(); n];
        e[j] = F::one();
        if span.contains(&e) {
            continue;
        }
        let (m, basis) = local_minimal_polynomial(op, &e);
        mu = mu.lcm(&m);
        for b in basis {
            span.insert(b);
        }
    }
    mu
}

/// Polynomial `s(t)` with `s(M)` the semisimple part of any operator whose
/// minimal polynomial is `mu`. Computed by Newton iteration in `F[t]/(mu)`.
pub fn semisimple_part_polynomial<F: Field>(mu: &Poly<F>) -> Result<Poly<F>> {
    let p = mu.squarefree_part();
    let dp = p.derivative();
    let mut s = Poly::<F>::t().rem(mu)?;
    if p == mu.monic() {
        return Ok(s);
    }
    let mut steps = 0;
    loop {
        let ps = p.compose_mod(&s, mu)?;
        if ps.is_zero() {
            return Ok(s);
        }
        let d = dp.compose_mod(&s, mu)?;
        let dinv = d
            .inverse_mod(mu)
            .ok_or_else(|| Error::Computation("derivative of squarefree part is not invertible modulo the minimal polynomial".into()))?;
        s = s.sub(&ps.mul(&dinv)).rem(mu)?;
        steps += 1;
        if steps > 64 {
            return Err(Error::Computation("Newton iteration for the semisimple part did not converge".into()));
        }
    }
}

/// Jordan-Chevalley decomposition `M = S + N` of a square matrix.
pub fn matrix_jordan_chevalley<F: Field>(m: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if !m.is_square() {
        return Err(Error::InvalidInput("Jordan decomposition of a non-square matrix".into()));
    }
    let mu = minimal_polynomial(m);
    let s_poly = semisimple_part_polynomial(&mu)?;
    let s = s_poly.eval_matrix(m)?;
    let n = m.sub(&s)?;
    Ok((s, n))
}

/// Whether a square matrix is nilpotent.
pub fn is_nilpotent_matrix<F: Field, O: LinearOperator<F> + ?Sized>(op: &O) -> bool {
    let mu = minimal_polynomial(op);
    mu.coeffs()[..mu.coeffs().len() - 1].iter().all(|c| c.is_zero())
}

/// Whether an operator is semisimple (squarefree minimal polynomial).
pub fn is_semisimple_operator<F: Field, O: LinearOperator<F> + ?Sized>(op: &O) -> bool {
    let mu = minimal_polynomial(op);
    mu.gcd(&mu.derivative()).degree() == Some(0)
}

fn factorial_inverses<F: Field>(n: usize) -> Vec<F> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = Rational::one();
    out.push(F::one());
    for k in 1..=n {
        f *= Rational::from_integer((k as i64).into());
        out.push(F::from_rational(&(Rational::one() / &f)));
    }
    out
}

/// Exact exponential of a nilpotent matrix as a finite series.
pub fn nilpotent_exp<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() {
        return Err(Error::InvalidInput("exponential of a non-square matrix".into()));
    }
    let n = m.rows();
    let inv_fact = factorial_inverses::<F>(n);
    let mut acc = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for k in 1..=n {
        power = power.mul(m)?;
        if power.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&power.scale(&inv_fact[k]))?;
    }
    if power.mul(m)?.is_zero() || power.is_zero() {
        Ok(acc)
    } else {
        precondition("exponential requires a nilpotent argument")
    }
}

/// `exp(A) v` for a nilpotent operator `A`, using only applications of `A`.
pub fn nilpotent_exp_apply<F: Field, O: LinearOperator<F> + ?Sized>(op: &O, v: &[F]) -> Result<Vec<F>> {
    let n = op.dim();
    let inv_fact = factorial_inverses::<F>(n + 1);
    let mut acc = v.to_vec();
    let mut term = v.to_vec();
    for fk in inv_fact.iter().skip(1) {
        term = op.apply(&term);
        if term.iter().all(|x| x.is_zero()) {
            return Ok(acc);
        }
        for (a, t) in acc.iter_mut().zip(&term) {
            if !t.is_zero() {
                *a += &t.mul_ref(fk);
            }
        }
    }
    precondition("exponential requires a nilpotent argument")
}
