//! Dense univariate polynomials over an exact field, ascending coefficients.

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::sparse::LinearOperator;
use crate::scalar::{Field, Rational};
use num_traits::Zero;
use std::fmt;

/// Polynomial `c[0] + c[1] t + ...` with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

/// Univariate polynomial with rational coefficients.
pub type UnivariatePolynomial = Poly<Rational>;

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_literal();
            parts.push(match k {
                0 => c,
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> Poly<F> {
    /// Newton interpolation through `(xs[i], ys[i])` with distinct nodes.
    pub fn interpolate(xs: &[F], ys: &[F]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidInput("interpolation needs as many values as nodes".into()));
        }
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = xs[i].clone() - &xs[i - j];
                if den.is_zero() {
                    return Err(Error::InvalidInput("interpolation nodes must be distinct".into()));
                }
                dd[i] = (dd[i].clone() - &dd[i - 1]) / &den;
            }
        }
        let mut p = Poly::zero();
        for i in (0..n).rev() {
            p = p.mul(&Poly::new(vec![-xs[i].clone(), F::one()])).add(&Poly::constant(dd[i].clone()));
        }
        Ok(p)
    }

    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    pub fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }
    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }
    /// The monomial `t`.
    pub fn t() -> Self {
        Poly { coeffs: vec![F::zero(), F::one()] }
    }
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = F::one() / &self.leading();
        self.scale(&inv)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(s)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &a.mul_ref(b);
                }
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::Computation("polynomial division by zero".into()));
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = F::one() / &d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut qv = vec![F::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul_ref(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = c.mul_ref(dc);
                r[k - dd + j] -= &t;
            }
            qv[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(qv), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*o = g and g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&qt.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&qt.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = F::one() / &r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic least common multiple.
    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(o);
        self.mul(&o.div_rem(&g).expect("gcd divides").0).monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&F::from_rational(&Rational::from_integer((k as i64).into()))))
                .collect(),
        )
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd divides").0.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x) + c;
        }
        acc
    }

    /// Composition `self(s)` reduced modulo `m`.
    pub fn compose_mod(&self, s: &Self, m: &Self) -> Result<Self> {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add(&Self::constant(c.clone())).rem(m)?;
        }
        Ok(acc)
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.ext_gcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m).expect("nonzero modulus"))
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Result<Matrix<F>> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Matrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// Apply `self(A)` to a vector using only operator applications.
    pub fn apply_to<O: LinearOperator<F> + ?Sized>(&self, op: &O, v: &[F]) -> Vec<F> {
        let mut acc = vec![F::zero(); v.len()];
        for c in self.coeffs.iter().rev() {
            let mut next = op.apply(&acc);
            if !c.is_zero() {
                for (a, b) in next.iter_mut().zip(v) {
                    *a += &c.mul_ref(b);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rational> {
    /// Literal coefficients, ascending.
    pub fn to_literals(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_literal()).collect()
    }

    /// Whether the polynomial is `t^k` for some k.
    pub fn is_monomial_power(&self) -> bool {
        !self.is_zero() && self.coeffs[..self.coeffs.len() - 1].iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (qt, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(qt, p(&[-2, 1]));
        assert!(r.is_zero());
        assert_eq!(a.lcm(&b), p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1])));
    }

    #[test]
    fn extended_gcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        let inv = b.inverse_mod(&a).unwrap();
        assert_eq!(inv.mul(&b).rem(&a).unwrap(), Poly::one());
    }

    #[test]
    fn squarefree_part_removes_repeated_factors() {
        // t^2 (t-1)^3 (t+2)
        let f = p(&[0, 1]).pow(2).mul(&p(&[-1, 1]).pow(3)).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree_part(), p(&[0, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1])));
        assert_eq!(f.derivative().eval(&qi(1)), qi(0));
    }

    #[test]
    fn evaluation_and_matrix_evaluation() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.eval(&q(1, 2)), q(11, 4));
        let m = Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]]).unwrap();
        let fm = f.eval_matrix(&m).unwrap();
        assert_eq!(fm, Matrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(0), qi(1)]]).unwrap());
        let v = vec![qi(3), qi(5)];
        assert_eq!(f.apply_to(&m, &v), fm.mul_vec(&v).unwrap());
    }
}
