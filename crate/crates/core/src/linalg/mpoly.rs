//! Sparse multivariate polynomials over Q.

use crate::scalar::{format_rational, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Polynomial in `nvars` variables as a map from exponent vectors to
/// nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }
    /// The variable `a_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }
    /// `sum_j c_j a_j`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *v += c;
            if v.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }
    pub fn neg(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *out.terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, k) in x.iter().zip(e) {
                for _ in 0..*k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }
    /// Human-readable form in variables `a1, a2, ...`, terms in descending
    /// exponent order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("a{}", i + 1) } else { format!("a{}^{}", i + 1, k) })
                .collect();
            if mono.is_empty() {
                parts.push(format_rational(c));
            } else {
                parts.push(format!("{}*{}", format_rational(c), mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along rows, memoised over column subsets.
pub fn mpoly_determinant(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = m.len();
    let mut memo: BTreeMap<u64, MPoly> = BTreeMap::new();
    fn rec(m: &[Vec<MPoly>], row: usize, cols: u64, nvars: usize, memo: &mut BTreeMap<u64, MPoly>) -> MPoly {
        if row == m.len() {
            return MPoly::constant(nvars, Rational::one());
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = MPoly::zero(nvars);
        let mut sign_pos = true;
        for (j, entry) in m[row].iter().enumerate() {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !entry.is_zero() {
                let sub = rec(m, row + 1, cols & !(1 << j), nvars, memo);
                let t = entry.mul(&sub);
                acc = if sign_pos { acc.add(&t) } else { acc.sub(&t) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(m, 0, (1u64 << n) - 1, nvars, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn arithmetic_and_evaluation() {
        let a = MPoly::var(2, 0);
        let b = MPoly::var(2, 1);
        let p = a.mul(&b).add(&MPoly::constant(2, qi(3)));
        assert_eq!(p.eval(&[qi(2), qi(5)]), qi(13));
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.sub(&p), MPoly::zero(2));
    }

    #[test]
    fn symbolic_determinant() {
        let a = MPoly::var(2, 0);
        let b = MPoly::var(2, 1);
        let z = MPoly::zero(2);
        // det [[a, b], [b, a]] = a^2 - b^2
        let d = mpoly_determinant(&[vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]], 2);
        assert_eq!(d, a.mul(&a).sub(&b.mul(&b)));
        let d3 = mpoly_determinant(&[vec![a.clone(), z.clone(), z.clone()], vec![z.clone(), b.clone(), z.clone()], vec![z.clone(), z.clone(), a.clone()]], 2);
        assert_eq!(d3.eval(&[qi(2), qi(3)]), qi(12));
    }
}
