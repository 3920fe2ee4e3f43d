//! Multivectors on R^n, the unimodular actions and Poincare duality.

use super::combinatorics::{complement, elementary_action, from_indices, indices, wedge_sign, SubsetIndex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, parse_rational, qi, Rational};
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Largest supported ambient dimension.
pub const MAX_N: usize = 16;

/// A k-vector on R^n with coordinates on sorted index tuples. The same
/// type holds k-forms written in the dual basis `e_I^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    n: usize,
    k: usize,
    terms: BTreeMap<u32, Rational>,
}

impl MultiVector {
    pub fn zero(n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidInput(format!("ambient dimension must be in 1..={MAX_N}, got {n}")));
        }
        Ok(MultiVector { n, k, terms: BTreeMap::new() })
    }

    /// `c e_I` with `I` given by 0-based indices in any order.
    pub fn monomial(n: usize, idx: &[usize], c: Rational) -> Result<Self> {
        let mut v = MultiVector::zero(n, idx.len())?;
        v.add_term(idx, c)?;
        Ok(v)
    }

    /// Add `c e_{i1} ^ .. ^ e_{ik}`, reordering with the permutation sign.
    pub fn add_term(&mut self, idx: &[usize], c: Rational) -> Result<()> {
        if idx.len() != self.k {
            return Err(Error::InvalidInput(format!("term of grade {} in a {}-vector", idx.len(), self.k)));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(Error::InvalidInput(format!("index {} exceeds ambient dimension {}", bad + 1, self.n)));
        }
        let mut mask = 0u32;
        let mut sign = 1i64;
        for &i in idx {
            match wedge_sign(mask, 1 << i) {
                Some(s) => {
                    sign *= s;
                    mask |= 1 << i;
                }
                None => return Ok(()),
            }
        }
        self.add_mask(mask, c * qi(sign));
        Ok(())
    }

    fn add_mask(&mut self, mask: u32, c: Rational) {
        let e = self.terms.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn grade(&self) -> usize {
        self.k
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// `(0-based sorted indices, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, Rational)> {
        let idx = SubsetIndex::new(self.n, self.k.min(self.n));
        let mut out: Vec<(usize, Vec<usize>, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (idx.position(*m).unwrap_or(usize::MAX), indices(*m), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter().map(|(_, i, c)| (i, c)).collect()
    }
    pub fn coefficient(&self, idx: &[usize]) -> Rational {
        self.terms.get(&from_indices(idx)).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_same(&self, o: &MultiVector) -> Result<()> {
        if self.n != o.n || self.k != o.k {
            return Err(Error::InvalidInput(format!("({}, {}) and ({}, {}) multivectors do not match", self.n, self.k, o.n, o.k)));
        }
        Ok(())
    }
    pub fn add(&self, o: &MultiVector) -> Result<MultiVector> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_mask(*m, c.clone());
        }
        Ok(out)
    }
    pub fn scale(&self, s: &Rational) -> MultiVector {
        let mut out = MultiVector { n: self.n, k: self.k, terms: BTreeMap::new() };
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(m, c)| (*m, c * s)).collect();
        }
        out
    }

    /// Dense coordinates in lexicographic subset order.
    pub fn coordinates(&self) -> Vec<Rational> {
        let idx = SubsetIndex::new(self.n, self.k);
        let mut v = vec![Rational::zero(); idx.len()];
        for (m, c) in &self.terms {
            v[idx.position(*m).expect("grade")] = c.clone();
        }
        v
    }
    pub fn from_coordinates(n: usize, k: usize, c: &[Rational]) -> Result<MultiVector> {
        let idx = SubsetIndex::new(n, k);
        if c.len() != idx.len() {
            return Err(Error::DimensionMismatch { expected: idx.len(), found: c.len() });
        }
        let mut v = MultiVector::zero(n, k)?;
        for (p, x) in c.iter().enumerate() {
            if !x.is_zero() {
                v.terms.insert(idx.subset(p), x.clone());
            }
        }
        Ok(v)
    }

    /// Embed into `R^m`, `m >= n`, using the first n basis vectors.
    pub fn pad(&self, m: usize) -> Result<MultiVector> {
        if m < self.n {
            return Err(Error::InvalidInput("padding must not shrink the ambient space".into()));
        }
        let mut v = MultiVector::zero(m, self.k)?;
        v.terms = self.terms.clone();
        Ok(v)
    }
}

/// `a ^ b`; grades beyond the ambient dimension give the zero multivector.
pub fn wedge(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    if a.n != b.n {
        return Err(Error::InvalidInput(format!("ambient dimensions {} and {} differ", a.n, b.n)));
    }
    let mut out = MultiVector { n: a.n, k: a.k + b.k, terms: BTreeMap::new() };
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some(s) = wedge_sign(*ma, *mb) {
                out.add_mask(ma | mb, ca * cb * qi(s));
            }
        }
    }
    Ok(out)
}

fn check_square(n: usize, g: &Matrix<Rational>) -> Result<()> {
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
    }
    Ok(())
}

/// Derivation action of an n x n matrix: `X (v1 ^ .. ^ vk) = sum v1 ^ .. ^ X vi ^ .. ^ vk`.
pub fn lie_action(x: &Matrix<Rational>, w: &MultiVector) -> Result<MultiVector> {
    check_square(w.n, x)?;
    let mut out = MultiVector { n: w.n, k: w.k, terms: BTreeMap::new() };
    for (m, c) in &w.terms {
        for a in 0..w.n {
            for b in 0..w.n {
                let xab = x.get(a, b);
                if xab.is_zero() {
                    continue;
                }
                if let Some((s, m2)) = elementary_action(a, b, *m) {
                    out.add_mask(m2, c * xab * qi(s));
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of `L^k g` on the lexicographic subset basis.
pub fn exterior_power_matrix(g: &Matrix<Rational>, k: usize) -> Result<Matrix<Rational>> {
    let n = g.rows();
    check_square(n, g)?;
    let idx = SubsetIndex::new(n, k);
    let mut cols = Vec::with_capacity(idx.len());
    let columns: Vec<MultiVector> = (0..n)
        .map(|j| MultiVector::from_coordinates(n, 1, &g.column(j)))
        .collect::<Result<_>>()?;
    for &mask in idx.subsets() {
        let mut acc = MultiVector { n, k: 0, terms: BTreeMap::from([(0u32, qi(1))]) };
        for i in indices(mask) {
            acc = wedge(&acc, &columns[i])?;
        }
        cols.push(acc.coordinates());
    }
    Matrix::from_columns(idx.len(), &cols)
}

/// `g . w` for `g` in GL(n).
pub fn group_action(g: &Matrix<Rational>, w: &MultiVector) -> Result<MultiVector> {
    let m = exterior_power_matrix(g, w.k)?;
    MultiVector::from_coordinates(w.n, w.k, &m.mul_vec(&w.coordinates())?)
}

/// Contragredient action on a k-form: `(g . x)(v) = x(g^{-1} v)`.
pub fn group_action_on_form(g: &Matrix<Rational>, x: &MultiVector) -> Result<MultiVector> {
    let inv = g.inverse()?;
    let m = exterior_power_matrix(&inv, x.k)?.transpose();
    MultiVector::from_coordinates(x.n, x.k, &m.mul_vec(&x.coordinates())?)
}

/// `P_*`: a k-form (dual-basis coordinates) to an (n-k)-vector with
/// `<P_*(x), y> = <x ^ y, vol>`, `vol = e_1 ^ .. ^ e_n` and
/// `<e_I^*, e_J> = delta_IJ`.
pub fn poincare_dual(x: &MultiVector) -> Result<MultiVector> {
    if x.k > x.n {
        return Err(Error::InvalidInput("form grade exceeds the ambient dimension".into()));
    }
    let mut out = MultiVector::zero(x.n, x.n - x.k)?;
    for (m, c) in &x.terms {
        let comp = complement(x.n, *m);
        let s = wedge_sign(*m, comp).expect("disjoint");
        out.add_mask(comp, c * qi(s));
    }
    Ok(out)
}

/// `P^*`: an (n-k)-vector to a k-form with `<P^*(v), u> = <vol^*, v ^ u>`.
pub fn poincare_codual(v: &MultiVector) -> Result<MultiVector> {
    if v.k > v.n {
        return Err(Error::InvalidInput("grade exceeds the ambient dimension".into()));
    }
    let mut out = MultiVector::zero(v.n, v.n - v.k)?;
    for (m, c) in &v.terms {
        let comp = complement(v.n, *m);
        let s = wedge_sign(*m, comp).expect("disjoint");
        out.add_mask(comp, c * qi(s));
    }
    Ok(out)
}

/// `<x, w>` for a k-form `x` and a k-vector `w`.
pub fn pairing(x: &MultiVector, w: &MultiVector) -> Result<Rational> {
    x.check_same(w)?;
    Ok(x.terms.iter().filter_map(|(m, c)| w.terms.get(m).map(|d| c * d)).fold(Rational::zero(), |a, b| a + b))
}

/// `vol_* = e_1 ^ .. ^ e_n` and the dual top form, paired to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePair {
    pub vol_star: MultiVector,
    pub vol_costar: MultiVector,
}

impl VolumePair {
    pub fn standard(n: usize) -> Result<Self> {
        let all: Vec<usize> = (0..n).collect();
        let v = MultiVector::monomial(n, &all, qi(1))?;
        Ok(VolumePair { vol_star: v.clone(), vol_costar: v })
    }
    pub fn pairing(&self) -> Result<Rational> {
        pairing(&self.vol_costar, &self.vol_star)
    }
}

#[derive(Serialize, Deserialize)]
struct MultiVectorJson {
    n: usize,
    k: usize,
    terms: Vec<(Vec<usize>, String)>,
}

impl Serialize for MultiVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms =
            self.terms().into_iter().map(|(i, c)| (i.into_iter().map(|x| x + 1).collect(), format_rational(&c))).collect();
        MultiVectorJson { n: self.n, k: self.k, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultiVectorJson::deserialize(d)?;
        let mut v = MultiVector::zero(j.n, j.k).map_err(serde::de::Error::custom)?;
        for (idx, c) in j.terms {
            if idx.iter().any(|&i| i == 0) {
                return Err(serde::de::Error::custom("multivector indices are 1-based"));
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) || sorted != idx {
                return Err(serde::de::Error::custom(format!("index tuple {idx:?} must be strictly increasing")));
            }
            let c = parse_rational(&c).map_err(serde::de::Error::custom)?;
            let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            v.add_term(&zero_based, c).map_err(serde::de::Error::custom)?;
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(n: usize, idx: &[usize]) -> MultiVector {
        MultiVector::monomial(n, idx, qi(1)).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let e12 = mv(3, &[0, 1]);
        let e3 = mv(3, &[2]);
        assert_eq!(wedge(&e12, &e3).unwrap(), mv(3, &[0, 1, 2]));
        let e1 = mv(3, &[0]);
        assert!(wedge(&e1, &e1).unwrap().is_zero());
        assert!(wedge(&e12, &mv(3, &[1, 2])).unwrap().is_zero());
        assert_eq!(mv(3, &[1, 0]), mv(3, &[0, 1]).scale(&qi(-1)));
    }

    #[test]
    fn poincare_examples() {
        let x = mv(8, &[0, 1, 2]);
        assert_eq!(poincare_dual(&x).unwrap(), mv(8, &[3, 4, 5, 6, 7]));
        let y = mv(8, &[1, 3]);
        let back = poincare_codual(&poincare_dual(&y).unwrap()).unwrap();
        assert_eq!(back, y.scale(&qi(if (2 * 6) % 2 == 0 { 1 } else { -1 })));
        let z = mv(5, &[1, 3]);
        assert_eq!(poincare_codual(&poincare_dual(&z).unwrap()).unwrap(), z.scale(&qi(1)));
        let z = mv(4, &[1]);
        assert_eq!(poincare_codual(&poincare_dual(&z).unwrap()).unwrap(), z.scale(&qi(-1)));
    }

    #[test]
    fn json_round_trip() {
        let mut v = mv(9, &[0, 1, 2]);
        v.add_term(&[3, 4, 5], qi(-2)).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"n":9,"k":3,"terms":[[[1,2,3],"1"],[[4,5,6],"-2"]]}"#);
        assert_eq!(serde_json::from_str::<MultiVector>(&s).unwrap(), v);
        assert!(serde_json::from_str::<MultiVector>(r#"{"n":9,"k":3,"terms":[[[2,1,3],"1"]]}"#).is_err());
        assert!(serde_json::from_str::<MultiVector>(r#"{"n":9,"k":3,"terms":[[[1,2],"1"]]}"#).is_err());
    }
}
