//! Subspaces of an algebra, stored as the canonical reduced echelon basis.

use crate::error::{check_dim, Result};
use crate::lie::element::Element;
use crate::linalg::{echelon_basis, Matrix};
use crate::scalar::Rational;
use num_traits::Zero;

/// A linear subspace of `Q^ambient`. The basis is the unique reduced row
/// echelon basis, so structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        for v in vectors {
            check_dim(ambient, v.len())?;
        }
        let basis = echelon_basis(vectors, ambient);
        let pivots = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn from_elements(ambient: usize, elems: &[Element]) -> Result<Self> {
        let v: Vec<Vec<Rational>> = elems.iter().map(|e| e.coords.clone()).collect();
        Self::from_vectors(ambient, &v)
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span_of_indices(ambient, &(0..ambient).collect::<Vec<_>>())
    }

    pub fn span_of_indices(ambient: usize, idx: &[usize]) -> Self {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx.iter().map(|&i| Element::basis(ambient, i).coords).collect();
        Subspace { ambient, basis, pivots: idx }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn elements(&self) -> Vec<Element> {
        self.basis.iter().map(|b| Element::new(b.clone())).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient {
            return None;
        }
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (a, x) in r.iter_mut().zip(b) {
                if !x.is_zero() {
                    *a -= ci * x;
                }
            }
        }
        r.iter().all(|x| x.is_zero()).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_element(&self, e: &Element) -> bool {
        self.contains(&e.coords)
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn vector_from_coordinates(&self, c: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (a, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *a += ci * x;
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, &v)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // Solve sum a_i u_i - sum b_j w_j = 0.
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient, &cols)?;
        let ker = m.kernel();
        let vecs: Vec<Vec<Rational>> = ker.iter().map(|k| self.vector_from_coordinates(&k[..self.dim()])).collect();
        Subspace::from_vectors(self.ambient, &vecs)
    }
}


impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}
