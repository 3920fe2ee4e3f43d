//! Graded Lie algebras given by sparse structure constants.

use crate::error::{check_dim, Error, Result};
use crate::lie::element::Element;
use crate::lie::subspace::Subspace;
use crate::linalg::{Matrix, SparseMatrix};
use crate::scalar::{Field, Rational, ScalarField};
use num_traits::Zero;
use rayon::prelude::*;
use std::sync::{Arc, OnceLock};

/// Sparse bracket result `[x_i, x_j] = sum_k c_k x_k`.
pub type BracketTerms = Vec<(usize, Rational)>;

/// A finite-order automorphism representing an element of the centre of the
/// connected group integrating the degree-zero part.
#[derive(Clone, Debug)]
pub struct CenterElement {
    pub label: String,
    pub order: u32,
    /// Action on the algebra in the standard basis.
    pub action: SparseMatrix<Rational>,
}

/// Generators of the centre of the degree-zero group, as automorphisms.
#[derive(Clone, Debug, Default)]
pub struct CenterData {
    pub generators: Vec<CenterElement>,
}

impl CenterData {
    pub fn trivial() -> Self {
        CenterData::default()
    }
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| is_identity(&g.action))
    }
}

fn is_identity(m: &SparseMatrix<Rational>) -> bool {
    (0..m.rows()).all(|i| {
        let row = m.row_entries(i);
        row.len() == 1 && row[0].0 == i && row[0].1 == Rational::from_integer(1.into())
    })
}

/// Extra structure attached to catalog algebras.
#[derive(Clone, Debug, Default)]
pub struct CatalogExtras {
    /// Cartan involution of the real form, compatible with the grading.
    pub cartan_involution: Option<SparseMatrix<Rational>>,
    /// Basis indices spanning a split Cartan subalgebra, if known.
    pub cartan_basis: Option<Vec<usize>>,
    /// Weight of each basis vector in epsilon coordinates (`None` for
    /// Cartan elements), when the basis consists of weight vectors.
    pub weights: Option<Vec<Option<Vec<i64>>>>,
    pub center: CenterData,
}

/// Real (or complexified) Lie algebra with a Z/m grading on a fixed basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    name: String,
    scalar: ScalarField,
    modulus: u32,
    labels: Vec<String>,
    degrees: Vec<u32>,
    table: Arc<Vec<BracketTerms>>,
    extras: CatalogExtras,
    killing: Arc<OnceLock<Matrix<Rational>>>,
}

impl GradedAlgebra {
    /// Build from brackets `[x_i, x_j]` listed for `i < j` only.
    pub fn new(
        name: impl Into<String>,
        modulus: u32,
        labels: Vec<String>,
        degrees: Vec<u32>,
        brackets: Vec<(usize, usize, BracketTerms)>,
    ) -> Result<Self> {
        let dim = labels.len();
        check_dim(dim, degrees.len())?;
        if modulus == 0 {
            return Err(Error::InvalidInput("grading modulus must be positive".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d >= modulus) {
            return Err(Error::InvalidInput(format!("degree {d} is not reduced modulo {modulus}")));
        }
        let mut table = vec![Vec::new(); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, terms) in brackets {
            if i >= j || j >= dim {
                return Err(Error::InvalidInput(format!("bracket entry ({i}, {j}) must satisfy i < j < dim")));
            }
            if seen[i * dim + j] {
                return Err(Error::InvalidInput(format!("bracket entry ({i}, {j}) listed twice")));
            }
            seen[i * dim + j] = true;
            let mut t = normalize_terms(terms, dim)?;
            table[i * dim + j] = t.clone();
            for (_, c) in t.iter_mut() {
                *c = -c.clone();
            }
            table[j * dim + i] = t;
        }
        Ok(GradedAlgebra {
            name: name.into(),
            scalar: ScalarField::Rational,
            modulus,
            labels,
            degrees,
            table: Arc::new(table),
            extras: CatalogExtras::default(),
            killing: Arc::new(OnceLock::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }
    pub fn scalar(&self) -> ScalarField {
        self.scalar
    }
    pub fn extras(&self) -> &CatalogExtras {
        &self.extras
    }
    pub fn extras_mut(&mut self) -> &mut CatalogExtras {
        &mut self.extras
    }
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Copy of the algebra over Q(i) with the same structure constants.
    pub fn with_scalar(&self, scalar: ScalarField) -> Self {
        let mut a = self.clone();
        a.scalar = scalar;
        a
    }

    /// Reduce an integer degree modulo the grading modulus.
    pub fn reduce_degree(&self, k: i64) -> u32 {
        k.rem_euclid(self.modulus as i64) as u32
    }

    pub fn basis_indices_of_degree(&self, k: i64) -> Vec<usize> {
        let d = self.reduce_degree(k);
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn degree_subspace(&self, k: i64) -> Subspace {
        Subspace::span_of_indices(self.dim(), &self.basis_indices_of_degree(k))
    }

    /// Stored bracket of two basis vectors.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim() + j]
    }

    /// Replace a bracket entry (and its antisymmetric partner); used to build
    /// deliberately corrupted algebras.
    pub fn override_bracket(&mut self, i: usize, j: usize, terms: BracketTerms) -> Result<()> {
        let dim = self.dim();
        let t = normalize_terms(terms, dim)?;
        let table = Arc::make_mut(&mut self.table);
        table[i * dim + j] = t.clone();
        if i != j {
            table[j * dim + i] = t.into_iter().map(|(k, c)| (k, -c)).collect();
        }
        self.killing = Arc::new(OnceLock::new());
        Ok(())
    }

    /// Overwrite a single ordered entry without touching its partner.
    pub fn override_ordered_entry(&mut self, i: usize, j: usize, terms: BracketTerms) -> Result<()> {
        let dim = self.dim();
        let t = normalize_terms(terms, dim)?;
        Arc::make_mut(&mut self.table)[i * dim + j] = t;
        self.killing = Arc::new(OnceLock::new());
        Ok(())
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        check_dim(self.dim(), x.dim())?;
        check_dim(self.dim(), y.dim())?;
        Ok(Element::new(self.bracket_generic(&x.coords, &y.coords)))
    }

    /// Bracket of coordinate vectors over any field containing Q.
    pub fn bracket_generic<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        let ys: Vec<usize> = (0..n).filter(|&j| !y[j].is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ys {
                let terms = &self.table[i * n + j];
                if terms.is_empty() {
                    continue;
                }
                let w = xi.mul_ref(&y[j]);
                for (k, c) in terms {
                    out[*k] += &w.mul_ref(&F::from_rational(c));
                }
            }
        }
        out
    }

    /// `[x, b_j]` for a basis vector b_j, as sparse terms.
    fn bracket_with_basis<F: Field>(&self, x: &[F], j: usize) -> Vec<(usize, F)> {
        let n = self.dim();
        let mut acc: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in &self.table[i * n + j] {
                *acc.entry(*k).or_insert_with(F::zero) += &xi.mul_ref(&F::from_rational(c));
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Matrix of `ad x` in the standard basis.
    pub fn ad_matrix(&self, x: &Element) -> Result<SparseMatrix<Rational>> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.ad_matrix_generic(&x.coords))
    }

    pub fn ad_matrix_generic<F: Field>(&self, x: &[F]) -> SparseMatrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<(usize, F)>> = (0..n).map(|j| self.bracket_with_basis(x, j)).collect();
        SparseMatrix::from_sparse_columns(n, &cols)
    }

    /// Killing form Gram matrix `B(b_i, b_j) = sum_{k,l} c_{ik}^l c_{jl}^k`.
    pub fn killing_gram(&self) -> &Matrix<Rational> {
        self.killing.get_or_init(|| {
            let n = self.dim();
            let rows: Vec<Vec<Rational>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut acc = Rational::zero();
                            for k in 0..n {
                                for (l, c) in &self.table[i * n + k] {
                                    for (k2, d) in &self.table[j * n + *l] {
                                        if *k2 == k {
                                            acc += &(c * d);
                                        }
                                    }
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows(rows).expect("square Gram matrix")
        })
    }

    pub fn killing_form(&self, x: &Element, y: &Element) -> Result<Rational> {
        check_dim(self.dim(), x.dim())?;
        check_dim(self.dim(), y.dim())?;
        let g = self.killing_gram();
        let gy = g.mul_vec(&y.coords)?;
        Ok(x.coords.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// The unique degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, x: &Element) -> Option<u32> {
        let mut d = None;
        for (i, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match d {
                None => d = Some(self.degrees[i]),
                Some(k) if k != self.degrees[i] => return None,
                _ => {}
            }
        }
        d
    }

    /// Nonzero bracket pairs `i < j`.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.table[i * n + j].is_empty() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Graded subalgebra on a homogeneous basis, with structure constants
    /// expressed in that basis. Fails if the span is not closed.
    pub fn subalgebra(&self, name: impl Into<String>, basis: &[Element]) -> Result<GradedAlgebra> {
        let n = basis.len();
        let mut degrees = Vec::with_capacity(n);
        for b in basis {
            degrees.push(
                self.homogeneous_degree(b)
                    .ok_or_else(|| Error::InvalidInput("subalgebra basis must be homogeneous and nonzero".into()))?,
            );
        }
        let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.coords.clone()).collect();
        let m = Matrix::from_columns(self.dim(), &cols)?;
        if m.rank() != n {
            return Err(Error::InvalidInput("subalgebra basis is linearly dependent".into()));
        }
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let z = self.bracket(&basis[i], &basis[j])?;
                if z.is_zero() {
                    continue;
                }
                let c = m
                    .solve(&z.coords)?
                    .ok_or_else(|| Error::Precondition("span is not closed under the bracket".into()))?;
                let terms: BracketTerms = c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                brackets.push((i, j, terms));
            }
        }
        let labels = (0..n).map(|i| format!("y{}", i + 1)).collect();
        GradedAlgebra::new(name, self.modulus, labels, degrees, brackets)
    }
}

fn normalize_terms(terms: BracketTerms, dim: usize) -> Result<BracketTerms> {
    let mut map: std::collections::BTreeMap<usize, Rational> = std::collections::BTreeMap::new();
    for (k, c) in terms {
        if k >= dim {
            return Err(Error::InvalidInput(format!("bracket target index {k} out of range")));
        }
        *map.entry(k).or_insert_with(Rational::zero) += &c;
    }
    Ok(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    pub(crate) fn sl2() -> GradedAlgebra {
        // E, H, F with [E,H] = -2E, [E,F] = H, [H,F] = -2F.
        GradedAlgebra::new(
            "sl2",
            1,
            vec!["E".into(), "H".into(), "F".into()],
            vec![0, 0, 0],
            vec![(0, 1, vec![(0, qi(-2))]), (0, 2, vec![(1, qi(1))]), (1, 2, vec![(2, qi(-2))])],
        )
        .unwrap()
    }

    #[test]
    fn brackets_are_antisymmetric_and_bilinear() {
        let a = sl2();
        let e = Element::basis(3, 0);
        let h = Element::basis(3, 1);
        assert_eq!(a.bracket(&h, &e).unwrap(), e.scale(&qi(2)));
        assert_eq!(a.bracket(&e, &h).unwrap(), e.scale(&qi(-2)));
        let x = Element::from_ints(&[1, 2, 3]);
        assert!(a.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn ad_matrix_and_killing_form_of_sl2() {
        let a = sl2();
        let h = Element::basis(3, 1);
        let ad = a.ad_matrix(&h).unwrap().to_dense();
        assert_eq!(ad, Matrix::from_rows(vec![
            vec![qi(2), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(-2)],
        ])
        .unwrap());
        assert_eq!(a.killing_form(&h, &h).unwrap(), qi(8));
        let e = Element::basis(3, 0);
        let f = Element::basis(3, 2);
        assert_eq!(a.killing_form(&e, &f).unwrap(), qi(4));
        // Cross-check the structure-constant formula against traces of products.
        let adx = a.ad_matrix(&e).unwrap();
        let ady = a.ad_matrix(&f).unwrap();
        assert_eq!(adx.trace_product(&ady), qi(4));
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = sl2();
        assert!(a.bracket(&Element::zero(2), &Element::zero(3)).is_err());
        assert!(GradedAlgebra::new("bad", 1, vec!["a".into()], vec![0], vec![(0, 0, vec![])]).is_err());
    }
}
