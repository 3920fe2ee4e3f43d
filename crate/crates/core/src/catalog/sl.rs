//! Split real forms sl(n, R) with the trivial grading or a diagonal
//! involution grading.

use crate::error::{Error, Result};
use crate::lie::{BracketTerms, CatalogExtras, CenterData, CenterElement, GradedAlgebra};
use crate::linalg::SparseMatrix;
use crate::scalar::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Grading choices for sl(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlGrading {
    Trivial,
    /// Conjugation by `diag(signs)`: degree 1 exactly on entries whose row
    /// and column signs differ.
    DiagonalInvolution(Vec<i8>),
}

/// Sparse n x n matrix.
pub type SmallMatrix = BTreeMap<(usize, usize), Rational>;

/// Basis bookkeeping for sl(n): positive root vectors `E_ij` (i < j) in
/// lexicographic order, then `H_i = E_ii - E_{i+1,i+1}`, then negative root
/// vectors `E_ij` (i > j).
#[derive(Clone, Debug)]
pub struct SlBasis {
    pub n: usize,
    positive: Vec<(usize, usize)>,
    negative: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl SlBasis {
    pub fn new(n: usize) -> Self {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    positive.push((i, j));
                } else if i > j {
                    negative.push((i, j));
                }
            }
        }
        let mut index = BTreeMap::new();
        for (k, p) in positive.iter().enumerate() {
            index.insert(*p, k);
        }
        let off = positive.len() + n - 1;
        for (k, p) in negative.iter().enumerate() {
            index.insert(*p, off + k);
        }
        SlBasis { n, positive, negative, index }
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    /// Index of the elementary matrix `E_ij`, `i != j`.
    pub fn e(&self, i: usize, j: usize) -> usize {
        self.index[&(i, j)]
    }

    /// Index of `H_i`.
    pub fn h(&self, i: usize) -> usize {
        self.positive.len() + i
    }

    pub fn h_indices(&self) -> Vec<usize> {
        (0..self.n - 1).map(|i| self.h(i)).collect()
    }

    /// The matrix of basis vector `k`.
    pub fn matrix_of(&self, k: usize) -> SmallMatrix {
        let p = self.positive.len();
        let mut m = SmallMatrix::new();
        if k < p {
            m.insert(self.positive[k], Rational::one());
        } else if k < p + self.n - 1 {
            let i = k - p;
            m.insert((i, i), Rational::one());
            m.insert((i + 1, i + 1), -Rational::one());
        } else {
            m.insert(self.negative[k - (p + self.n - 1)], Rational::one());
        }
        m
    }

    /// Coordinates of a traceless matrix.
    pub fn coords_of(&self, m: &SmallMatrix) -> Result<BracketTerms> {
        let mut out = BTreeMap::new();
        let mut diag = vec![Rational::zero(); self.n];
        for ((i, j), v) in m {
            if v.is_zero() {
                continue;
            }
            if i == j {
                diag[*i] += v;
            } else {
                out.insert(self.e(*i, *j), v.clone());
            }
        }
        let mut run = Rational::zero();
        for (i, d) in diag.iter().enumerate().take(self.n - 1) {
            run += d;
            if !run.is_zero() {
                out.insert(self.h(i), run.clone());
            }
        }
        run += &diag[self.n - 1];
        if !run.is_zero() {
            return Err(Error::Computation("matrix is not traceless".into()));
        }
        Ok(out.into_iter().collect())
    }

    pub fn labels(&self) -> Vec<String> {
        if self.n == 2 {
            return vec!["E".into(), "H".into(), "F".into()];
        }
        (0..self.dim())
            .map(|k| {
                let p = self.positive.len();
                if k < p {
                    let (i, j) = self.positive[k];
                    format!("E{}{}", i + 1, j + 1)
                } else if k < p + self.n - 1 {
                    format!("H{}", k - p + 1)
                } else {
                    let (i, j) = self.negative[k - (p + self.n - 1)];
                    format!("E{}{}", i + 1, j + 1)
                }
            })
            .collect()
    }

    /// Weight of basis vector `k` as an integer vector in the diagonal
    /// coordinates (`None` for Cartan elements).
    pub fn weight(&self, k: usize) -> Option<Vec<i64>> {
        let p = self.positive.len();
        let (i, j) = if k < p {
            self.positive[k]
        } else if k < p + self.n - 1 {
            return None;
        } else {
            self.negative[k - (p + self.n - 1)]
        };
        let mut w = vec![0; self.n];
        w[i] += 1;
        w[j] -= 1;
        Some(w)
    }
}

pub fn commutator(a: &SmallMatrix, b: &SmallMatrix) -> SmallMatrix {
    let mut out = SmallMatrix::new();
    for ((i, k), x) in a {
        for ((k2, j), y) in b {
            if k == k2 {
                *out.entry((*i, *j)).or_insert_with(Rational::zero) += x * y;
            }
        }
    }
    for ((i, k), y) in b {
        for ((k2, j), x) in a {
            if k == k2 {
                *out.entry((*i, *j)).or_insert_with(Rational::zero) -= y * x;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Brackets of sl(n) in the basis of [`SlBasis`], for pairs `i < j`.
pub fn sl_brackets(basis: &SlBasis) -> Result<Vec<(usize, usize, BracketTerms)>> {
    let d = basis.dim();
    let mats: Vec<SmallMatrix> = (0..d).map(|k| basis.matrix_of(k)).collect();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let c = commutator(&mats[i], &mats[j]);
            if !c.is_empty() {
                out.push((i, j, basis.coords_of(&c)?));
            }
        }
    }
    Ok(out)
}

/// Matrix of the Cartan involution `X -> -X^T` on sl(n).
pub fn sl_compact_involution(basis: &SlBasis) -> SparseMatrix<Rational> {
    let d = basis.dim();
    let cols: Vec<Vec<(usize, Rational)>> = (0..d)
        .map(|k| {
            let m = basis.matrix_of(k);
            let t: SmallMatrix = m.iter().map(|((i, j), v)| ((*j, *i), -v.clone())).collect();
            basis.coords_of(&t).expect("transpose is traceless")
        })
        .collect();
    SparseMatrix::from_sparse_columns(d, &cols)
}

/// Build sl(n, R) with the requested grading.
pub fn build_sl(n: usize, grading: &SlGrading) -> Result<GradedAlgebra> {
    if n < 2 {
        return Err(Error::InvalidInput("sl(n) requires n >= 2".into()));
    }
    let basis = SlBasis::new(n);
    let d = basis.dim();
    let (modulus, degrees, name) = match grading {
        SlGrading::Trivial => (1, vec![0; d], format!("sl{n}")),
        SlGrading::DiagonalInvolution(signs) => {
            if signs.len() != n || signs.iter().any(|s| *s != 1 && *s != -1) {
                return Err(Error::InvalidInput(format!("sign vector must have {n} entries equal to +1 or -1")));
            }
            let degs = (0..d)
                .map(|k| {
                    let m = basis.matrix_of(k);
                    let (i, j) = *m.keys().next().unwrap();
                    u32::from(signs[i] != signs[j])
                })
                .collect();
            let tag: String = signs.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect();
            let name = if n == 2 && tag == "+-" { "sl2-z2-diag".to_string() } else { format!("sl{n}-z2-diag{tag}") };
            (2, degs, name)
        }
    };
    let mut alg = GradedAlgebra::new(name, modulus, basis.labels(), degrees, sl_brackets(&basis)?)?;
    let center = match grading {
        // -I lies in the identity component of the degree-zero group exactly
        // when every diagonal block has even size.
        SlGrading::Trivial if n % 2 == 0 => minus_identity(d),
        SlGrading::DiagonalInvolution(signs) => {
            let p = signs.iter().filter(|s| **s > 0).count();
            if p % 2 == 0 && (n - p) % 2 == 0 {
                minus_identity(d)
            } else {
                CenterData::trivial()
            }
        }
        _ => CenterData::trivial(),
    };
    *alg.extras_mut() = CatalogExtras {
        cartan_involution: Some(sl_compact_involution(&basis)),
        cartan_basis: Some(basis.h_indices()),
        weights: Some((0..d).map(|k| basis.weight(k)).collect()),
        center,
    };
    Ok(alg)
}

/// `Ad(-I)`, which is the identity on sl(n).
pub(crate) fn minus_identity(d: usize) -> CenterData {
    CenterData {
        generators: vec![CenterElement { label: "-I".into(), order: 2, action: SparseMatrix::identity(d) }],
    }
}

/// sl(2, R) with basis E, H, F and trivial grading.
pub fn build_sl2() -> GradedAlgebra {
    build_sl(2, &SlGrading::Trivial).expect("sl2 builds")
}

/// sl(2, R) graded by conjugation with diag(1, -1): H in degree 0, E and F
/// in degree 1.
pub fn build_sl2_z2_diag() -> GradedAlgebra {
    build_sl(2, &SlGrading::DiagonalInvolution(vec![1, -1])).expect("sl2-z2-diag builds")
}
