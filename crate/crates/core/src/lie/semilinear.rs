//! Linear and conjugate-linear maps on complexified algebras, evaluated
//! exactly over Q(i)(zeta_m).

use crate::error::{check_dim, Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::{Field, Gaussian, Rational};
use crate::lie::algebra::GradedAlgebra;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Grading moduli whose root of unity we can represent exactly together
/// with i: zeta_m lies in Q(i) or generates a quadratic extension of it.
pub const SUPPORTED_MODULI: [u32; 5] = [1, 2, 3, 4, 6];

pub fn check_supported_modulus(m: u32) -> Result<()> {
    if SUPPORTED_MODULI.contains(&m) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "grading modulus {m}: exact roots of unity are implemented only for m in {{1, 2, 3, 4, 6}}"
        )))
    }
}

/// Element `a + b zeta` of Q(i)(zeta_m), with `b = 0` whenever zeta_m is in Q(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclo {
    m: u32,
    a: Gaussian,
    b: Gaussian,
}

impl Cyclo {
    pub fn zero(m: u32) -> Self {
        Cyclo { m, a: Gaussian::zero(), b: Gaussian::zero() }
    }
    pub fn from_gaussian(m: u32, a: Gaussian) -> Self {
        Cyclo { m, a, b: Gaussian::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiply by zeta^k.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let m = self.m as i64;
        let k = k.rem_euclid(m);
        let mut z = self.clone();
        for _ in 0..k {
            z = z.mul_zeta();
        }
        z
    }

    fn mul_zeta(&self) -> Self {
        let (a, b) = (&self.a, &self.b);
        let (na, nb) = match self.m {
            1 => (a.clone(), Gaussian::zero()),
            2 => (-a.clone(), Gaussian::zero()),
            4 => (a.mul_ref(&Gaussian::i()), Gaussian::zero()),
            // zeta^2 = -1 - zeta
            3 => (-b.clone(), a.clone() - b),
            // zeta^2 = zeta - 1
            6 => (-b.clone(), a.clone() + b),
            _ => unreachable!("unsupported modulus"),
        };
        Cyclo { m: self.m, a: na, b: nb }
    }

    /// Complex conjugation (zeta -> zeta^-1, i -> -i).
    pub fn conj(&self) -> Self {
        let (a, b) = (self.a.conj(), self.b.conj());
        match self.m {
            1 | 2 | 4 => Cyclo { m: self.m, a, b },
            // conj(zeta) = -1 - zeta
            3 => Cyclo { m: 3, a: a - &b, b: -b },
            // conj(zeta) = 1 - zeta
            6 => Cyclo { m: 6, a: a + &b, b: -b },
            _ => unreachable!("unsupported modulus"),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// Coefficients `(a, b)` of `a + b zeta`.
    pub fn parts(&self) -> (&Gaussian, &Gaussian) {
        (&self.a, &self.b)
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        let lin = Cyclo {
            m: self.m,
            a: self.a.mul_ref(&o.a),
            b: self.a.mul_ref(&o.b) + self.b.mul_ref(&o.a),
        };
        let quad = self.b.mul_ref(&o.b);
        if quad.is_zero() {
            return lin;
        }
        let mut out = lin;
        out.add_assign(&Cyclo::from_gaussian(self.m, quad).mul_zeta_pow(2));
        out
    }

    pub fn scale(&self, s: &Gaussian) -> Self {
        Cyclo { m: self.m, a: self.a.mul_ref(s), b: self.b.mul_ref(s) }
    }

    pub fn add_assign(&mut self, o: &Cyclo) {
        self.a += &o.a;
        self.b += &o.b;
    }

    pub fn sub(&self, o: &Cyclo) -> Cyclo {
        Cyclo { m: self.m, a: self.a.clone() - &o.a, b: self.b.clone() - &o.b }
    }

    /// Floating value with zeta = exp(2 pi i / m).
    pub fn to_complex(&self) -> (f64, f64) {
        let (ar, ai) = self.a.to_f64_pair();
        let (br, bi) = self.b.to_f64_pair();
        let t = 2.0 * std::f64::consts::PI / self.m as f64;
        let (zr, zi) = (t.cos(), t.sin());
        (ar + br * zr - bi * zi, ai + br * zi + bi * zr)
    }
}

/// A vector with coordinates in Q(i)(zeta_m).
pub type CycloVec = Vec<Cyclo>;

pub fn basis_cyclo_vec(m: u32, dim: usize, j: usize) -> CycloVec {
    let mut v = vec![Cyclo::zero(m); dim];
    v[j] = Cyclo::from_gaussian(m, Gaussian::one());
    v
}

/// A map on the complexified algebra, linear or conjugate-linear.
#[derive(Clone, Debug)]
pub enum SemilinearMap {
    /// `v -> M v` or `v -> M conj(v)`.
    Matrix { matrix: SparseMatrix<Gaussian>, conjugate: bool },
    /// Multiplies each degree-k basis vector by `zeta_m^(power * k)`.
    DegreeRotation { modulus: u32, degrees: Vec<u32>, power: i64 },
}

impl SemilinearMap {
    pub fn dim(&self) -> usize {
        match self {
            SemilinearMap::Matrix { matrix, .. } => matrix.cols(),
            SemilinearMap::DegreeRotation { degrees, .. } => degrees.len(),
        }
    }

    pub fn is_conjugate_linear(&self) -> bool {
        matches!(self, SemilinearMap::Matrix { conjugate: true, .. })
    }

    /// Compose with the identity matrix of a given real map.
    pub fn from_real(matrix: &SparseMatrix<Rational>, conjugate: bool) -> Self {
        SemilinearMap::Matrix { matrix: matrix.map(Gaussian::from_rational), conjugate }
    }

    /// Complex conjugation with respect to the standard real basis.
    pub fn standard_conjugation(dim: usize) -> Self {
        SemilinearMap::Matrix { matrix: SparseMatrix::identity(dim), conjugate: true }
    }

    pub fn inverse_rotation(&self) -> Result<Self> {
        match self {
            SemilinearMap::DegreeRotation { modulus, degrees, power } => {
                Ok(SemilinearMap::DegreeRotation { modulus: *modulus, degrees: degrees.clone(), power: -power })
            }
            _ => Err(Error::InvalidInput("inverse is only provided for degree rotations".into())),
        }
    }

    /// Inverse map.
    pub fn inverse(&self) -> Result<Self> {
        match self {
            SemilinearMap::DegreeRotation { .. } => self.inverse_rotation(),
            SemilinearMap::Matrix { matrix, conjugate } => {
                let inv = matrix.to_dense().inverse()?;
                // (v -> M conj v)^-1 = (w -> conj(M^-1) conj w)
                let inv = if *conjugate { inv.conj() } else { inv };
                Ok(SemilinearMap::Matrix { matrix: SparseMatrix::from_dense(&inv), conjugate: *conjugate })
            }
        }
    }

    /// Apply `self` after `other`, evaluated pointwise.
    pub fn apply_after(&self, other: &SemilinearMap, v: &[Cyclo]) -> Result<CycloVec> {
        self.apply(&other.apply(v)?)
    }

    /// Apply to a vector over Q(i)(zeta_m).
    pub fn apply(&self, v: &[Cyclo]) -> Result<CycloVec> {
        check_dim(self.dim(), v.len())?;
        match self {
            SemilinearMap::Matrix { matrix, conjugate } => {
                let w: Vec<Cyclo> = if *conjugate { v.iter().map(Cyclo::conj).collect() } else { v.to_vec() };
                let m = v.first().map_or(1, |c| c.m);
                Ok((0..matrix.rows())
                    .map(|i| {
                        let mut acc = Cyclo::zero(m);
                        for (j, c) in matrix.row_entries(i) {
                            if !w[*j].is_zero() {
                                acc.add_assign(&w[*j].scale(c));
                            }
                        }
                        acc
                    })
                    .collect())
            }
            SemilinearMap::DegreeRotation { modulus, degrees, power } => {
                if v.iter().any(|c| c.m != *modulus) {
                    return Err(Error::InvalidInput("vector and rotation use different roots of unity".into()));
                }
                Ok(v.iter().zip(degrees).map(|(c, d)| c.mul_zeta_pow(power * *d as i64)).collect())
            }
        }
    }

    /// Apply to a vector with Q(i) coordinates (matrix maps only, or
    /// rotations whose roots of unity lie in Q(i)).
    pub fn apply_gaussian(&self, v: &[Gaussian]) -> Result<Vec<Gaussian>> {
        check_dim(self.dim(), v.len())?;
        match self {
            SemilinearMap::Matrix { matrix, conjugate } => {
                let w: Vec<Gaussian> = if *conjugate { v.iter().map(|x| x.conj()).collect() } else { v.to_vec() };
                matrix.mul_vec(&w)
            }
            SemilinearMap::DegreeRotation { modulus, .. } => {
                let cv: CycloVec = v.iter().map(|x| Cyclo::from_gaussian(*modulus, x.clone())).collect();
                let out = self.apply(&cv)?;
                out.into_iter()
                    .map(|c| {
                        if c.b.is_zero() {
                            Ok(c.a)
                        } else {
                            Err(Error::Unsupported("root of unity outside Q(i)".into()))
                        }
                    })
                    .collect()
            }
        }
    }

    /// Complex matrix (row-major re, im) and conjugation flag for numerics.
    pub fn complex_matrix(&self) -> (Vec<f64>, Vec<f64>, bool) {
        let n = self.dim();
        let mut re = vec![0.0; n * n];
        let mut im = vec![0.0; n * n];
        match self {
            SemilinearMap::Matrix { matrix, conjugate } => {
                for i in 0..n {
                    for (j, c) in matrix.row_entries(i) {
                        let (a, b) = c.to_f64_pair();
                        re[i * n + j] = a;
                        im[i * n + j] = b;
                    }
                }
                (re, im, *conjugate)
            }
            SemilinearMap::DegreeRotation { modulus, degrees, power } => {
                for (i, d) in degrees.iter().enumerate() {
                    let t = 2.0 * std::f64::consts::PI * (*power as f64) * (*d as f64) / (*modulus as f64);
                    re[i * n + i] = t.cos();
                    im[i * n + i] = t.sin();
                }
                (re, im, false)
            }
        }
    }
}

/// Compare two maps on every basis vector; returns the first basis index
/// where `f(e_j) != g(e_j)`.
pub fn first_disagreement(
    m: u32,
    dim: usize,
    f: impl Fn(&CycloVec) -> Result<CycloVec>,
    g: impl Fn(&CycloVec) -> Result<CycloVec>,
) -> Result<Option<usize>> {
    for j in 0..dim {
        let e = basis_cyclo_vec(m, dim, j);
        let (a, b) = (f(&e)?, g(&e)?);
        if a.iter().zip(&b).any(|(x, y)| !x.sub(y).is_zero()) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Sparse vector over Q(i)(zeta_m).
pub type SparseCyclo = Vec<(usize, Cyclo)>;

fn to_sparse(v: CycloVec) -> SparseCyclo {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Images of the standard basis vectors under a map.
pub fn basis_images(map: &SemilinearMap, m: u32) -> Result<Vec<SparseCyclo>> {
    (0..map.dim()).map(|j| Ok(to_sparse(map.apply(&basis_cyclo_vec(m, map.dim(), j))?))).collect()
}

/// Apply a map known through its basis images to a rational vector.
fn apply_rational_sparse(images: &[SparseCyclo], m: u32, v: &[(usize, Rational)]) -> BTreeMap<usize, Cyclo> {
    let mut out: BTreeMap<usize, Cyclo> = BTreeMap::new();
    for (j, c) in v {
        let g = Gaussian::from_rational(c);
        for (k, z) in &images[*j] {
            out.entry(*k).or_insert_with(|| Cyclo::zero(m)).add_assign(&z.scale(&g));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Bracket of sparse vectors over Q(i)(zeta_m).
pub fn bracket_cyclo(alg: &GradedAlgebra, x: &[(usize, Cyclo)], y: &[(usize, Cyclo)], m: u32) -> BTreeMap<usize, Cyclo> {
    let mut out: BTreeMap<usize, Cyclo> = BTreeMap::new();
    for (i, a) in x {
        for (j, b) in y {
            let terms = alg.bracket_basis(*i, *j);
            if terms.is_empty() {
                continue;
            }
            let w = a.mul(b);
            for (k, c) in terms {
                out.entry(*k).or_insert_with(|| Cyclo::zero(m)).add_assign(&w.scale(&Gaussian::from_rational(c)));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// First basis pair `(i, j)` on which `f[b_i, b_j] != [f b_i, f b_j]`.
/// Structure constants are rational, so basis pairs suffice for linear and
/// conjugate-linear maps alike.
pub fn automorphism_defect(alg: &GradedAlgebra, map: &SemilinearMap) -> Result<Option<(usize, usize)>> {
    check_dim(alg.dim(), map.dim())?;
    let m = match map {
        SemilinearMap::DegreeRotation { modulus, .. } => *modulus,
        SemilinearMap::Matrix { .. } => 1,
    };
    let images = basis_images(map, m)?;
    let n = alg.dim();
    let bad = (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n).find_map(|j| {
            let lhs = apply_rational_sparse(&images, m, alg.bracket_basis(i, j));
            let rhs = bracket_cyclo(alg, &images[i], &images[j], m);
            (lhs != rhs).then_some((i, j))
        })
    });
    Ok(bad)
}
