//! Cartan decompositions, standard Cartan subspaces, elliptic/vector
//! splits, restricted Weyl groups and conjugacy of mixed elements for
//! Z/2-graded algebras.

use crate::error::{check_dim, Error, Result};
use crate::jordan_sl2::{ad_minimal_polynomial, conjugate_characteristics, is_semisimple, jmv_triple, jordan_decompose};
use crate::lie::ops::{bracket_span, centralizer, centralizer_of_subspace};
use crate::lie::{CenterData, Element, GradedAlgebra, Subspace};
use crate::linalg::{is_positive_definite, minimal_polynomial, rational_roots, LinearOperator, Matrix, Poly, SparseMatrix, SturmSequence};
use crate::nilclass::{
    center_cosets, characteristic_fingerprint, class_containing, component_analysis, genericity_matrix, is_automorphism,
    slice, slice_commutant, ComponentOptions, Mode, SemialgebraicSet,
};
use crate::scalar::{format_rational, qi, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

fn ser_matrix<S: Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    rows.serialize(s)
}

fn sparse_apply(m: &SparseMatrix<Rational>, x: &Element) -> Element {
    Element::new(m.apply(&x.coords))
}

fn dense_apply(m: &Matrix<Rational>, x: &Element) -> Element {
    Element::new(m.mul_vec(&x.coords).expect("conformable"))
}

// ---------------------------------------------------------------------------
// Cartan decomposition

#[derive(Clone, Debug, Serialize)]
pub struct CartanDecomposition {
    #[serde(skip)]
    pub tau: SparseMatrix<Rational>,
    /// Fixed points of `tau_u`.
    pub k: Subspace,
    /// `-1` eigenspace of `tau_u`.
    pub p: Subspace,
    /// `k ∩ g_i` for each degree `i`.
    pub k_parts: Vec<Subspace>,
    /// `p ∩ g_i` for each degree `i`.
    pub p_parts: Vec<Subspace>,
    pub k_negative_definite: bool,
    pub p_positive_definite: bool,
}

impl CartanDecomposition {
    pub fn apply_tau(&self, x: &Element) -> Element {
        sparse_apply(&self.tau, x)
    }
    pub fn k_projection(&self, x: &Element) -> Element {
        x.add(&self.apply_tau(x)).scale(&Rational::new(1.into(), 2.into()))
    }
    pub fn p_projection(&self, x: &Element) -> Element {
        x.sub(&self.apply_tau(x)).scale(&Rational::new(1.into(), 2.into()))
    }
}

fn restricted_gram(alg: &GradedAlgebra, s: &Subspace) -> Matrix<Rational> {
    let g = alg.killing_gram();
    let b = s.basis();
    Matrix::from_fn(b.len(), b.len(), |i, j| {
        let gj = g.mul_vec(&b[j]).expect("conformable");
        b[i].iter().zip(&gj).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
    })
}

/// Eigenspace decomposition of `tau_u` with all inclusions checked.
pub fn cartan_decomposition(alg: &GradedAlgebra, tau: &SparseMatrix<Rational>) -> Result<CartanDecomposition> {
    let n = alg.dim();
    if tau.rows() != n || tau.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: tau.rows() });
    }
    let sq = tau.mul(tau)?;
    if sq != SparseMatrix::identity(n) {
        return Err(Error::InvalidInput("tau_u is not involutive on g".into()));
    }
    if !is_automorphism(alg, tau)? {
        return Err(Error::InvalidInput("tau_u is not an automorphism of g".into()));
    }
    let dense = tau.to_dense();
    let id = Matrix::identity(n);
    let k = Subspace::from_vectors(n, &dense.sub(&id)?.kernel())?;
    let p = Subspace::from_vectors(n, &dense.add(&id)?.kernel())?;
    if k.dim() + p.dim() != n {
        return Err(Error::Computation("g is not the sum of the tau_u eigenspaces".into()));
    }
    let kk = bracket_span(alg, &k, &k)?;
    let kp = bracket_span(alg, &k, &p)?;
    let pp = bracket_span(alg, &p, &p)?;
    if !kk.is_subspace_of(&k) || !kp.is_subspace_of(&p) || !pp.is_subspace_of(&k) {
        return Err(Error::Computation("bracket inclusions of the Cartan decomposition fail".into()));
    }
    let mut k_parts = Vec::new();
    let mut p_parts = Vec::new();
    for d in 0..alg.modulus() as i64 {
        let gd = alg.degree_subspace(d);
        k_parts.push(k.intersect(&gd)?);
        p_parts.push(p.intersect(&gd)?);
    }
    if k_parts.iter().chain(&p_parts).map(Subspace::dim).sum::<usize>() != n {
        return Err(Error::InvalidInput("tau_u does not preserve the grading".into()));
    }
    let k_negative_definite = k.dim() == 0 || is_positive_definite(&restricted_gram(alg, &k).scale(&qi(-1)))?;
    let p_positive_definite = p.dim() == 0 || is_positive_definite(&restricted_gram(alg, &p))?;
    Ok(CartanDecomposition { tau: tau.clone(), k, p, k_parts, p_parts, k_negative_definite, p_positive_definite })
}

/// Cartan decomposition from the algebra's catalog Cartan involution.
pub fn catalog_cartan_decomposition(alg: &GradedAlgebra) -> Result<CartanDecomposition> {
    let tau = alg
        .extras()
        .cartan_involution
        .clone()
        .ok_or_else(|| Error::InvalidInput(format!("{} carries no Cartan involution", alg.name())))?;
    cartan_decomposition(alg, &tau)
}

fn require_z2(alg: &GradedAlgebra) -> Result<()> {
    if alg.modulus() != 2 {
        return Err(Error::Precondition(format!("Z/2-graded algebra required, got modulus {}", alg.modulus())));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Standard Cartan subspaces

#[derive(Clone, Debug, Serialize)]
pub struct StandardCheck {
    pub standard: bool,
    /// `h_sub ∩ k`.
    pub k_part: Subspace,
    /// `h_sub ∩ p`.
    pub p_part: Subspace,
}

/// Whether an abelian subspace of semisimple elements of `g_1` is
/// `tau_u`-stable.
pub fn standard_cartan_check(alg: &GradedAlgebra, d: &CartanDecomposition, h_sub: &Subspace) -> Result<StandardCheck> {
    check_dim(alg.dim(), h_sub.ambient())?;
    if !h_sub.is_subspace_of(&alg.degree_subspace(1)) {
        return Err(Error::Precondition("not a Cartan-subspace candidate: not contained in g_1".into()));
    }
    let basis = h_sub.elements();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            if !alg.bracket(a, b)?.is_zero() {
                return Err(Error::Precondition("not a Cartan-subspace candidate: not abelian".into()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut probes = basis.clone();
    let extra = if basis.len() > 1 { 8 } else { 0 };
    for _ in 0..extra {
        let terms: Vec<(Rational, &Element)> = basis.iter().map(|b| (qi(rng.gen_range(-3..=3)), b)).collect();
        probes.push(Element::combination(alg.dim(), &terms));
    }
    for x in &probes {
        if !x.is_zero() && !is_semisimple(alg, x)? {
            return Err(Error::Precondition(format!(
                "not a Cartan-subspace candidate: element {} is not semisimple",
                x.literals().join(" ")
            )));
        }
    }
    let images: Vec<Element> = basis.iter().map(|b| d.apply_tau(b)).collect();
    let standard = images.iter().all(|x| h_sub.contains_element(x));
    let k_part = h_sub.intersect(&d.k)?;
    let p_part = h_sub.intersect(&d.p)?;
    if standard && k_part.dim() + p_part.dim() != h_sub.dim() {
        return Err(Error::Computation("tau_u-stable subspace does not split into k and p parts".into()));
    }
    Ok(StandardCheck { standard, k_part, p_part })
}

// ---------------------------------------------------------------------------
// Elliptic and vector parts

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticVectorSplit {
    /// Projection to `k`; `ad` has purely imaginary spectrum.
    pub elliptic: Element,
    /// Projection to `p`; `ad` has real spectrum.
    pub vector: Element,
}

/// Squarefree with no real root other than 0.
fn is_elliptic_polynomial(mu: &Poly<Rational>) -> bool {
    let sq = mu.squarefree_part().monic() == mu.monic();
    let zero_root = mu.eval(&Rational::zero()).is_zero();
    sq && SturmSequence::new(mu).count_real() == usize::from(zero_root)
}

/// Squarefree with all roots real.
fn is_vector_polynomial(mu: &Poly<Rational>) -> bool {
    let sq = mu.squarefree_part().monic() == mu.monic();
    sq && Some(SturmSequence::new(mu).count_real()) == mu.degree()
}

pub fn elliptic_vector_split(alg: &GradedAlgebra, d: &CartanDecomposition, s: &Element) -> Result<EllipticVectorSplit> {
    check_dim(alg.dim(), s.dim())?;
    if !is_semisimple(alg, s)? {
        return Err(Error::Precondition("element is not semisimple".into()));
    }
    let elliptic = d.k_projection(s);
    let vector = d.p_projection(s);
    if !alg.bracket(&elliptic, &vector)?.is_zero() {
        return Err(Error::Precondition("not in standard position; conjugate first".into()));
    }
    if !is_elliptic_polynomial(&ad_minimal_polynomial(alg, &elliptic)?) {
        return Err(Error::Computation("k-part of a semisimple element has a nonzero real ad-eigenvalue".into()));
    }
    if !is_vector_polynomial(&ad_minimal_polynomial(alg, &vector)?) {
        return Err(Error::Computation("p-part of a semisimple element has a non-real ad-eigenvalue".into()));
    }
    Ok(EllipticVectorSplit { elliptic, vector })
}

// ---------------------------------------------------------------------------
// Restricted Weyl groups

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeylSource {
    /// Torus elements `exp(t ad z)` for `z` in `k` that preserve the grading.
    AmbientCompact,
    /// Only `z` in `k ∩ g_0`.
    DegreeZeroCompact,
}

#[derive(Clone, Debug)]
pub struct WeylOptions {
    pub source: WeylSource,
    /// Maximal group order before giving up.
    pub bound: usize,
    /// Elements every group element must fix (for centralizer Weyl groups).
    pub centralizing: Vec<Element>,
}

impl Default for WeylOptions {
    fn default() -> Self {
        WeylOptions { source: WeylSource::AmbientCompact, bound: 1_000_000, centralizing: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanPart {
    Elliptic,
    Vector,
}

/// Restricted root `alpha` given by its values on the subspace basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedRoot {
    #[serde(serialize_with = "crate::scalar::ser_rationals")]
    pub values: Vec<Rational>,
    /// Dimension of the joint `±alpha` eigenspace.
    pub space_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylGenerator {
    /// Action on subspace coordinates.
    #[serde(serialize_with = "ser_matrix")]
    pub action: Matrix<Rational>,
    #[serde(skip)]
    pub full: Matrix<Rational>,
    /// `z` with the group element `exp(t ad z)`.
    pub z: Element,
    /// `t` as a multiple of pi.
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub t_over_pi: Rational,
    /// Index of the restricted root whose reflection this is.
    pub reflection_of: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteReflectionGroup {
    pub basis: Vec<Element>,
    pub part: CartanPart,
    pub roots: Vec<RestrictedRoot>,
    pub generators: Vec<WeylGenerator>,
    pub order: usize,
    /// Roots whose reflection is not induced by a group element found.
    pub unrealized_reflections: Vec<usize>,
    #[serde(skip)]
    elements: Vec<(Matrix<Rational>, Vec<usize>)>,
}

impl FiniteReflectionGroup {
    pub fn elements(&self) -> impl Iterator<Item = &Matrix<Rational>> {
        self.elements.iter().map(|(m, _)| m)
    }
    /// Generator indices, first applied first.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.elements[i].1
    }
    /// The group element on the whole algebra.
    pub fn full_matrix(&self, i: usize) -> Matrix<Rational> {
        let n = self.generators.first().map_or(self.basis.first().map_or(0, Element::dim), |g| g.full.rows());
        let mut acc = Matrix::identity(n);
        for &g in &self.elements[i].1 {
            acc = self.generators[g].full.mul(&acc).expect("conformable");
        }
        acc
    }
    /// Coordinates in the stored subspace basis.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.coords.clone()).collect();
        Matrix::from_columns(x.dim(), &cols).ok()?.solve(&x.coords).ok().flatten()
    }
    /// Index of a group element sending `x` to `y`.
    pub fn find(&self, x: &Element, y: &Element) -> Option<usize> {
        let a = self.coordinates(x)?;
        let b = self.coordinates(y)?;
        self.elements.iter().position(|(m, _)| m.mul_vec(&a).expect("conformable") == b)
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Joint eigenspaces over Q of commuting operators preserving `domain`.
fn joint_eigenspaces(ops: &[SparseMatrix<Rational>], domain: &Subspace) -> Result<Vec<(Vec<Rational>, Subspace)>> {
    let n = domain.ambient();
    let mut pieces = vec![(Vec::new(), domain.clone())];
    for op in ops {
        let mut next = Vec::new();
        for (vals, sp) in pieces {
            let cols: Vec<Vec<Rational>> = sp
                .basis()
                .iter()
                .map(|b| sp.coordinates(&op.apply(b)).ok_or_else(|| Error::Computation("operator does not preserve the domain".into())))
                .collect::<Result<_>>()?;
            let r = Matrix::from_columns(sp.dim(), &cols)?;
            let mu = minimal_polynomial(&r);
            let roots = rational_roots(&mu);
            let lin = roots.iter().fold(Poly::one(), |acc, x| acc.mul(&Poly::new(vec![-x.clone(), Rational::one()])));
            if lin != mu.monic() {
                return Err(Error::Unsupported("restricted roots take irrational values on the subspace".into()));
            }
            for lam in roots {
                let shifted = r.sub(&Matrix::identity(sp.dim()).scale(&lam))?;
                let vecs: Vec<Vec<Rational>> = shifted.kernel().iter().map(|c| sp.vector_from_coordinates(c)).collect();
                let mut v = vals.clone();
                v.push(lam);
                next.push((v, Subspace::from_vectors(n, &vecs)?));
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn lagrange_basis(nodes: &[Rational], j: usize) -> Poly<Rational> {
    let mut p = Poly::one();
    for (i, s) in nodes.iter().enumerate() {
        if i != j {
            let denom = &nodes[j] - s;
            p = p.mul(&Poly::new(vec![-s.clone(), Rational::one()])).scale(&(Rational::one() / denom));
        }
    }
    p
}

fn substitute_square(p: &Poly<Rational>) -> Poly<Rational> {
    let mut c = vec![Rational::zero(); 2 * p.coeffs().len().max(1) - 1];
    for (k, a) in p.coeffs().iter().enumerate() {
        c[2 * k] = a.clone();
    }
    Poly::new(c)
}

/// Exact `exp(n t0 (pi/2) ad z)` for `n = 1, 2, 3`, where `t0` is the
/// least positive value making every such exponential rational. None when
/// `ad z` is not of compact type with rational frequencies.
pub fn quarter_period_elements(alg: &GradedAlgebra, z: &Element) -> Result<Option<Vec<(Rational, Matrix<Rational>)>>> {
    let ad = alg.ad_matrix(z)?;
    let mu = ad_minimal_polynomial(alg, z)?;
    let coeffs = mu.coeffs();
    let has_zero = coeffs[0].is_zero();
    let parity = usize::from(has_zero);
    if coeffs.iter().enumerate().any(|(i, c)| i % 2 != parity && !c.is_zero()) {
        return Ok(None);
    }
    let nu = Poly::new(coeffs.iter().skip(parity).step_by(2).cloned().collect());
    let roots = rational_roots(&nu);
    let lin = roots.iter().fold(Poly::one(), |acc, x| acc.mul(&Poly::new(vec![-x.clone(), Rational::one()])));
    if roots.is_empty() || lin != nu.monic() || roots.iter().any(|r| !r.is_negative()) {
        return Ok(None);
    }
    let mut freqs = Vec::new();
    for r in &roots {
        match rational_sqrt(&-r) {
            Some(c) => freqs.push(c),
            None => return Ok(None),
        }
    }
    let l = freqs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = freqs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let t0 = Rational::new(l, g.clone());
    let mut nodes: Vec<Rational> = Vec::new();
    if has_zero {
        nodes.push(Rational::zero());
    }
    nodes.extend(roots.iter().cloned());
    let offset = usize::from(has_zero);
    let n_dim = alg.dim();
    let mut out = Vec::new();
    for n in 1..=3i64 {
        let mut q = if has_zero { substitute_square(&lagrange_basis(&nodes, 0)) } else { Poly::zero() };
        for (j, c) in freqs.iter().enumerate() {
            let quarter = ((BigInt::from(n) * &ints[j] / &g) % BigInt::from(4) + BigInt::from(4)) % BigInt::from(4);
            let (cs, sn) = match quarter.to_string().as_str() {
                "0" => (1, 0),
                "1" => (0, 1),
                "2" => (-1, 0),
                _ => (0, -1),
            };
            let local = Poly::new(vec![qi(cs), qi(sn) / c]);
            q = q.add(&substitute_square(&lagrange_basis(&nodes, j + offset)).mul(&local));
        }
        let cols: Vec<Vec<Rational>> = (0..n_dim).map(|j| q.apply_to(&ad, &Element::basis(n_dim, j).coords)).collect();
        let t = &t0 * Rational::new(n.into(), 2.into());
        out.push((t, Matrix::from_columns(n_dim, &cols)?));
    }
    Ok(Some(out))
}

fn preserves_degrees(alg: &GradedAlgebra, m: &Matrix<Rational>) -> bool {
    (0..alg.dim()).all(|j| {
        let d = alg.degree(j);
        (0..alg.dim()).all(|i| m.get(i, j).is_zero() || alg.degree(i) == d)
    })
}

fn normalize_direction(x: &Element) -> Element {
    match x.coords.iter().find(|c| !c.is_zero()) {
        Some(c) => x.scale(&(Rational::one() / c)),
        None => x.clone(),
    }
}

/// Restricted Weyl group of a subspace of `k` or of `p`, generated by
/// exactly representable compact torus elements.
pub fn restricted_weyl_group(
    alg: &GradedAlgebra,
    d: &CartanDecomposition,
    h_sub: &Subspace,
    opts: &WeylOptions,
) -> Result<FiniteReflectionGroup> {
    check_dim(alg.dim(), h_sub.ambient())?;
    let n = alg.dim();
    let basis = h_sub.elements();
    if basis.is_empty() {
        return Err(Error::Precondition("subspace is zero".into()));
    }
    let part = if h_sub.is_subspace_of(&d.p) {
        CartanPart::Vector
    } else if h_sub.is_subspace_of(&d.k) {
        CartanPart::Elliptic
    } else {
        return Err(Error::Precondition("subspace must lie in k or in p; split it first".into()));
    };
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            if !alg.bracket(a, b)?.is_zero() {
                return Err(Error::Precondition("subspace is not abelian".into()));
            }
        }
    }
    let domain = if opts.centralizing.is_empty() {
        Subspace::full(n)
    } else {
        centralizer_of_subspace(alg, &Subspace::from_elements(n, &opts.centralizing)?, &Subspace::full(n))?
    };
    let ads: Vec<SparseMatrix<Rational>> = basis.iter().map(|u| alg.ad_matrix(u)).collect::<Result<_>>()?;
    let r = basis.len();
    let mut pairs = Vec::new();
    let mut ops = Vec::new();
    for i in 0..r {
        for j in i..r {
            pairs.push((i, j));
            ops.push(ads[i].mul(&ads[j])?);
        }
    }
    let sign = if part == CartanPart::Vector { qi(1) } else { qi(-1) };
    let pieces = joint_eigenspaces(&ops, &domain)?;
    let mut roots = Vec::new();
    let mut root_spaces = Vec::new();
    for (vals, sp) in &pieces {
        if vals.iter().all(Zero::is_zero) {
            continue;
        }
        let lam = |i: usize, j: usize| vals[pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap()].clone();
        let i0 = (0..r).find(|&i| !lam(i, i).is_zero()).ok_or_else(|| Error::Computation("degenerate joint eigenvalue pattern".into()))?;
        let a0 = rational_sqrt(&(&sign * lam(i0, i0)))
            .ok_or_else(|| Error::Unsupported("restricted root values are irrational".into()))?;
        let values: Vec<Rational> = (0..r).map(|j| &sign * lam(i0, j) / &a0).collect();
        for i in 0..r {
            for j in i..r {
                if &values[i] * &values[j] != &sign * lam(i, j) {
                    return Err(Error::Computation("joint eigenvalues do not come from a root".into()));
                }
            }
        }
        roots.push(RestrictedRoot { values, space_dim: sp.dim() });
        root_spaces.push(sp.clone());
    }
    // Killing form on the subspace, definite on k and on p.
    let gram = Matrix::from_fn(r, r, |i, j| alg.killing_form(&basis[i], &basis[j]).expect("dims"));
    let gram_inv = gram.inverse()?;
    let reflections: Vec<Matrix<Rational>> = roots
        .iter()
        .map(|a| {
            let t = gram_inv.mul_vec(&a.values).expect("conformable");
            let at = a.values.iter().zip(&t).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
            let two = qi(2) / at;
            Matrix::from_fn(r, r, |i, j| {
                let id = if i == j { Rational::one() } else { Rational::zero() };
                id - &two * &t[i] * &a.values[j]
            })
        })
        .collect();
    let mut candidates = BTreeSet::new();
    for sp in &root_spaces {
        for x in sp.elements() {
            let z = x.add(&d.apply_tau(&x));
            for deg in 0..alg.modulus() as i64 {
                if opts.source == WeylSource::DegreeZeroCompact && deg != 0 {
                    continue;
                }
                let zd = crate::lie::ops::degree_component(alg, &z, deg);
                if !zd.is_zero() {
                    candidates.insert(normalize_direction(&zd).coords);
                }
            }
        }
    }
    let hmat = Matrix::from_columns(n, &basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>())?;
    let mut generators: Vec<WeylGenerator> = Vec::new();
    let mut seen = BTreeSet::new();
    seen.insert(Matrix::<Rational>::identity(r).to_rows());
    for zc in candidates {
        let z = Element::new(zc);
        let Some(elems) = quarter_period_elements(alg, &z)? else { continue };
        for (t, full) in elems {
            if !preserves_degrees(alg, &full) {
                continue;
            }
            let cols: Option<Vec<Vec<Rational>>> =
                basis.iter().map(|b| hmat.solve(&full.mul_vec(&b.coords).expect("conformable")).ok().flatten()).collect();
            let Some(cols) = cols else { continue };
            let action = Matrix::from_columns(r, &cols)?;
            if !seen.insert(action.to_rows()) {
                continue;
            }
            let reflection_of = reflections.iter().position(|s| *s == action);
            generators.push(WeylGenerator { action, full, z: z.clone(), t_over_pi: t, reflection_of });
        }
    }
    let mut elements: Vec<(Matrix<Rational>, Vec<usize>)> = vec![(Matrix::identity(r), Vec::new())];
    let mut index: BTreeMap<Vec<Vec<Rational>>, usize> = BTreeMap::new();
    index.insert(Matrix::<Rational>::identity(r).to_rows(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in generators.iter().enumerate() {
            let m = g.action.mul(&elements[i].0)?;
            let key = m.to_rows();
            if index.contains_key(&key) {
                continue;
            }
            if elements.len() >= opts.bound {
                return Err(Error::Computation("not finite; input not a Cartan subspace".into()));
            }
            let mut w = elements[i].1.clone();
            w.push(gi);
            index.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push((m, w));
        }
    }
    let unrealized_reflections =
        (0..reflections.len()).filter(|&i| !index.contains_key(&reflections[i].to_rows())).collect();
    Ok(FiniteReflectionGroup { basis, part, roots, generators, order: elements.len(), unrealized_reflections, elements })
}

/// `w x = y` for some `w` in the group.
pub fn semisimple_orbit_equivalent(x: &Element, y: &Element, w: &FiniteReflectionGroup) -> Result<bool> {
    if w.coordinates(x).is_none() || w.coordinates(y).is_none() {
        return Err(Error::Precondition("elements must lie in the group's subspace".into()));
    }
    Ok(w.find(x, y).is_some())
}

// ---------------------------------------------------------------------------
// Mixed elements

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedNormalForm {
    pub h_k: Element,
    pub h_p: Element,
    pub e_n: Element,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Z2Description {
    pub semisimple_part: Element,
    pub nilpotent_part: Element,
    pub normal_form: Option<MixedNormalForm>,
    pub stages: Vec<StageReport>,
}

fn check_odd(alg: &GradedAlgebra, x: &Element) -> Result<()> {
    check_dim(alg.dim(), x.dim())?;
    if !x.is_zero() && alg.homogeneous_degree(x) != Some(1) {
        return Err(Error::InvalidInput("element must lie in g_1".into()));
    }
    Ok(())
}

/// Jordan decomposition and elliptic/vector split of an element of `g_1`.
pub fn z2_describe(alg: &GradedAlgebra, d: &CartanDecomposition, x: &Element) -> Result<Z2Description> {
    require_z2(alg)?;
    check_odd(alg, x)?;
    let j = jordan_decompose(alg, x)?;
    let mut stages = vec![StageReport {
        stage: "jordan".into(),
        ok: true,
        detail: "x = x_s + x_n with [x_s, x_n] = 0".into(),
    }];
    let normal_form = match elliptic_vector_split(alg, d, &j.xs) {
        Ok(s) => {
            for part in [&s.elliptic, &s.vector] {
                if !alg.bracket(part, &j.xn)?.is_zero() {
                    return Err(Error::Computation("nilpotent part does not commute with the split".into()));
                }
            }
            stages.push(StageReport { stage: "standard-position".into(), ok: true, detail: "k and p parts commute".into() });
            stages.push(StageReport { stage: "elliptic".into(), ok: true, detail: "ad spectrum purely imaginary".into() });
            stages.push(StageReport { stage: "vector".into(), ok: true, detail: "ad spectrum real".into() });
            Some(MixedNormalForm { h_k: s.elliptic, h_p: s.vector, e_n: j.xn.clone() })
        }
        Err(e) if e.is_input_error() || matches!(e, Error::Precondition(_)) => {
            stages.push(StageReport { stage: "standard-position".into(), ok: false, detail: e.to_string() });
            None
        }
        Err(e) => return Err(e),
    };
    Ok(Z2Description { semisimple_part: j.xs, nilpotent_part: j.xn, normal_form, stages })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Conjugate,
    Distinct,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub stage: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyVerdict {
    pub verdict: Verdict,
    /// Stage that decided (or blocked) the comparison.
    pub stage: String,
    pub reason: String,
    /// Steps carrying the first argument to the second.
    pub certificate: Vec<CertificateStep>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct MixedOptions {
    pub weyl: WeylOptions,
    pub components: ComponentOptions,
}

fn verdict(v: Verdict, stage: &str, reason: impl Into<String>, certificate: Vec<CertificateStep>, caveats: Vec<String>) -> ConjugacyVerdict {
    ConjugacyVerdict { verdict: v, stage: stage.into(), reason: reason.into(), certificate, caveats }
}

/// Conjugacy of two elements of `g_1` under `G_0`.
pub fn mixed_conjugacy(alg: &GradedAlgebra, d: &CartanDecomposition, x: &Element, y: &Element, opts: &MixedOptions) -> Result<ConjugacyVerdict> {
    require_z2(alg)?;
    check_odd(alg, x)?;
    check_odd(alg, y)?;
    // A canonical argument order keeps verdicts symmetric.
    if x.coords > y.coords {
        let mut v = mixed_conjugacy_ordered(alg, d, y, x, opts)?;
        v.certificate.reverse();
        for step in &mut v.certificate {
            step.detail = format!("inverse of: {}", step.detail);
        }
        return Ok(v);
    }
    mixed_conjugacy_ordered(alg, d, x, y, opts)
}

struct Parts {
    hk: Element,
    hp: Element,
    n: Element,
}

impl Parts {
    fn transform(&self, m: &Matrix<Rational>) -> Parts {
        Parts { hk: dense_apply(m, &self.hk), hp: dense_apply(m, &self.hp), n: dense_apply(m, &self.n) }
    }
}

enum StageOutcome {
    Moved(Matrix<Rational>, CertificateStep),
    Stop(ConjugacyVerdict),
}

fn weyl_stage(
    alg: &GradedAlgebra,
    d: &CartanDecomposition,
    stage: &str,
    a: &Element,
    b: &Element,
    weyl: &WeylOptions,
) -> Result<StageOutcome> {
    let n = alg.dim();
    if !alg.bracket(a, b)?.is_zero() {
        return Ok(StageOutcome::Stop(verdict(Verdict::Undecided, stage, format!("{stage} parts do not commute; no common Cartan subspace"), vec![], vec![])));
    }
    let span = Subspace::from_elements(n, &[a.clone(), b.clone()])?;
    let w = match restricted_weyl_group(alg, d, &span, weyl) {
        Ok(w) => w,
        Err(e) => return Ok(StageOutcome::Stop(verdict(Verdict::Undecided, stage, e.to_string(), vec![], vec![]))),
    };
    match w.find(a, b) {
        Some(i) => {
            let word: Vec<String> = w
                .word(i)
                .iter()
                .map(|&g| {
                    let gen = &w.generators[g];
                    format!("exp({} pi ad z) with z = [{}]", format_rational(&gen.t_over_pi), gen.z.literals().join(", "))
                })
                .collect();
            let detail = if word.is_empty() { "identity".to_string() } else { word.join(" then ") };
            Ok(StageOutcome::Moved(w.full_matrix(i), CertificateStep { stage: stage.into(), detail }))
        }
        None => Ok(StageOutcome::Stop(verdict(
            Verdict::Undecided,
            stage,
            format!("no element of the computed Weyl group (order {}) relates the {stage} parts", w.order),
            vec![],
            vec!["the computed Weyl group may be a proper subgroup".into()],
        ))),
    }
}

fn graded_centralizer(alg: &GradedAlgebra, s: &Element) -> Result<(GradedAlgebra, Subspace, Vec<Element>)> {
    let n = alg.dim();
    let mut basis = Vec::new();
    for deg in 0..alg.modulus() as i64 {
        basis.extend(centralizer(alg, s, &alg.degree_subspace(deg))?.elements());
    }
    let sub = alg.subalgebra(format!("Z({})", alg.name()), &basis)?;
    Ok((sub, Subspace::from_elements(n, &basis)?, basis))
}

fn to_sub(basis: &[Element], x: &Element) -> Result<Element> {
    let m = Matrix::from_columns(x.dim(), &basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>())?;
    m.solve(&x.coords)?
        .map(Element::new)
        .ok_or_else(|| Error::Computation("element is not in the centralizer".into()))
}

fn mixed_conjugacy_ordered(alg: &GradedAlgebra, d: &CartanDecomposition, x: &Element, y: &Element, opts: &MixedOptions) -> Result<ConjugacyVerdict> {
    if x == y {
        return Ok(verdict(Verdict::Conjugate, "identity", "the elements coincide", vec![CertificateStep { stage: "identity".into(), detail: "identity".into() }], vec![]));
    }
    if ad_minimal_polynomial(alg, x)? != ad_minimal_polynomial(alg, y)? {
        return Ok(verdict(Verdict::Distinct, "invariants", "ad minimal polynomials differ", vec![], vec![]));
    }
    let jx = jordan_decompose(alg, x)?;
    let jy = jordan_decompose(alg, y)?;
    if ad_minimal_polynomial(alg, &jx.xs)? != ad_minimal_polynomial(alg, &jy.xs)? {
        return Ok(verdict(Verdict::Distinct, "semisimple", "ad minimal polynomials of the semisimple parts differ", vec![], vec![]));
    }
    if jx.xn.is_zero() != jy.xn.is_zero() {
        return Ok(verdict(Verdict::Distinct, "nilpotent", "exactly one nilpotent part vanishes", vec![], vec![]));
    }
    let split = |s: &Element| elliptic_vector_split(alg, d, s);
    let (sx, sy) = match (split(&jx.xs), split(&jy.xs)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            if matches!(e, Error::Precondition(_)) {
                return Ok(verdict(Verdict::Undecided, "standard-position", e.to_string(), vec![], vec![]));
            }
            return Err(e);
        }
    };
    for (u, v, stage) in [(&sx.elliptic, &sy.elliptic, "elliptic"), (&sx.vector, &sy.vector, "vector")] {
        if ad_minimal_polynomial(alg, u)? != ad_minimal_polynomial(alg, v)? {
            return Ok(verdict(Verdict::Distinct, stage, format!("ad minimal polynomials of the {stage} parts differ"), vec![], vec![]));
        }
    }
    let mut cur = Parts { hk: sx.elliptic, hp: sx.vector, n: jx.xn };
    let target = Parts { hk: sy.elliptic, hp: sy.vector, n: jy.xn };
    let mut certificate = Vec::new();
    if cur.hk != target.hk {
        match weyl_stage(alg, d, "elliptic", &cur.hk, &target.hk, &opts.weyl)? {
            StageOutcome::Moved(m, step) => {
                cur = cur.transform(&m);
                certificate.push(step);
            }
            StageOutcome::Stop(v) => return Ok(v),
        }
    }
    if cur.hp != target.hp {
        let mut w = opts.weyl.clone();
        if !target.hk.is_zero() {
            w.centralizing.push(target.hk.clone());
        }
        match weyl_stage(alg, d, "vector", &cur.hp, &target.hp, &w)? {
            StageOutcome::Moved(m, step) => {
                cur = cur.transform(&m);
                certificate.push(step);
            }
            StageOutcome::Stop(v) => return Ok(v),
        }
    }
    if cur.hk != target.hk || cur.hp != target.hp {
        return Err(Error::Computation("Weyl element failed to align semisimple parts".into()));
    }
    if cur.n == target.n {
        certificate.push(CertificateStep { stage: "nilpotent".into(), detail: "nilpotent parts coincide after alignment".into() });
        return Ok(verdict(Verdict::Conjugate, "semisimple", "semisimple parts related by a Weyl element", certificate, vec![]));
    }
    nilpotent_stage(alg, &cur, &target, certificate, opts)
}

fn nilpotent_stage(
    alg: &GradedAlgebra,
    cur: &Parts,
    target: &Parts,
    mut certificate: Vec<CertificateStep>,
    opts: &MixedOptions,
) -> Result<ConjugacyVerdict> {
    let s = target.hk.add(&target.hp);
    let whole = s.is_zero();
    let (zalg, basis) = if whole {
        (None, Vec::new())
    } else {
        let (z, _, b) = graded_centralizer(alg, &s)?;
        (Some(z), b)
    };
    let za: &GradedAlgebra = zalg.as_ref().unwrap_or(alg);
    let lift = |e: &Element| if whole { Ok(e.clone()) } else { to_sub(&basis, e) };
    let n1 = lift(&cur.n)?;
    let n2 = lift(&target.n)?;
    let h1 = jmv_triple(za, &n1)?.triple.h;
    let h2 = jmv_triple(za, &n2)?.triple.h;
    if characteristic_fingerprint(za, &h1)? != characteristic_fingerprint(za, &h2)? {
        return Ok(verdict(Verdict::Distinct, "nilpotent", "characteristics of the nilpotent parts have different fingerprints", vec![], vec![]));
    }
    let mut n1 = n1;
    if h1 != h2 {
        match conjugate_characteristics(za, &n1, &h1, &h2) {
            Ok(c) => {
                certificate.push(CertificateStep {
                    stage: "characteristic".into(),
                    detail: format!("exp(ad z) with z = [{}] in the centralizer", c.z.literals().join(", ")),
                });
                n1 = c.apply(za, &n1)?;
            }
            Err(_) => {
                return Ok(verdict(
                    Verdict::Undecided,
                    "characteristic",
                    "characteristics have equal fingerprints but no conjugation was found",
                    vec![],
                    vec![],
                ))
            }
        }
    }
    let sl = slice(za, &h2)?;
    let comm = slice_commutant(za, &sl)?;
    let data = genericity_matrix(za, &sl, &comm)?;
    let set = SemialgebraicSet::Gram(Box::new(data.clone()));
    let report = component_analysis(&set, &opts.components)?;
    let locate = |e: &Element| data.coordinates(e).and_then(|a| class_containing(&set, &report, &a));
    let (Some(c1), Some(c2)) = (locate(&n1), locate(&n2)) else {
        return Ok(verdict(Verdict::Undecided, "nilpotent", "a nilpotent part was not placed in a sampled class", vec![], vec![]));
    };
    let centre = if whole { alg.extras().center.clone() } else { CenterData::trivial() };
    let merged = center_cosets(za, &data, &set, &report, &centre)?;
    let orbit_of = |c: usize| merged.orbits.iter().position(|o| o.components.contains(&c));
    let mut caveats = report.caveats.clone();
    if !whole {
        caveats.push("Z_{G_0}(x_s) may be disconnected; only its identity component and no centre were used".into());
    }
    if orbit_of(c1) == orbit_of(c2) {
        let detail = if c1 == c2 {
            format!("both lie in component {c1} of the generic set (certified segments, mode {:?})", report.mode)
        } else {
            format!("components {c1} and {c2} are related by a centre element")
        };
        certificate.push(CertificateStep { stage: "nilpotent".into(), detail });
        return Ok(verdict(Verdict::Conjugate, "nilpotent", "nilpotent parts lie in one open orbit", certificate, caveats));
    }
    if whole && report.mode == Mode::Exact {
        return Ok(verdict(
            Verdict::Distinct,
            "nilpotent",
            format!("different exact components {c1} and {c2}; the centre does not merge them"),
            vec![],
            caveats,
        ));
    }
    Ok(verdict(Verdict::Undecided, "nilpotent", format!("different classes {c1} and {c2}, not certified as distinct"), vec![], caveats))
}
