//! Jordan decomposition of elements, sl2-triples through nilpotent elements,
//! conjugation of characteristics and the scaling-to-zero certificate.

use crate::error::{check_dim, Error, Result};
use crate::lie::ops::{centralizer, rational_eigenspaces};
use crate::lie::{Element, GradedAlgebra, Subspace};
use crate::linalg::{
    local_minimal_polynomial, minimal_polynomial, nilpotent_exp_apply, rational_roots, semisimple_part_polynomial,
    Matrix, Poly, Reducer,
};
use crate::scalar::{qi, Rational};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Minimal polynomial of `ad x`.
pub fn ad_minimal_polynomial(alg: &GradedAlgebra, x: &Element) -> Result<Poly<Rational>> {
    Ok(minimal_polynomial(&alg.ad_matrix(x)?))
}

fn is_power_of_t(p: &Poly<Rational>) -> bool {
    p.coeffs()[..p.coeffs().len() - 1].iter().all(|c| c.is_zero())
}

fn is_squarefree(p: &Poly<Rational>) -> bool {
    p.gcd(&p.derivative()).degree() == Some(0)
}

/// `ad x` is nilpotent.
pub fn is_nilpotent(alg: &GradedAlgebra, x: &Element) -> Result<bool> {
    Ok(is_power_of_t(&ad_minimal_polynomial(alg, x)?))
}

/// `ad x` has squarefree minimal polynomial.
pub fn is_semisimple(alg: &GradedAlgebra, x: &Element) -> Result<bool> {
    Ok(is_squarefree(&ad_minimal_polynomial(alg, x)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanPair {
    pub xs: Element,
    pub xn: Element,
}

/// Solve `ad y = S` for `y`, where `S` is given by its action on basis
/// vectors. Stacks the equations `ad(b_j) y = -S b_j` until full rank.
fn element_with_ad(alg: &GradedAlgebra, image: impl Fn(usize) -> Vec<Rational>) -> Result<Element> {
    let n = alg.dim();
    let mut red = Reducer::<Rational>::new();
    let mut images: Vec<Option<Vec<Rational>>> = vec![None; n];
    for j in 0..n {
        if red.len() == n {
            break;
        }
        let sb = image(j);
        // Row k of ad(b_j): coefficient of b_k in [b_j, b_l], over l.
        let mut rows = vec![vec![Rational::zero(); n + 1]; n];
        for l in 0..n {
            for (k, c) in alg.bracket_basis(j, l) {
                rows[*k][l] = c.clone();
            }
        }
        for (k, row) in rows.iter_mut().enumerate() {
            row[n] = -sb[k].clone();
        }
        images[j] = Some(sb);
        for mut row in rows {
            if row[..n].iter().all(|c| c.is_zero()) {
                if !row[n].is_zero() {
                    return Err(Error::Computation("semisimple part is not an inner derivation".into()));
                }
                continue;
            }
            red.reduce(&mut row);
            if row[..n].iter().all(|c| c.is_zero()) {
                if !row[n].is_zero() {
                    return Err(Error::Computation("semisimple part is not an inner derivation".into()));
                }
                continue;
            }
            red.insert_reduced(row);
        }
    }
    if red.len() < n {
        return Err(Error::Precondition("ad is not injective: the algebra has a nontrivial centre".into()));
    }
    let y = back_substitute(&red, n);
    // Replay on every basis vector.
    for (j, img) in images.into_iter().enumerate() {
        let sb = img.unwrap_or_else(|| image(j));
        let got = alg.bracket(&y, &Element::basis(n, j))?;
        if got.coords != sb {
            return Err(Error::Computation(format!("semisimple part does not reproduce ad on basis vector {j}")));
        }
    }
    Ok(y)
}

/// Back substitution in a full-rank reducer on augmented rows of length n+1.
fn back_substitute(red: &Reducer<Rational>, n: usize) -> Element {
    let rows = red.rows();
    let mut x = vec![Rational::zero(); n];
    for (p, r) in rows.iter().rev() {
        let mut v = r[n].clone();
        for (l, c) in r[..n].iter().enumerate() {
            if l != *p && !c.is_zero() {
                v -= c * &x[l];
            }
        }
        x[*p] = v;
    }
    Element::new(x)
}

/// Jordan decomposition `x = xs + xn`.
pub fn jordan_decompose(alg: &GradedAlgebra, x: &Element) -> Result<JordanPair> {
    check_dim(alg.dim(), x.dim())?;
    let ad = alg.ad_matrix(x)?;
    let mu = minimal_polynomial(&ad);
    if is_power_of_t(&mu) {
        return Ok(JordanPair { xs: Element::zero(alg.dim()), xn: x.clone() });
    }
    if is_squarefree(&mu) {
        return Ok(JordanPair { xs: x.clone(), xn: Element::zero(alg.dim()) });
    }
    let s = semisimple_part_polynomial(&mu)?;
    let n = alg.dim();
    let xs = element_with_ad(alg, |j| s.apply_to(&ad, &Element::basis(n, j).coords))?;
    let xn = x.sub(&xs);
    if let Some(d) = alg.homogeneous_degree(x) {
        for part in [&xs, &xn] {
            if !part.is_zero() && alg.homogeneous_degree(part) != Some(d) {
                return Err(Error::Computation("Jordan part of a homogeneous element is not homogeneous".into()));
            }
        }
    }
    if !alg.bracket(&xs, &xn)?.is_zero() {
        return Err(Error::Computation("Jordan parts do not commute".into()));
    }
    Ok(JordanPair { xs, xn })
}

/// `{nilpotent, semisimple, jordan}` summary of an element.
#[derive(Clone, Debug, Serialize)]
pub struct ElementAnalysis {
    pub nilpotent: bool,
    pub semisimple: bool,
    /// Degree of a nonzero homogeneous element.
    pub degree: Option<u32>,
    pub minimal_polynomial: Vec<String>,
    pub jordan: JordanPair,
}

pub fn analyze_element(alg: &GradedAlgebra, x: &Element) -> Result<ElementAnalysis> {
    let mu = ad_minimal_polynomial(alg, x)?;
    Ok(ElementAnalysis {
        nilpotent: is_power_of_t(&mu),
        semisimple: is_squarefree(&mu),
        degree: alg.homogeneous_degree(x),
        minimal_polynomial: mu.to_literals(),
        jordan: jordan_decompose(alg, x)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Triple {
    pub h: Element,
    pub e: Element,
    pub f: Element,
}

impl Sl2Triple {
    /// Exact check of `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn relations_hold(&self, alg: &GradedAlgebra) -> Result<bool> {
        Ok(alg.bracket(&self.h, &self.e)? == self.e.scale(&qi(2))
            && alg.bracket(&self.h, &self.f)? == self.f.scale(&qi(-2))
            && alg.bracket(&self.e, &self.f)? == self.h)
    }
}

/// Triple together with the intermediate data of its construction.
#[derive(Clone, Debug, Serialize)]
pub struct JmvReport {
    pub triple: Sl2Triple,
    /// Least-lexicographic solution of `[[e, f'], e] = 2e` in degree -1.
    pub f_prime: Element,
    /// Correction in `Z_g(e)` of degree -1.
    pub correction: Element,
    /// Dimension of `{f in g_-1 : [e,f] = 0, [h,f] = -2f}`; zero means
    /// `f` is determined by `(e, h)`.
    pub uniqueness_kernel_dim: usize,
}

fn image_matrix(alg: &GradedAlgebra, basis: &[Element], map: impl Fn(&Element) -> Result<Element>) -> Result<Matrix<Rational>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| map(b).map(|z| z.coords)).collect::<Result<_>>()?;
    if cols.is_empty() {
        return Ok(Matrix::zeros(alg.dim(), 0));
    }
    Matrix::from_columns(alg.dim(), &cols)
}

fn combine(alg: &GradedAlgebra, basis: &[Element], c: &[Rational]) -> Element {
    let terms: Vec<(Rational, &Element)> = c.iter().cloned().zip(basis.iter()).collect();
    Element::combination(alg.dim(), &terms)
}

fn check_degree_one_nilpotent(alg: &GradedAlgebra, e: &Element) -> Result<()> {
    check_dim(alg.dim(), e.dim())?;
    if e.is_zero() {
        return Err(Error::Precondition("e must be nonzero".into()));
    }
    if alg.homogeneous_degree(e) != Some(alg.reduce_degree(1)) {
        return Err(Error::Precondition("e must be homogeneous of degree 1".into()));
    }
    if !is_nilpotent(alg, e)? {
        return Err(Error::Precondition("e is not nilpotent".into()));
    }
    Ok(())
}

/// sl2-triple through a nilpotent `e` of degree 1 with `h` of degree 0 and
/// `f` of degree -1.
pub fn jmv_triple(alg: &GradedAlgebra, e: &Element) -> Result<JmvReport> {
    check_degree_one_nilpotent(alg, e)?;
    let n = alg.dim();
    let gm1: Vec<Element> = alg.basis_indices_of_degree(-1).into_iter().map(|i| Element::basis(n, i)).collect();
    // Step 1: [[e, f'], e] = 2e.
    let m = image_matrix(alg, &gm1, |w| alg.bracket(&alg.bracket(e, w)?, e))?;
    let c = m
        .solve(&e.scale(&qi(2)).coords)?
        .ok_or_else(|| Error::Computation("not nilpotent or not in a graded semisimple algebra".into()))?;
    let f_prime = combine(alg, &gm1, &c);
    let h = alg.bracket(e, &f_prime)?;
    // Step 3: (ad h + 2) z = -[h, f'] - 2 f' with z in Z_g(e) of degree -1.
    let rhs = alg.bracket(&h, &f_prime)?.add(&f_prime.scale(&qi(2))).neg();
    let z_space = centralizer(alg, e, &alg.degree_subspace(-1))?.elements();
    let correction = if rhs.is_zero() {
        Element::zero(n)
    } else {
        let mz = image_matrix(alg, &z_space, |w| Ok(alg.bracket(&h, w)?.add(&w.scale(&qi(2)))))?;
        let cz = if z_space.is_empty() { None } else { mz.solve(&rhs.coords)? };
        combine(alg, &z_space, &cz.ok_or_else(|| Error::Computation("Jacobson correction equation has no solution".into()))?)
    };
    let f = f_prime.add(&correction);
    let triple = Sl2Triple { h: h.clone(), e: e.clone(), f };
    if !triple.relations_hold(alg)? {
        return Err(Error::Computation("constructed triple fails the sl2 relations".into()));
    }
    // f is unique iff no nonzero w in degree -1 has [e,w] = 0 and [h,w] = -2w.
    let mut cols = Vec::with_capacity(gm1.len());
    for w in &gm1 {
        let mut col = alg.bracket(e, w)?.coords;
        col.extend(alg.bracket(&h, w)?.add(&w.scale(&qi(2))).coords);
        cols.push(col);
    }
    let uniqueness_kernel_dim = if cols.is_empty() { 0 } else { Matrix::from_columns(2 * n, &cols)?.kernel().len() };
    Ok(JmvReport { triple, f_prime, correction, uniqueness_kernel_dim })
}

/// The characteristic `h` of `jmv_triple(e)`.
pub fn characteristic(alg: &GradedAlgebra, e: &Element) -> Result<Element> {
    Ok(jmv_triple(alg, e)?.triple.h)
}

/// `[g_-1, e]`.
pub fn image_of_degree_minus_one(alg: &GradedAlgebra, e: &Element) -> Result<Subspace> {
    let n = alg.dim();
    let vecs: Vec<Vec<Rational>> = alg
        .basis_indices_of_degree(-1)
        .into_iter()
        .map(|i| alg.bracket(&Element::basis(n, i), e).map(|z| z.coords))
        .collect::<Result<_>>()?;
    Subspace::from_vectors(n, &vecs)
}

/// `u_{g_0}(e) = Z_{g_0}(e) ∩ [g_-1, e]`.
pub fn unipotent_radical_algebra(alg: &GradedAlgebra, e: &Element) -> Result<Subspace> {
    centralizer(alg, e, &alg.degree_subspace(0))?.intersect(&image_of_degree_minus_one(alg, e)?)
}

/// Automorphism `exp(ad z)` carrying one characteristic of `e` to another.
#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicConjugation {
    /// Generator `z` in `u_{g_0}(e)`.
    pub z: Element,
    /// Positive `ad h` eigenvalues occurring in `u_{g_0}(e)`.
    #[serde(serialize_with = "crate::scalar::ser_rationals")]
    pub eigenvalues: Vec<Rational>,
    /// Image of the original `f`.
    pub f_image: Element,
}

impl CharacteristicConjugation {
    pub fn apply(&self, alg: &GradedAlgebra, x: &Element) -> Result<Element> {
        Ok(Element::new(nilpotent_exp_apply(&alg.ad_matrix(&self.z)?, &x.coords)?))
    }
}

/// Find `z` in `u_{g_0}(e)` with `exp(ad z)(h) = h'` and `exp(ad z)(e) = e`.
pub fn conjugate_characteristics(alg: &GradedAlgebra, e: &Element, h: &Element, h2: &Element) -> Result<CharacteristicConjugation> {
    for x in [h, h2] {
        check_dim(alg.dim(), x.dim())?;
        if alg.bracket(x, e)? != e.scale(&qi(2)) {
            return Err(Error::Precondition("both elements must satisfy [h, e] = 2e".into()));
        }
    }
    let n = alg.dim();
    let u = unipotent_radical_algebra(alg, e)?;
    let v = h2.sub(h);
    if !u.contains_element(&v) {
        return Err(Error::Precondition("not characteristics of the same e".into()));
    }
    let f = if u.is_zero() { None } else { complete_triple(alg, e, h)? };
    let spaces = if u.is_zero() { Vec::new() } else { rational_eigenspaces(alg, h, &u)? };
    for (lam, _) in &spaces {
        if !lam.is_integer() || !lam.is_positive() {
            return Err(Error::Computation(format!("ad h has a non-positive or non-integral eigenvalue on u(e): {lam}")));
        }
    }
    // Basis adapted to the eigenspace splitting, for projections.
    let adapted: Vec<Element> = spaces.iter().flat_map(|(_, s)| s.elements()).collect();
    let mut z = Element::zero(n);
    if !adapted.is_empty() {
        let basis_m = Matrix::from_columns(n, &adapted.iter().map(|b| b.coords.clone()).collect::<Vec<_>>())?;
        let mut offset = 0;
        for (lam, s) in &spaces {
            let image = Element::new(nilpotent_exp_apply(&alg.ad_matrix(&z)?, &h.coords)?);
            let r = h2.sub(&image);
            let c = basis_m.solve(&r.coords)?.ok_or_else(|| Error::Computation("residual left u(e)".into()))?;
            let block: Vec<(Rational, &Element)> =
                (offset..offset + s.dim()).map(|i| (c[i].clone(), &adapted[i])).collect();
            let rk = Element::combination(n, &block);
            // [w, h] = -k w for w of eigenvalue k, so w = -r_k / k removes r_k.
            z = z.sub(&rk.scale(&(Rational::one() / lam)));
            offset += s.dim();
        }
    }
    let ad_z = alg.ad_matrix(&z)?;
    let image = Element::new(nilpotent_exp_apply(&ad_z, &h.coords)?);
    if &image != h2 {
        return Err(Error::Computation("iteration failed to reach the target characteristic".into()));
    }
    let e_image = Element::new(nilpotent_exp_apply(&ad_z, &e.coords)?);
    if &e_image != e {
        return Err(Error::Computation("conjugating automorphism moves e".into()));
    }
    let f_image = match f {
        Some(f) => Element::new(nilpotent_exp_apply(&ad_z, &f.coords)?),
        None => jmv_complete(alg, e, h2)?,
    };
    let t = Sl2Triple { h: h2.clone(), e: e.clone(), f: f_image.clone() };
    if !t.relations_hold(alg)? {
        return Err(Error::Computation("conjugated triple fails the sl2 relations".into()));
    }
    Ok(CharacteristicConjugation { z, eigenvalues: spaces.into_iter().map(|(l, _)| l).collect(), f_image })
}

/// The `f` completing `(h, e)` to a triple, if any.
pub fn complete_triple(alg: &GradedAlgebra, e: &Element, h: &Element) -> Result<Option<Element>> {
    let n = alg.dim();
    let gm1: Vec<Element> = alg.basis_indices_of_degree(-1).into_iter().map(|i| Element::basis(n, i)).collect();
    let mut cols = Vec::with_capacity(gm1.len());
    for w in &gm1 {
        let mut col = alg.bracket(e, w)?.coords;
        col.extend(alg.bracket(h, w)?.add(&w.scale(&qi(2))).coords);
        cols.push(col);
    }
    if cols.is_empty() {
        return Ok(None);
    }
    let mut rhs = h.coords.clone();
    rhs.extend(vec![Rational::zero(); n]);
    Ok(Matrix::from_columns(2 * n, &cols)?.solve(&rhs)?.map(|c| combine(alg, &gm1, &c)))
}

fn jmv_complete(alg: &GradedAlgebra, e: &Element, h: &Element) -> Result<Element> {
    complete_triple(alg, e, h)?.ok_or_else(|| Error::Precondition("h does not complete e to an sl2-triple".into()))
}

/// One eigencomponent of `e` under `ad(h/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingComponent {
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub eigenvalue: Rational,
    pub component: Element,
}

/// Decompose `e` along `ad(h/2)` eigenvalues and certify they are all
/// positive, so that `exp(t ad h) e -> 0` as `t -> -infinity`.
pub fn scaling_diagnostic(alg: &GradedAlgebra, e: &Element, h: &Element) -> Result<Vec<ScalingComponent>> {
    check_dim(alg.dim(), e.dim())?;
    check_dim(alg.dim(), h.dim())?;
    if e.is_zero() {
        return Ok(Vec::new());
    }
    let ad = alg.ad_matrix(&h.scale(&crate::scalar::q(1, 2)))?;
    let (mu, _) = local_minimal_polynomial(&ad, &e.coords);
    let roots = rational_roots(&mu);
    let lin = roots.iter().fold(Poly::one(), |acc, r| acc.mul(&Poly::new(vec![-r.clone(), Rational::one()])));
    if lin != mu {
        return Err(Error::Precondition(format!(
            "ad(h/2) is not diagonalizable with rational eigenvalues on e (local minimal polynomial {:?})",
            mu.to_literals()
        )));
    }
    let mut out = Vec::new();
    for (i, lam) in roots.iter().enumerate() {
        let mut p = Poly::one();
        for (j, mu_j) in roots.iter().enumerate() {
            if i != j {
                let d = lam - mu_j;
                p = p.mul(&Poly::new(vec![-mu_j / &d, Rational::one() / &d]));
            }
        }
        let comp = Element::new(p.apply_to(&ad, &e.coords));
        if comp.is_zero() {
            continue;
        }
        if !lam.is_positive() {
            return Err(Error::Precondition(format!("component of e with nonpositive ad(h/2) eigenvalue {lam}")));
        }
        out.push(ScalingComponent { eigenvalue: lam.clone(), component: comp });
    }
    out.sort_by(|a, b| a.eigenvalue.cmp(&b.eigenvalue));
    Ok(out)
}
