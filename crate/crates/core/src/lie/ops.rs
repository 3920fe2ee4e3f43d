//! Centralizers, normalizers, commutants and eigenspace decompositions.

use crate::error::{check_dim, Error, Result};
use crate::lie::algebra::GradedAlgebra;
use crate::lie::element::Element;
use crate::lie::subspace::Subspace;
use crate::linalg::{minimal_polynomial, rational_roots, Matrix, Poly};
use crate::scalar::Rational;
use num_traits::Zero;

/// `Z_W(x) = { w in W : [x, w] = 0 }`.
pub fn centralizer(alg: &GradedAlgebra, x: &Element, within: &Subspace) -> Result<Subspace> {
    check_dim(alg.dim(), x.dim())?;
    check_dim(alg.dim(), within.ambient())?;
    if within.is_zero() {
        return Ok(within.clone());
    }
    let cols: Vec<Vec<Rational>> = within
        .elements()
        .iter()
        .map(|w| alg.bracket(x, w).map(|z| z.coords))
        .collect::<Result<_>>()?;
    let m = Matrix::from_columns(alg.dim(), &cols)?;
    let vecs: Vec<Vec<Rational>> = m.kernel().iter().map(|k| within.vector_from_coordinates(k)).collect();
    Subspace::from_vectors(alg.dim(), &vecs)
}

/// Elements of a subspace commuting with every element of another.
pub fn centralizer_of_subspace(alg: &GradedAlgebra, s: &Subspace, within: &Subspace) -> Result<Subspace> {
    let mut z = within.clone();
    for x in s.elements() {
        z = centralizer(alg, &x, &z)?;
    }
    Ok(z)
}

/// `N_W(line(e)) = { w in W : [w, e] in Q e }`.
pub fn normalizer_of_line(alg: &GradedAlgebra, e: &Element, within: &Subspace) -> Result<Subspace> {
    check_dim(alg.dim(), e.dim())?;
    if e.is_zero() {
        return Err(Error::InvalidInput("normalizer of the zero line".into()));
    }
    if within.is_zero() {
        return Ok(within.clone());
    }
    let mut cols: Vec<Vec<Rational>> = within
        .elements()
        .iter()
        .map(|w| alg.bracket(w, e).map(|z| z.coords))
        .collect::<Result<_>>()?;
    cols.push(e.neg().coords);
    let m = Matrix::from_columns(alg.dim(), &cols)?;
    let r = within.dim();
    let vecs: Vec<Vec<Rational>> = m.kernel().iter().map(|k| within.vector_from_coordinates(&k[..r])).collect();
    Subspace::from_vectors(alg.dim(), &vecs)
}

/// Span of all brackets `[a, b]` with `a` in `a_space` and `b` in `b_space`.
pub fn bracket_span(alg: &GradedAlgebra, a_space: &Subspace, b_space: &Subspace) -> Result<Subspace> {
    let mut vecs = Vec::new();
    let bs = b_space.elements();
    for a in a_space.elements() {
        for b in &bs {
            let z = alg.bracket(&a, b)?;
            if !z.is_zero() {
                vecs.push(z.coords);
            }
        }
    }
    Subspace::from_vectors(alg.dim(), &vecs)
}

/// Whether a subspace is closed under the bracket.
pub fn is_subalgebra(alg: &GradedAlgebra, s: &Subspace) -> Result<bool> {
    let e = s.elements();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if !s.contains(&alg.bracket(&e[i], &e[j])?.coords) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Derived algebra `[S, S]` of a subalgebra.
pub fn commutant(alg: &GradedAlgebra, s: &Subspace) -> Result<Subspace> {
    if !is_subalgebra(alg, s)? {
        return Err(Error::Precondition("commutant requested for a subspace that is not a subalgebra".into()));
    }
    bracket_span(alg, s, s)
}

/// Centre of a subalgebra.
pub fn center_of(alg: &GradedAlgebra, s: &Subspace) -> Result<Subspace> {
    centralizer_of_subspace(alg, s, s)
}

/// Matrix of `ad h` restricted to an `ad h`-invariant subspace, in the
/// subspace's echelon basis.
pub fn restricted_ad(alg: &GradedAlgebra, h: &Element, within: &Subspace) -> Result<Matrix<Rational>> {
    let r = within.dim();
    let mut m = Matrix::zeros(r, r);
    for (j, w) in within.elements().iter().enumerate() {
        let z = alg.bracket(h, w)?;
        let c = within
            .coordinates(&z.coords)
            .ok_or_else(|| Error::Precondition("subspace is not invariant under ad h".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

/// Outcome of a rational eigenspace decomposition.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Rational eigenvalues with eigenspaces, ascending.
    pub spaces: Vec<(Rational, Subspace)>,
    /// Factor of the minimal polynomial without rational roots (1 if none).
    pub leftover: Poly<Rational>,
    /// Whether the eigenspaces span the whole subspace.
    pub complete: bool,
}

/// Decompose an `ad h`-invariant subspace into rational eigenspaces.
pub fn eigen_decomposition(alg: &GradedAlgebra, h: &Element, within: &Subspace) -> Result<EigenDecomposition> {
    if within.is_zero() {
        return Ok(EigenDecomposition { spaces: Vec::new(), leftover: Poly::one(), complete: true });
    }
    let m = restricted_ad(alg, h, within)?;
    let mu = minimal_polynomial(&m);
    let roots = rational_roots(&mu);
    let mut leftover = mu.clone();
    let mut spaces = Vec::new();
    let mut total = 0;
    for lam in roots {
        let lin = Poly::new(vec![-lam.clone(), Rational::from_integer(1.into())]);
        while leftover.rem(&lin)?.is_zero() {
            leftover = leftover.div_rem(&lin)?.0;
        }
        let shifted = m.sub(&Matrix::identity(m.rows()).scale(&lam))?;
        let ker = shifted.kernel();
        let vecs: Vec<Vec<Rational>> = ker.iter().map(|k| within.vector_from_coordinates(k)).collect();
        let sp = Subspace::from_vectors(alg.dim(), &vecs)?;
        total += sp.dim();
        spaces.push((lam, sp));
    }
    Ok(EigenDecomposition { spaces, leftover, complete: total == within.dim() })
}

/// Eigenspaces of `ad h` on a subspace, failing unless `ad h` is
/// diagonalizable there with rational spectrum.
pub fn rational_eigenspaces(alg: &GradedAlgebra, h: &Element, within: &Subspace) -> Result<Vec<(Rational, Subspace)>> {
    let d = eigen_decomposition(alg, h, within)?;
    if !d.complete {
        return Err(Error::Precondition(format!(
            "ad h is not diagonalizable with rational spectrum (residual factor {:?})",
            d.leftover
        )));
    }
    Ok(d.spaces)
}

/// The eigenspace of `ad h` for eigenvalue `lambda` within a subspace.
pub fn eigenspace(alg: &GradedAlgebra, h: &Element, lambda: &Rational, within: &Subspace) -> Result<Subspace> {
    if within.is_zero() {
        return Ok(within.clone());
    }
    let cols: Vec<Vec<Rational>> = within
        .elements()
        .iter()
        .map(|w| {
            let z = alg.bracket(h, w)?;
            Ok(z.sub(&w.scale(lambda)).coords)
        })
        .collect::<Result<_>>()?;
    let m = Matrix::from_columns(alg.dim(), &cols)?;
    let vecs: Vec<Vec<Rational>> = m.kernel().iter().map(|k| within.vector_from_coordinates(k)).collect();
    Subspace::from_vectors(alg.dim(), &vecs)
}

/// Solve `[x, a] = b` for `a` in a subspace; returns the least-lexicographic
/// solution (in the subspace's echelon coordinates) or `None`.
pub fn solve_bracket(alg: &GradedAlgebra, x: &Element, b: &Element, within: &Subspace) -> Result<Option<Element>> {
    if within.is_zero() {
        return Ok(b.is_zero().then(|| Element::zero(alg.dim())));
    }
    let cols: Vec<Vec<Rational>> = within
        .elements()
        .iter()
        .map(|w| alg.bracket(x, w).map(|z| z.coords))
        .collect::<Result<_>>()?;
    let m = Matrix::from_columns(alg.dim(), &cols)?;
    Ok(m.solve(&b.coords)?.map(|c| Element::new(within.vector_from_coordinates(&c))))
}

/// True when every coordinate of the element lies in the subspace.
pub fn in_subspace(s: &Subspace, x: &Element) -> bool {
    s.contains(&x.coords)
}

/// Project coordinates onto the basis indices of a given degree.
pub fn degree_component(alg: &GradedAlgebra, x: &Element, k: i64) -> Element {
    let d = alg.reduce_degree(k);
    Element::new(
        x.coords
            .iter()
            .enumerate()
            .map(|(i, c)| if alg.degree(i) == d { c.clone() } else { Rational::zero() })
            .collect(),
    )
}
