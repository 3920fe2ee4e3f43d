//! Slices through characteristics, supports, genericity matrices,
//! semialgebraic component analysis, centre cosets and the nilpotent orbit
//! pipeline.

use crate::error::{check_dim, Error, Result};
use crate::jordan_sl2::{ad_minimal_polynomial, is_nilpotent, is_semisimple, jmv_triple};
use crate::lie::ops::{bracket_span, centralizer_of_subspace, eigen_decomposition, eigenspace, normalizer_of_line};
use crate::lie::{CenterData, Element, GradedAlgebra, Subspace};
use crate::linalg::{
    certify_positive_on, mpoly_determinant, nilpotent_exp_apply, positive_components, rational_roots, MPoly, Matrix,
    Poly,
};
use crate::scalar::{format_rational, q, qi, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// Slices

/// Integer-graded subalgebra `g_k = {x in g_{k mod m} : [u, x] = k phi(u) x}`
/// for a family of commuting semisimple `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceDecomposition {
    /// The elements `u` defining the grading (the first is `h`).
    pub generators: Vec<Element>,
    /// `phi(u)` for each generator; `phi(h) = 2` gives the `ad(h/2)` slice.
    #[serde(serialize_with = "crate::scalar::ser_rationals")]
    pub character: Vec<Rational>,
    /// Integer degree to subspace; empty degrees are omitted.
    pub components: BTreeMap<i64, Subspace>,
}

impl SliceDecomposition {
    pub fn component(&self, k: i64) -> Subspace {
        let ambient = self.generators.first().map_or(0, Element::dim);
        self.components.get(&k).cloned().unwrap_or_else(|| Subspace::zero(ambient))
    }
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.components.iter().map(|(k, s)| (*k, s.dim())).collect()
    }
    pub fn total_dim(&self) -> usize {
        self.components.values().map(Subspace::dim).sum()
    }
}

fn check_degree_zero(alg: &GradedAlgebra, h: &Element) -> Result<()> {
    check_dim(alg.dim(), h.dim())?;
    if !h.is_zero() && alg.homogeneous_degree(h) != Some(0) {
        return Err(Error::Precondition("h must be homogeneous of degree 0".into()));
    }
    Ok(())
}

/// Slice `g(h/2)`: integer eigenvalues `k` of `ad(h/2)` on `g_{k mod m}`.
///
/// Rational non-integral eigenvalues are left out of the slice; an
/// irrational eigenvalue factor is an error.
pub fn slice(alg: &GradedAlgebra, h: &Element) -> Result<SliceDecomposition> {
    check_degree_zero(alg, h)?;
    if !is_semisimple(alg, h)? {
        return Err(Error::Precondition("h is not semisimple".into()));
    }
    let half = h.scale(&q(1, 2));
    let m = alg.modulus() as i64;
    let mut components = BTreeMap::new();
    let mut bad = Vec::new();
    for r in 0..m {
        let d = eigen_decomposition(alg, &half, &alg.degree_subspace(r))?;
        if d.leftover.degree().unwrap_or(0) > 0 {
            bad.push(d.leftover.to_literals().join(" "));
        }
        for (lam, sp) in d.spaces {
            if lam.is_integer() {
                let k = lam.to_integer().try_into().map_err(|_| Error::Computation("eigenvalue out of range".into()))?;
                if (k as i64).rem_euclid(m) == r {
                    components.insert(k, sp);
                }
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "ad(h/2) has eigenvalues outside Q; offending factors (ascending coefficients): {}",
            bad.join("; ")
        )));
    }
    let s = SliceDecomposition { generators: vec![h.clone()], character: vec![qi(2)], components };
    check_slice_additivity(alg, &s)?;
    Ok(s)
}

/// Refine a slice by further commuting elements `u` with `phi(u)`.
pub fn refine_slice(alg: &GradedAlgebra, s: &SliceDecomposition, extra: &[(Element, Rational)]) -> Result<SliceDecomposition> {
    let mut out = s.clone();
    for (u, phi) in extra {
        let mut comps = BTreeMap::new();
        for (k, sp) in &out.components {
            let lam = phi * Rational::from_integer((*k).into());
            let e = eigenspace(alg, u, &lam, sp)?;
            if !e.is_zero() {
                comps.insert(*k, e);
            }
        }
        out.components = comps;
        out.generators.push(u.clone());
        out.character.push(phi.clone());
    }
    check_slice_additivity(alg, &out)?;
    Ok(out)
}

fn check_slice_additivity(alg: &GradedAlgebra, s: &SliceDecomposition) -> Result<()> {
    let keys: Vec<i64> = s.components.keys().copied().collect();
    let elems: BTreeMap<i64, Vec<Element>> = s.components.iter().map(|(k, v)| (*k, v.elements())).collect();
    for (ai, a) in keys.iter().enumerate() {
        for b in &keys[ai..] {
            let target = s.component(a + b);
            for x in &elems[a] {
                for y in &elems[b] {
                    let z = alg.bracket(x, y)?;
                    if !z.is_zero() && !target.contains_element(&z) {
                        return Err(Error::Computation(format!("slice bracket of degrees {a} and {b} leaves degree {}", a + b)));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Commutant `[S, S]` of a slice with its induced integer grading.
pub fn slice_commutant(alg: &GradedAlgebra, s: &SliceDecomposition) -> Result<SliceDecomposition> {
    let n = alg.dim();
    let keys: Vec<i64> = s.components.keys().copied().collect();
    let mut pieces: BTreeMap<i64, Vec<Vec<Rational>>> = BTreeMap::new();
    for (ai, a) in keys.iter().enumerate() {
        for b in &keys[ai..] {
            let span = bracket_span(alg, &s.components[a], &s.components[b])?;
            pieces.entry(a + b).or_default().extend(span.basis().iter().cloned());
        }
    }
    let mut components = BTreeMap::new();
    for (k, vecs) in pieces {
        let sp = Subspace::from_vectors(n, &vecs)?;
        if !sp.is_zero() {
            components.insert(k, sp);
        }
    }
    Ok(SliceDecomposition { generators: s.generators.clone(), character: s.character.clone(), components })
}

/// Whether `S'_1 = S_1` and `[S'_0, S_1] = S_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SliceIdentities {
    pub g1: bool,
    pub g01: bool,
}

pub fn slice_identities(alg: &GradedAlgebra, s: &SliceDecomposition, c: &SliceDecomposition) -> Result<SliceIdentities> {
    let s1 = s.component(1);
    let g1 = c.component(1) == s1;
    let g01 = bracket_span(alg, &c.component(0), &s1)? == s1;
    Ok(SliceIdentities { g1, g01 })
}

// ---------------------------------------------------------------------------
// Supports

#[derive(Clone, Debug, Serialize)]
pub struct SupportData {
    pub characteristic: Element,
    /// Basis of the Cartan subspace found inside `N_{g_0}(e)`, starting with `h`.
    pub cartan_subspace: Vec<Element>,
    /// `phi(u)` with `[u, e] = phi(u) e` for each basis vector.
    #[serde(serialize_with = "crate::scalar::ser_rationals")]
    pub character: Vec<Rational>,
    pub graded: SliceDecomposition,
    pub support: SliceDecomposition,
    pub locally_flat: bool,
    /// True when no element of `N_{g_0}(e)` outside the subspace commutes
    /// with it, which certifies maximality.
    pub maximality_verified: bool,
}

/// `ad u` is diagonalizable with rational eigenvalues.
fn is_rationally_diagonalizable(alg: &GradedAlgebra, u: &Element) -> Result<bool> {
    let mu = ad_minimal_polynomial(alg, u)?;
    let roots = rational_roots(&mu);
    let lin = roots.iter().fold(Poly::one(), |acc, r| acc.mul(&Poly::new(vec![-r.clone(), Rational::one()])));
    Ok(lin == mu)
}

fn proportionality(alg: &GradedAlgebra, u: &Element, e: &Element) -> Result<Rational> {
    let z = alg.bracket(u, e)?;
    let p = e.support()[0];
    let phi = &z.coords[p] / &e.coords[p];
    if z != e.scale(&phi) {
        return Err(Error::Computation("[u, e] is not proportional to e for a normalizer element".into()));
    }
    Ok(phi)
}

/// Support of a nilpotent `e` of degree 1.
pub fn support(alg: &GradedAlgebra, e: &Element) -> Result<SupportData> {
    let h = jmv_triple(alg, e)?.triple.h;
    let n = alg.dim();
    let normalizer = normalizer_of_line(alg, e, &alg.degree_subspace(0))?;
    let mut basis = vec![h.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    loop {
        let span = Subspace::from_elements(n, &basis)?;
        let z = centralizer_of_subspace(alg, &span, &normalizer)?;
        let zb = z.elements();
        let mut candidates: Vec<Element> = zb.clone();
        for _ in 0..16 {
            if zb.is_empty() {
                break;
            }
            let terms: Vec<(Rational, &Element)> = zb.iter().map(|b| (qi(rng.gen_range(-2..=2)), b)).collect();
            candidates.push(Element::combination(n, &terms));
        }
        let mut grew = false;
        for c in candidates {
            if c.is_zero() || span.contains_element(&c) {
                continue;
            }
            if is_rationally_diagonalizable(alg, &c)? {
                basis.push(c);
                grew = true;
                break;
            }
        }
        if !grew {
            break;
        }
    }
    let span = Subspace::from_elements(n, &basis)?;
    let maximality_verified = centralizer_of_subspace(alg, &span, &normalizer)? == span;
    let character = basis.iter().map(|u| proportionality(alg, u, e)).collect::<Result<Vec<_>>>()?;
    let base = slice(alg, &h)?;
    let extra: Vec<(Element, Rational)> = basis[1..].iter().cloned().zip(character[1..].iter().cloned()).collect();
    let graded = refine_slice(alg, &base, &extra)?;
    let support = slice_commutant(alg, &graded)?;
    let locally_flat = support.component(0).dim() == support.component(1).dim();
    Ok(SupportData { characteristic: h, cartan_subspace: basis, character, graded, support, locally_flat, maximality_verified })
}

// ---------------------------------------------------------------------------
// Genericity

/// `b_ik(a) = sum_j a_j c_ij^k` with `[f_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Clone, Debug, Serialize)]
pub struct GenericityData {
    /// Basis `f_1..f_m` of `g_0(h/2)'`.
    pub f_basis: Vec<Element>,
    /// Basis `e_1..e_n` of `g_1(h/2)`.
    pub e_space: Subspace,
    #[serde(skip)]
    tensor: Vec<Vec<Vec<Rational>>>,
    /// The minors `P_l`, when enumerated.
    #[serde(skip)]
    pub minors: Option<Vec<MPoly>>,
    /// Why the minors were not enumerated.
    pub minors_omitted: Option<String>,
}

/// Largest number of minors enumerated symbolically.
pub const MAX_SYMBOLIC_MINORS: usize = 4096;

fn binomial(m: usize, n: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..n.min(m - n) {
        acc = acc.checked_mul(m - i)? / (i + 1);
    }
    Some(acc)
}

fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < n - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, n, &mut Vec::new(), &mut out);
    out
}

impl GenericityData {
    pub fn m(&self) -> usize {
        self.f_basis.len()
    }
    pub fn n(&self) -> usize {
        self.e_space.dim()
    }
    /// Coordinates of an element of `g_1(h/2)` in the `e` basis.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Rational>> {
        self.e_space.coordinates(&x.coords)
    }
    pub fn element(&self, a: &[Rational]) -> Element {
        Element::new(self.e_space.vector_from_coordinates(a))
    }
    /// Numeric `m x n` matrix `b(a)`.
    pub fn b_matrix(&self, a: &[Rational]) -> Matrix<Rational> {
        let (m, n) = (self.m(), self.n());
        Matrix::from_fn(m, n, |i, k| {
            let mut acc = Rational::zero();
            for (j, aj) in a.iter().enumerate() {
                if !aj.is_zero() {
                    acc += aj * &self.tensor[i][j][k];
                }
            }
            acc
        })
    }
    /// Symbolic `b` with entries linear in `a_1..a_n`.
    pub fn b_symbolic(&self) -> Vec<Vec<MPoly>> {
        let (m, n) = (self.m(), self.n());
        (0..m)
            .map(|i| (0..n).map(|k| MPoly::linear(&(0..n).map(|j| self.tensor[i][j][k].clone()).collect::<Vec<_>>())).collect())
            .collect()
    }
    pub fn rank_at(&self, a: &[Rational]) -> usize {
        self.b_matrix(a).rank()
    }
    /// `det(b^T b)`, which equals `sum_l P_l^2` by Cauchy-Binet.
    pub fn gram_value(&self, a: &[Rational]) -> Rational {
        let b = self.b_matrix(a);
        let g = b.transpose().mul(&b).expect("conformable");
        g.determinant().expect("square")
    }
    /// `rank b(x) = n` for `x` in `g_1(h/2)`.
    pub fn is_generic(&self, x: &Element) -> Result<bool> {
        let a = self.coordinates(x).ok_or_else(|| Error::Precondition("element is not in g_1(h/2)".into()))?;
        Ok(self.n() > 0 && self.rank_at(&a) == self.n())
    }
}

/// Genericity data of a slice and its commutant.
pub fn genericity_matrix(alg: &GradedAlgebra, s: &SliceDecomposition, c: &SliceDecomposition) -> Result<GenericityData> {
    let f_basis = c.component(0).elements();
    let e_space = s.component(1);
    let es = e_space.elements();
    let (m, n) = (f_basis.len(), es.len());
    if m < n {
        return Err(Error::Precondition("slice violates m >= n; not a characteristic slice".into()));
    }
    let mut tensor = vec![vec![vec![Rational::zero(); n]; n]; m];
    for (i, f) in f_basis.iter().enumerate() {
        for (j, e) in es.iter().enumerate() {
            let z = alg.bracket(f, e)?;
            let coords = e_space
                .coordinates(&z.coords)
                .ok_or_else(|| Error::Computation("[g_0(h/2)', g_1(h/2)] leaves g_1(h/2)".into()))?;
            tensor[i][j] = coords;
        }
    }
    let mut data = GenericityData { f_basis, e_space, tensor, minors: None, minors_omitted: None };
    match binomial(m, n) {
        Some(count) if count <= MAX_SYMBOLIC_MINORS && n <= 12 => {
            let b = data.b_symbolic();
            let minors = subsets(m, n)
                .par_iter()
                .map(|rows| {
                    let sub: Vec<Vec<MPoly>> = rows.iter().map(|&r| b[r].clone()).collect();
                    mpoly_determinant(&sub, n)
                })
                .collect();
            data.minors = Some(minors);
        }
        _ => {
            data.minors_omitted = Some(format!(
                "binomial({m}, {n}) minors exceed the symbolic limit {MAX_SYMBOLIC_MINORS}; sum of squares evaluated as det(b^T b)"
            ));
        }
    }
    Ok(data)
}

// ---------------------------------------------------------------------------
// Semialgebraic components

/// `{a in R^n : q(a) > 0}` with `q = sum_l P_l^2`.
#[derive(Clone, Debug)]
pub enum SemialgebraicSet {
    Minors { n: usize, polys: Vec<MPoly> },
    Gram(Box<GenericityData>),
}

impl SemialgebraicSet {
    pub fn from_minors(polys: Vec<MPoly>) -> Result<Self> {
        let n = polys.first().map(MPoly::nvars).ok_or_else(|| Error::InvalidInput("no polynomials given".into()))?;
        if polys.iter().any(|p| p.nvars() != n) {
            return Err(Error::InvalidInput("polynomials use different variable counts".into()));
        }
        Ok(SemialgebraicSet::Minors { n, polys })
    }
    pub fn dim(&self) -> usize {
        match self {
            SemialgebraicSet::Minors { n, .. } => *n,
            SemialgebraicSet::Gram(g) => g.n(),
        }
    }
    pub fn value(&self, a: &[Rational]) -> Rational {
        match self {
            SemialgebraicSet::Minors { polys, .. } => polys.iter().map(|p| {
                let v = p.eval(a);
                &v * &v
            }).fold(Rational::zero(), |x, y| x + y),
            SemialgebraicSet::Gram(g) => g.gram_value(a),
        }
    }
    fn degree_bound(&self) -> usize {
        match self {
            SemialgebraicSet::Minors { polys, .. } => 2 * polys.iter().map(|p| p.total_degree() as usize).max().unwrap_or(0),
            SemialgebraicSet::Gram(g) => 2 * g.n(),
        }
    }
    /// `q(a + t (b - a))` as a polynomial in `t`, by exact interpolation.
    pub fn restrict_to_line(&self, a: &[Rational], b: &[Rational]) -> Poly<Rational> {
        let d = self.degree_bound();
        let ts: Vec<Rational> = (0..=d).map(|t| qi(t as i64)).collect();
        let ys: Vec<Rational> = ts
            .iter()
            .map(|t| {
                let p: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
                self.value(&p)
            })
            .collect();
        Poly::interpolate(&ts, &ys).expect("distinct nodes")
    }
    /// Certified: `q > 0` on the closed segment from `a` to `b`.
    pub fn segment_positive(&self, a: &[Rational], b: &[Rational]) -> bool {
        certify_positive_on(&self.restrict_to_line(a, b), &Rational::zero(), &Rational::one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

/// A connectivity proof between two sample points, or an interval
/// certificate in exact mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: String,
    pub from: usize,
    pub to: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub mode: Mode,
    pub class_count: usize,
    /// One point per class in slice coordinates.
    pub representatives: Vec<Element>,
    /// Sample points (heuristic mode) in slice coordinates.
    pub points: Vec<Element>,
    pub class_of_point: Vec<usize>,
    pub certificates: Vec<Certificate>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ComponentOptions {
    pub seed: u64,
    pub samples: usize,
    /// Coordinates are drawn from `[-box_radius, box_radius]`.
    pub box_radius: u32,
    /// Linear maps of the slice coordinates preserving components.
    pub orbit_moves: Vec<Matrix<Rational>>,
}

impl Default for ComponentOptions {
    fn default() -> Self {
        ComponentOptions { seed: 0, samples: 96, box_radius: 3, orbit_moves: Vec::new() }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }
    /// Union keeping the smaller root; true when the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

fn norm_sq(a: &[Rational]) -> Rational {
    a.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

/// Component analysis of `{q > 0}`: exact for one variable, certified
/// segment sampling otherwise.
pub fn component_analysis(set: &SemialgebraicSet, opts: &ComponentOptions) -> Result<ComponentReport> {
    let n = set.dim();
    if n == 0 {
        return Err(Error::Precondition("g_1(h/2) is zero".into()));
    }
    if n == 1 {
        return exact_components(set);
    }
    heuristic_components(set, opts)
}

fn exact_components(set: &SemialgebraicSet) -> Result<ComponentReport> {
    let p = set.restrict_to_line(&[Rational::zero()], &[Rational::one()]);
    let comps = positive_components(&p);
    if comps.is_empty() {
        return Err(Error::Computation("set appears empty; check genericity data".into()));
    }
    let mut certificates = Vec::new();
    let mut representatives = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let lo = c.lower.as_ref().map_or("-inf".to_string(), |r| r.describe());
        let hi = c.upper.as_ref().map_or("+inf".to_string(), |r| r.describe());
        certificates.push(Certificate {
            kind: "sturm-interval".into(),
            from: i,
            to: i,
            detail: format!("q = {:?} > 0 on ({lo}, {hi})", p),
        });
        representatives.push(Element::new(vec![c.sample.clone()]));
    }
    Ok(ComponentReport {
        mode: Mode::Exact,
        class_count: comps.len(),
        points: representatives.clone(),
        class_of_point: (0..comps.len()).collect(),
        representatives,
        certificates,
        caveats: Vec::new(),
    })
}

fn heuristic_components(set: &SemialgebraicSet, opts: &ComponentOptions) -> Result<ComponentReport> {
    let n = set.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points: Vec<Vec<Rational>> = Vec::new();
    for level in 1..=6u32 {
        let den = 1i64 << level;
        let r = opts.box_radius as i64 * den;
        let draws: Vec<Vec<Rational>> =
            (0..opts.samples).map(|_| (0..n).map(|_| q(rng.gen_range(-r..=r), den)).collect()).collect();
        let keep: Vec<bool> = draws.par_iter().map(|a| set.value(a).is_positive()).collect();
        let mut seen = BTreeSet::new();
        for (a, k) in draws.into_iter().zip(keep) {
            if k && seen.insert(a.clone()) {
                points.push(a);
            }
        }
        if !points.is_empty() {
            break;
        }
    }
    if points.is_empty() {
        return Err(Error::Computation("set appears empty; check genericity data".into()));
    }
    let mut certificates = Vec::new();
    let base = points.len();
    let mut move_links = Vec::new();
    for i in 0..base {
        for (k, mv) in opts.orbit_moves.iter().enumerate() {
            let img = mv.mul_vec(&points[i])?;
            if !set.value(&img).is_positive() {
                return Err(Error::Computation("orbit move left the generic set".into()));
            }
            points.push(img);
            move_links.push((i, points.len() - 1, k));
        }
    }
    let total = points.len();
    let pairs: Vec<(usize, usize)> = (0..total).flat_map(|i| (i + 1..total).map(move |j| (i, j))).collect();
    let linked: Vec<bool> = pairs.par_iter().map(|&(i, j)| set.segment_positive(&points[i], &points[j])).collect();
    let mut uf = UnionFind::new(total);
    for (i, j, k) in move_links {
        if uf.union(i, j) {
            certificates.push(Certificate { kind: "orbit-move".into(), from: i, to: j, detail: format!("move {k}") });
        }
    }
    for ((i, j), ok) in pairs.into_iter().zip(linked) {
        if ok && uf.union(i, j) {
            certificates.push(Certificate {
                kind: "segment".into(),
                from: i,
                to: j,
                detail: "Sturm count of q on [0,1] is zero and q(0) > 0".into(),
            });
        }
    }
    let mut class_ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut class_of_point = Vec::with_capacity(total);
    for i in 0..total {
        let r = uf.find(i);
        let next = class_ids.len();
        class_of_point.push(*class_ids.entry(r).or_insert(next));
    }
    let count = class_ids.len();
    let mut best: Vec<Option<usize>> = vec![None; count];
    for i in 0..total {
        let c = class_of_point[i];
        let better = match best[c] {
            None => true,
            Some(b) => norm_sq(&points[i]) < norm_sq(&points[b]),
        };
        if better {
            best[c] = Some(i);
        }
    }
    let representatives = best.into_iter().map(|b| Element::new(points[b.unwrap()].clone())).collect();
    Ok(ComponentReport {
        mode: Mode::Heuristic,
        class_count: count,
        representatives,
        points: points.into_iter().map(Element::new).collect(),
        class_of_point,
        certificates,
        caveats: vec!["class_count is an upper bound on component count".into()],
    })
}

// ---------------------------------------------------------------------------
// Centre cosets

#[derive(Clone, Debug, Serialize)]
pub struct OrbitClass {
    /// Component classes forming this orbit.
    pub components: Vec<usize>,
    /// Representative in slice coordinates.
    pub representative: Element,
    /// `(generator, from component, to component)` moves found.
    pub coset_moves: Vec<(String, usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub orbit_count: usize,
    pub orbits: Vec<OrbitClass>,
    pub generators_checked: Vec<String>,
}

/// Whether a rational matrix is a Lie algebra automorphism.
pub fn is_automorphism(alg: &GradedAlgebra, a: &crate::linalg::SparseMatrix<Rational>) -> Result<bool> {
    let n = alg.dim();
    if a.rows() != n || a.cols() != n {
        return Ok(false);
    }
    let images: Vec<Element> = (0..n).map(|j| Ok(Element::new(a.mul_vec(&Element::basis(n, j).coords)?))).collect::<Result<_>>()?;
    let bad = alg.nonzero_pairs().into_par_iter().chain((0..n).into_par_iter().flat_map(|i| (i + 1..n).into_par_iter().map(move |j| (i, j)))).find_any(|&(i, j)| {
        let lhs = alg.bracket(&images[i], &images[j]).expect("dims");
        let rhs = Element::new(a.mul_vec(&alg.bracket(&Element::basis(n, i), &Element::basis(n, j)).expect("dims").coords).expect("dims"));
        lhs != rhs
    });
    if bad.is_some() {
        return Ok(false);
    }
    Ok(crate::linalg::Matrix::rank(&a.to_dense()) == n)
}

/// Component class of a point of the set, found by a certified segment to
/// a sample point.
pub fn class_containing(set: &SemialgebraicSet, report: &ComponentReport, x: &[Rational]) -> Option<usize> {
    (0..report.points.len())
        .find(|&i| set.segment_positive(&report.points[i].coords, x))
        .map(|i| report.class_of_point[i])
}

/// Merge component classes related by centre elements.
pub fn center_cosets(
    alg: &GradedAlgebra,
    data: &GenericityData,
    set: &SemialgebraicSet,
    report: &ComponentReport,
    center: &CenterData,
) -> Result<CenterReport> {
    let k = report.class_count;
    let mut uf = UnionFind::new(k);
    let mut moves = Vec::new();
    let mut checked = Vec::new();
    for g in &center.generators {
        if !is_automorphism(alg, &g.action)? {
            return Err(Error::InvalidInput(format!("centre generator {} is not an automorphism", g.label)));
        }
        checked.push(g.label.clone());
        for (c, rep) in report.representatives.iter().enumerate() {
            let x = data.element(&rep.coords);
            let img = Element::new(g.action.mul_vec(&x.coords)?);
            let a = data
                .coordinates(&img)
                .ok_or_else(|| Error::Computation(format!("centre generator {} does not preserve g_1(h/2)", g.label)))?;
            if let Some(d) = class_containing(set, report, &a) {
                if d != c {
                    moves.push((g.label.clone(), c, d));
                }
                uf.union(c, d);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..k {
        let r = uf.find(c);
        groups.entry(r).or_default().push(c);
    }
    let orbits: Vec<OrbitClass> = groups
        .into_values()
        .map(|comps| {
            let first = comps[0];
            OrbitClass {
                representative: report.representatives[first].clone(),
                coset_moves: moves.iter().filter(|m| comps.contains(&m.1)).cloned().collect(),
                components: comps,
            }
        })
        .collect();
    Ok(CenterReport { orbit_count: orbits.len(), orbits, generators_checked: checked })
}

// ---------------------------------------------------------------------------
// Fingerprints

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSpectrum {
    pub degree: u32,
    /// `(eigenvalue of ad h, multiplicity)` ascending.
    pub eigenvalues: Vec<(String, usize)>,
    /// Factor of the minimal polynomial without rational roots.
    pub irrational_factor: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub spectra: Vec<DegreeSpectrum>,
    pub slice_dims: BTreeMap<i64, usize>,
}

pub fn characteristic_fingerprint(alg: &GradedAlgebra, h: &Element) -> Result<Fingerprint> {
    check_degree_zero(alg, h)?;
    let mut spectra = Vec::new();
    for r in 0..alg.modulus() {
        let d = eigen_decomposition(alg, h, &alg.degree_subspace(r as i64))?;
        spectra.push(DegreeSpectrum {
            degree: r,
            eigenvalues: d.spaces.iter().map(|(l, s)| (format_rational(l), s.dim())).collect(),
            irrational_factor: if d.leftover.degree().unwrap_or(0) > 0 { d.leftover.to_literals() } else { Vec::new() },
        });
    }
    let slice_dims = slice(alg, h)?.dims();
    Ok(Fingerprint { spectra, slice_dims })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distinctness {
    Distinct,
    PossiblyConjugate,
}

pub fn characteristics_distinct(alg: &GradedAlgebra, h1: &Element, h2: &Element) -> Result<Distinctness> {
    Ok(if characteristic_fingerprint(alg, h1)? == characteristic_fingerprint(alg, h2)? {
        Distinctness::PossiblyConjugate
    } else {
        Distinctness::Distinct
    })
}

// ---------------------------------------------------------------------------
// Pipeline

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub nilpotent: bool,
    pub generic: bool,
    pub triple_exact: bool,
    pub fingerprint_matches: bool,
}

impl Verification {
    pub fn all(&self) -> bool {
        self.nilpotent && self.generic && self.triple_exact && self.fingerprint_matches
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub representative: Element,
    pub components: Vec<usize>,
    pub verified: Verification,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericitySummary {
    pub m: usize,
    pub n: usize,
    pub minors: Option<Vec<String>>,
    pub minors_omitted: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilOrbitReport {
    pub algebra: String,
    pub mode: Mode,
    pub orbit_count: usize,
    pub component_count: usize,
    pub orbits: Vec<OrbitEntry>,
    pub slice_dims: BTreeMap<i64, usize>,
    pub identities: SliceIdentities,
    pub genericity: GenericitySummary,
    pub caveats: Vec<String>,
}

/// Exponentials of random ad-nilpotent elements of `g_0(h/2)'`, restricted
/// to `g_1(h/2)` in slice coordinates.
pub fn orbit_move_matrices(alg: &GradedAlgebra, data: &GenericityData, count: usize, seed: u64) -> Result<Vec<Matrix<Rational>>> {
    let mut nil: Vec<Element> = Vec::new();
    for f in &data.f_basis {
        if is_nilpotent(alg, f)? {
            nil.push(f.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let es = data.e_space.elements();
    let mut out = Vec::new();
    if nil.is_empty() {
        return Ok(out);
    }
    for _ in 0..count {
        let z = nil[rng.gen_range(0..nil.len())].scale(&q(rng.gen_range(-4..=4), 2));
        let ad = alg.ad_matrix(&z)?;
        let cols: Vec<Vec<Rational>> = es
            .iter()
            .map(|e| {
                let img = nilpotent_exp_apply(&ad, &e.coords)?;
                data.e_space.coordinates(&img).ok_or_else(|| Error::Computation("orbit move leaves g_1(h/2)".into()))
            })
            .collect::<Result<_>>()?;
        out.push(Matrix::from_columns(es.len(), &cols)?);
    }
    Ok(out)
}

/// Slice, commutant, genericity, components and centre cosets for the
/// degree-1 nilpotent orbits with characteristic `h`.
pub fn classify_nilpotent_orbits(alg: &GradedAlgebra, h: &Element, opts: &ComponentOptions) -> Result<NilOrbitReport> {
    let s = slice(alg, h)?;
    let c = slice_commutant(alg, &s)?;
    let identities = slice_identities(alg, &s, &c)?;
    if !identities.g1 || !identities.g01 {
        return Err(Error::Precondition(format!(
            "h is not a characteristic: commutant identities fail (g1: {}, g01: {})",
            identities.g1, identities.g01
        )));
    }
    let data = genericity_matrix(alg, &s, &c)?;
    let mut options = opts.clone();
    if options.orbit_moves.is_empty() && data.n() > 1 {
        options.orbit_moves = orbit_move_matrices(alg, &data, 3, opts.seed)?;
    }
    let set = SemialgebraicSet::Gram(Box::new(data.clone()));
    let comps = component_analysis(&set, &options)?;
    let center = center_cosets(alg, &data, &set, &comps, &alg.extras().center)?;
    let target = characteristic_fingerprint(alg, h)?;
    let mut orbits = Vec::new();
    for o in &center.orbits {
        let x = data.element(&o.representative.coords);
        let triple = jmv_triple(alg, &x);
        let (triple_exact, fingerprint_matches) = match &triple {
            Ok(t) => (t.triple.relations_hold(alg)?, characteristic_fingerprint(alg, &t.triple.h)? == target),
            Err(_) => (false, false),
        };
        let verified = Verification { nilpotent: is_nilpotent(alg, &x)?, generic: data.is_generic(&x)?, triple_exact, fingerprint_matches };
        let certificates = comps
            .certificates
            .iter()
            .filter(|cert| {
                let cls = if comps.mode == Mode::Exact { cert.from } else { comps.class_of_point[cert.from] };
                o.components.contains(&cls)
            })
            .cloned()
            .collect();
        orbits.push(OrbitEntry { representative: x, components: o.components.clone(), verified, certificates });
    }
    let mut caveats = comps.caveats.clone();
    if center.generators_checked.is_empty() {
        caveats.push("centre of G_0 is trivial".into());
    }
    Ok(NilOrbitReport {
        algebra: alg.name().to_string(),
        mode: comps.mode,
        orbit_count: orbits.len(),
        component_count: comps.class_count,
        orbits,
        slice_dims: s.dims(),
        identities,
        genericity: GenericitySummary {
            m: data.m(),
            n: data.n(),
            minors: data.minors.as_ref().map(|v| v.iter().map(MPoly::to_text).collect()),
            minors_omitted: data.minors_omitted.clone(),
        },
        caveats,
    })
}
