//! Identification of k-vectors with degree-1 elements of the exterior
//! models of split e7 and e8, and the k-vector analyzer.

use super::combinatorics::indices;
use super::multivector::{poincare_dual, MultiVector};
use crate::catalog::exterior_models::exterior_index;
use crate::catalog::sl::SmallMatrix;
use crate::catalog::{build, SlBasis};
use crate::error::{check_dim, Error, Result};
use crate::jordan_sl2::{analyze_element, jmv_triple, ElementAnalysis};
use crate::lie::{Element, GradedAlgebra};
use crate::linalg::Matrix;
use crate::nilclass::{characteristic_fingerprint, genericity_matrix, slice, slice_commutant, Fingerprint};
use crate::scalar::{format_rational, Rational};
use crate::z2_orbits::{catalog_cartan_decomposition, z2_describe, MixedNormalForm};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// The two graded exterior models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExteriorModel {
    /// `e7 = sl(8) + L^4 R^8`.
    E7,
    /// `e8 = sl(9) + L^3 R^9 + L^3 (R^9)^*`.
    E8,
}

pub const SUPPORTED_MODELS: &str =
    "4-vectors and 4-forms on R^8 (e7-split-z2), 3-vectors on R^9 (e8-split-z3), 3-vectors and 3-forms on R^8 padded into R^9";

impl ExteriorModel {
    pub fn catalog_name(self) -> &'static str {
        match self {
            ExteriorModel::E7 => "e7-split-z2",
            ExteriorModel::E8 => "e8-split-z3",
        }
    }
    pub fn n(self) -> usize {
        match self {
            ExteriorModel::E7 => 8,
            ExteriorModel::E8 => 9,
        }
    }
    pub fn grade(self) -> usize {
        match self {
            ExteriorModel::E7 => 4,
            ExteriorModel::E8 => 3,
        }
    }
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "e7-split-z2" | "e7" => Ok(ExteriorModel::E7),
            "e8-split-z3" | "e8" => Ok(ExteriorModel::E8),
            _ => Err(Error::InvalidInput(format!("unknown exterior model {name:?}; supported: {SUPPORTED_MODELS}"))),
        }
    }
    /// Model whose degree-1 part is `L^k R^n`.
    pub fn for_shape(n: usize, k: usize) -> Result<Self> {
        match (n, k) {
            (8, 4) => Ok(ExteriorModel::E7),
            (9, 3) => Ok(ExteriorModel::E8),
            _ => Err(Error::Unsupported(format!("no exterior model for grade {k} on R^{n}; supported: {SUPPORTED_MODELS}"))),
        }
    }
    /// Model of a catalog algebra, checked against its labels.
    pub fn of_algebra(alg: &GradedAlgebra) -> Result<Self> {
        let m = ExteriorModel::from_name(alg.name())
            .map_err(|_| Error::InvalidInput(format!("{} is not an exterior model; supported: {SUPPORTED_MODELS}", alg.name())))?;
        let first: Vec<usize> = (0..m.grade()).collect();
        if exterior_index(alg, &first).is_none() {
            return Err(Error::InvalidInput(format!("{} lacks the exterior basis labels", alg.name())));
        }
        Ok(m)
    }
    pub fn build(self) -> Result<GradedAlgebra> {
        build(self.catalog_name())
    }
}

/// `w in L^k R^n` as a degree-1 element; the identity on coordinates.
pub fn to_lie_element(alg: &GradedAlgebra, w: &MultiVector) -> Result<Element> {
    let m = ExteriorModel::of_algebra(alg)?;
    if (w.n(), w.grade()) != (m.n(), m.grade()) {
        return Err(Error::InvalidInput(format!(
            "{} takes {}-vectors on R^{}, got a {}-vector on R^{}",
            alg.name(),
            m.grade(),
            m.n(),
            w.grade(),
            w.n()
        )));
    }
    let mut coords = vec![Rational::zero(); alg.dim()];
    for (idx, c) in w.terms() {
        let p = exterior_index(alg, &idx).ok_or_else(|| Error::Computation(format!("missing basis vector for {idx:?}")))?;
        coords[p] = c;
    }
    Ok(Element::new(coords))
}

/// Inverse of [`to_lie_element`]; `x` must lie in the `L^k R^n` part.
pub fn from_lie_element(alg: &GradedAlgebra, x: &Element) -> Result<MultiVector> {
    let m = ExteriorModel::of_algebra(alg)?;
    check_dim(alg.dim(), x.dim())?;
    let sub = super::combinatorics::SubsetIndex::new(m.n(), m.grade());
    let mut w = MultiVector::zero(m.n(), m.grade())?;
    let mut seen = 0usize;
    for &mask in sub.subsets() {
        let idx = indices(mask);
        let p = exterior_index(alg, &idx).expect("model labels");
        let c = &x.coords[p];
        if !c.is_zero() {
            w.add_term(&idx, c.clone())?;
            seen += 1;
        }
    }
    let nonzero = x.coords.iter().filter(|c| !c.is_zero()).count();
    if seen != nonzero {
        return Err(Error::InvalidInput(format!("element is not in the L^{} R^{} part of {}", m.grade(), m.n(), alg.name())));
    }
    Ok(w)
}

/// `iota(X)` for a traceless n x n matrix `X` in the `sl(n)` part.
pub fn iota(alg: &GradedAlgebra, x: &Matrix<Rational>) -> Result<Element> {
    let m = ExteriorModel::of_algebra(alg)?;
    if x.rows() != m.n() || x.cols() != m.n() {
        return Err(Error::DimensionMismatch { expected: m.n(), found: x.rows() });
    }
    let mut small = SmallMatrix::new();
    for i in 0..m.n() {
        for j in 0..m.n() {
            if !x.get(i, j).is_zero() {
                small.insert((i, j), x.get(i, j).clone());
            }
        }
    }
    let terms = SlBasis::new(m.n()).coords_of(&small)?;
    let mut coords = vec![Rational::zero(); alg.dim()];
    for (p, c) in terms {
        coords[p] += c;
    }
    Ok(Element::new(coords))
}

// ---------------------------------------------------------------------------
// Analyzer

#[derive(Clone, Debug, Default)]
pub struct KVectorOptions {
    /// The input holds the dual-basis coordinates of a k-form.
    pub dualize: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KVectorKind {
    Zero,
    Nilpotent,
    Semisimple,
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gauge {
    /// `w = scale * normalized`.
    pub scale: String,
    pub normalized: MultiVector,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentSummary {
    pub characteristic: Element,
    pub triple_verified: bool,
    /// `h` lies in the span of the diagonal Cartan basis.
    pub in_diagonal_cartan: bool,
    pub fingerprint: Fingerprint,
    pub slice_dims: BTreeMap<i64, usize>,
    /// `dim g_0(h/2)'`.
    pub m: usize,
    /// `dim g_1(h/2)`.
    pub n: usize,
    /// `[g_0(h/2)', w] = g_1(h/2)`.
    pub generic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KVectorReport {
    pub model: ExteriorModel,
    pub algebra: String,
    pub input: MultiVector,
    pub dualized: bool,
    /// The 3-vector was padded from R^8 into R^9.
    pub padded: bool,
    /// The multivector analysed in the model.
    pub embedded: MultiVector,
    pub kind: KVectorKind,
    pub analysis: ElementAnalysis,
    pub gauge: Option<Gauge>,
    pub nilpotent: Option<NilpotentSummary>,
    pub normal_form: Option<MixedNormalForm>,
    pub notes: Vec<String>,
}

/// Bring the input into a model: returns `(model, w, padded)`.
pub fn embed_kvector(w: &MultiVector, opts: &KVectorOptions) -> Result<(ExteriorModel, MultiVector, bool)> {
    match (w.n(), w.grade(), opts.dualize) {
        (8, 4, false) | (9, 3, false) => Ok((ExteriorModel::for_shape(w.n(), w.grade())?, w.clone(), false)),
        (8, 4, true) => Ok((ExteriorModel::E7, poincare_dual(w)?, false)),
        // R^8 and its dual are identified through the standard basis.
        (8, 3, _) => Ok((ExteriorModel::E8, w.pad(9)?, true)),
        (n, k, d) => Err(Error::Unsupported(format!(
            "no exterior model for a grade-{k} {} on R^{n}; supported: {SUPPORTED_MODELS}",
            if d { "form" } else { "vector" }
        ))),
    }
}

fn gauge(w: &MultiVector) -> Option<Gauge> {
    let (_, lead) = w.terms().into_iter().next()?;
    let scale = if w.grade() % 2 == 0 { lead.abs() } else { lead };
    let normalized = w.scale(&(Rational::from_integer(1.into()) / &scale));
    let note = if w.grade() % 2 == 0 {
        "GL(n) moves w to t w only for t > 0 by scalars; representative scaled to leading coefficient +1 or -1"
    } else {
        "GL(n) moves w to t w for every t != 0 by scalars; representative scaled to leading coefficient 1"
    };
    Some(Gauge { scale: format_rational(&scale), normalized, note: note.into() })
}

fn nilpotent_summary(alg: &GradedAlgebra, x: &Element) -> Result<NilpotentSummary> {
    let t = jmv_triple(alg, x)?;
    let h = t.triple.h.clone();
    let cartan = alg.extras().cartan_basis.clone().unwrap_or_default();
    let in_diagonal_cartan = h.coords.iter().enumerate().all(|(i, c)| c.is_zero() || cartan.contains(&i));
    let s = slice(alg, &h)?;
    let c = slice_commutant(alg, &s)?;
    let data = genericity_matrix(alg, &s, &c)?;
    Ok(NilpotentSummary {
        triple_verified: t.triple.relations_hold(alg)?,
        in_diagonal_cartan,
        fingerprint: characteristic_fingerprint(alg, &h)?,
        slice_dims: s.dims(),
        m: data.m(),
        n: data.n(),
        generic: data.is_generic(x)?,
        characteristic: h,
    })
}

/// Embed, then classify the element and summarise its orbit data.
pub fn analyze_kvector(w: &MultiVector, opts: &KVectorOptions) -> Result<KVectorReport> {
    let (model, embedded, padded) = embed_kvector(w, opts)?;
    let alg = model.build()?;
    analyze_kvector_in(&alg, w, opts, model, embedded, padded)
}

/// As [`analyze_kvector`] with a prebuilt model algebra.
pub fn analyze_kvector_with(alg: &GradedAlgebra, w: &MultiVector, opts: &KVectorOptions) -> Result<KVectorReport> {
    let (model, embedded, padded) = embed_kvector(w, opts)?;
    if ExteriorModel::of_algebra(alg)? != model {
        return Err(Error::InvalidInput(format!("input belongs to {}, not {}", model.catalog_name(), alg.name())));
    }
    analyze_kvector_in(alg, w, opts, model, embedded, padded)
}

fn analyze_kvector_in(
    alg: &GradedAlgebra,
    w: &MultiVector,
    opts: &KVectorOptions,
    model: ExteriorModel,
    embedded: MultiVector,
    padded: bool,
) -> Result<KVectorReport> {
    let x = to_lie_element(alg, &embedded)?;
    let analysis = analyze_element(alg, &x)?;
    let kind = if x.is_zero() {
        KVectorKind::Zero
    } else if analysis.nilpotent {
        KVectorKind::Nilpotent
    } else if analysis.semisimple {
        KVectorKind::Semisimple
    } else {
        KVectorKind::Mixed
    };
    let mut notes = Vec::new();
    if kind == KVectorKind::Zero {
        notes.push("zero orbit; trivially semisimple".into());
    }
    if padded {
        notes.push(
            "padded with e9: orbits under GL(8) and GL(9) differ, only the Jordan type and invariants of the padded vector are reported"
                .into(),
        );
    }
    if opts.dualize && !padded {
        notes.push("form mapped to a multivector by P_* with vol = e1 ^ .. ^ en".into());
    }
    let nilpotent = if kind == KVectorKind::Nilpotent { Some(nilpotent_summary(alg, &x)?) } else { None };
    let mut normal_form = None;
    if alg.modulus() == 2 && kind != KVectorKind::Zero {
        match catalog_cartan_decomposition(alg).and_then(|d| z2_describe(alg, &d, &x)) {
            Ok(desc) => {
                normal_form = desc.normal_form;
                if normal_form.is_none() {
                    notes.push("no normal form: semisimple part not in standard position".into());
                }
            }
            Err(e) => notes.push(format!("no normal form: {e}")),
        }
    }
    Ok(KVectorReport {
        model,
        algebra: alg.name().to_string(),
        input: w.clone(),
        dualized: opts.dualize,
        padded,
        gauge: gauge(&embedded),
        embedded,
        kind,
        analysis,
        nilpotent,
        normal_form,
        notes,
    })
}
