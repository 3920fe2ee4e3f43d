//! Split e7 and e8 as graded exterior models:
//! `e7 = sl(8) + L^4 R^8` (Z/2-graded) and
//! `e8 = sl(9) + L^3 R^9 + L^3 (R^9)^*` (Z/3-graded).

use crate::catalog::sl::{sl_brackets, sl_compact_involution, SlBasis, SmallMatrix};
use crate::error::{Error, Result};
use crate::exterior::combinatorics::{complement, elementary_action, wedge_sign, SubsetIndex};
use crate::lie::axioms::jacobiator;
use crate::lie::{BracketTerms, CatalogExtras, CenterData, GradedAlgebra};
use crate::linalg::SparseMatrix;
use crate::scalar::{qi, Rational};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Coordinates of `X . e_I` in the subset basis, for `X` an n x n matrix.
pub fn act_on_subset(x: &SmallMatrix, mask: u32, sub: &SubsetIndex) -> BTreeMap<usize, Rational> {
    let mut out = BTreeMap::new();
    for ((a, b), v) in x {
        if let Some((s, m2)) = elementary_action(*a, *b, mask) {
            let p = sub.position(m2).expect("same grade");
            *out.entry(p).or_insert_with(Rational::zero) += v * qi(s);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Traceless part of the matrix `M` with `M_ba = f(a, b)`, so that
/// `tr(E_ab M) = f(a, b)`.
fn trace_dual(n: usize, f: impl Fn(usize, usize) -> i64) -> SmallMatrix {
    let mut m = SmallMatrix::new();
    let mut tr = Rational::zero();
    for a in 0..n {
        for b in 0..n {
            let v = f(a, b);
            if v != 0 {
                m.insert((b, a), qi(v));
                if a == b {
                    tr += qi(v);
                }
            }
        }
    }
    if !tr.is_zero() {
        let shift = tr / qi(n as i64);
        for i in 0..n {
            *m.entry((i, i)).or_insert_with(Rational::zero) -= &shift;
        }
    }
    m.retain(|_, v| !v.is_zero());
    m
}

fn shift_terms(t: BTreeMap<usize, Rational>, off: usize, scale: &Rational) -> BracketTerms {
    t.into_iter().map(|(k, v)| (k + off, v * scale)).collect()
}

/// Killing form of two basis vectors, `tr(ad b_i ad b_j)`.
pub fn killing_of_basis(alg: &GradedAlgebra, i: usize, j: usize) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..alg.dim() {
        for (l, c) in alg.bracket_basis(j, k) {
            for (k2, d) in alg.bracket_basis(i, *l) {
                if *k2 == k {
                    acc += c * d;
                }
            }
        }
    }
    acc
}

fn sl_weights(sl: &SlBasis) -> Vec<Option<Vec<i64>>> {
    (0..sl.dim()).map(|k| sl.weight(k)).collect()
}

fn subset_weight(n: usize, mask: u32, sign: i64) -> Vec<i64> {
    (0..n).map(|i| if mask & (1 << i) != 0 { sign } else { 0 }).collect()
}

/// The Z/2-graded split e7 with `g_0 = sl(8)` and `g_1 = L^4 R^8`.
pub fn build_e7_split_z2() -> Result<GradedAlgebra> {
    let n = 8;
    let sl = SlBasis::new(n);
    let d0 = sl.dim();
    let sub = SubsetIndex::new(n, 4);
    let dim = d0 + sub.len();
    let mut brackets = sl_brackets(&sl)?;
    let one = qi(1);
    for x in 0..d0 {
        let mx = sl.matrix_of(x);
        for p in 0..sub.len() {
            let t = act_on_subset(&mx, sub.subset(p), &sub);
            if !t.is_empty() {
                brackets.push((x, d0 + p, shift_terms(t, d0, &one)));
            }
        }
    }
    // [e_I, e_J] is dual under the trace form to X -> vol-coefficient of (X e_I) ^ e_J.
    for p in 0..sub.len() {
        let i_set = sub.subset(p);
        for q in p + 1..sub.len() {
            let j_set = sub.subset(q);
            let m = trace_dual(n, |a, b| match elementary_action(a, b, i_set) {
                Some((s, m2)) => wedge_sign(m2, j_set).map_or(0, |t| s * t),
                None => 0,
            });
            if !m.is_empty() {
                brackets.push((d0 + p, d0 + q, sl.coords_of(&m)?));
            }
        }
    }
    let mut labels = sl.labels();
    labels.extend((0..sub.len()).map(|p| sub.label(p, "e")));
    let mut degrees = vec![0; d0];
    degrees.extend(std::iter::repeat(1).take(sub.len()));
    let mut alg = GradedAlgebra::new("e7-split-z2", 2, labels, degrees, brackets)?;

    // Cartan involution: -X^T on sl(8), e_I -> s * sign(I, I^c) e_{I^c} on L^4.
    let star = |s: i64| -> SparseMatrix<Rational> {
        let base = sl_compact_involution(&sl);
        let mut cols: Vec<Vec<(usize, Rational)>> = (0..d0).map(|j| sparse_column(&base, j)).collect();
        for p in 0..sub.len() {
            let i_set = sub.subset(p);
            let c = complement(n, i_set);
            let sign = wedge_sign(i_set, c).expect("disjoint");
            cols.push(vec![(d0 + sub.position(c).unwrap(), qi(s * sign))]);
        }
        SparseMatrix::from_sparse_columns(dim, &cols)
    };
    let probe = d0;
    let partner = d0 + sub.position(complement(n, sub.subset(0))).unwrap();
    let sign0 = wedge_sign(sub.subset(0), complement(n, sub.subset(0))).unwrap();
    let pairing = killing_of_basis(&alg, probe, partner) * qi(sign0);
    if pairing.is_zero() {
        return Err(Error::Computation("e7 model: degenerate Killing pairing on L^4".into()));
    }
    // Choose s so that B(x, theta x) < 0 on g_1.
    let s = if pairing.is_positive() { -1 } else { 1 };
    let mut weights = sl_weights(&sl);
    weights.extend(sub.subsets().iter().map(|m| Some(subset_weight(n, *m, 1))));
    *alg.extras_mut() = CatalogExtras {
        cartan_involution: Some(star(s)),
        cartan_basis: Some(sl.h_indices()),
        weights: Some(weights),
        center: crate::catalog::sl::minus_identity(dim),
    };
    Ok(alg)
}

fn sparse_column(m: &SparseMatrix<Rational>, j: usize) -> Vec<(usize, Rational)> {
    (0..m.rows()).filter_map(|i| {
        let v = m.get(i, j);
        (!v.is_zero()).then(|| (i, v))
    }).collect()
}

/// Raw e8 bracket table with wedge constants `a`, `b` and mixed constant `c`.
fn e8_table(a: &Rational, b: &Rational, c: &Rational) -> Result<(SlBasis, SubsetIndex, Vec<(usize, usize, BracketTerms)>)> {
    let n = 9;
    let sl = SlBasis::new(n);
    let d0 = sl.dim();
    let sub = SubsetIndex::new(n, 3);
    let d1 = d0 + sub.len();
    let one = qi(1);
    let minus = qi(-1);
    let mut brackets = sl_brackets(&sl)?;
    for x in 0..d0 {
        let mx = sl.matrix_of(x);
        let mxt: SmallMatrix = mx.iter().map(|((i, j), v)| ((*j, *i), v.clone())).collect();
        for p in 0..sub.len() {
            let t = act_on_subset(&mx, sub.subset(p), &sub);
            if !t.is_empty() {
                brackets.push((x, d0 + p, shift_terms(t, d0, &one)));
            }
            // Dual action: X . e^J = -(X^T e_J) read in the dual basis.
            let t = act_on_subset(&mxt, sub.subset(p), &sub);
            if !t.is_empty() {
                brackets.push((x, d1 + p, shift_terms(t, d1, &minus)));
            }
        }
    }
    for p in 0..sub.len() {
        let i_set = sub.subset(p);
        for q in p + 1..sub.len() {
            let j_set = sub.subset(q);
            if let Some(s1) = wedge_sign(i_set, j_set) {
                let k = i_set | j_set;
                let kc = complement(n, k);
                let s2 = wedge_sign(k, kc).expect("disjoint");
                let r = sub.position(kc).unwrap();
                if !a.is_zero() {
                    brackets.push((d0 + p, d0 + q, vec![(d1 + r, a * qi(s1 * s2))]));
                }
                if !b.is_zero() {
                    brackets.push((d1 + p, d1 + q, vec![(d0 + r, b * qi(s1 * s2))]));
                }
            }
        }
    }
    if !c.is_zero() {
        for p in 0..sub.len() {
            let i_set = sub.subset(p);
            for q in 0..sub.len() {
                let j_set = sub.subset(q);
                let m = trace_dual(n, |x, y| match elementary_action(x, y, i_set) {
                    Some((s, m2)) if m2 == j_set => s,
                    _ => 0,
                });
                if !m.is_empty() {
                    let terms = sl.coords_of(&m)?.into_iter().map(|(k, v)| (k, v * c)).collect();
                    brackets.push((d0 + p, d1 + q, terms));
                }
            }
        }
    }
    Ok((sl, sub, brackets))
}

fn e8_assemble(a: &Rational, b: &Rational, c: &Rational) -> Result<(SlBasis, SubsetIndex, GradedAlgebra)> {
    let (sl, sub, brackets) = e8_table(a, b, c)?;
    let mut labels = sl.labels();
    labels.extend((0..sub.len()).map(|p| sub.label(p, "e")));
    labels.extend((0..sub.len()).map(|p| sub.label(p, "e^")));
    let mut degrees = vec![0; sl.dim()];
    degrees.extend(std::iter::repeat(1).take(sub.len()));
    degrees.extend(std::iter::repeat(2).take(sub.len()));
    let alg = GradedAlgebra::new("e8-split-z3", 3, labels, degrees, brackets)?;
    Ok((sl, sub, alg))
}

/// Mixed constant `c` making the Jacobi identity hold on the probe triple
/// `(e_123, e_456, e^123)`, given the wedge constants.
fn calibrate_e8(a: &Rational, b: &Rational) -> Result<Rational> {
    let (_, sub, a0) = e8_assemble(a, b, &Rational::zero())?;
    let (_, _, a1) = e8_assemble(a, b, &qi(1))?;
    let d0 = 80;
    let d1 = d0 + sub.len();
    let p123 = sub.position(0b111).unwrap();
    let p456 = sub.position(0b111000).unwrap();
    let (i, j, k) = (d0 + p123, d0 + p456, d1 + p123);
    let j0: BTreeMap<usize, Rational> = jacobiator(&a0, i, j, k).into_iter().collect();
    let j1: BTreeMap<usize, Rational> = jacobiator(&a1, i, j, k).into_iter().collect();
    let keys: std::collections::BTreeSet<usize> = j0.keys().chain(j1.keys()).copied().collect();
    let zero = Rational::zero();
    let mut c = None;
    for key in &keys {
        let v0 = j0.get(key).unwrap_or(&zero);
        let slope = j1.get(key).unwrap_or(&zero) - v0;
        if slope.is_zero() {
            continue;
        }
        let cand = -v0 / &slope;
        match &c {
            None => c = Some(cand),
            Some(prev) if *prev != cand => {
                return Err(Error::Computation("e8 model: inconsistent calibration of the mixed bracket".into()))
            }
            _ => {}
        }
    }
    let c = c.ok_or_else(|| Error::Computation("e8 model: probe triple does not constrain the mixed bracket".into()))?;
    for key in &keys {
        let v0 = j0.get(key).unwrap_or(&zero);
        let slope = j1.get(key).unwrap_or(&zero) - v0;
        if !(v0 + &slope * &c).is_zero() {
            return Err(Error::Computation("e8 model: calibration leaves the probe Jacobiator nonzero".into()));
        }
    }
    Ok(c)
}

/// The Z/3-graded split e8 with `g_0 = sl(9)`, `g_1 = L^3 R^9` and
/// `g_2 = L^3 (R^9)^*`.
pub fn build_e8_split_z3() -> Result<GradedAlgebra> {
    // Cartan involution e_I <-> s e^I needs b = s a; pick the sign of s that
    // makes B(x, theta x) negative on g_1.
    let a = qi(1);
    let mut chosen = None;
    for s in [1i64, -1] {
        let b = qi(s);
        let c = calibrate_e8(&a, &b)?;
        let (sl, sub, alg) = e8_assemble(&a, &b, &c)?;
        let pairing = killing_of_basis(&alg, 80, 80 + sub.len()) * qi(s);
        if pairing.is_negative() {
            chosen = Some((sl, sub, alg, s));
            break;
        }
    }
    let (sl, sub, mut alg, s) =
        chosen.ok_or_else(|| Error::Computation("e8 model: no sign gives a Cartan involution".into()))?;
    let d0 = sl.dim();
    let d1 = d0 + sub.len();
    let dim = d1 + sub.len();
    let base = sl_compact_involution(&sl);
    let mut cols: Vec<Vec<(usize, Rational)>> = (0..d0).map(|j| sparse_column(&base, j)).collect();
    cols.extend((0..sub.len()).map(|p| vec![(d1 + p, qi(s))]));
    cols.extend((0..sub.len()).map(|p| vec![(d0 + p, qi(s))]));
    let theta = SparseMatrix::from_sparse_columns(dim, &cols);
    let mut weights = sl_weights(&sl);
    weights.extend(sub.subsets().iter().map(|m| Some(subset_weight(9, *m, 1))));
    weights.extend(sub.subsets().iter().map(|m| Some(subset_weight(9, *m, -1))));
    *alg.extras_mut() = CatalogExtras {
        cartan_involution: Some(theta),
        cartan_basis: Some(sl.h_indices()),
        weights: Some(weights),
        center: CenterData::trivial(),
    };
    Ok(alg)
}

/// Basis index of the degree-1 vector `e_I` in either model, `I` 0-based.
pub fn exterior_index(alg: &GradedAlgebra, set: &[usize]) -> Option<usize> {
    let label: String = format!("e{}", set.iter().map(|i| (i + 1).to_string()).collect::<String>());
    alg.index_of(&label)
}
