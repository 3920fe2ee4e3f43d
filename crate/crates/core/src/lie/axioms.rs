//! Exact verification of the graded Lie algebra axioms.

use crate::lie::algebra::GradedAlgebra;
use crate::linalg::{signature, Matrix};
use crate::scalar::{format_rational, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// A failed axiom at specific basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
    pub detail: String,
}

/// Killing-form pairing between degree `a` and degree `-a`.
#[derive(Clone, Debug, Serialize)]
pub struct PairingBlock {
    pub degree: u32,
    pub partner: u32,
    pub rows: usize,
    pub cols: usize,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub dim: usize,
    pub modulus: u32,
    pub degree_dims: Vec<usize>,
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub degree_additive: bool,
    pub killing_nondegenerate: bool,
    /// (positive, negative, zero) inertia of the Killing form.
    pub killing_signature: (usize, usize, usize),
    pub pairing_blocks: Vec<PairingBlock>,
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

fn add_bracket_of_basis_with(alg: &GradedAlgebra, i: usize, v: &BTreeMap<usize, Rational>, out: &mut BTreeMap<usize, Rational>) {
    for (l, c) in v {
        for (k, d) in alg.bracket_basis(i, *l) {
            *out.entry(*k).or_insert_with(Rational::zero) += &(c * d);
        }
    }
}

fn terms_map(t: &[(usize, Rational)]) -> BTreeMap<usize, Rational> {
    t.iter().cloned().collect()
}

/// Jacobiator of three basis vectors as sparse terms (zeros removed).
pub fn jacobiator(alg: &GradedAlgebra, i: usize, j: usize, k: usize) -> Vec<(usize, Rational)> {
    let mut out = BTreeMap::new();
    add_bracket_of_basis_with(alg, i, &terms_map(alg.bracket_basis(j, k)), &mut out);
    add_bracket_of_basis_with(alg, j, &terms_map(alg.bracket_basis(k, i)), &mut out);
    add_bracket_of_basis_with(alg, k, &terms_map(alg.bracket_basis(i, j)), &mut out);
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn describe_terms(alg: &GradedAlgebra, t: &[(usize, Rational)]) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|(k, c)| format!("{}*{}", format_rational(c), alg.label(*k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn antisymmetry_violation(alg: &GradedAlgebra) -> Option<Violation> {
    let n = alg.dim();
    for i in 0..n {
        if !alg.bracket_basis(i, i).is_empty() {
            return Some(Violation {
                axiom: "antisymmetry".into(),
                basis: vec![i, i],
                labels: vec![alg.label(i).into(), alg.label(i).into()],
                detail: format!("[x,x] = {}", describe_terms(alg, alg.bracket_basis(i, i))),
            });
        }
        for j in i + 1..n {
            let a = alg.bracket_basis(i, j);
            let b = alg.bracket_basis(j, i);
            let neg: Vec<(usize, Rational)> = b.iter().map(|(k, c)| (*k, -c.clone())).collect();
            if a != neg.as_slice() {
                return Some(Violation {
                    axiom: "antisymmetry".into(),
                    basis: vec![i, j],
                    labels: vec![alg.label(i).into(), alg.label(j).into()],
                    detail: format!("[x,y] = {} but [y,x] = {}", describe_terms(alg, a), describe_terms(alg, b)),
                });
            }
        }
    }
    None
}

fn degree_violation(alg: &GradedAlgebra) -> Option<Violation> {
    let m = alg.modulus();
    for (i, j) in alg.nonzero_pairs() {
        let expect = (alg.degree(i) + alg.degree(j)) % m;
        if let Some((k, _)) = alg.bracket_basis(i, j).iter().find(|(k, _)| alg.degree(*k) != expect) {
            return Some(Violation {
                axiom: "degree-additivity".into(),
                basis: vec![i, j, *k],
                labels: vec![alg.label(i).into(), alg.label(j).into(), alg.label(*k).into()],
                detail: format!("bracket of degrees {} and {} has a component of degree {}", alg.degree(i), alg.degree(j), alg.degree(*k)),
            });
        }
    }
    None
}

/// Sweep all basis triples with at least one nonzero pairwise bracket.
/// Returns the number of triples examined and the first violation in
/// lexicographic order.
pub fn jacobi_sweep(alg: &GradedAlgebra) -> (usize, Option<Violation>) {
    let n = alg.dim();
    let pairs = alg.nonzero_pairs();
    let nonzero = |a: usize, b: usize| !alg.bracket_basis(a, b).is_empty();
    let results: Vec<(usize, Option<(usize, usize, usize, Vec<(usize, Rational)>)>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut count = 0;
            let mut first: Option<(usize, usize, usize, Vec<(usize, Rational)>)> = None;
            for t in 0..n {
                if t == a || t == b {
                    continue;
                }
                let mut tri = [a, b, t];
                tri.sort_unstable();
                let [i, j, k] = tri;
                // Process each triple once: at its first nonzero pair in (ij, ik, jk) order.
                let owner = if nonzero(i, j) {
                    (i, j)
                } else if nonzero(i, k) {
                    (i, k)
                } else {
                    (j, k)
                };
                if owner != (a, b) {
                    continue;
                }
                count += 1;
                let jac = jacobiator(alg, i, j, k);
                if !jac.is_empty() {
                    let cand = (i, j, k, jac);
                    if first.as_ref().map_or(true, |f| (cand.0, cand.1, cand.2) < (f.0, f.1, f.2)) {
                        first = Some(cand);
                    }
                }
            }
            (count, first)
        })
        .collect();
    let total = results.iter().map(|r| r.0).sum();
    let first = results
        .into_iter()
        .filter_map(|r| r.1)
        .min_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    let v = first.map(|(i, j, k, jac)| Violation {
        axiom: "jacobi".into(),
        basis: vec![i, j, k],
        labels: vec![alg.label(i).into(), alg.label(j).into(), alg.label(k).into()],
        detail: format!("jacobiator = {}", describe_terms(alg, &jac)),
    });
    (total, v)
}

/// Killing pairing blocks between degrees `a` and `-a`.
pub fn pairing_blocks(alg: &GradedAlgebra) -> Vec<PairingBlock> {
    let m = alg.modulus();
    let g = alg.killing_gram();
    let mut out = Vec::new();
    for a in 0..m {
        let b = (m - a) % m;
        if b < a {
            continue;
        }
        let rows = alg.basis_indices_of_degree(a as i64);
        let cols = alg.basis_indices_of_degree(b as i64);
        let nondegenerate = if rows.len() != cols.len() {
            false
        } else if rows.is_empty() {
            true
        } else {
            let block: Matrix<Rational> = g.select(&rows, &cols);
            !block.determinant().map(|d| d.is_zero()).unwrap_or(true)
        };
        out.push(PairingBlock { degree: a, partner: b, rows: rows.len(), cols: cols.len(), nondegenerate });
    }
    out
}

/// Check antisymmetry, Jacobi, degree additivity and Killing nondegeneracy.
pub fn verify_axioms(alg: &GradedAlgebra) -> AxiomReport {
    let mut violations = Vec::new();
    let anti = antisymmetry_violation(alg);
    let antisymmetric = anti.is_none();
    violations.extend(anti);
    let deg = degree_violation(alg);
    let degree_additive = deg.is_none();
    violations.extend(deg);
    let (triples_checked, jac) = jacobi_sweep(alg);
    let jacobi = jac.is_none();
    violations.extend(jac);
    let blocks = pairing_blocks(alg);
    let killing_nondegenerate = blocks.iter().all(|b| b.nondegenerate);
    if !killing_nondegenerate {
        let b = blocks.iter().find(|b| !b.nondegenerate).unwrap();
        violations.push(Violation {
            axiom: "killing-nondegeneracy".into(),
            basis: vec![],
            labels: vec![],
            detail: format!("pairing of degree {} with degree {} is degenerate", b.degree, b.partner),
        });
    }
    let killing_signature = signature(alg.killing_gram()).unwrap_or((0, 0, alg.dim()));
    let m = alg.modulus();
    let degree_dims = (0..m).map(|k| alg.basis_indices_of_degree(k as i64).len()).collect();
    AxiomReport {
        algebra: alg.name().to_string(),
        dim: alg.dim(),
        modulus: m,
        degree_dims,
        antisymmetric,
        jacobi,
        degree_additive,
        killing_nondegenerate,
        killing_signature,
        pairing_blocks: blocks,
        triples_checked,
        passed: antisymmetric && jacobi && degree_additive && killing_nondegenerate,
        violations,
    }
}
