//! Root data and simultaneous eigenspace decompositions.

use crate::error::{Error, Result};
use crate::lie::ops::rational_eigenspaces;
use crate::lie::{Element, GradedAlgebra, Subspace};
use crate::scalar::{qi, Rational};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    /// `eps_i - eps_j`.
    Difference,
    /// Sums (or negated sums) of several `eps_i`.
    Sum,
}

/// Roots in epsilon coordinates, taken modulo `sum eps_i = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub ambient: usize,
    pub roots: Vec<(Vec<i64>, RootKind)>,
}

impl RootDatum {
    pub fn count(&self, kind: RootKind) -> usize {
        self.roots.iter().filter(|(_, k)| *k == kind).count()
    }

    /// Roots as functionals on `H_l = E_ll - E_{l+1,l+1}`, which is how
    /// the relation `sum eps_i = 0` is quotiented out.
    pub fn functionals(&self) -> Vec<Vec<Rational>> {
        self.roots.iter().map(|(w, _)| weight_functional(w)).collect()
    }

    /// Whether the root set is closed under negation.
    pub fn closed_under_negation(&self) -> bool {
        let set: std::collections::BTreeSet<Vec<Rational>> = self.functionals().into_iter().collect();
        set.iter().all(|f| set.contains(&f.iter().map(|x| -x.clone()).collect::<Vec<_>>()))
    }
}

/// Values of an epsilon-weight on the Cartan basis `H_1, .., H_{n-1}`.
pub fn weight_functional(w: &[i64]) -> Vec<Rational> {
    (0..w.len().saturating_sub(1)).map(|l| qi(w[l] - w[l + 1])).collect()
}

fn classify(w: &[i64]) -> RootKind {
    let pos = w.iter().filter(|x| **x == 1).count();
    let neg = w.iter().filter(|x| **x == -1).count();
    if pos == 1 && neg == 1 && w.iter().all(|x| x.abs() <= 1) {
        RootKind::Difference
    } else {
        RootKind::Sum
    }
}

/// Root datum read from the weights attached to a catalog algebra.
pub fn root_datum(alg: &GradedAlgebra) -> Result<RootDatum> {
    let weights = alg
        .extras()
        .weights
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("{} has no weight data", alg.name())))?;
    let ambient = weights.iter().flatten().map(|w| w.len()).next().unwrap_or(0);
    let roots = weights.iter().flatten().map(|w| (w.clone(), classify(w))).collect();
    Ok(RootDatum { ambient, roots })
}

/// A joint eigenspace of the Cartan subalgebra and its eigenvalue functional
/// (values on the echelon basis of the Cartan subspace).
#[derive(Clone, Debug)]
pub struct RootSpace {
    pub functional: Vec<Rational>,
    pub space: Subspace,
}

/// Simultaneous eigenspace decomposition of `alg` under an abelian,
/// ad-diagonalizable subspace. Results are sorted by functional, so the
/// zero weight appears among them as an ordinary entry.
pub fn root_space_decomposition(alg: &GradedAlgebra, cartan: &Subspace) -> Result<Vec<RootSpace>> {
    let hs = cartan.elements();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if !alg.bracket(&hs[i], &hs[j])?.is_zero() {
                return Err(Error::InvalidInput("Cartan subspace is not abelian".into()));
            }
        }
    }
    if let Some(fast) = diagonal_split(alg, &hs)? {
        return Ok(fast);
    }
    let mut parts: Vec<(Vec<Rational>, Subspace)> = vec![(Vec::new(), Subspace::full(alg.dim()))];
    for h in &hs {
        let mut next = Vec::new();
        for (f, v) in parts {
            for (lam, sp) in rational_eigenspaces(alg, h, &v)
                .map_err(|e| Error::InvalidInput(format!("Cartan subspace is not ad-diagonalizable over Q: {e}")))?
            {
                let mut g = f.clone();
                g.push(lam);
                next.push((g, sp));
            }
        }
        parts = next;
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(parts.into_iter().map(|(functional, space)| RootSpace { functional, space }).collect())
}

/// Fast path when each `ad h` is diagonal in the standard basis.
fn diagonal_split(alg: &GradedAlgebra, hs: &[Element]) -> Result<Option<Vec<RootSpace>>> {
    let n = alg.dim();
    let mut values: Vec<Vec<Rational>> = vec![Vec::with_capacity(hs.len()); n];
    for h in hs {
        let ad = alg.ad_matrix(h)?;
        for (i, vals) in values.iter_mut().enumerate() {
            let row = ad.row_entries(i);
            match row {
                [] => vals.push(Rational::zero()),
                [(j, c)] if *j == i => vals.push(c.clone()),
                _ => return Ok(None),
            }
        }
    }
    let mut groups: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
    for (i, v) in values.into_iter().enumerate() {
        groups.entry(v).or_default().push(i);
    }
    Ok(Some(
        groups
            .into_iter()
            .map(|(functional, idx)| RootSpace { functional, space: Subspace::span_of_indices(n, &idx) })
            .collect(),
    ))
}
