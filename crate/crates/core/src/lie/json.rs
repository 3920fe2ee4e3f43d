//! JSON interchange for algebras and elements.

use crate::error::{check_dim, Error, Result};
use crate::lie::algebra::GradedAlgebra;
use crate::lie::element::Element;
use crate::scalar::{format_gaussian, format_rational, parse_gaussian, parse_rational, Gaussian, ScalarField};
use serde::{Deserialize, Serialize};

/// One bracket entry: `[i, j, [[k, "c"], ...]]` with `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketJson(pub usize, pub usize, pub Vec<(usize, String)>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub scalar: ScalarField,
    pub modulus: u32,
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub algebra: String,
    pub coords: Vec<String>,
}

impl GradedAlgebra {
    pub fn to_json_value(&self) -> AlgebraJson {
        let brackets = self
            .nonzero_pairs()
            .into_iter()
            .map(|(i, j)| {
                BracketJson(i, j, self.bracket_basis(i, j).iter().map(|(k, c)| (*k, format_rational(c))).collect())
            })
            .collect();
        AlgebraJson {
            name: self.name().to_string(),
            scalar: self.scalar(),
            modulus: self.modulus(),
            basis: self.labels().to_vec(),
            degrees: self.degrees().to_vec(),
            brackets,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(j: &AlgebraJson) -> Result<Self> {
        let mut brackets = Vec::with_capacity(j.brackets.len());
        for BracketJson(i, k, terms) in &j.brackets {
            let mut t = Vec::with_capacity(terms.len());
            for (idx, c) in terms {
                let z = parse_gaussian(c)?;
                if !z.is_real() {
                    return Err(Error::Unsupported(format!(
                        "non-real structure constant {c}; only algebras defined over Q are supported"
                    )));
                }
                t.push((*idx, z.re));
            }
            brackets.push((*i, *k, t));
        }
        let alg = GradedAlgebra::new(j.name.clone(), j.modulus, j.basis.clone(), j.degrees.clone(), brackets)?;
        Ok(alg.with_scalar(j.scalar))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: AlgebraJson = serde_json::from_str(s)?;
        Self::from_json_value(&j)
    }
}

/// Serialize a rational element of an algebra.
pub fn element_to_json(alg: &GradedAlgebra, x: &Element) -> ElementJson {
    ElementJson { algebra: alg.name().to_string(), coords: x.literals() }
}

/// Parse a rational element, checking the algebra name and dimension.
pub fn element_from_json(alg: &GradedAlgebra, j: &ElementJson) -> Result<Element> {
    if j.algebra != alg.name() {
        return Err(Error::InvalidInput(format!(
            "element belongs to algebra {:?}, not {:?}",
            j.algebra,
            alg.name()
        )));
    }
    check_dim(alg.dim(), j.coords.len())?;
    let coords = j.coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
    Ok(Element::new(coords))
}

pub fn parse_element(alg: &GradedAlgebra, s: &str) -> Result<Element> {
    let j: ElementJson = serde_json::from_str(s)?;
    element_from_json(alg, &j)
}

/// Parse Gaussian coordinates of an element of a complexified algebra.
pub fn gaussian_element_from_json(alg: &GradedAlgebra, j: &ElementJson) -> Result<Vec<Gaussian>> {
    check_dim(alg.dim(), j.coords.len())?;
    j.coords.iter().map(|c| parse_gaussian(c)).collect()
}

pub fn gaussian_element_to_json(alg: &GradedAlgebra, x: &[Gaussian]) -> ElementJson {
    ElementJson { algebra: alg.name().to_string(), coords: x.iter().map(format_gaussian).collect() }
}
