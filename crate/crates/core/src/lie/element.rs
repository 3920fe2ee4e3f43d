use crate::scalar::{qi, Rational};
use num_traits::Zero;

/// Coordinates of an algebra element in the algebra's fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Element { coords }
    }
    pub fn zero(dim: usize) -> Self {
        Element { coords: vec![Rational::zero(); dim] }
    }
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = qi(1);
        e
    }
    pub fn from_ints(c: &[i64]) -> Self {
        Element { coords: c.iter().map(|&x| qi(x)).collect() }
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    pub fn add(&self, o: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
    pub fn scale(&self, s: &Rational) -> Element {
        Element { coords: self.coords.iter().map(|a| a * s).collect() }
    }
    pub fn neg(&self) -> Element {
        Element { coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }
    /// Indices with nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.coords[i].is_zero()).collect()
    }
    /// Linear combination `sum c_i v_i`.
    pub fn combination(dim: usize, terms: &[(Rational, &Element)]) -> Element {
        let mut out = Element::zero(dim);
        for (c, v) in terms {
            if c.is_zero() {
                continue;
            }
            for (a, b) in out.coords.iter_mut().zip(&v.coords) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        out
    }
    pub fn literals(&self) -> Vec<String> {
        self.coords.iter().map(crate::scalar::format_rational).collect()
    }
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.literals())
    }
}

impl<'de> serde::Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lits = Vec::<String>::deserialize(d)?;
        let coords = lits
            .iter()
            .map(|c| crate::scalar::parse_rational(c))
            .collect::<crate::error::Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Element::new(coords))
    }
}
