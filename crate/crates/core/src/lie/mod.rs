//! Graded Lie algebras, elements, subspaces and axiom checks.

pub mod algebra;
pub mod axioms;
pub mod element;
pub mod json;
pub mod ops;
pub mod semilinear;
pub mod subspace;

pub use algebra::{BracketTerms, CatalogExtras, CenterData, CenterElement, GradedAlgebra};
pub use axioms::{verify_axioms, AxiomReport, Violation};
pub use element::Element;
pub use json::{element_from_json, element_to_json, parse_element, AlgebraJson, ElementJson};
pub use subspace::Subspace;
