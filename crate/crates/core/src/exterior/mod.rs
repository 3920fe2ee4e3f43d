//! Exterior algebra on R^n and the exterior models of e7 and e8.

pub mod combinatorics;
pub mod models;
pub mod multivector;

pub use models::{
    analyze_kvector, analyze_kvector_with, embed_kvector, from_lie_element, iota, to_lie_element, ExteriorModel, KVectorKind,
    KVectorOptions, KVectorReport, SUPPORTED_MODELS,
};
pub use multivector::{
    exterior_power_matrix, group_action, group_action_on_form, lie_action, pairing, poincare_codual, poincare_dual, wedge,
    MultiVector, VolumePair,
};
