//! Named graded algebras: split sl(n), sl(2, C) as a real Z/2-graded
//! algebra, and the exterior models of split e7 and e8.

pub mod exterior_models;
pub mod forms;
pub mod roots;
pub mod sl;
pub mod sl2c;

pub use exterior_models::{build_e7_split_z2, build_e8_split_z3};
pub use forms::{cartan_involution, compact_form_conjugation, complexify, theta_automorphism};
pub use roots::{root_datum, root_space_decomposition, RootDatum, RootKind, RootSpace};
pub use sl::{build_sl, build_sl2, build_sl2_z2_diag, SlBasis, SlGrading};
pub use sl2c::build_sl2c_real;

use crate::error::{Error, Result};
use crate::lie::GradedAlgebra;

/// One catalog entry.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub modulus: u32,
    pub description: &'static str,
}

pub const CATALOG: [CatalogEntry; 6] = [
    CatalogEntry { name: "sl2", dim: 3, modulus: 1, description: "split sl(2,R), trivial grading" },
    CatalogEntry {
        name: "sl2-z2-diag",
        dim: 3,
        modulus: 2,
        description: "sl(2,R) graded by conjugation with diag(1,-1)",
    },
    CatalogEntry {
        name: "sl2c-real-z2",
        dim: 6,
        modulus: 2,
        description: "sl(2,C) as a real algebra, g_0 = sl(2,R), g_1 = i sl(2,R)",
    },
    CatalogEntry { name: "sl8", dim: 63, modulus: 1, description: "split sl(8,R), trivial grading" },
    CatalogEntry { name: "e7-split-z2", dim: 133, modulus: 2, description: "split e7 = sl(8,R) + L^4 R^8" },
    CatalogEntry {
        name: "e8-split-z3",
        dim: 248,
        modulus: 3,
        description: "split e8 = sl(9,R) + L^3 R^9 + L^3 (R^9)^*",
    },
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

/// Build a catalog algebra by name. Besides the listed names this accepts
/// `sl<n>` and `sl<n>-z2-diag<signs>` with signs written as `+`/`-`.
pub fn build(name: &str) -> Result<GradedAlgebra> {
    match name {
        "sl2" => Ok(build_sl2()),
        "sl2-z2-diag" => Ok(build_sl2_z2_diag()),
        "sl2c-real-z2" => Ok(build_sl2c_real()),
        "e7-split-z2" => build_e7_split_z2(),
        "e8-split-z3" => build_e8_split_z3(),
        _ => parse_sl_name(name).and_then(|(n, g)| build_sl(n, &g)).map_err(|_| {
            Error::InvalidInput(format!("unknown catalog algebra {name:?}; known: {}", catalog_names().join(", ")))
        }),
    }
}

fn parse_sl_name(name: &str) -> Result<(usize, SlGrading)> {
    let rest = name.strip_prefix("sl").ok_or_else(|| Error::InvalidInput(name.into()))?;
    let (num, grading) = match rest.split_once("-z2-diag") {
        Some((num, signs)) => {
            let s: Vec<i8> = signs
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(Error::InvalidInput(name.into())),
                })
                .collect::<Result<_>>()?;
            (num, SlGrading::DiagonalInvolution(s))
        }
        None => (rest, SlGrading::Trivial),
    };
    let n: usize = num.parse().map_err(|_| Error::InvalidInput(name.into()))?;
    Ok((n, grading))
}
