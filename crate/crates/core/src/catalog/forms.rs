//! Complexification, the grading automorphism and the compact-form
//! conjugation of catalog algebras.

use crate::error::{Error, Result};
use crate::lie::semilinear::{automorphism_defect, check_supported_modulus, SemilinearMap};
use crate::lie::GradedAlgebra;
use crate::scalar::ScalarField;

/// Same structure constants over Q(i), with coordinatewise conjugation.
pub fn complexify(alg: &GradedAlgebra) -> Result<(GradedAlgebra, SemilinearMap)> {
    if alg.scalar() != ScalarField::Rational {
        return Err(Error::InvalidInput(format!("{} is already complexified", alg.name())));
    }
    let c = alg.with_scalar(ScalarField::Gaussian);
    let tau = SemilinearMap::standard_conjugation(alg.dim());
    Ok((c, tau))
}

/// `theta` acting on degree k by `zeta_m^k`, checked to be an automorphism.
pub fn theta_automorphism(alg_c: &GradedAlgebra) -> Result<SemilinearMap> {
    check_supported_modulus(alg_c.modulus())?;
    let theta = SemilinearMap::DegreeRotation { modulus: alg_c.modulus(), degrees: alg_c.degrees().to_vec(), power: 1 };
    if let Some((i, j)) = automorphism_defect(alg_c, &theta)? {
        return Err(Error::Computation(format!(
            "grading automorphism fails on [{}, {}]",
            alg_c.label(i),
            alg_c.label(j)
        )));
    }
    Ok(theta)
}

/// Conjugation with respect to the compact real form spanned by
/// `i H_a`, `i (E_a + E_-a)` and `E_a - E_-a`: the Cartan involution of the
/// split form composed with complex conjugation.
pub fn compact_form_conjugation(alg_c: &GradedAlgebra) -> Result<SemilinearMap> {
    let theta = alg_c.extras().cartan_involution.as_ref().ok_or_else(|| {
        Error::InvalidInput(format!("{} carries no root-vector identification (not a catalog algebra)", alg_c.name()))
    })?;
    Ok(SemilinearMap::from_real(theta, true))
}

/// The Cartan involution of the real form as a linear map.
pub fn cartan_involution(alg: &GradedAlgebra) -> Result<SemilinearMap> {
    let theta = alg
        .extras()
        .cartan_involution
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("{} carries no Cartan involution", alg.name())))?;
    Ok(SemilinearMap::from_real(theta, false))
}
