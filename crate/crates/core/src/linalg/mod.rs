//! Exact linear algebra over Q and Q(i).

pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod sparse;
pub mod spectral;
pub mod sturm;

pub use mpoly::{mpoly_determinant, MPoly};
pub use matrix::{echelon_basis, is_positive_definite, signature, Echelon, KernelSolve, Matrix};
pub use poly::{Poly, UnivariatePolynomial};
pub use sparse::{LinearOperator, SparseMatrix};
pub use spectral::{
    is_nilpotent_matrix, is_semisimple_operator, local_minimal_polynomial, matrix_jordan_chevalley, minimal_polynomial, nilpotent_exp,
    nilpotent_exp_apply, semisimple_part_polynomial, Reducer,
};
pub use sturm::{
    certify_positive_on, isolate_real_roots, positive_components, rational_roots, sturm_components, PositiveInterval,
    RealRoot, SturmSequence,
};
