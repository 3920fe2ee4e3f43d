//! Compatibility of real forms with gradings, grading-reversing Cartan
//! involutions, and the numeric improvement of a compact form.

use crate::error::{check_dim, Error, Result};
use crate::lie::semilinear::{basis_cyclo_vec, Cyclo, CycloVec, SemilinearMap};
use crate::lie::{Element, GradedAlgebra};
use crate::linalg::{is_positive_definite, Matrix};
use crate::scalar::{rational_to_f64, Field, Gaussian, Rational};
use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use serde::Serialize;

/// A basis vector on which a relation fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub relation: String,
    pub basis: usize,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityReport {
    /// `tau_g theta = theta^-1 tau_g`.
    pub comp_holds: bool,
    /// `tau_g theta^-1 = theta tau_g`.
    pub comp2_holds: bool,
    /// The real form is the direct sum of its intersections with the
    /// eigenspaces of `theta`.
    pub grad_holds: bool,
    /// Whether the three relations agree, as they must for an involutive `tau_g`.
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

fn modulus_of(theta: &SemilinearMap) -> u32 {
    match theta {
        SemilinearMap::DegreeRotation { modulus, .. } => *modulus,
        SemilinearMap::Matrix { .. } => 1,
    }
}

fn vec_eq(a: &[Cyclo], b: &[Cyclo]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.sub(y).is_zero())
}

/// First basis vector where `f` and `g` differ.
fn first_difference(
    m: u32,
    dim: usize,
    f: impl Fn(&CycloVec) -> Result<CycloVec>,
    g: impl Fn(&CycloVec) -> Result<CycloVec>,
) -> Result<Option<usize>> {
    for j in 0..dim {
        let e = basis_cyclo_vec(m, dim, j);
        if !vec_eq(&f(&e)?, &g(&e)?) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

fn is_involution(map: &SemilinearMap, m: u32) -> Result<Option<usize>> {
    first_difference(m, map.dim(), |v| map.apply_after(map, v), |v| Ok(v.clone()))
}

/// Eigenvectors of `theta` with their eigenvalues, as vectors over Q(i)(zeta).
fn theta_eigenbasis(theta: &SemilinearMap, m: u32) -> Result<Vec<(CycloVec, Cyclo)>> {
    match theta {
        SemilinearMap::DegreeRotation { degrees, power, .. } => Ok(degrees
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let one = Cyclo::from_gaussian(m, Gaussian::one());
                (basis_cyclo_vec(m, degrees.len(), j), one.mul_zeta_pow(power * *d as i64))
            })
            .collect()),
        SemilinearMap::Matrix { matrix, conjugate } => {
            if *conjugate {
                return Err(Error::InvalidInput("grading automorphism must be complex-linear".into()));
            }
            let n = matrix.cols();
            let dense = matrix.to_dense();
            let mut out = Vec::new();
            let r = |x: i64| Rational::from_integer(x.into());
            let candidates = [
                Gaussian::real(r(1)),
                Gaussian::real(r(-1)),
                Gaussian::i(),
                -Gaussian::i(),
            ];
            for lam in candidates {
                let shifted = dense.sub(&Matrix::identity(n).scale(&lam))?;
                for v in shifted.kernel() {
                    out.push((v.into_iter().map(|x| Cyclo::from_gaussian(m, x)).collect(), Cyclo::from_gaussian(m, lam.clone())));
                }
            }
            if out.len() != n {
                return Err(Error::Unsupported(
                    "grading automorphism is not diagonalizable with eigenvalues in {1, -1, i, -i}".into(),
                ));
            }
            Ok(out)
        }
    }
}

/// Check (comp), (comp2) and (grad) on a basis.
pub fn check_compatibility(
    alg_c: &GradedAlgebra,
    tau_g: &SemilinearMap,
    theta: &SemilinearMap,
) -> Result<CompatibilityReport> {
    check_dim(alg_c.dim(), tau_g.dim())?;
    check_dim(alg_c.dim(), theta.dim())?;
    let m = modulus_of(theta);
    let n = alg_c.dim();
    if let Some(j) = is_involution(tau_g, m)? {
        return Err(Error::Precondition(format!(
            "the real-form conjugation is not involutive (fails on {})",
            alg_c.label(j)
        )));
    }
    let theta_inv = theta.inverse()?;
    let comp = first_difference(m, n, |v| tau_g.apply_after(theta, v), |v| theta_inv.apply_after(tau_g, v))?;
    let comp2 = first_difference(m, n, |v| tau_g.apply_after(&theta_inv, v), |v| theta.apply_after(tau_g, v))?;
    let mut grad = None;
    for (idx, (v, lam)) in theta_eigenbasis(theta, m)?.into_iter().enumerate() {
        let tv = tau_g.apply(&v)?;
        let lhs = theta.apply(&tv)?;
        let rhs: CycloVec = tv.iter().map(|c| c.mul(&lam)).collect();
        if !vec_eq(&lhs, &rhs) {
            grad = Some(idx);
            break;
        }
    }
    let witness = [("comp", comp), ("comp2", comp2), ("grad", grad)].into_iter().find_map(|(rel, w)| {
        w.map(|j| Witness {
            relation: rel.into(),
            basis: j,
            label: if rel == "grad" && !matches!(theta, SemilinearMap::DegreeRotation { .. }) {
                format!("eigenvector {j}")
            } else {
                alg_c.label(j).to_string()
            },
        })
    });
    let (c1, c2, g) = (comp.is_none(), comp2.is_none(), grad.is_none());
    Ok(CompatibilityReport { comp_holds: c1, comp2_holds: c2, grad_holds: g, equivalent: c1 == c2 && c2 == g, witness })
}

/// Degree `k` is sent to degree `image`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBlock {
    pub degree: u32,
    pub image: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RCompatibility {
    pub r_compatible: bool,
    pub conjugate_linear: bool,
    pub involutive: bool,
    pub automorphism: bool,
    pub commutes_with_theta: bool,
    pub reverses_grading: bool,
    /// `-B(x, tau y)` is a positive definite Hermitian form.
    pub compact_type: bool,
    pub blocks: Vec<DegreeBlock>,
    pub reason: Option<String>,
}

/// Image of a basis vector under a matrix map, as Gaussian coordinates.
fn gaussian_column(map: &SemilinearMap, j: usize) -> Result<Vec<Gaussian>> {
    let mut e = vec![Gaussian::zero(); map.dim()];
    e[j] = Gaussian::one();
    map.apply_gaussian(&e)
}

/// Hermitian form `H_ij = -B(e_i, tau e_j)` tested for positive definiteness.
fn compact_type(alg_c: &GradedAlgebra, tau: &SemilinearMap) -> Result<bool> {
    let n = alg_c.dim();
    let k = alg_c.killing_gram();
    let cols: Vec<Vec<Gaussian>> = (0..n).map(|j| gaussian_column(tau, j)).collect::<Result<_>>()?;
    let entry = |i: usize, j: usize| -> Gaussian {
        let mut acc = Gaussian::zero();
        for (l, c) in cols[j].iter().enumerate() {
            if !c.is_zero() && !k.get(i, l).is_zero() {
                acc += &c.mul_ref(&Gaussian::from_rational(k.get(i, l)));
            }
        }
        -acc
    };
    let h: Vec<Vec<Gaussian>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    // Hermitian check.
    for i in 0..n {
        for j in 0..n {
            if h[i][j] != h[j][i].conj() {
                return Ok(false);
            }
        }
    }
    if h.iter().flatten().all(|z| z.is_real()) {
        let m = Matrix::from_rows(h.iter().map(|r| r.iter().map(|z| z.re.clone()).collect()).collect())?;
        return is_positive_definite(&m);
    }
    // Realify: [[Re, -Im], [Im, Re]].
    let m = Matrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = &h[r % n][c % n];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re.clone(),
            (true, false) => -z.im.clone(),
            (false, true) => z.im.clone(),
        }
    });
    is_positive_definite(&m)
}

/// Whether `tau_u` is a Cartan-type involution commuting with `theta`,
/// equivalently reversing the grading.
pub fn is_r_compatible(alg_c: &GradedAlgebra, tau_u: &SemilinearMap, theta: &SemilinearMap) -> Result<RCompatibility> {
    check_dim(alg_c.dim(), tau_u.dim())?;
    check_dim(alg_c.dim(), theta.dim())?;
    let m = modulus_of(theta);
    let n = alg_c.dim();
    let conjugate_linear = tau_u.is_conjugate_linear();
    let involutive = is_involution(tau_u, m)?.is_none();
    let automorphism = crate::lie::semilinear::automorphism_defect(alg_c, tau_u)?.is_none();
    let commutes_with_theta =
        first_difference(m, n, |v| tau_u.apply_after(theta, v), |v| theta.apply_after(tau_u, v))?.is_none();
    let mut blocks = Vec::new();
    let mut reverses_grading = true;
    let modulus = alg_c.modulus();
    for k in 0..modulus {
        let target = (modulus - k) % modulus;
        let mut image = None;
        for j in alg_c.basis_indices_of_degree(k as i64) {
            let col = tau_u.apply(&basis_cyclo_vec(m, n, j))?;
            for (i, c) in col.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let d = alg_c.degree(i);
                if d != target {
                    reverses_grading = false;
                }
                image.get_or_insert(d);
            }
        }
        blocks.push(DegreeBlock { degree: k, image: image.unwrap_or(target) });
    }
    let compact = conjugate_linear && involutive && matches!(tau_u, SemilinearMap::Matrix { .. }) && compact_type(alg_c, tau_u)?;
    let reason = if !conjugate_linear || !involutive || !compact {
        Some("not an involution of compact type".to_string())
    } else if !automorphism {
        Some("not a Lie algebra automorphism".to_string())
    } else if !commutes_with_theta || !reverses_grading {
        Some("does not reverse the grading".to_string())
    } else {
        None
    };
    Ok(RCompatibility {
        r_compatible: reason.is_none(),
        conjugate_linear,
        involutive,
        automorphism,
        commutes_with_theta,
        reverses_grading,
        compact_type: compact,
        blocks,
        reason,
    })
}

/// Restriction of a grading-reversing conjugation to the real form, applied
/// to a homogeneous element of degree i; the result has degree -i.
pub fn degree_reversal_map(alg: &GradedAlgebra, tau_u: &SemilinearMap, x: &Element) -> Result<Element> {
    check_dim(alg.dim(), x.dim())?;
    check_dim(alg.dim(), tau_u.dim())?;
    if !tau_u.is_conjugate_linear() {
        return Err(Error::Precondition("degree reversal needs a conjugate-linear involution".into()));
    }
    let n = alg.dim();
    let mut out = vec![Rational::zero(); n];
    let deg = alg.homogeneous_degree(x);
    if x.is_zero() {
        return Ok(Element::zero(n));
    }
    let deg = deg.ok_or_else(|| Error::InvalidInput("degree reversal needs a homogeneous element".into()))?;
    for (j, c) in x.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let col = gaussian_column(tau_u, j)?;
        for (i, z) in col.iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            if !z.is_real() {
                return Err(Error::Precondition("the involution does not preserve the real form".into()));
            }
            if alg.degree(i) != alg.reduce_degree(-(deg as i64)) {
                return Err(Error::Precondition("the involution does not reverse the grading".into()));
            }
            out[i] += &(&z.re * c);
        }
    }
    Ok(Element::new(out))
}

/// A floating-point operator on the realified algebra (real parts first,
/// then imaginary parts).
#[derive(Clone, Debug, Serialize)]
pub struct ApproxOperator {
    pub dim: usize,
    /// Row-major entries.
    pub entries: Vec<f64>,
    pub tolerance: f64,
}

impl ApproxOperator {
    fn from_matrix(m: &DMatrix<f64>, tolerance: f64) -> Self {
        let n = m.nrows();
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect();
        ApproxOperator { dim: n, entries, tolerance }
    }
    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }
}

/// Real 2n x 2n matrix of a (conjugate-)linear map on C^n.
pub fn realify(map: &SemilinearMap) -> DMatrix<f64> {
    let n = map.dim();
    let (re, im, conj) = map.complex_matrix();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (r, s) = (re[i * n + j], im[i * n + j]);
            if conj {
                // M conj(a + ib) = (Ra + Sb) + i(Sa - Rb)
                out[(i, j)] = r;
                out[(i, j + n)] = s;
                out[(i + n, j)] = s;
                out[(i + n, j + n)] = -r;
            } else {
                out[(i, j)] = r;
                out[(i, j + n)] = -s;
                out[(i + n, j)] = s;
                out[(i + n, j + n)] = r;
            }
        }
    }
    out
}

/// Realification of a real linear map `x -> M x` extended complex-linearly.
pub fn realify_real_linear(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(m);
    out.view_mut((n, n), (n, n)).copy_from(m);
    out
}

pub fn killing_f64(alg: &GradedAlgebra) -> DMatrix<f64> {
    let k = alg.killing_gram();
    DMatrix::from_fn(alg.dim(), alg.dim(), |i, j| rational_to_f64(k.get(i, j)))
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ImproveReport {
    pub phi: ApproxOperator,
    pub improved: ApproxOperator,
    /// Eigenvalues of phi, ascending.
    pub phi_spectrum: Vec<f64>,
    pub input_tau_g_commutator: f64,
    pub input_theta_commutator: f64,
    pub self_adjoint_residual: f64,
    /// `|| tau_g tau_new - tau_new tau_g ||`, max-abs entry norm.
    pub tau_g_commutator: f64,
    /// `|| theta tau_new - tau_new theta ||`.
    pub theta_commutator: f64,
    /// `|| tau_u' phi tau_u'^-1 - phi^-1 ||`.
    pub hel3_residual: f64,
    pub involution_residual: f64,
    pub tolerance: f64,
}

/// Replace a compact-form conjugation commuting with `theta` by one that
/// also commutes with `tau_g`, via `phi = ((tau_g tau_u')^2)^(1/4)`.
/// All matrices are realified (2n x 2n); `killing` is the n x n Gram matrix.
pub fn improve_compact_form_real(
    killing: &DMatrix<f64>,
    tau_g: &DMatrix<f64>,
    tau_u: &DMatrix<f64>,
    theta: &DMatrix<f64>,
    tol: f64,
) -> Result<ImproveReport> {
    let n = killing.nrows();
    for (name, m) in [("tau_g", tau_g), ("tau_u", tau_u), ("theta", theta)] {
        if m.nrows() != 2 * n || m.ncols() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: m.nrows() }).map_err(|e| {
                Error::InvalidInput(format!("{name}: {e}"))
            });
        }
    }
    let input_theta_commutator = max_abs(&(tau_u * theta - theta * tau_u));
    if input_theta_commutator > tol {
        return Err(Error::Precondition(format!(
            "the compact form does not commute with theta (residual {input_theta_commutator:e})"
        )));
    }
    let input_tau_g_commutator = max_abs(&(tau_g * tau_u - tau_u * tau_g));
    // Real part of the Hermitian form -B(x, tau_u y).
    let mut g0 = DMatrix::zeros(2 * n, 2 * n);
    g0.view_mut((0, 0), (n, n)).copy_from(&(-killing));
    g0.view_mut((n, n), (n, n)).copy_from(killing);
    let g = &g0 * tau_u;
    let g = (&g + g.transpose()) * 0.5;
    let ge = SymmetricEigen::new(g.clone());
    let not_pair = |why: &str| Error::Computation(format!("input is not a compatible pair: {why}"));
    if ge.eigenvalues.iter().any(|&l| l <= tol) {
        return Err(not_pair("the form -B(x, tau_u y) is not positive definite"));
    }
    let sqrt_g = &ge.eigenvectors * DMatrix::from_diagonal(&ge.eigenvalues.map(f64::sqrt)) * ge.eigenvectors.transpose();
    let inv_sqrt_g =
        &ge.eigenvectors * DMatrix::from_diagonal(&ge.eigenvalues.map(|l| 1.0 / l.sqrt())) * ge.eigenvectors.transpose();
    let a = tau_g * tau_u;
    let p = &a * &a;
    // Self-adjointness of P with respect to G: G P = P^T G.
    let scale = 1.0f64.max(max_abs(&p)) * 1.0f64.max(max_abs(&g));
    let self_adjoint_residual = max_abs(&(&g * &p - p.transpose() * &g)) / scale;
    if self_adjoint_residual > tol {
        return Err(not_pair("(tau_g tau_u)^2 is not self-adjoint"));
    }
    let q = &sqrt_g * &p * &inv_sqrt_g;
    let q = (&q + q.transpose()) * 0.5;
    let qe = SymmetricEigen::new(q);
    if qe.eigenvalues.iter().any(|&l| l <= tol) {
        return Err(not_pair("(tau_g tau_u)^2 is not positive"));
    }
    let root = |e: f64| &qe.eigenvectors * DMatrix::from_diagonal(&qe.eigenvalues.map(|l| l.powf(e))) * qe.eigenvectors.transpose();
    let phi = &inv_sqrt_g * root(0.25) * &sqrt_g;
    let phi_inv = &inv_sqrt_g * root(-0.25) * &sqrt_g;
    let improved = &phi * tau_u * &phi_inv;
    let tau_u_inv = tau_u.clone().try_inverse().ok_or_else(|| not_pair("tau_u is singular"))?;
    let hel3_residual = max_abs(&(tau_u * &phi * tau_u_inv - &phi_inv));
    let tau_g_commutator = max_abs(&(tau_g * &improved - &improved * tau_g));
    let theta_commutator = max_abs(&(theta * &improved - &improved * theta));
    let involution_residual = max_abs(&(&improved * &improved - DMatrix::identity(2 * n, 2 * n)));
    let mut phi_spectrum: Vec<f64> = qe.eigenvalues.iter().map(|l| l.powf(0.25)).collect();
    phi_spectrum.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ImproveReport {
        phi: ApproxOperator::from_matrix(&phi, tol),
        improved: ApproxOperator::from_matrix(&improved, tol),
        phi_spectrum,
        input_tau_g_commutator,
        input_theta_commutator,
        self_adjoint_residual,
        tau_g_commutator,
        theta_commutator,
        hel3_residual,
        involution_residual,
        tolerance: tol,
    })
}

/// [`improve_compact_form_real`] for exact maps on a complexified algebra.
pub fn improve_compact_form(
    alg_c: &GradedAlgebra,
    tau_g: &SemilinearMap,
    tau_u_prime: &SemilinearMap,
    theta: &SemilinearMap,
    tol: f64,
) -> Result<ImproveReport> {
    check_dim(alg_c.dim(), tau_g.dim())?;
    check_dim(alg_c.dim(), tau_u_prime.dim())?;
    check_dim(alg_c.dim(), theta.dim())?;
    improve_compact_form_real(&killing_f64(alg_c), &realify(tau_g), &realify(tau_u_prime), &realify(theta), tol)
}

/// Conjugate a realified conjugation by `exp(ad (t x))` with a complex
/// scale `t = re + i im`, giving the compact form `exp(ad (t x))(u)`. Only
/// the imaginary part can break compatibility with the real form: real
/// automorphisms commute with complex conjugation.
pub fn perturb_conjugation(alg: &GradedAlgebra, x: &Element, t: (f64, f64), tau: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_dim(alg.dim(), x.dim())?;
    let n = alg.dim();
    let ad = alg.ad_matrix(x)?.to_dense();
    let a = DMatrix::from_fn(n, n, |i, j| rational_to_f64(ad.get(i, j)));
    let mut gen = DMatrix::zeros(2 * n, 2 * n);
    gen.view_mut((0, 0), (n, n)).copy_from(&(&a * t.0));
    gen.view_mut((n, n), (n, n)).copy_from(&(&a * t.0));
    gen.view_mut((0, n), (n, n)).copy_from(&(&a * -t.1));
    gen.view_mut((n, 0), (n, n)).copy_from(&(&a * t.1));
    let e = gen.exp();
    let e_inv = e.clone().try_inverse().ok_or_else(|| Error::Computation("exponential is singular".into()))?;
    Ok(e * tau * e_inv)
}
