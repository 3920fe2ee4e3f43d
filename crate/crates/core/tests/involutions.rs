//! Compatibility relations, grading reversal and compact-form improvement.

use gradus::catalog;
use gradus::involutions::*;
use gradus::lie::semilinear::SemilinearMap;
use gradus::lie::{Element, GradedAlgebra};
use gradus::linalg::SparseMatrix;
use gradus::scalar::{qi, Gaussian, Rational};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 6] = ["sl2", "sl2-z2-diag", "sl2c-real-z2", "sl8", "e7-split-z2", "e8-split-z3"];

fn permutation(n: usize, a: usize, b: usize) -> SparseMatrix<Gaussian> {
    let cols: Vec<Vec<(usize, Gaussian)>> = (0..n)
        .map(|j| {
            let t = if j == a { b } else if j == b { a } else { j };
            vec![(t, Gaussian::real(qi(1)))]
        })
        .collect();
    SparseMatrix::from_sparse_columns(n, &cols)
}

#[test]
fn catalog_real_forms_are_compatible_with_their_gradings() {
    for name in NAMES {
        let alg = catalog::build(name).unwrap();
        let (c, tau_g) = catalog::complexify(&alg).unwrap();
        let theta = catalog::theta_automorphism(&c).unwrap();
        let r = check_compatibility(&c, &tau_g, &theta).unwrap();
        assert!(r.comp_holds && r.comp2_holds && r.grad_holds && r.equivalent, "{name}: {r:?}");
        let tau_u = catalog::compact_form_conjugation(&c).unwrap();
        let rc = is_r_compatible(&c, &tau_u, &theta).unwrap();
        assert!(rc.r_compatible, "{name}: {rc:?}");
        for b in &rc.blocks {
            assert_eq!(b.image, (alg.modulus() - b.degree) % alg.modulus(), "{name}");
        }
    }
}

#[test]
fn grading_breaking_permutation_is_caught_with_a_witness() {
    let a6 = catalog::build("sl2c-real-z2").unwrap();
    let (c, _) = catalog::complexify(&a6).unwrap();
    let theta = catalog::theta_automorphism(&c).unwrap();
    // Swap H (degree 0) with iH (degree 1), then conjugate.
    let tau = SemilinearMap::Matrix { matrix: permutation(6, 0, 3), conjugate: true };
    let r = check_compatibility(&c, &tau, &theta).unwrap();
    assert!(!r.comp_holds && !r.comp2_holds && !r.grad_holds && r.equivalent);
    let w = r.witness.unwrap();
    assert_eq!((w.relation.as_str(), w.basis), ("comp", 0));
}

#[test]
fn non_involutive_conjugation_is_a_precondition_error() {
    let sl2 = catalog::build_sl2();
    let (c, _) = catalog::complexify(&sl2).unwrap();
    let theta = catalog::theta_automorphism(&c).unwrap();
    let two = SparseMatrix::identity(3).scale(&Gaussian::real(qi(2)));
    let tau = SemilinearMap::Matrix { matrix: two, conjugate: true };
    assert!(check_compatibility(&c, &tau, &theta).is_err());
    let wrong = SemilinearMap::standard_conjugation(4);
    assert!(check_compatibility(&c, &wrong, &theta).is_err());
}

#[test]
fn comp_and_comp2_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algs: Vec<GradedAlgebra> = ["sl2-z2-diag", "sl2c-real-z2"].iter().map(|n| catalog::build(n).unwrap()).collect();
    for trial in 0..50 {
        let alg = &algs[trial % 2];
        let (c, tau_g) = catalog::complexify(alg).unwrap();
        let n = c.dim();
        let base = if rng.gen_bool(0.5) { tau_g } else { catalog::compact_form_conjugation(&c).unwrap() };
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let p = permutation(n, a, b);
        let tau = match base {
            SemilinearMap::Matrix { matrix, conjugate } => {
                // P tau P is again an involution.
                SemilinearMap::Matrix { matrix: p.mul(&matrix).unwrap().mul(&p).unwrap(), conjugate }
            }
            _ => unreachable!(),
        };
        let theta = catalog::theta_automorphism(&c).unwrap();
        let r = check_compatibility(&c, &tau, &theta).unwrap();
        assert_eq!(r.comp_holds, r.comp2_holds, "trial {trial}");
        assert!(r.equivalent);
    }
}

#[test]
fn a6_theta_is_plus_minus_one_and_sign_on_g1() {
    let a6 = catalog::build("sl2c-real-z2").unwrap();
    let (c, _) = catalog::complexify(&a6).unwrap();
    let theta = catalog::theta_automorphism(&c).unwrap();
    let (re, im, conj) = theta.complex_matrix();
    assert!(!conj);
    let diag: Vec<f64> = (0..6).map(|i| re[i * 6 + i]).collect();
    assert_eq!(diag, vec![1.0, 1.0, 1.0, -1.0, -1.0, -1.0]);
    assert!(im.iter().all(|x| x.abs() < 1e-15));
}

#[test]
fn identity_map_is_not_of_compact_type() {
    let a6 = catalog::build("sl2c-real-z2").unwrap();
    let (c, _) = catalog::complexify(&a6).unwrap();
    let theta = catalog::theta_automorphism(&c).unwrap();
    let id = SemilinearMap::Matrix { matrix: SparseMatrix::identity(6), conjugate: false };
    let r = is_r_compatible(&c, &id, &theta).unwrap();
    assert!(!r.r_compatible);
    assert_eq!(r.reason.as_deref(), Some("not an involution of compact type"));
}

#[test]
fn sl2_compact_form_fixes_the_expected_span() {
    let sl2 = catalog::build_sl2();
    let (c, _) = catalog::complexify(&sl2).unwrap();
    let tau_u = catalog::compact_form_conjugation(&c).unwrap();
    let one = Gaussian::real(qi(1));
    let z = Gaussian::real(qi(0));
    let i = Gaussian::i();
    // tau_u(E) = -F
    assert_eq!(tau_u.apply_gaussian(&[one.clone(), z.clone(), z.clone()]).unwrap(), vec![z.clone(), z.clone(), -one.clone()]);
    // E - F, i(E + F), iH are fixed.
    for v in [
        vec![one.clone(), z.clone(), -one.clone()],
        vec![i.clone(), z.clone(), i.clone()],
        vec![z.clone(), i.clone(), z.clone()],
    ] {
        assert_eq!(tau_u.apply_gaussian(&v).unwrap(), v);
    }
}

#[test]
fn degree_reversal_intertwines_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["sl2c-real-z2", "e7-split-z2", "e8-split-z3"] {
        let alg = catalog::build(name).unwrap();
        let (c, _) = catalog::complexify(&alg).unwrap();
        let tau_u = catalog::compact_form_conjugation(&c).unwrap();
        let g0 = alg.basis_indices_of_degree(0);
        let g1 = alg.basis_indices_of_degree(1);
        let n = alg.dim();
        for _ in 0..50 {
            let z = Element::basis(n, g0[rng.gen_range(0..g0.len())]);
            let mut x = Element::zero(n);
            for _ in 0..3 {
                let k = g1[rng.gen_range(0..g1.len())];
                x.coords[k] += Rational::from_integer(rng.gen_range(-3i64..=3).into());
            }
            let lhs = degree_reversal_map(&alg, &tau_u, &alg.bracket(&z, &x).unwrap()).unwrap();
            let rhs = alg
                .bracket(&degree_reversal_map(&alg, &tau_u, &z).unwrap(), &degree_reversal_map(&alg, &tau_u, &x).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{name}");
            let y = degree_reversal_map(&alg, &tau_u, &x).unwrap();
            if !x.is_zero() {
                assert_eq!(alg.homogeneous_degree(&y), Some(alg.reduce_degree(-1)));
            }
            assert_eq!(degree_reversal_map(&alg, &tau_u, &y).unwrap(), x);
        }
    }
}

#[test]
fn degree_reversal_twice_is_identity_on_every_basis_vector() {
    for name in NAMES {
        let alg = catalog::build(name).unwrap();
        let (c, _) = catalog::complexify(&alg).unwrap();
        let tau_u = catalog::compact_form_conjugation(&c).unwrap();
        for j in 0..alg.dim() {
            let e = Element::basis(alg.dim(), j);
            let back = degree_reversal_map(&alg, &tau_u, &degree_reversal_map(&alg, &tau_u, &e).unwrap()).unwrap();
            assert_eq!(back, e, "{name} {j}");
        }
    }
}

#[test]
fn improving_an_already_compatible_form_is_the_identity() {
    let sl2 = catalog::build_sl2();
    let (c, tau_g) = catalog::complexify(&sl2).unwrap();
    let theta = catalog::theta_automorphism(&c).unwrap();
    let tau_u = catalog::compact_form_conjugation(&c).unwrap();
    let r = improve_compact_form(&c, &tau_g, &tau_u, &theta, 1e-9).unwrap();
    let phi = r.phi.to_matrix();
    assert!((phi - DMatrix::identity(6, 6)).abs().max() < 1e-12);
}

fn improve_after_perturbation(x: &Element, t: (f64, f64)) -> (f64, ImproveReport) {
    let sl2 = catalog::build_sl2();
    let (c, tau_g) = catalog::complexify(&sl2).unwrap();
    let theta = realify(&catalog::theta_automorphism(&c).unwrap());
    let tau_u = realify(&catalog::compact_form_conjugation(&c).unwrap());
    let perturbed = perturb_conjugation(&sl2, x, t, &tau_u).unwrap();
    let tg = realify(&tau_g);
    let broken = (&tg * &perturbed - &perturbed * &tg).abs().max();
    (broken, improve_compact_form_real(&killing_f64(&c), &tg, &perturbed, &theta, 1e-9).unwrap())
}

#[test]
fn real_perturbation_by_exp_ad_h_keeps_compatibility() {
    // exp(ad(H/4)) is a real automorphism, so it commutes with tau_g.
    let (broken, r) = improve_after_perturbation(&Element::basis(3, 1), (0.25, 0.0));
    assert!(broken < 1e-12);
    assert!(r.tau_g_commutator < 1e-9 && r.hel3_residual < 1e-9);
    assert!(r.phi_spectrum.iter().all(|l| (l - 1.0).abs() < 1e-9));
}

#[test]
fn perturbed_sl2_compact_form_is_restored() {
    // i(E - F) lies in i k, outside both g and u.
    let (broken, r) = improve_after_perturbation(&Element::from_ints(&[1, 0, -1]), (0.0, 0.25));
    assert!(broken > 1e-3, "perturbation must break compatibility");
    assert!(r.tau_g_commutator < 1e-9, "{}", r.tau_g_commutator);
    assert!(r.hel3_residual < 1e-9, "{}", r.hel3_residual);
    assert!(r.theta_commutator < 1e-9);
    assert!(r.involution_residual < 1e-9);
    assert!(r.phi_spectrum.iter().any(|l| (l - 1.0).abs() > 1e-3));
}
