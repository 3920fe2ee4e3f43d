use gradus::catalog::{self, SlBasis, SlGrading};
use gradus::jordan_sl2::*;
use gradus::lie::{Element, GradedAlgebra};
use gradus::linalg::{nilpotent_exp_apply, Matrix, Poly};
use gradus::scalar::{q, qi, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense_ad(alg: &GradedAlgebra, x: &Element) -> Matrix<Rational> {
    alg.ad_matrix(x).unwrap().to_dense()
}

/// Characteristic polynomial by Faddeev-LeVerrier.
fn charpoly(m: &Matrix<Rational>) -> Poly<Rational> {
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let shifted = mk.add(&Matrix::identity(n).scale(&coeffs[n - k + 1])).unwrap();
        mk = m.mul(&shifted).unwrap();
        coeffs[n - k] = -mk.trace() / Rational::from_integer((k as i64).into());
    }
    Poly::new(coeffs)
}

fn oracle_nilpotent(alg: &GradedAlgebra, x: &Element) -> bool {
    let a = dense_ad(alg, x);
    a.pow(alg.dim() as u32).unwrap().is_zero()
}

fn oracle_semisimple(alg: &GradedAlgebra, x: &Element) -> bool {
    let a = dense_ad(alg, x);
    let chi = charpoly(&a);
    let p = chi.div_rem(&chi.gcd(&chi.derivative())).unwrap().0;
    p.eval_matrix(&a).unwrap().is_zero()
}

fn small_catalog() -> Vec<GradedAlgebra> {
    vec![
        catalog::build_sl2(),
        catalog::build_sl2_z2_diag(),
        catalog::build_sl2c_real(),
        catalog::build_sl(3, &SlGrading::Trivial).unwrap(),
        catalog::build_sl(3, &SlGrading::DiagonalInvolution(vec![1, 1, -1])).unwrap(),
    ]
}

fn random_element(rng: &mut ChaCha8Rng, alg: &GradedAlgebra, degree: Option<i64>) -> Element {
    let n = alg.dim();
    let idx: Vec<usize> = match degree {
        Some(d) => alg.basis_indices_of_degree(d),
        None => (0..n).collect(),
    };
    let mut x = Element::zero(n);
    // Sparse supports produce nilpotent and mixed elements often enough.
    let k = rng.gen_range(1..=idx.len());
    for _ in 0..k {
        let i = idx[rng.gen_range(0..idx.len())];
        x.coords[i] = q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    }
    x
}

#[test]
fn predicates_on_the_a6_algebra() {
    let a = catalog::build_sl2c_real();
    let ie = Element::basis(6, 4);
    assert!(is_nilpotent(&a, &ie).unwrap());
    assert!(is_semisimple(&a, &Element::basis(6, 0)).unwrap());
    assert!(!is_semisimple(&a, &ie).unwrap());
}

#[test]
fn random_jordan_decompositions_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algs = small_catalog();
    for t in 0..100 {
        let alg = &algs[t % algs.len()];
        let deg = if t % 3 == 0 { Some((t % 2) as i64) } else { None };
        let x = random_element(&mut rng, alg, deg);
        let j = jordan_decompose(alg, &x).unwrap();
        assert_eq!(j.xs.add(&j.xn), x);
        assert!(alg.bracket(&j.xs, &j.xn).unwrap().is_zero());
        assert!(oracle_semisimple(alg, &j.xs), "xs not semisimple for {:?}", x);
        assert!(oracle_nilpotent(alg, &j.xn));
        assert_eq!(is_nilpotent(alg, &x).unwrap(), oracle_nilpotent(alg, &x));
        assert_eq!(is_semisimple(alg, &x).unwrap(), oracle_semisimple(alg, &x));
        if let Some(d) = alg.homogeneous_degree(&x) {
            for p in [&j.xs, &j.xn] {
                assert!(p.is_zero() || alg.homogeneous_degree(p) == Some(d));
            }
        }
        // Idempotence.
        assert_eq!(jordan_decompose(alg, &j.xs).unwrap(), JordanPair { xs: j.xs.clone(), xn: Element::zero(alg.dim()) });
        assert_eq!(jordan_decompose(alg, &j.xn).unwrap(), JordanPair { xs: Element::zero(alg.dim()), xn: j.xn.clone() });
    }
}

#[test]
fn a6_jmv_triple_is_h_ie_minus_if() {
    let a = catalog::build_sl2c_real();
    let r = jmv_triple(&a, &Element::basis(6, 4)).unwrap();
    assert_eq!(r.triple.h, Element::basis(6, 0));
    assert_eq!(r.triple.f, Element::basis(6, 5).neg());
    assert_eq!(characteristic(&a, &Element::basis(6, 4)).unwrap(), Element::basis(6, 0));
}

#[test]
fn sl2_triple_is_standard() {
    let a = catalog::build_sl2();
    let r = jmv_triple(&a, &Element::basis(3, 0)).unwrap();
    assert_eq!(r.triple, Sl2Triple { h: Element::basis(3, 1), e: Element::basis(3, 0), f: Element::basis(3, 2) });
}

#[test]
fn jmv_rejects_bad_inputs() {
    let a = catalog::build_sl2c_real();
    assert!(jmv_triple(&a, &Element::zero(6)).is_err());
    assert!(jmv_triple(&a, &Element::basis(6, 1)).is_err(), "degree 0 input");
    assert!(jmv_triple(&a, &Element::basis(6, 3)).is_err(), "iH is semisimple");
}

#[test]
fn scaled_nilpotents_have_equal_characteristic_spectra() {
    let a = catalog::build_sl2c_real();
    let e = Element::basis(6, 4);
    let h1 = characteristic(&a, &e).unwrap();
    let h2 = characteristic(&a, &e.scale(&qi(4))).unwrap();
    let spec = |h: &Element| charpoly(&dense_ad(&a, h));
    assert_eq!(spec(&h1), spec(&h2));
}

#[test]
fn conjugating_characteristics_in_a6() {
    let a = catalog::build_sl2c_real();
    let e = Element::basis(6, 4);
    let h = Element::basis(6, 0);
    let u = unipotent_radical_algebra(&a, &e).unwrap();
    assert_eq!(u.dim(), 1);
    let v = u.elements()[0].clone();
    let h2 = h.add(&v);
    let c = conjugate_characteristics(&a, &e, &h, &h2).unwrap();
    assert_eq!(c.apply(&a, &h).unwrap(), h2);
    assert_eq!(c.apply(&a, &e).unwrap(), e);
    let t = Sl2Triple { h: h2.clone(), e: e.clone(), f: c.f_image.clone() };
    assert!(t.relations_hold(&a).unwrap());
    // Identity case.
    let id = conjugate_characteristics(&a, &e, &h, &h).unwrap();
    assert!(id.z.is_zero());
    // A non-characteristic is rejected.
    assert!(conjugate_characteristics(&a, &e, &h, &h.scale(&qi(2))).is_err());
}

#[test]
fn conjugating_characteristics_in_sl3() {
    // e = E13 in sl3: u(e) is 2-dimensional with ad h eigenvalues 1, 1.
    let a = catalog::build_sl(3, &SlGrading::Trivial).unwrap();
    let b = SlBasis::new(3);
    let e = Element::basis(8, b.e(0, 2));
    let h = characteristic(&a, &e).unwrap();
    let u = unipotent_radical_algebra(&a, &e).unwrap();
    assert!(u.dim() >= 1);
    let v = Element::combination(8, &u.elements().iter().enumerate().map(|(i, x)| (qi(i as i64 + 2), x)).collect::<Vec<_>>());
    let h2 = h.add(&v);
    let c = conjugate_characteristics(&a, &e, &h, &h2).unwrap();
    assert_eq!(c.apply(&a, &h).unwrap(), h2);
    assert!(c.eigenvalues.iter().all(|l| l.is_integer() && *l > Rational::zero()));
}

#[test]
fn scaling_certificates() {
    let a = catalog::build_sl2c_real();
    let d = scaling_diagnostic(&a, &Element::basis(6, 4), &Element::basis(6, 0)).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].eigenvalue, qi(1));
    assert_eq!(d[0].component, Element::basis(6, 4));
    let s = catalog::build_sl2();
    let d = scaling_diagnostic(&s, &Element::basis(3, 0), &Element::basis(3, 1)).unwrap();
    assert_eq!((d[0].eigenvalue.clone(), d[0].component.clone()), (qi(1), Element::basis(3, 0)));
    // F has eigenvalue -1 under ad(H/2): no certificate.
    assert!(scaling_diagnostic(&s, &Element::basis(3, 2), &Element::basis(3, 1)).is_err());
}

/// Degree-1 nilpotent inputs: root vectors and exp(ad z)-conjugates by
/// degree-0 nilpotent z.
fn nilpotent_inputs() -> Vec<(GradedAlgebra, Element)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a6 = catalog::build_sl2c_real();
    let sl2 = catalog::build_sl2();
    let sl2d = catalog::build_sl2_z2_diag();
    let sl4 = catalog::build_sl(4, &SlGrading::DiagonalInvolution(vec![1, 1, -1, -1])).unwrap();
    let sl3 = catalog::build_sl(3, &SlGrading::Trivial).unwrap();
    let b4 = SlBasis::new(4);
    let b3 = SlBasis::new(3);
    let roots: Vec<(&GradedAlgebra, Element)> = vec![
        (&a6, Element::basis(6, 4)),
        (&a6, Element::basis(6, 5)),
        (&sl2, Element::basis(3, 0)),
        (&sl2, Element::basis(3, 2)),
        (&sl2d, Element::basis(3, 0)),
        (&sl2d, Element::basis(3, 2)),
        (&sl4, Element::basis(15, b4.e(0, 2))),
        (&sl4, Element::basis(15, b4.e(1, 3)).add(&Element::basis(15, b4.e(0, 2)))),
        (&sl4, Element::basis(15, b4.e(3, 0))),
        (&sl3, Element::basis(8, b3.e(0, 1)).add(&Element::basis(8, b3.e(1, 2)))),
        (&sl3, Element::basis(8, b3.e(0, 2))),
    ];
    for (alg, e) in &roots {
        out.push(((*alg).clone(), e.clone()));
    }
    // Conjugates by exp(ad z), z a multiple of a degree-0 root vector.
    for t in 0..14 {
        let (alg, e) = &roots[t % roots.len()];
        let g0: Vec<usize> = alg
            .basis_indices_of_degree(0)
            .into_iter()
            .filter(|&i| alg.extras().weights.as_ref().is_some_and(|w| w[i].is_some()))
            .collect();
        let z = if g0.is_empty() {
            Element::zero(alg.dim())
        } else {
            Element::basis(alg.dim(), g0[rng.gen_range(0..g0.len())]).scale(&q(rng.gen_range(-3..=3), 2))
        };
        let ad = alg.ad_matrix(&z).unwrap();
        let conj = Element::new(nilpotent_exp_apply(&ad, &e.coords).unwrap());
        out.push(((*alg).clone(), conj));
    }
    out
}

#[test]
fn twenty_five_jmv_triples_are_exact_and_unique() {
    let inputs = nilpotent_inputs();
    assert_eq!(inputs.len(), 25);
    for (alg, e) in &inputs {
        let r = jmv_triple(alg, e).unwrap();
        assert!(r.triple.relations_hold(alg).unwrap());
        assert_eq!(r.uniqueness_kernel_dim, 0);
        assert!(image_of_degree_minus_one(alg, e).unwrap().contains_element(&r.triple.h));
        assert_eq!(alg.homogeneous_degree(&r.triple.h).unwrap_or(0), 0);
        let d = scaling_diagnostic(alg, e, &r.triple.h).unwrap();
        assert!(d.iter().all(|c| c.eigenvalue > Rational::zero()));
    }
}

#[test]
fn exceptional_root_vectors_have_exact_triples() {
    let e7 = catalog::build_e7_split_z2().unwrap();
    let e8 = catalog::build_e8_split_z3().unwrap();
    for (alg, label) in [(&e7, "e1234"), (&e8, "e123")] {
        let i = alg.index_of(label).unwrap();
        let e = Element::basis(alg.dim(), i);
        let r = jmv_triple(alg, &e).unwrap();
        assert!(r.triple.relations_hold(alg).unwrap());
        assert_eq!(r.uniqueness_kernel_dim, 0);
        // h lies in the diagonal Cartan subalgebra.
        let cartan = alg.extras().cartan_basis.clone().unwrap();
        assert!(r.triple.h.support().iter().all(|k| cartan.contains(k)));
        let d = scaling_diagnostic(alg, &e, &r.triple.h).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].eigenvalue, qi(1));
    }
}
