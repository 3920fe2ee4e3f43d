use gradus::catalog::{self, SlGrading};
use gradus::jordan_sl2::{is_nilpotent, jmv_triple};
use gradus::lie::ops::bracket_span;
use gradus::lie::{CenterData, CenterElement, Element, GradedAlgebra, Subspace};
use gradus::linalg::{nilpotent_exp_apply, MPoly, SparseMatrix};
use gradus::nilclass::*;
use gradus::scalar::{q, qi, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a6() -> GradedAlgebra {
    catalog::build_sl2c_real()
}

/// sl4 with e = E13 + E24, an element of Jordan type (2, 2).
fn sl4_22() -> (GradedAlgebra, Element, Element) {
    let alg = catalog::build_sl(4, &SlGrading::Trivial).unwrap();
    let mut e = Element::zero(15);
    e.coords[alg.index_of("E13").unwrap()] = qi(1);
    e.coords[alg.index_of("E24").unwrap()] = qi(1);
    let h = jmv_triple(&alg, &e).unwrap().triple.h;
    (alg, e, h)
}

fn pipeline_data(alg: &GradedAlgebra, h: &Element) -> (SliceDecomposition, SliceDecomposition, GenericityData) {
    let s = slice(alg, h).unwrap();
    let c = slice_commutant(alg, &s).unwrap();
    let g = genericity_matrix(alg, &s, &c).unwrap();
    (s, c, g)
}

#[test]
fn a6_slice_commutant_and_genericity() {
    let alg = a6();
    let h = Element::basis(6, 0);
    let (s, c, g) = pipeline_data(&alg, &h);
    assert_eq!(s.component(-1), Subspace::span_of_indices(6, &[5]));
    assert_eq!(s.component(0), Subspace::span_of_indices(6, &[0]));
    assert_eq!(s.component(1), Subspace::span_of_indices(6, &[4]));
    assert_eq!(s.total_dim(), 3);
    assert_eq!(c.dims(), s.dims());
    let ids = slice_identities(&alg, &s, &c).unwrap();
    assert!(ids.g1 && ids.g01);
    assert_eq!((g.m(), g.n()), (1, 1));
    let minors = g.minors.as_ref().unwrap();
    assert_eq!(minors.len(), 1);
    assert_eq!(minors[0], MPoly::linear(&[qi(2)]));
    assert!(g.is_generic(&Element::basis(6, 4)).unwrap());
    assert!(!g.is_generic(&Element::zero(6)).unwrap());
}

#[test]
fn sl2_slice_has_three_pieces() {
    let alg = catalog::build_sl2();
    let s = slice(&alg, &Element::basis(3, 1)).unwrap();
    assert_eq!(s.dims().into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 1), (1, 1)]);
    assert!(s.component(1).contains_element(&Element::basis(3, 0)));
}

#[test]
fn slice_rejects_bad_characteristics() {
    let alg = a6();
    assert!(slice(&alg, &Element::basis(6, 1)).is_err());
    assert!(slice(&alg, &Element::basis(6, 3)).is_err());
}

#[test]
fn a6_pipeline_finds_two_exact_orbits() {
    let alg = a6();
    let r = classify_nilpotent_orbits(&alg, &Element::basis(6, 0), &ComponentOptions::default()).unwrap();
    assert_eq!(r.mode, Mode::Exact);
    assert_eq!(r.orbit_count, 2);
    let ie = Element::basis(6, 4);
    let reps: Vec<Element> = r.orbits.iter().map(|o| o.representative.clone()).collect();
    assert_eq!(reps, vec![ie.scale(&qi(-1)), ie]);
    for o in &r.orbits {
        assert!(o.verified.all());
        assert!(!o.certificates.is_empty());
    }
}

#[test]
fn sl2_pipeline_finds_two_orbits() {
    let alg = catalog::build_sl2();
    let r = classify_nilpotent_orbits(&alg, &Element::basis(3, 1), &ComponentOptions::default()).unwrap();
    assert_eq!((r.mode, r.orbit_count), (Mode::Exact, 2));
    assert_eq!(r.orbits[1].representative, Element::basis(3, 0));
}

#[test]
fn supports_of_small_examples() {
    let alg = a6();
    let sd = support(&alg, &Element::basis(6, 4)).unwrap();
    assert_eq!(sd.cartan_subspace, vec![Element::basis(6, 0)]);
    assert_eq!(sd.character, vec![qi(2)]);
    assert_eq!(sd.support.total_dim(), 3);
    assert!(sd.locally_flat && sd.maximality_verified);

    let sl2 = catalog::build_sl2();
    let sd = support(&sl2, &Element::basis(3, 0)).unwrap();
    assert_eq!(sd.support.total_dim(), 3);
    assert!(sd.locally_flat);
}

#[test]
fn support_in_sl4_extends_the_characteristic() {
    let (alg, e, h) = sl4_22();
    let sd = support(&alg, &e).unwrap();
    assert_eq!(sd.cartan_subspace[0], h);
    for (u, phi) in sd.cartan_subspace.iter().zip(&sd.character) {
        assert_eq!(alg.bracket(u, &e).unwrap(), e.scale(phi));
    }
    assert!(sd.support.component(1).contains_element(&e));
}

fn coherence_check(alg: &GradedAlgebra, h: &Element, seed: u64) {
    let (_, _, g) = pipeline_data(alg, h);
    let minors = g.minors.clone().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generic = 0;
    for t in 0..100 {
        // Include sparse points so the singular locus is hit too.
        let a: Vec<Rational> = (0..g.n())
            .map(|_| if t % 3 == 0 && rng.gen_bool(0.6) { Rational::zero() } else { q(rng.gen_range(-4..=4), rng.gen_range(1..=3)) })
            .collect();
        let x = g.element(&a);
        let full = g.is_generic(&x).unwrap();
        let some_minor = minors.iter().any(|p| !p.eval(&a).is_zero());
        let sum_sq = minors.iter().fold(Rational::zero(), |acc, p| {
            let v = p.eval(&a);
            acc + &v * &v
        });
        assert_eq!(full, some_minor);
        assert_eq!(full, sum_sq.is_positive());
        assert_eq!(sum_sq, g.gram_value(&a));
        // rank b(x) reproduces dim [g_0(h/2)', x].
        let span = bracket_span(alg, &Subspace::from_elements(alg.dim(), &g.f_basis).unwrap(), &Subspace::from_elements(alg.dim(), &[x]).unwrap()).unwrap();
        assert_eq!(span.dim(), g.rank_at(&a));
        generic += full as usize;
    }
    assert!(generic > 0);
}

#[test]
fn minor_criterion_matches_rank_on_random_points() {
    coherence_check(&a6(), &Element::basis(6, 0), 1);
    let (alg, _, h) = sl4_22();
    coherence_check(&alg, &h, 2);
}

#[test]
fn characteristic_slices_are_open_orbit_slices() {
    let (alg, e, h) = sl4_22();
    let (s, c, g) = pipeline_data(&alg, &h);
    assert!(s.component(1).contains_element(&e));
    assert!(g.is_generic(&e).unwrap());
    let ids = slice_identities(&alg, &s, &c).unwrap();
    assert!(ids.g1 && ids.g01);
    assert_eq!(bracket_span(&alg, &s.component(0), &Subspace::from_elements(15, &[e]).unwrap()).unwrap(), s.component(1));
}

#[test]
fn univariate_sets_are_exact() {
    // a^2 (a - 1)(a + 2): positive away from the roots -2, 0, 1 except on (-2, 1).
    let a = MPoly::var(1, 0);
    let p = a.mul(&a.sub(&MPoly::constant(1, qi(1)))).mul(&a.add(&MPoly::constant(1, qi(2))));
    let set = SemialgebraicSet::from_minors(vec![p]).unwrap();
    let r = component_analysis(&set, &ComponentOptions::default()).unwrap();
    assert_eq!((r.mode, r.class_count), (Mode::Exact, 4));
}

#[test]
fn quadrants_give_four_seeded_classes() {
    let a1 = MPoly::var(2, 0);
    let a2 = MPoly::var(2, 1);
    let set = SemialgebraicSet::from_minors(vec![a1.mul(&a2)]).unwrap();
    let opts = ComponentOptions { seed: 7, ..Default::default() };
    let r = component_analysis(&set, &opts).unwrap();
    assert_eq!((r.mode, r.class_count), (Mode::Heuristic, 4));
    assert_eq!(r.caveats, vec!["class_count is an upper bound on component count".to_string()]);
    let mut signs: Vec<(bool, bool)> = r.representatives.iter().map(|x| (x.coords[0].is_positive(), x.coords[1].is_positive())).collect();
    signs.sort();
    assert_eq!(signs, vec![(false, false), (false, true), (true, false), (true, true)]);
    let again = component_analysis(&set, &opts).unwrap();
    assert_eq!(again.representatives, r.representatives);
    assert_eq!(again.certificates, r.certificates);
}

#[test]
fn punctured_plane_is_one_class() {
    let a1 = MPoly::var(2, 0);
    let a2 = MPoly::var(2, 1);
    let set = SemialgebraicSet::from_minors(vec![a1.mul(&a1).add(&a2.mul(&a2))]).unwrap();
    let r = component_analysis(&set, &ComponentOptions::default()).unwrap();
    assert_eq!((r.mode, r.class_count), (Mode::Heuristic, 1));
}

#[test]
fn empty_set_is_reported() {
    let set = SemialgebraicSet::from_minors(vec![MPoly::zero(2)]).unwrap();
    let err = component_analysis(&set, &ComponentOptions::default()).unwrap_err();
    assert!(err.to_string().contains("set appears empty"));
}

fn minus_on_odd(alg: &GradedAlgebra) -> CenterData {
    let n = alg.dim();
    let cols: Vec<Vec<(usize, Rational)>> =
        (0..n).map(|j| vec![(j, if alg.degree(j) == 0 { qi(1) } else { qi(-1) })]).collect();
    CenterData {
        generators: vec![CenterElement { label: "theta".into(), order: 2, action: SparseMatrix::from_sparse_columns(n, &cols) }],
    }
}

#[test]
fn centre_cosets_merge_or_keep_components() {
    let alg = a6();
    let (_, _, g) = pipeline_data(&alg, &Element::basis(6, 0));
    let set = SemialgebraicSet::Gram(Box::new(g.clone()));
    let r = component_analysis(&set, &ComponentOptions::default()).unwrap();
    let kept = center_cosets(&alg, &g, &set, &r, &CenterData::trivial()).unwrap();
    assert_eq!(kept.orbit_count, 2);
    let merged = center_cosets(&alg, &g, &set, &r, &minus_on_odd(&alg)).unwrap();
    assert_eq!(merged.orbit_count, 1);
    assert_eq!(merged.orbits[0].components, vec![0, 1]);
    let id = CenterData {
        generators: vec![CenterElement { label: "id".into(), order: 1, action: SparseMatrix::identity(6) }],
    };
    assert_eq!(center_cosets(&alg, &g, &set, &r, &id).unwrap().orbit_count, 2);
    let bad = CenterData {
        generators: vec![CenterElement { label: "2".into(), order: 1, action: SparseMatrix::identity(6).scale(&qi(2)) }],
    };
    assert!(center_cosets(&alg, &g, &set, &r, &bad).is_err());
}

#[test]
fn fingerprints_separate_and_identify() {
    let alg = a6();
    let h = Element::basis(6, 0);
    assert_eq!(characteristics_distinct(&alg, &h, &h.scale(&qi(2))).unwrap(), Distinctness::Distinct);
    assert_eq!(characteristics_distinct(&alg, &h, &h.scale(&qi(-1))).unwrap(), Distinctness::PossiblyConjugate);
    let (sl4, _, h4) = sl4_22();
    let z = Element::basis(15, sl4.index_of("E13").unwrap());
    let moved = Element::new(nilpotent_exp_apply(&sl4.ad_matrix(&z).unwrap(), &h4.coords).unwrap());
    assert_ne!(moved, h4);
    assert_eq!(characteristics_distinct(&sl4, &h4, &moved).unwrap(), Distinctness::PossiblyConjugate);
}

#[test]
fn sl4_type_22_has_two_heuristic_orbits() {
    let (alg, e, h) = sl4_22();
    let opts = ComponentOptions { seed: 3, samples: 40, ..Default::default() };
    let r = classify_nilpotent_orbits(&alg, &h, &opts).unwrap();
    assert_eq!(r.mode, Mode::Heuristic);
    assert_eq!(r.orbit_count, 2);
    assert_eq!((r.genericity.m, r.genericity.n), (7, 4));
    for o in &r.orbits {
        assert!(o.verified.all(), "{:?}", o.verified);
        assert!(is_nilpotent(&alg, &o.representative).unwrap());
    }
    let (_, _, g) = pipeline_data(&alg, &h);
    assert!(g.is_generic(&e).unwrap());
}

#[test]
fn orbit_moves_preserve_classes() {
    let (alg, _, h) = sl4_22();
    let (_, _, g) = pipeline_data(&alg, &h);
    let set = SemialgebraicSet::Gram(Box::new(g.clone()));
    let opts = ComponentOptions { seed: 5, samples: 40, ..Default::default() };
    let r = component_analysis(&set, &opts).unwrap();
    let moves = orbit_move_matrices(&alg, &g, 6, 11).unwrap();
    assert!(!moves.is_empty());
    for (c, rep) in r.representatives.iter().enumerate() {
        for mv in &moves {
            let img = mv.mul_vec(&rep.coords).unwrap();
            assert!(set.value(&img).is_positive());
            let same = (0..r.points.len())
                .filter(|&i| r.class_of_point[i] == c)
                .any(|i| set.segment_positive(&r.points[i].coords, &img));
            assert!(same, "orbit move left class {c}");
        }
    }
}

#[test]
fn e8_root_vector_pipeline_verifies() {
    let alg = catalog::build_e8_split_z3().unwrap();
    let e = Element::basis(alg.dim(), alg.index_of("e123").unwrap());
    let h = jmv_triple(&alg, &e).unwrap().triple.h;
    let (s, c, g) = pipeline_data(&alg, &h);
    assert!(s.component(1).dim() >= 1 && s.component(1).contains_element(&e));
    assert!(g.is_generic(&e).unwrap());
    // The centre of the degree-0 piece is the line of h = [e, f], so it
    // survives in the commutant.
    let centre = gradus::lie::ops::center_of(&alg, &s.component(0)).unwrap();
    assert_eq!(centre, Subspace::from_elements(alg.dim(), std::slice::from_ref(&h)).unwrap());
    assert_eq!(c.component(0), s.component(0));
    let sd = support(&alg, &e).unwrap();
    assert!(sd.support.component(1).contains_element(&e));
    let r = classify_nilpotent_orbits(&alg, &h, &ComponentOptions::default()).unwrap();
    assert!(r.orbit_count >= 1);
    for o in &r.orbits {
        assert!(o.verified.all());
    }
}
