//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

use gradus::catalog::{self, SlBasis, SlGrading};
use gradus::exterior::*;
use gradus::involutions::*;
use gradus::jordan_sl2::*;
use gradus::lie::ops::bracket_span;
use gradus::lie::{verify_axioms, Element, GradedAlgebra, Subspace};
use gradus::linalg::{nilpotent_exp_apply, MPoly, Matrix, Poly};
use gradus::nilclass::*;
use gradus::scalar::{q, qi, Rational};
use gradus::z2_orbits::{catalog_cartan_decomposition, mixed_conjugacy, MixedOptions, Verdict};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

/// Residual bound for the numeric compact-form improvement.
const IMPROVE_TOL: f64 = 1e-9;

fn main() {
    let criteria: [(&str, fn() -> String); 10] = [
        ("A6 nilpotent orbits", c1_a6_orbits),
        ("exceptional catalog dimensions and axioms", c2_catalog),
        ("JMV triples", c3_jmv),
        ("Jordan decomposition properties", c4_jordan),
        ("compatibility suite", c5_compatibility),
        ("compact form improvement", c6_improve),
        ("genericity and minor coherence", c7_genericity),
        ("semialgebraic engine", c8_semialgebraic),
        ("Z2 pipeline verdicts", c9_z2),
        ("exterior equivariance", c10_exterior),
    ];
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(p) => {
                failed += 1;
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2}: FAIL  {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    std::panic::set_hook(default_hook);
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) {
    if !cond {
        panic!("{}", msg());
    }
}

// 1

fn c1_a6_orbits() -> String {
    let t = Instant::now();
    let alg = catalog::build("sl2c-real-z2").unwrap();
    let h = Element::basis(6, alg.index_of("H").unwrap());
    let r = classify_nilpotent_orbits(&alg, &h, &ComponentOptions::default()).unwrap();
    let secs = t.elapsed().as_secs_f64();
    check(r.mode == Mode::Exact, || format!("mode {:?}", r.mode));
    check(r.orbit_count == 2, || format!("{} orbits", r.orbit_count));
    let ie = Element::basis(6, alg.index_of("iE").unwrap());
    let mut reps: Vec<Element> = r.orbits.iter().map(|o| o.representative.clone()).collect();
    reps.sort_by(|a, b| a.coords.cmp(&b.coords));
    let mut want = vec![ie.clone(), ie.neg()];
    want.sort_by(|a, b| a.coords.cmp(&b.coords));
    check(reps == want, || format!("representatives {reps:?}"));
    check(r.orbits.iter().all(|o| o.verified.all()), || "unverified orbit".into());
    check(secs < 1.0, || format!("runtime {secs:.2}s"));
    "2 exact orbits {iE, -iE}".into()
}

// 2

fn c2_catalog() -> String {
    let mut out = Vec::new();
    for (name, dims) in [("e7-split-z2", vec![133, 63, 70]), ("e8-split-z3", vec![248, 80, 84, 84])] {
        let t = Instant::now();
        let alg = catalog::build(name).unwrap();
        let r = verify_axioms(&alg);
        let mut got = vec![r.dim];
        got.extend(r.degree_dims.iter().copied());
        check(got == dims, || format!("{name}: dims {got:?}"));
        check(r.passed, || format!("{name}: {:?}", r.violations));
        let secs = t.elapsed().as_secs_f64();
        check(secs < 300.0, || format!("{name}: {secs:.0}s"));
        out.push(format!("{name} {got:?} {secs:.1}s"));
    }
    out.join(", ")
}

// 3

/// 24 degree-1 nilpotents at sl level and one e8 root vector.
fn nilpotent_inputs() -> Vec<(GradedAlgebra, Element)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a6 = catalog::build_sl2c_real();
    let sl2 = catalog::build_sl2();
    let sl2d = catalog::build_sl2_z2_diag();
    let sl4 = catalog::build_sl(4, &SlGrading::DiagonalInvolution(vec![1, 1, -1, -1])).unwrap();
    let sl3 = catalog::build_sl(3, &SlGrading::Trivial).unwrap();
    let (b4, b3) = (SlBasis::new(4), SlBasis::new(3));
    let basis = |alg: &GradedAlgebra, i: usize| Element::basis(alg.dim(), i);
    let roots: Vec<(GradedAlgebra, Element)> = vec![
        (a6.clone(), basis(&a6, 4)),
        (a6.clone(), basis(&a6, 5)),
        (sl2.clone(), basis(&sl2, 0)),
        (sl2.clone(), basis(&sl2, 2)),
        (sl2d.clone(), basis(&sl2d, 0)),
        (sl2d.clone(), basis(&sl2d, 2)),
        (sl4.clone(), basis(&sl4, b4.e(0, 2))),
        (sl4.clone(), basis(&sl4, b4.e(1, 3)).add(&basis(&sl4, b4.e(0, 2)))),
        (sl4.clone(), basis(&sl4, b4.e(3, 0))),
        (sl3.clone(), basis(&sl3, b3.e(0, 1)).add(&basis(&sl3, b3.e(1, 2)))),
        (sl3.clone(), basis(&sl3, b3.e(0, 2))),
    ];
    let mut out = roots.clone();
    for t in 0..13 {
        let (alg, e) = &roots[t % roots.len()];
        let g0: Vec<usize> = alg
            .basis_indices_of_degree(0)
            .into_iter()
            .filter(|&i| alg.extras().weights.as_ref().is_some_and(|w| w[i].is_some()))
            .collect();
        let z = if g0.is_empty() {
            Element::zero(alg.dim())
        } else {
            basis(alg, g0[rng.gen_range(0..g0.len())]).scale(&q(rng.gen_range(-3..=3), 2))
        };
        let ad = alg.ad_matrix(&z).unwrap();
        out.push((alg.clone(), Element::new(nilpotent_exp_apply(&ad, &e.coords).unwrap())));
    }
    let e8 = catalog::build_e8_split_z3().unwrap();
    let e = basis(&e8, e8.index_of("e123").unwrap());
    out.push((e8, e));
    out
}

fn c3_jmv() -> String {
    let inputs = nilpotent_inputs();
    check(inputs.len() == 25, || format!("{} inputs", inputs.len()));
    let t = Instant::now();
    let mut sl_secs = 0.0;
    for (k, (alg, e)) in inputs.iter().enumerate() {
        check(is_nilpotent(alg, e).unwrap(), || format!("input {k} is not nilpotent"));
        let r = jmv_triple(alg, e).unwrap();
        let tr = &r.triple;
        check(alg.bracket(&tr.h, &tr.e).unwrap() == tr.e.scale(&qi(2)), || format!("{k}: [h,e] != 2e"));
        check(alg.bracket(&tr.h, &tr.f).unwrap() == tr.f.scale(&qi(-2)), || format!("{k}: [h,f] != -2f"));
        check(alg.bracket(&tr.e, &tr.f).unwrap() == tr.h, || format!("{k}: [e,f] != h"));
        check(tr.e == *e, || format!("{k}: e changed"));
        check(image_of_degree_minus_one(alg, e).unwrap().contains_element(&tr.h), || format!("{k}: h not in [e, g_-1]"));
        check(r.uniqueness_kernel_dim == 0, || format!("{k}: kernel dim {}", r.uniqueness_kernel_dim));
        if k == 23 {
            sl_secs = t.elapsed().as_secs_f64();
        }
    }
    let total = t.elapsed().as_secs_f64();
    check(sl_secs < 30.0, || format!("sl-level {sl_secs:.1}s"));
    check(total < 600.0, || format!("total {total:.1}s"));
    format!("25 exact triples, sl-level {sl_secs:.1}s, with e8 {total:.1}s")
}

// 4

/// Characteristic polynomial by Faddeev-LeVerrier.
fn charpoly(m: &Matrix<Rational>) -> Poly<Rational> {
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let shifted = mk.add(&Matrix::identity(n).scale(&coeffs[n - k + 1])).unwrap();
        mk = m.mul(&shifted).unwrap();
        coeffs[n - k] = -mk.trace() / qi(k as i64);
    }
    Poly::new(coeffs)
}

/// ad x is semisimple iff the squarefree part of its characteristic
/// polynomial annihilates it.
fn oracle_semisimple(alg: &GradedAlgebra, x: &Element) -> bool {
    let a = alg.ad_matrix(x).unwrap().to_dense();
    let chi = charpoly(&a);
    let p = chi.div_rem(&chi.gcd(&chi.derivative())).unwrap().0;
    p.eval_matrix(&a).unwrap().is_zero()
}

fn oracle_nilpotent(alg: &GradedAlgebra, x: &Element) -> bool {
    alg.ad_matrix(x).unwrap().to_dense().pow(alg.dim() as u32).unwrap().is_zero()
}

fn c4_jordan() -> String {
    let algs = [catalog::build_sl2(),
        catalog::build_sl2_z2_diag(),
        catalog::build_sl2c_real(),
        catalog::build_sl(3, &SlGrading::Trivial).unwrap(),
        catalog::build_sl(3, &SlGrading::DiagonalInvolution(vec![1, 1, -1])).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut nil, mut ss, mut homog) = (0, 0, 0);
    for t in 0..100 {
        let alg = &algs[t % algs.len()];
        check(alg.dim() <= 10, || "dimension bound".into());
        let idx: Vec<usize> = if t % 3 == 0 { alg.basis_indices_of_degree((t % 2) as i64) } else { (0..alg.dim()).collect() };
        let mut x = Element::zero(alg.dim());
        for _ in 0..rng.gen_range(1..=idx.len()) {
            x.coords[idx[rng.gen_range(0..idx.len())]] = q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        }
        let j = jordan_decompose(alg, &x).unwrap();
        check(j.xs.add(&j.xn) == x, || format!("{t}: xs + xn != x"));
        check(alg.bracket(&j.xs, &j.xn).unwrap().is_zero(), || format!("{t}: [xs, xn] != 0"));
        check(oracle_semisimple(alg, &j.xs) && oracle_nilpotent(alg, &j.xn), || format!("{t}: parts"));
        let n = is_nilpotent(alg, &x).unwrap();
        let s = is_semisimple(alg, &x).unwrap();
        check(n == oracle_nilpotent(alg, &x) && s == oracle_semisimple(alg, &x), || format!("{t}: predicates"));
        nil += n as usize;
        ss += s as usize;
        if let Some(d) = alg.homogeneous_degree(&x) {
            homog += 1;
            for p in [&j.xs, &j.xn] {
                check(p.is_zero() || alg.homogeneous_degree(p) == Some(d), || format!("{t}: degree"));
            }
        }
    }
    format!("100 elements: {nil} nilpotent, {ss} semisimple, {homog} homogeneous")
}

// 5

fn c5_compatibility() -> String {
    let mut names: Vec<&str> = catalog::catalog_names();
    names.extend(["sl3-z2-diag++-", "sl4-z2-diag++--"]);
    for name in &names {
        let alg = catalog::build(name).unwrap();
        let (c, tau_g) = catalog::complexify(&alg).unwrap();
        let theta = catalog::theta_automorphism(&c).unwrap();
        let r = check_compatibility(&c, &tau_g, &theta).unwrap();
        check(r.comp_holds && r.comp2_holds && r.grad_holds && r.equivalent, || format!("{name}: {r:?}"));
        let tau_u = catalog::compact_form_conjugation(&c).unwrap();
        let rc = is_r_compatible(&c, &tau_u, &theta).unwrap();
        check(rc.r_compatible, || format!("{name}: compact form {rc:?}"));
        for b in &rc.blocks {
            check(b.image == (alg.modulus() - b.degree) % alg.modulus(), || format!("{name}: block {b:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0;
    for name in ["sl2c-real-z2", "sl2-z2-diag", "e7-split-z2", "e8-split-z3"] {
        let alg = catalog::build(name).unwrap();
        let (c, _) = catalog::complexify(&alg).unwrap();
        let tau_u = catalog::compact_form_conjugation(&c).unwrap();
        let n = alg.dim();
        let rev = |x: &Element| degree_reversal_map(&alg, &tau_u, x).unwrap();
        let m = alg.modulus() as i64;
        let random = |rng: &mut ChaCha8Rng| {
            let idx = alg.basis_indices_of_degree(rng.gen_range(0..m));
            let mut x = Element::zero(n);
            for _ in 0..3 {
                x.coords[idx[rng.gen_range(0..idx.len())]] += qi(rng.gen_range(-3..=3));
            }
            x
        };
        for _ in 0..50 {
            let (x, y) = (random(&mut rng), random(&mut rng));
            check(rev(&alg.bracket(&x, &y).unwrap()) == alg.bracket(&rev(&x), &rev(&y)).unwrap(), || {
                format!("{name}: reversal does not intertwine")
            });
            pairs += 1;
        }
    }
    format!("{} algebras, {pairs} reversal pairs", names.len())
}

// 6

fn improve(x: &Element, t: (f64, f64)) -> (f64, ImproveReport) {
    let sl2 = catalog::build_sl2();
    let (c, tau_g) = catalog::complexify(&sl2).unwrap();
    let theta = realify(&catalog::theta_automorphism(&c).unwrap());
    let tau_u = realify(&catalog::compact_form_conjugation(&c).unwrap());
    let perturbed = perturb_conjugation(&sl2, x, t, &tau_u).unwrap();
    let tg = realify(&tau_g);
    let broken = (&tg * &perturbed - &perturbed * &tg).abs().max();
    (broken, improve_compact_form_real(&killing_f64(&c), &tg, &perturbed, &theta, IMPROVE_TOL).unwrap())
}

fn c6_improve() -> String {
    let t = Instant::now();
    let mut out = Vec::new();
    for (label, x, shift) in [
        ("exp(ad H/4)", Element::basis(3, 1), (0.25, 0.0)),
        ("exp(ad i(E-F)/4)", Element::from_ints(&[1, 0, -1]), (0.0, 0.25)),
    ] {
        let (broken, r) = improve(&x, shift);
        check(r.tau_g_commutator < IMPROVE_TOL, || format!("{label}: commutator {:e}", r.tau_g_commutator));
        check(r.hel3_residual < IMPROVE_TOL, || format!("{label}: hel3 {:e}", r.hel3_residual));
        out.push(format!("{label}: before {broken:.2e}, after {:.2e}/{:.2e}", r.tau_g_commutator, r.hel3_residual));
    }
    let secs = t.elapsed().as_secs_f64();
    check(secs < 1.0, || format!("runtime {secs:.2}s"));
    out.join("; ")
}

// 7

fn coherence(alg: &GradedAlgebra, h: &Element, seed: u64) -> usize {
    let s = slice(alg, h).unwrap();
    let c = slice_commutant(alg, &s).unwrap();
    let g = genericity_matrix(alg, &s, &c).unwrap();
    let minors = g.minors.clone().unwrap();
    let f_span = Subspace::from_elements(alg.dim(), &g.f_basis).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generic = 0;
    for t in 0..100 {
        let a: Vec<Rational> = (0..g.n())
            .map(|_| if t % 3 == 0 && rng.gen_bool(0.6) { Rational::zero() } else { q(rng.gen_range(-4..=4), rng.gen_range(1..=3)) })
            .collect();
        let x = g.element(&a);
        // Rank of b(x) computed independently as dim [span f_basis, x].
        let rank = bracket_span(alg, &f_span, &Subspace::from_elements(alg.dim(), &[x]).unwrap()).unwrap().dim();
        let sum_sq = minors.iter().fold(Rational::zero(), |acc, p| {
            let v = p.eval(&a);
            acc + &v * &v
        });
        check((rank == g.n()) == sum_sq.is_positive(), || format!("{}: point {a:?}", alg.name()));
        generic += (rank == g.n()) as usize;
    }
    generic
}

fn c7_genericity() -> String {
    let a6 = catalog::build_sl2c_real();
    let g1 = coherence(&a6, &Element::basis(6, 0), 1);
    let sl4 = catalog::build_sl(4, &SlGrading::Trivial).unwrap();
    let mut e = Element::zero(15);
    e.coords[sl4.index_of("E13").unwrap()] = qi(1);
    e.coords[sl4.index_of("E24").unwrap()] = qi(1);
    let h = jmv_triple(&sl4, &e).unwrap().triple.h;
    let g2 = coherence(&sl4, &h, 2);
    format!("A6 slice {g1}/100 generic, sl4 (2,2) slice {g2}/100 generic")
}

// 8

/// Components of {p != 0} on the line, from signs on a grid containing every
/// integer in [-10, 10]: one more than the number of zero runs.
fn grid_components(p: &MPoly) -> usize {
    let mut runs = 0;
    let mut prev_zero = false;
    for j in -40..=40 {
        let zero = p.eval(&[q(j, 4)]).is_zero();
        if zero && !prev_zero {
            runs += 1;
        }
        prev_zero = zero;
    }
    runs + 1
}

/// Random product of integer linear factors in [-6, 6] with multiplicities
/// and positive-definite quadratics.
fn random_univariate(rng: &mut ChaCha8Rng) -> MPoly {
    let a = MPoly::var(1, 0);
    let mut p = MPoly::constant(1, q(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3)));
    for _ in 0..rng.gen_range(0..=4) {
        let l = a.sub(&MPoly::constant(1, qi(rng.gen_range(-6..=6))));
        for _ in 0..rng.gen_range(1..=3) {
            p = p.mul(&l);
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let shift = a.sub(&MPoly::constant(1, q(rng.gen_range(-9..=9), 2)));
        p = p.mul(&shift.mul(&shift).add(&MPoly::constant(1, q(rng.gen_range(1..=4), 3))));
    }
    p
}

fn c8_semialgebraic() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut hist = [0usize; 6];
    for t in 0..100 {
        let p = random_univariate(&mut rng);
        let want = grid_components(&p);
        let set = SemialgebraicSet::from_minors(vec![p.clone()]).unwrap();
        let r = component_analysis(&set, &ComponentOptions::default()).unwrap();
        check(r.mode == Mode::Exact, || format!("{t}: mode {:?}", r.mode));
        check(r.class_count == want, || format!("{t}: {} vs grid {want} for {}", r.class_count, p.to_text()));
        hist[want.min(5)] += 1;
    }
    let set = SemialgebraicSet::from_minors(vec![MPoly::var(2, 0).mul(&MPoly::var(2, 1))]).unwrap();
    let opts = ComponentOptions { seed: 7, ..Default::default() };
    let r = component_analysis(&set, &opts).unwrap();
    check((r.mode, r.class_count) == (Mode::Heuristic, 4), || format!("quadrants {:?} {}", r.mode, r.class_count));
    let mut signs: Vec<(bool, bool)> = r.representatives.iter().map(|x| (x.coords[0].is_positive(), x.coords[1].is_positive())).collect();
    signs.sort();
    check(signs == [(false, false), (false, true), (true, false), (true, true)], || format!("{signs:?}"));
    let again = component_analysis(&set, &opts).unwrap();
    check(again.representatives == r.representatives, || "representatives depend on more than the seed".into());
    format!("100 univariate counts (by count {:?}), quadrants 4 heuristic", &hist[1..])
}

// 9

fn c9_z2() -> String {
    let o = MixedOptions::default();
    let alg = catalog::build_sl2_z2_diag();
    let d = catalog_cartan_decomposition(&alg).unwrap();
    let ef = Element::basis(3, alg.index_of("E").unwrap()).add(&Element::basis(3, alg.index_of("F").unwrap()));
    let v = mixed_conjugacy(&alg, &d, &ef, &ef.neg(), &o).unwrap();
    check(v.verdict == Verdict::Conjugate, || format!("E+F vs -(E+F): {v:?}"));
    check(v.certificate.iter().any(|s| s.stage == "vector"), || "no Weyl certificate".into());
    let v = mixed_conjugacy(&alg, &d, &ef, &ef.scale(&qi(2)), &o).unwrap();
    check(v.verdict == Verdict::Distinct, || format!("E+F vs 2(E+F): {v:?}"));
    let a6 = catalog::build_sl2c_real();
    let d6 = catalog_cartan_decomposition(&a6).unwrap();
    let ie = Element::basis(6, a6.index_of("iE").unwrap());
    let v = mixed_conjugacy(&a6, &d6, &ie, &ie.neg(), &o).unwrap();
    check(v.verdict == Verdict::Distinct, || format!("iE vs -iE: {v:?}"));
    "conjugate, distinct, distinct".into()
}

// 10

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    all.truncate(k);
    all
}

fn random_multivector(rng: &mut ChaCha8Rng, n: usize, k: usize, terms: usize) -> MultiVector {
    let mut w = MultiVector::zero(n, k).unwrap();
    for _ in 0..terms {
        let idx = random_subset(rng, n, k);
        w.add_term(&idx, q(rng.gen_range(-5..=5), rng.gen_range(1..=3))).unwrap();
    }
    w
}

/// Elementary generators `E_ij` and traceless diagonals, with rational weights.
fn random_generator(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let c = q(rng.gen_range(1..=4), rng.gen_range(1..=2));
    if i == j {
        let k = (i + 1) % n;
        m.set(i, i, c.clone());
        m.set(k, k, -c);
    } else {
        m.set(i, j, c);
    }
    m
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let mut g = Matrix::identity(n);
    for _ in 0..6 {
        let mut s = Matrix::identity(n);
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        if rng.gen_bool(0.7) {
            s.set(i, j, q(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        } else {
            let a = q(rng.gen_range(1..=3), rng.gen_range(1..=3));
            s.set(i, i, a.clone());
            s.set(j, j, Rational::one() / a);
        }
        g = g.mul(&s).unwrap();
    }
    g
}

fn c10_exterior() -> String {
    let t = Instant::now();
    for (name, n, k, seed) in [("e7-split-z2", 8, 4, 7), ("e8-split-z3", 9, 3, 8)] {
        let alg = catalog::build(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in 0..50 {
            let x = random_generator(&mut rng, n);
            let w = random_multivector(&mut rng, n, k, 3);
            let lhs = to_lie_element(&alg, &lie_action(&x, &w).unwrap()).unwrap();
            let rhs = alg.bracket(&iota(&alg, &x).unwrap(), &to_lie_element(&alg, &w).unwrap()).unwrap();
            check(lhs == rhs, || format!("{name}: pair {p}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 0..20 {
        let k = 1 + t % 7;
        let g = random_unimodular(&mut rng, 8);
        check(g.determinant().unwrap().is_one(), || "det != 1".into());
        let x = random_multivector(&mut rng, 8, k, 3);
        let lhs = poincare_dual(&group_action_on_form(&g, &x).unwrap()).unwrap();
        let rhs = group_action(&g, &poincare_dual(&x).unwrap()).unwrap();
        check(lhs == rhs, || format!("duality action {t}"));
    }
    // Known representatives: decomposables are nilpotent, a sum of two
    // complementary decomposable 4-vectors is not.
    let e = |n: usize, idx: &[usize]| MultiVector::monomial(n, idx, qi(1)).unwrap();
    let opts = KVectorOptions::default();
    for w in [e(9, &[0, 1, 2]), e(8, &[0, 1, 2, 3]), e(9, &[0, 1, 2]).add(&e(9, &[0, 3, 4])).unwrap()] {
        let r = analyze_kvector(&w, &opts).unwrap();
        check(r.kind == KVectorKind::Nilpotent, || format!("{:?}: {:?}", w.terms(), r.kind));
    }
    let w = e(8, &[0, 1, 2, 3]).add(&e(8, &[4, 5, 6, 7])).unwrap();
    let r = analyze_kvector(&w, &opts).unwrap();
    check(r.kind != KVectorKind::Nilpotent && r.analysis.semisimple, || format!("e1234+e5678: {:?}", r.kind));
    let secs = t.elapsed().as_secs_f64();
    check(secs < 120.0, || format!("runtime {secs:.1}s"));
    "50+50 generator pairs, 20 unimodular dualities, 4 spot verdicts".into()
}
