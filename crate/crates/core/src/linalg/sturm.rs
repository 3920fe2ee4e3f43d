//! Real root isolation and sign analysis for rational univariate
//! polynomials via Sturm sequences.

use crate::linalg::poly::Poly;
use crate::scalar::{format_rational, simplest_rational_between, Integer, Rational};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Enclosure width below which irrational roots stop being refined.
const REFINE_BITS: u32 = 20;

/// Sturm sequence of the squarefree part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Poly<Rational>>,
}

impl SturmSequence {
    pub fn new(p: &Poly<Rational>) -> Self {
        let sp = p.squarefree_part();
        let mut seq = vec![sp.clone(), sp.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
            seq.push(r.scale(&-Rational::one()));
        }
        seq.pop();
        SturmSequence { seq }
    }

    fn variations(&self, signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Sign variations at a finite point.
    pub fn variations_at(&self, x: &Rational) -> usize {
        self.variations(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    /// Sign variations at plus (`true`) or minus infinity.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        self.variations(self.seq.iter().map(|p| {
            let s = sign(&p.leading());
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }

    pub fn squarefree(&self) -> &Poly<Rational> {
        &self.seq[0]
    }
}

fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// An isolated real root: either an exact rational or an open enclosure
/// `(lo, hi)` whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq)]
pub enum RealRoot {
    Exact(Rational),
    Enclosed { lo: Rational, hi: Rational },
}

impl RealRoot {
    /// Left end of the gap that follows this root.
    fn right_end(&self) -> (Rational, bool) {
        match self {
            RealRoot::Exact(r) => (r.clone(), true),
            RealRoot::Enclosed { hi, .. } => (hi.clone(), false),
        }
    }
    /// Right end of the gap that precedes this root.
    fn left_end(&self) -> (Rational, bool) {
        match self {
            RealRoot::Exact(r) => (r.clone(), true),
            RealRoot::Enclosed { lo, .. } => (lo.clone(), false),
        }
    }
    pub fn approx(&self) -> f64 {
        use crate::scalar::rational_to_f64;
        match self {
            RealRoot::Exact(r) => rational_to_f64(r),
            RealRoot::Enclosed { lo, hi } => (rational_to_f64(lo) + rational_to_f64(hi)) / 2.0,
        }
    }
    pub fn describe(&self) -> String {
        match self {
            RealRoot::Exact(r) => format_rational(r),
            RealRoot::Enclosed { lo, hi } => format!("({}, {})", format_rational(lo), format_rational(hi)),
        }
    }
}

/// Power of two strictly exceeding the absolute value of every root.
pub fn root_bound(p: &Poly<Rational>) -> Rational {
    let lead = p.leading().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.abs() / &lead;
        if r > m {
            m = r;
        }
    }
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b <= bound {
        b *= Rational::from_integer(2.into());
    }
    b
}

/// Leading coefficient of the integer polynomial proportional to `p`.
fn integral_leading(p: &Poly<Rational>) -> Integer {
    let mut l = Integer::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    (p.leading() * Rational::from_integer(l)).to_integer().abs()
}

/// Sorted isolation of the distinct real roots of a nonzero polynomial.
/// Rational roots are always returned exactly.
pub fn isolate_real_roots(p: &Poly<Rational>) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let st = SturmSequence::new(p);
    let sp = st.squarefree().clone();
    let lead = Rational::from_integer(integral_leading(&sp));
    // Width below which the simplest rational in an enclosure of a rational
    // root must be that root.
    let rational_width = Rational::one() / (&lead * &lead * Rational::from_integer(2.into()));
    let fine = Rational::new(Integer::one(), Integer::from(2u32).pow(REFINE_BITS));
    let target = if rational_width < fine { rational_width } else { fine };
    let b = root_bound(&sp);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = Rational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        let n = st.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        let mid = (&lo + &hi) / &two;
        if n == 1 && &hi - &lo < target {
            let c = simplest_rational_between(Some(&lo), true, Some(&hi), false);
            if sp.eval(&c).is_zero() {
                out.push(RealRoot::Exact(c));
            } else {
                out.push(RealRoot::Enclosed { lo, hi });
            }
            continue;
        }
        if sp.eval(&mid).is_zero() {
            out.push(RealRoot::Exact(mid.clone()));
            // Carve out a neighbourhood of `mid` containing no other root.
            let mut delta = (&hi - &lo) / Rational::from_integer(4.into());
            loop {
                let a = &mid - &delta;
                let c = &mid + &delta;
                if !sp.eval(&a).is_zero() && !sp.eval(&c).is_zero() && st.count_in(&a, &c) == 1 {
                    stack.push((c, hi.clone()));
                    stack.push((lo.clone(), a));
                    break;
                }
                delta /= &two;
            }
        } else {
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    out.sort_by(|a, b| a.left_end().0.cmp(&b.left_end().0));
    out
}

/// Distinct rational roots of a polynomial, ascending.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<Rational> {
    isolate_real_roots(p)
        .into_iter()
        .filter_map(|r| match r {
            RealRoot::Exact(x) => Some(x),
            RealRoot::Enclosed { .. } => None,
        })
        .collect()
}

/// One connected component of `{x : p(x) > 0}` with its canonical sample.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveInterval {
    /// Root bounding the component from below (`None` for minus infinity).
    pub lower: Option<RealRoot>,
    /// Root bounding the component from above (`None` for plus infinity).
    pub upper: Option<RealRoot>,
    /// Simplest rational inside the component.
    pub sample: Rational,
}

/// Connected components of `{x in R : p(x) > 0}`, left to right.
pub fn positive_components(p: &Poly<Rational>) -> Vec<PositiveInterval> {
    if p.is_zero() {
        return Vec::new();
    }
    let roots = isolate_real_roots(p);
    let mut out = Vec::new();
    for i in 0..=roots.len() {
        let lower = i.checked_sub(1).map(|k| roots[k].clone());
        let upper = roots.get(i).cloned();
        let lo = lower.as_ref().map(RealRoot::right_end);
        let hi = upper.as_ref().map(RealRoot::left_end);
        let sample = simplest_rational_between(
            lo.as_ref().map(|x| &x.0),
            lo.as_ref().is_some_and(|x| x.1),
            hi.as_ref().map(|x| &x.0),
            hi.as_ref().is_some_and(|x| x.1),
        );
        if p.eval(&sample).is_positive() {
            out.push(PositiveInterval { lower, upper, sample });
        }
    }
    out
}

/// Number of connected components of `{x in R : p(x) > 0}`.
pub fn sturm_components(p: &Poly<Rational>) -> usize {
    positive_components(p).len()
}

/// Certify `p > 0` on the closed interval `[a, b]`.
pub fn certify_positive_on(p: &Poly<Rational>, a: &Rational, b: &Rational) -> bool {
    if p.is_zero() || !p.eval(a).is_positive() {
        return false;
    }
    if a == b || p.degree() == Some(0) {
        return true;
    }
    let st = SturmSequence::new(p);
    st.count_in(a, b) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn counts_components_of_classic_examples() {
        assert_eq!(sturm_components(&p(&[0, 0, 1])), 2);
        // (x^2 - 1) x^2
        assert_eq!(sturm_components(&p(&[0, 0, -1, 0, 1])), 2);
        assert_eq!(sturm_components(&p(&[1, 0, 1])), 1);
        assert_eq!(sturm_components(&p(&[-1, 0, -1])), 0);
        // x^3 - 2x: roots -sqrt2, 0, sqrt2
        assert_eq!(sturm_components(&p(&[0, -2, 0, 1])), 2);
    }

    #[test]
    fn samples_are_simplest_rationals() {
        let comps = positive_components(&p(&[0, 0, 1]));
        let samples: Vec<Rational> = comps.iter().map(|c| c.sample.clone()).collect();
        assert_eq!(samples, vec![qi(-1), qi(1)]);
        // (3x - 1)(2x - 1) < 0 between 1/3 and 1/2; negate to make that positive.
        let f = p(&[-1, 5, -6]);
        let comps = positive_components(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].sample, q(2, 5));
        assert_eq!(comps[0].lower, Some(RealRoot::Exact(q(1, 3))));
        assert_eq!(comps[0].upper, Some(RealRoot::Exact(q(1, 2))));
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (7x - 3)(x + 5)(x^2 - 2)
        let f = p(&[-3, 7]).mul(&p(&[5, 1])).mul(&p(&[-2, 0, 1]));
        assert_eq!(rational_roots(&f), vec![qi(-5), q(3, 7)]);
        assert_eq!(isolate_real_roots(&f).len(), 4);
    }

    #[test]
    fn positivity_certificates() {
        let f = p(&[-1, 0, 1]);
        assert!(certify_positive_on(&f, &qi(2), &qi(5)));
        assert!(!certify_positive_on(&f, &qi(-2), &qi(2)));
        assert!(!certify_positive_on(&f, &qi(1), &qi(2)));
    }
}
