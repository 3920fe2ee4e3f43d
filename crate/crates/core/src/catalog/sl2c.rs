//! sl(2, C) viewed as a six-dimensional real algebra, Z/2-graded by
//! `g_0 = sl(2, R)` and `g_1 = i sl(2, R)`.

use crate::lie::{BracketTerms, CatalogExtras, CenterData, GradedAlgebra};
use crate::linalg::SparseMatrix;
use crate::scalar::{qi, Rational};

/// Basis order: H, E, F, iH, iE, iF.
pub const SL2C_LABELS: [&str; 6] = ["H", "E", "F", "iH", "iE", "iF"];

pub fn build_sl2c_real() -> GradedAlgebra {
    // Real brackets of sl2 on (H, E, F) = (0, 1, 2).
    let real: [(usize, usize, Vec<(usize, i64)>); 3] =
        [(0, 1, vec![(1, 2)]), (0, 2, vec![(2, -2)]), (1, 2, vec![(0, 1)])];
    let mut brackets: Vec<(usize, usize, BracketTerms)> = Vec::new();
    let conv = |t: &[(usize, i64)], shift: usize, sign: i64| -> BracketTerms {
        t.iter().map(|(k, c)| (k + shift, qi(c * sign))).collect()
    };
    for (i, j, t) in &real {
        brackets.push((*i, *j, conv(t, 0, 1)));
        // [iX, iY] = -[X, Y]
        brackets.push((i + 3, j + 3, conv(t, 0, -1)));
        // [X, iY] = i[X, Y] and [Y, iX] = -i[X, Y]
        brackets.push((*i, j + 3, conv(t, 3, 1)));
        brackets.push((*j, i + 3, conv(t, 3, -1)));
    }
    let labels = SL2C_LABELS.iter().map(|s| s.to_string()).collect();
    let mut alg = GradedAlgebra::new("sl2c-real-z2", 2, labels, vec![0, 0, 0, 1, 1, 1], brackets)
        .expect("sl2c bracket table is well formed");
    *alg.extras_mut() = CatalogExtras {
        cartan_involution: Some(sl2c_cartan_involution()),
        cartan_basis: Some(vec![0]),
        weights: Some(vec![None, Some(vec![1, -1]), Some(vec![-1, 1]), None, Some(vec![1, -1]), Some(vec![-1, 1])]),
        center: CenterData::trivial(),
    };
    alg
}

/// `X -> -X^*` (conjugate transpose), whose fixed points form su(2).
fn sl2c_cartan_involution() -> SparseMatrix<Rational> {
    let cols: Vec<Vec<(usize, Rational)>> = vec![
        vec![(0, qi(-1))],
        vec![(2, qi(-1))],
        vec![(1, qi(-1))],
        vec![(3, qi(1))],
        vec![(5, qi(1))],
        vec![(4, qi(1))],
    ];
    SparseMatrix::from_sparse_columns(6, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{verify_axioms, Element};
    use crate::scalar::Gaussian;

    /// Independent model: 2x2 complex matrices.
    type M2 = [[Gaussian; 2]; 2];

    fn mat(k: usize) -> M2 {
        let z = || Gaussian::real(qi(0));
        let r = |n: i64| Gaussian::real(qi(n));
        let unit = if k < 3 { Gaussian::real(qi(1)) } else { Gaussian::i() };
        let base: M2 = match k % 3 {
            0 => [[r(1), z()], [z(), r(-1)]],
            1 => [[z(), r(1)], [z(), z()]],
            _ => [[z(), z()], [r(1), z()]],
        };
        base.map(|row| row.map(|x| x * &unit))
    }

    fn mul(a: &M2, b: &M2) -> M2 {
        let mut c: M2 = std::array::from_fn(|_| std::array::from_fn(|_| Gaussian::real(qi(0))));
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    c[i][j] += &(a[i][k].clone() * &b[k][j]);
                }
            }
        }
        c
    }

    fn coords(m: &M2) -> Vec<Rational> {
        // m = a H + b E + c F with complex a, b, c.
        let (a, b, c) = (&m[0][0], &m[0][1], &m[1][0]);
        vec![a.re.clone(), b.re.clone(), c.re.clone(), a.im.clone(), b.im.clone(), c.im.clone()]
    }

    #[test]
    fn brackets_agree_with_complex_matrices() {
        let alg = build_sl2c_real();
        for i in 0..6 {
            for j in 0..6 {
                let (a, b) = (mat(i), mat(j));
                let ab = mul(&a, &b);
                let ba = mul(&b, &a);
                let comm: M2 = std::array::from_fn(|r| std::array::from_fn(|c| ab[r][c].clone() - &ba[r][c]));
                let got = alg.bracket(&Element::basis(6, i), &Element::basis(6, j)).unwrap();
                assert_eq!(got.coords, coords(&comm), "basis pair {i} {j}");
            }
        }
    }

    #[test]
    fn axioms_and_named_brackets() {
        let alg = build_sl2c_real();
        let r = verify_axioms(&alg);
        assert!(r.passed);
        assert_eq!(r.degree_dims, vec![3, 3]);
        let ie = Element::basis(6, 4);
        let i_f = Element::basis(6, 5);
        assert_eq!(alg.bracket(&ie, &i_f).unwrap(), Element::basis(6, 0).neg());
    }
}
