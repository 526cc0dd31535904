//! Tabulated asymptotic solutions and gauge factors for the two-parameter models.

use crate::algebra::{rat, HLaurent, Matrix, MultiDegree, NovikovSeries, Rational, TPoly};

/// `(numerator, denominator, [e1, e2])` stands for `c t1^e1 t2^e2 / h^(e1+e2)`.
type Term = (i64, i64, [u32; 2]);

fn entry(terms: &[Term]) -> TPoly<HLaurent> {
    let mut p = TPoly::zero(2);
    for &(n, d, e) in terms {
        let k = (e[0] + e[1]) as i64;
        p.add_term(e.to_vec(), &HLaurent::monomial(rat(n, d), -k));
    }
    p
}

const ONE: &[Term] = &[(1, 1, [0, 0])];
const T1: &[Term] = &[(1, 1, [1, 0])];
const T2: &[Term] = &[(1, 1, [0, 1])];
const T12: &[Term] = &[(1, 1, [1, 0]), (1, 1, [0, 1])];

fn table(rows: &[&[&[Term]]]) -> Vec<Vec<TPoly<HLaurent>>> {
    rows.iter().map(|r| r.iter().map(|t| entry(t)).collect()).collect()
}

fn f3_asymptotic() -> Vec<Vec<TPoly<HLaurent>>> {
    let z: &[Term] = &[];
    let a2: &[Term] = &[(1, 1, [1, 1]), (1, 2, [2, 0])];
    let b2: &[Term] = &[(1, 1, [1, 1]), (1, 2, [0, 2])];
    let top: &[Term] = &[(1, 2, [2, 1]), (1, 2, [1, 2])];
    table(&[
        &[ONE, z, z, z, z, z],
        &[T1, ONE, z, z, z, z],
        &[T2, z, ONE, z, z, z],
        &[a2, T12, T1, ONE, z, z],
        &[b2, T2, T12, z, ONE, z],
        &[top, b2, a2, T2, T1, ONE],
    ])
}

fn sigma1_asymptotic() -> Vec<Vec<TPoly<HLaurent>>> {
    let z: &[Term] = &[];
    let top: &[Term] = &[(1, 2, [0, 2]), (1, 1, [1, 1])];
    table(&[&[ONE, z, z, z], &[T1, ONE, z, z], &[T2, z, ONE, z], &[top, T2, T12, ONE]])
}

/// Tabulated `H_{−∞}` for `f3` and `sigma1`; entry `(i, j)` is `(J_{−∞,i}, b_j)`.
pub fn reference_asymptotic(name: &str) -> Option<Vec<Vec<TPoly<HLaurent>>>> {
    match name {
        "f3" => Some(f3_asymptotic()),
        "sigma1" => Some(sigma1_asymptotic()),
        _ => None,
    }
}

/// Tabulated gauge factor `Q` for `f3` and `sigma1` at series order `order`.
pub fn reference_q_matrix(name: &str, order: u32) -> Option<NovikovSeries<Matrix<Rational>>> {
    let (n, q1_terms): (usize, &[(usize, usize, i64)]) = match name {
        "f3" => (6, &[(0, 3, -1), (1, 5, 1), (2, 5, -1)]),
        "sigma1" => (4, &[]),
        _ => return None,
    };
    let mut out = NovikovSeries::constant(2, order, Matrix::identity(n));
    if order >= 1 && !q1_terms.is_empty() {
        let mut m = Matrix::zeros(n, n);
        for &(i, j, c) in q1_terms {
            m.set(i, j, rat(c, 1));
        }
        out.add_term(MultiDegree::unit(2, 0), &m);
    }
    Some(out)
}
