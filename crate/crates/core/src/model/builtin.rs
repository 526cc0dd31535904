use std::collections::BTreeMap;

use super::{BasisElement, CupEntry, ModelFile, ModelSpec, QuantumEntry};
use crate::algebra::int;
use crate::Error;

/// Names accepted by [`builtin_model`].
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=5).map(|m| format!("cp{m}")).collect();
    names.extend(["f3", "sigma1", "gr24"].map(String::from));
    names
}

pub fn builtin_model(name: &str) -> Result<ModelSpec, Error> {
    match name {
        "f3" => Ok(f3()),
        "sigma1" => Ok(sigma1()),
        "gr24" => Ok(gr24()),
        _ => match name.strip_prefix("cp").and_then(|m| m.parse::<u32>().ok()) {
            Some(m) if m >= 1 => Ok(cp(m)),
            _ => Err(Error::UnknownModel(name.to_string())),
        },
    }
}

/// One product `b_i ∘ b_j` as a list of `(k, D, c)`.
/// `(k, D, coefficient)`: one term `coefficient · q^D b_k` of a product.
type Term<'a> = (usize, &'a [u32], i64);
type Product<'a> = (usize, usize, &'a [Term<'a>]);

struct Builder {
    name: String,
    dim: u32,
    rank: usize,
    labels: Vec<(String, u32)>,
    pairing: Vec<(usize, usize)>,
    chern: Vec<i64>,
    aliases: BTreeMap<String, String>,
}

impl Builder {
    /// Products are given for `i <= j`; the cup product is the `D = 0` part.
    fn build(self, products: &[Product<'_>]) -> ModelSpec {
        let n = self.labels.len();
        let mut pairing = vec![vec![0i64; n]; n];
        for &(i, j) in &self.pairing {
            pairing[i][j] = 1;
            pairing[j][i] = 1;
        }
        let mut cup = Vec::new();
        let mut quantum = Vec::new();
        for &(i, j, terms) in products {
            for &(k, d, c) in terms {
                if d.iter().all(|&x| x == 0) {
                    cup.push(CupEntry { i, j, k, c });
                }
                quantum.push(QuantumEntry { i, j, k, degree: d.to_vec(), c: int(c) });
            }
        }
        let file = ModelFile {
            name: self.name,
            dim: self.dim,
            rank: self.rank,
            basis: self.labels.into_iter().map(|(label, degree)| BasisElement { label, degree }).collect(),
            pairing,
            cup,
            quantum,
            chern: self.chern,
            aliases: self.aliases,
        };
        ModelSpec::from_file(file).expect("builtin model is valid")
    }
}

/// `CP^m` with basis `1, x, ..., x^m` and `x^{m+1} = q`.
pub fn cp(m: u32) -> ModelSpec {
    assert!(m >= 1);
    let m = m as usize;
    let labels = (0..=m)
        .map(|i| {
            let label = match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            (label, 2 * i as u32)
        })
        .collect();
    let zero: &[u32] = &[0];
    let one: &[u32] = &[1];
    let mut table: Vec<(usize, usize, Vec<Term<'_>>)> = Vec::new();
    for i in 0..=m {
        for j in i..=m {
            let t = if i + j <= m { (i + j, zero, 1) } else { (i + j - m - 1, one, 1) };
            table.push((i, j, vec![t]));
        }
    }
    let products: Vec<Product<'_>> = table.iter().map(|(i, j, t)| (*i, *j, t.as_slice())).collect();
    Builder {
        name: format!("cp{m}"),
        dim: m as u32,
        rank: 1,
        labels,
        pairing: (0..=m).map(|i| (i, m - i)).collect(),
        chern: vec![m as i64 + 1],
        aliases: BTreeMap::new(),
    }
    .build(&products)
}

const O: &[u32] = &[0, 0];
const Q1: &[u32] = &[1, 0];
const Q2: &[u32] = &[0, 1];
const Q12: &[u32] = &[1, 1];

/// The flag manifold `F_3` with basis `1, a, b, a^2, b^2, z`.
pub fn f3() -> ModelSpec {
    let labels = [("1", 0), ("a", 2), ("b", 2), ("a^2", 4), ("b^2", 4), ("z", 6)];
    Builder {
        name: "f3".into(),
        dim: 3,
        rank: 2,
        labels: labels.iter().map(|(l, d)| (l.to_string(), *d)).collect(),
        pairing: vec![(0, 5), (1, 4), (2, 3)],
        chern: vec![2, 2],
        aliases: BTreeMap::new(),
    }
    .build(&[
        (0, 0, &[(0, O, 1)]),
        (0, 1, &[(1, O, 1)]),
        (0, 2, &[(2, O, 1)]),
        (0, 3, &[(3, O, 1)]),
        (0, 4, &[(4, O, 1)]),
        (0, 5, &[(5, O, 1)]),
        (1, 1, &[(3, O, 1), (0, Q1, 1)]),
        (1, 2, &[(3, O, 1), (4, O, 1)]),
        (1, 3, &[(2, Q1, 1)]),
        (1, 4, &[(5, O, 1)]),
        (1, 5, &[(0, Q12, 1), (4, Q1, 1)]),
        (2, 2, &[(4, O, 1), (0, Q2, 1)]),
        (2, 3, &[(5, O, 1)]),
        (2, 4, &[(1, Q2, 1)]),
        (2, 5, &[(0, Q12, 1), (3, Q2, 1)]),
        (3, 3, &[(4, Q1, 1)]),
        (3, 4, &[(0, Q12, 1)]),
        (3, 5, &[(1, Q12, 1)]),
        (4, 4, &[(3, Q2, 1)]),
        (4, 5, &[(2, Q12, 1)]),
        (5, 5, &[(3, Q12, 1), (4, Q12, 1)]),
    ])
}

/// The Hirzebruch surface `Σ_1` with basis `1, x_1, x_4, z`; `q_1, q_2` display as `r_1, r_2`.
pub fn sigma1() -> ModelSpec {
    let labels = [("1", 0), ("x1", 2), ("x4", 2), ("z", 4)];
    let aliases = [("q1", "r1"), ("q2", "r2")].map(|(a, b)| (a.to_string(), b.to_string()));
    Builder {
        name: "sigma1".into(),
        dim: 2,
        rank: 2,
        labels: labels.iter().map(|(l, d)| (l.to_string(), *d)).collect(),
        pairing: vec![(0, 3), (1, 2), (2, 2)],
        chern: vec![1, 2],
        aliases: aliases.into_iter().collect(),
    }
    .build(&[
        (0, 0, &[(0, O, 1)]),
        (0, 1, &[(1, O, 1)]),
        (0, 2, &[(2, O, 1)]),
        (0, 3, &[(3, O, 1)]),
        (1, 1, &[(2, Q1, 1), (1, Q1, -1)]),
        (1, 2, &[(3, O, 1)]),
        (1, 3, &[(0, Q12, 1)]),
        (2, 2, &[(3, O, 1), (0, Q2, 1)]),
        (2, 3, &[(0, Q12, 1), (1, Q2, 1)]),
        (3, 3, &[(2, Q12, 1)]),
    ])
}

/// `Gr_2(C^4)` in the Schubert basis `1, a, b, c, d, z`, one Novikov variable `q = e^t`.
pub fn gr24() -> ModelSpec {
    let labels = [("1", 0), ("a", 2), ("b", 4), ("c", 4), ("d", 6), ("z", 8)];
    let o: &[u32] = &[0];
    let q: &[u32] = &[1];
    let q2: &[u32] = &[2];
    Builder {
        name: "gr24".into(),
        dim: 4,
        rank: 1,
        labels: labels.iter().map(|(l, d)| (l.to_string(), *d)).collect(),
        pairing: vec![(0, 5), (1, 4), (2, 2), (3, 3)],
        chern: vec![4],
        aliases: BTreeMap::new(),
    }
    .build(&[
        (0, 0, &[(0, o, 1)]),
        (0, 1, &[(1, o, 1)]),
        (0, 2, &[(2, o, 1)]),
        (0, 3, &[(3, o, 1)]),
        (0, 4, &[(4, o, 1)]),
        (0, 5, &[(5, o, 1)]),
        (1, 1, &[(2, o, 1), (3, o, 1)]),
        (1, 2, &[(4, o, 1)]),
        (1, 3, &[(4, o, 1)]),
        (1, 4, &[(5, o, 1), (0, q, 1)]),
        (1, 5, &[(1, q, 1)]),
        (2, 2, &[(5, o, 1)]),
        (2, 3, &[(0, q, 1)]),
        (2, 4, &[(1, q, 1)]),
        (2, 5, &[(3, q, 1)]),
        (3, 3, &[(5, o, 1)]),
        (3, 4, &[(1, q, 1)]),
        (3, 5, &[(2, q, 1)]),
        (4, 4, &[(2, q, 1), (3, q, 1)]),
        (4, 5, &[(4, q, 1)]),
        (5, 5, &[(0, q2, 1)]),
    ])
}
