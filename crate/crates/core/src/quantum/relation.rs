use std::collections::BTreeMap;

use super::{class_series, mul_basis, ClassSeries};
use crate::algebra::{format_rational, MultiDegree, NovikovSeries, Rational};
use crate::model::ModelSpec;

/// Polynomial `Σ c · q^A · b_1^{e_1} ⋯ b_r^{e_r}` in the Novikov variables and the
/// degree-2 generators, to be evaluated under `∘`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Relation {
    rank: usize,
    terms: BTreeMap<(MultiDegree, Vec<u32>), Rational>,
}

impl Relation {
    pub fn new(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, q: MultiDegree, b: Vec<u32>, c: &Rational) {
        let key = (q, b);
        let v = self.terms.entry(key.clone()).or_default();
        *v += c;
        if num_traits::Zero::is_zero(v) {
            self.terms.remove(&key);
        }
    }

    /// Terms `((q-degree, b-exponents), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(MultiDegree, Vec<u32>), &Rational)> {
        self.terms.iter()
    }

    /// Human-readable form using the model's labels and `q` aliases.
    pub fn display(&self, model: &ModelSpec) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, ((q, b), c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in q.as_slice().iter().enumerate() {
                push_power(&mut factors, &model.q_name(i), e);
            }
            for (i, &e) in b.iter().enumerate() {
                push_power(&mut factors, model.label(i + 1), e);
            }
            let neg = c < &Rational::default();
            let mag = if neg { -c.clone() } else { c.clone() };
            let mag_one = num_traits::One::is_one(&mag);
            let body = match (factors.is_empty(), mag_one) {
                (true, _) => format_rational(&mag),
                (false, true) => factors.join("*"),
                (false, false) => format!("{}*{}", format_rational(&mag), factors.join("*")),
            };
            match (n, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

fn push_power(factors: &mut Vec<String>, name: &str, e: u32) {
    match e {
        0 => {}
        1 => factors.push(name.to_string()),
        _ => factors.push(format!("{name}^{e}")),
    }
}

/// `b_1^{∘e_1} ∘ ⋯ ∘ b_r^{∘e_r}` applied to `1`, multiplying on the left one factor
/// at a time, starting with `b_1`.
pub fn b_monomial(model: &ModelSpec, e: &[u32], order: u32) -> ClassSeries<Rational> {
    let mut v = class_series(model, &model.one(), order);
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            v = mul_basis(model, i + 1, &v);
        }
    }
    v
}

/// The ring element `P(q, b)`; zero exactly when `P` is a relation to this order.
pub fn eval_relation(model: &ModelSpec, rel: &Relation, order: u32) -> ClassSeries<Rational> {
    let mut cache: BTreeMap<Vec<u32>, ClassSeries<Rational>> = BTreeMap::new();
    let mut out = NovikovSeries::zero(model.rank(), order);
    for ((q, b), c) in rel.terms() {
        let m = cache.entry(b.clone()).or_insert_with(|| b_monomial(model, b, order));
        out.add_assign_series(&m.shift(q).scale(c));
    }
    out
}
