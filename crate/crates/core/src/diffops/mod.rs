//! Operators in `h`, `q_i` and `θ_i = h ∂/∂t_i`, normal-ordered with `q` left of `θ`
//! under `θ_i q_j = q_j (θ_i + δ_ij h)`.

mod apply;
mod files;
mod parser;
mod raw;

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

pub use apply::{apply_classical, apply_constq, apply_gauge, apply_raw, theta_order};
pub use files::{parse_ops_file, parse_relations_file, parse_rows_file, NamedOperator, OpsFile};
pub use parser::{parse_operator, parse_relation, Mode, ParseError, ParseErrorKind, Symbols};
pub use raw::{Letter, RawOperator};

use crate::algebra::{format_rational, int, MultiDegree, Rational};
use crate::model::ModelSpec;
use crate::quantum::{eval_relation, ClassSeries, Relation};

/// Key of one normal-ordered term `h^h q^q θ^theta`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpKey {
    pub h: u32,
    pub q: MultiDegree,
    pub theta: Vec<u32>,
}

/// Finite sum of `c · h^k q^A θ^E`, no duplicate keys and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDEOperator {
    rank: usize,
    terms: BTreeMap<OpKey, Rational>,
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = int(1);
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

impl QDEOperator {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::term(rank, c, 0, MultiDegree::zero(rank), vec![0; rank])
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, int(1))
    }

    pub fn term(rank: usize, c: Rational, h: u32, q: MultiDegree, theta: Vec<u32>) -> Self {
        let mut op = Self::zero(rank);
        op.add_term(OpKey { h, q, theta }, &c);
        op
    }

    pub fn h(rank: usize) -> Self {
        Self::term(rank, int(1), 1, MultiDegree::zero(rank), vec![0; rank])
    }

    /// `q_i`, zero-based.
    pub fn q(rank: usize, i: usize) -> Self {
        Self::term(rank, int(1), 0, MultiDegree::unit(rank, i), vec![0; rank])
    }

    /// `θ_i`, zero-based.
    pub fn theta(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::term(rank, int(1), 0, MultiDegree::zero(rank), e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: OpKey, c: &Rational) {
        debug_assert_eq!(key.theta.len(), self.rank);
        let v = self.terms.entry(key.clone()).or_default();
        *v += c;
        if num_traits::Zero::is_zero(v) {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.rank);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), &(c * k));
        }
        out
    }

    /// Product in normal form: `θ^E q^B = q^B ∏_i (θ_i + B_i h)^{E_i}`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "operator rank mismatch");
        let r = self.rank;
        let mut out = Self::zero(r);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // terms of ∏_i (θ_i + B_i h)^{E_i}: (θ exponents, h power, coefficient)
                let mut expansion: Vec<(Vec<u32>, u32, Rational)> = vec![(Vec::new(), 0, int(1))];
                for i in 0..r {
                    let e = k1.theta[i];
                    let b = k2.q.get(i);
                    let mut next = Vec::new();
                    for (th, hp, c) in &expansion {
                        for k in 0..=e {
                            let shift = e - k;
                            if b == 0 && shift > 0 {
                                continue;
                            }
                            let coef = c * binomial(e, k) * num_traits::pow(int(b as i64), shift as usize);
                            let mut th2 = th.clone();
                            th2.push(k);
                            next.push((th2, hp + shift, coef));
                        }
                    }
                    expansion = next;
                }
                let c12 = c1 * c2;
                for (th, hp, c) in expansion {
                    let theta = th.iter().zip(&k2.theta).map(|(a, b)| a + b).collect();
                    let key = OpKey { h: k1.h + k2.h + hp, q: k1.q.add(&k2.q), theta };
                    out.add_term(key, &(&c12 * c));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Rebuilds the term map, merging keys; normal form is maintained by construction.
    pub fn normalize(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    /// Highest total `θ`-degree among the terms.
    pub fn theta_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.theta.iter().sum()).max().unwrap_or(0)
    }

    pub fn has_q(&self) -> bool {
        self.terms.keys().any(|k| !k.q.is_zero())
    }

    pub fn has_h(&self) -> bool {
        self.terms.keys().any(|k| k.h > 0)
    }

    /// Terms without `q`: the classical operator.
    pub fn classical(&self) -> Self {
        self.filter(|k| k.q.is_zero())
    }

    /// Terms without `h`: the operator seen with `q` held constant at `h → 0` order.
    pub fn h_free(&self) -> Self {
        self.filter(|k| k.h == 0)
    }

    fn filter(&self, keep: impl Fn(&OpKey) -> bool) -> Self {
        Self {
            rank: self.rank,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// The ring polynomial obtained by dropping `h`-terms and reading `θ_i` as `b_i`.
    pub fn symbol(&self) -> Relation {
        let mut rel = Relation::new(self.rank);
        for (k, c) in &self.terms {
            if k.h == 0 {
                rel.add_term(k.q.clone(), k.theta.clone(), c);
            }
        }
        rel
    }

    fn display_order(&self) -> Vec<(&OpKey, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(k, _)| {
            (Reverse(k.theta.iter().sum::<u32>()), Reverse(k.theta.clone()), Reverse(k.q.clone()), k.h)
        });
        v
    }
}

/// `symbol(op)` evaluated in the quantum ring: zero iff the symbol is a relation.
pub fn symbol_map(op: &QDEOperator, model: &ModelSpec, order: u32) -> ClassSeries<Rational> {
    eval_relation(model, &op.symbol(), order)
}

fn push_power(parts: &mut Vec<String>, name: &str, e: u32) {
    match e {
        0 => {}
        1 => parts.push(name.to_string()),
        _ => parts.push(format!("{name}^{e}")),
    }
}

impl fmt::Display for QDEOperator {
    /// Prints a form the parser reads back to the same operator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.display_order().into_iter().enumerate() {
            let mut parts = Vec::new();
            push_power(&mut parts, "h", k.h);
            for (i, &e) in k.q.as_slice().iter().enumerate() {
                push_power(&mut parts, &format!("q{}", i + 1), e);
            }
            for (i, &e) in k.theta.iter().enumerate() {
                push_power(&mut parts, &format!("D{}", i + 1), e);
            }
            let neg = c < &Rational::default();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = if parts.is_empty() {
                format_rational(&mag)
            } else if num_traits::One::is_one(&mag) {
                parts.join("*")
            } else {
                format!("{}*{}", format_rational(&mag), parts.join("*"))
            };
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_passes_q_with_shift() {
        let t = QDEOperator::theta(1, 0);
        let q = QDEOperator::q(1, 0);
        let lhs = t.mul(&q);
        let rhs = q.mul(&t).add(&QDEOperator::h(1).mul(&q));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "q1*D1 + h*q1");
    }

    #[test]
    fn independent_variables_commute() {
        let t1 = QDEOperator::theta(2, 0);
        let q2 = QDEOperator::q(2, 1);
        assert_eq!(t1.mul(&q2), q2.mul(&t1));
    }

    #[test]
    fn theta_squared_past_q() {
        let t = QDEOperator::theta(1, 0);
        let q = QDEOperator::q(1, 0);
        let h = QDEOperator::h(1);
        let lhs = t.pow(2).mul(&q);
        let two = QDEOperator::constant(1, int(2));
        let rhs = q.mul(&t.pow(2)).add(&two.mul(&h).mul(&q).mul(&t)).add(&h.pow(2).mul(&q));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, 0), int(1));
        assert_eq!(binomial(4, 4), int(1));
    }
}
