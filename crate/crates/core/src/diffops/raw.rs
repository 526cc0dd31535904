use super::QDEOperator;
use crate::algebra::Rational;

/// One factor of an unordered operator word.
#[derive(Clone, Debug, PartialEq)]
pub enum Letter {
    H,
    /// `q_i`, zero-based.
    Q(usize),
    /// `θ_i`, zero-based.
    Theta(usize),
    Const(Rational),
}

/// Sum of words whose letters appear in arbitrary order, e.g. `θ_1 q_1 θ_2 h`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawOperator {
    pub rank: usize,
    pub words: Vec<(Rational, Vec<Letter>)>,
}

impl RawOperator {
    /// Normal form, multiplying each word's letters left to right.
    pub fn normalize(&self) -> QDEOperator {
        let r = self.rank;
        let mut out = QDEOperator::zero(r);
        for (c, word) in &self.words {
            let mut acc = QDEOperator::constant(r, c.clone());
            for l in word {
                let f = match l {
                    Letter::H => QDEOperator::h(r),
                    Letter::Q(i) => QDEOperator::q(r, *i),
                    Letter::Theta(i) => QDEOperator::theta(r, *i),
                    Letter::Const(k) => QDEOperator::constant(r, k.clone()),
                };
                acc = acc.mul(&f);
            }
            out = out.add(&acc);
        }
        out
    }
}
