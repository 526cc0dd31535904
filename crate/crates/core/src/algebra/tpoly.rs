//! Polynomials in the coordinates `t_1, ..., t_r` of `H^2`.

use std::collections::BTreeMap;

use super::rational::{int, Rational};
use super::scalar::Coefficient;

/// Finite sum `Σ_E c_E t^E`.
#[derive(Clone, PartialEq, Debug)]
pub struct TPoly<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coefficient> TPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exps, &c);
        p
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(exps)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    /// Highest total `t`-degree present.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn add_assign_poly(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TPoly<D> {
        let mut out = TPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    /// Exact `∂/∂t_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &c.scale(&int(e[i] as i64)));
        }
        out
    }

    /// Multiply by `t^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().zip(exps).map(|(a, b)| a + b).collect(), c);
        }
        out
    }

    /// Drop every term of total degree above `deg`.
    pub fn truncate(&self, deg: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() <= deg {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    /// Value at `t = 0`.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&vec![0; self.nvars])
    }
}

impl<C: Coefficient> Coefficient for TPoly<C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign_poly(other);
    }
    fn neg(&self) -> Self {
        TPoly::neg(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        TPoly::scale(self, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn derivative_is_exact() {
        let mut p = TPoly::zero(2);
        p.add_term(vec![2, 1], &rat(1, 2));
        p.add_term(vec![0, 3], &int(1));
        let d1 = p.derivative(0);
        assert_eq!(d1, TPoly::monomial(2, vec![1, 1], int(1)));
        let d2 = p.derivative(1);
        assert_eq!(d2.coeff(&[2, 0]), Some(&rat(1, 2)));
        assert_eq!(d2.coeff(&[0, 2]), Some(&int(3)));
        assert!(TPoly::constant(2, int(7)).derivative(0).is_zero());
    }

    #[test]
    fn truncation_by_total_degree() {
        let mut p = TPoly::zero(1);
        for k in 0..5 {
            p.add_term(vec![k], &int(1));
        }
        assert_eq!(p.truncate(2).degree(), Some(2));
    }
}
