//! Truncated Novikov series `Σ_D c_D q^D` over the nonnegative orthant.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::degree::MultiDegree;
use super::rational::Rational;
use super::scalar::{Coefficient, Scalar};
use crate::Error;

/// A series truncated at total degree `order`. Every stored key has total degree at
/// most `order` and a nonzero coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct NovikovSeries<C> {
    rank: usize,
    order: u32,
    terms: BTreeMap<MultiDegree, C>,
}

/// One `{degree, coeff}` record of the serialized form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesRecord<C> {
    pub degree: MultiDegree,
    pub coeff: C,
}

impl<C: Coefficient> NovikovSeries<C> {
    pub fn zero(rank: usize, order: u32) -> Self {
        Self { rank, order, terms: BTreeMap::new() }
    }

    pub fn monomial(rank: usize, order: u32, degree: MultiDegree, c: C) -> Self {
        let mut s = Self::zero(rank, order);
        s.add_term(degree, &c);
        s
    }

    pub fn constant(rank: usize, order: u32, c: C) -> Self {
        Self::monomial(rank, order, MultiDegree::zero(rank), c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &MultiDegree) -> Option<&C> {
        self.terms.get(d)
    }

    /// Terms in lexicographic degree order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiDegree, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by total degree, then lexicographically.
    pub fn iter_graded(&self) -> Vec<(&MultiDegree, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.total().cmp(&b.0.total()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Nonzero term of least total degree.
    pub fn lowest_term(&self) -> Option<(&MultiDegree, &C)> {
        self.iter_graded().into_iter().next()
    }

    /// Adds `c q^degree`; terms beyond the truncation order are discarded.
    pub fn add_term(&mut self, degree: MultiDegree, c: &C) {
        debug_assert_eq!(degree.rank(), self.rank);
        if degree.total() > self.order || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&degree) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&degree);
                }
            }
            None => {
                self.terms.insert(degree, c.clone());
            }
        }
    }

    pub fn add_assign_series(&mut self, other: &Self) {
        for (d, c) in &other.terms {
            self.add_term(d.clone(), c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.terms.retain(|d, _| d.total() <= out.order);
        out.add_assign_series(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: &MultiDegree) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (d, c) in &self.terms {
            out.add_term(d.add(shift), c);
        }
        out
    }

    /// Termwise map; zero images are dropped.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> NovikovSeries<D> {
        self.map_with_degree(|_, c| f(c))
    }

    pub fn map_with_degree<D: Coefficient>(&self, f: impl Fn(&MultiDegree, &C) -> D) -> NovikovSeries<D> {
        let mut out = NovikovSeries::zero(self.rank, self.order);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), &f(d, c));
        }
        out
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            rank: self.rank,
            order,
            terms: self.terms.iter().filter(|(d, _)| d.total() <= order).map(|(d, c)| (d.clone(), c.clone())).collect(),
        }
    }

    pub fn to_records(&self) -> Vec<SeriesRecord<C>> {
        self.iter_graded().into_iter().map(|(d, c)| SeriesRecord { degree: d.clone(), coeff: c.clone() }).collect()
    }

    pub fn from_records(rank: usize, order: u32, recs: Vec<SeriesRecord<C>>) -> Result<Self, Error> {
        let mut s = Self::zero(rank, order);
        for r in recs {
            if r.degree.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: r.degree.rank() });
            }
            s.add_term(r.degree, &r.coeff);
        }
        Ok(s)
    }
}

impl<C: Coefficient> Coefficient for NovikovSeries<C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign_series(other);
    }
    fn neg(&self) -> Self {
        NovikovSeries::neg(self)
    }
    fn scale(&self, k: &Rational) -> Self {
        NovikovSeries::scale(self, k)
    }
}

/// Truncated Cauchy product with an arbitrary bilinear coefficient product.
pub fn convolve<A, B, C>(
    a: &NovikovSeries<A>,
    b: &NovikovSeries<B>,
    order: u32,
    mut mul: impl FnMut(&A, &B) -> C,
) -> Result<NovikovSeries<C>, Error>
where
    A: Coefficient,
    B: Coefficient,
    C: Coefficient,
{
    if a.rank != b.rank {
        return Err(Error::RankMismatch { expected: a.rank, found: b.rank });
    }
    let order = order.min(a.order).min(b.order);
    let mut out = NovikovSeries::zero(a.rank, order);
    for (da, ca) in &a.terms {
        if da.total() > order {
            continue;
        }
        for (db, cb) in &b.terms {
            if da.total() + db.total() > order {
                continue;
            }
            out.add_term(da.add(db), &mul(ca, cb));
        }
    }
    Ok(out)
}

/// Product of scalar series, discarding terms of total degree above `order`.
pub fn series_mul<S: Scalar>(
    a: &NovikovSeries<S>,
    b: &NovikovSeries<S>,
    order: u32,
) -> Result<NovikovSeries<S>, Error> {
    convolve(a, b, order, |x, y| x.mul_ref(y))
}

impl<S: Scalar> NovikovSeries<S> {
    pub fn one(rank: usize, order: u32) -> Self {
        Self::constant(rank, order, S::one())
    }

    /// The variable `q_i`.
    pub fn q(rank: usize, order: u32, i: usize) -> Self {
        Self::monomial(rank, order, MultiDegree::unit(rank, i), S::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{factorial, int, rat};
    use proptest::prelude::*;

    fn ser(rank: usize, order: u32, terms: &[(Vec<u32>, Rational)]) -> NovikovSeries<Rational> {
        let mut s = NovikovSeries::zero(rank, order);
        for (d, c) in terms {
            s.add_term(MultiDegree::new(d.clone()), c);
        }
        s
    }

    /// Independent double loop over explicit degree ranges.
    fn naive_mul(a: &NovikovSeries<Rational>, b: &NovikovSeries<Rational>, n: u32) -> NovikovSeries<Rational> {
        let mut out = NovikovSeries::zero(a.rank(), n);
        for d in MultiDegree::all_up_to(a.rank(), n) {
            let mut acc = int(0);
            for e in MultiDegree::all_up_to(a.rank(), n) {
                if let Some(rest) = d.checked_sub(&e) {
                    if let (Some(x), Some(y)) = (a.coeff(&e), b.coeff(&rest)) {
                        acc += x * y;
                    }
                }
            }
            out.add_term(d, &acc);
        }
        out
    }

    #[test]
    fn unit_is_identity() {
        let a = ser(2, 4, &[(vec![0, 0], int(3)), (vec![1, 2], rat(1, 2))]);
        assert_eq!(series_mul(&a, &NovikovSeries::one(2, 4), 4).unwrap(), a);
    }

    #[test]
    fn binomial_product() {
        let a = ser(2, 2, &[(vec![0, 0], int(1)), (vec![1, 0], int(1))]);
        let b = ser(2, 2, &[(vec![0, 0], int(1)), (vec![0, 1], int(1))]);
        let p = series_mul(&a, &b, 2).unwrap();
        let want = ser(2, 2, &[(vec![0, 0], int(1)), (vec![1, 0], int(1)), (vec![0, 1], int(1)), (vec![1, 1], int(1))]);
        assert_eq!(p, want);
    }

    #[test]
    fn truncated_exponential_square() {
        let e: Vec<_> = (0..=3).map(|d| (vec![d], factorial(d).recip())).collect();
        let a = ser(1, 3, &e);
        let p = series_mul(&a, &a, 3).unwrap();
        // frozen from naive convolution: 2^d / d!
        let want = [int(1), int(2), int(2), rat(4, 3)];
        for (d, w) in want.iter().enumerate() {
            assert_eq!(p.coeff(&MultiDegree::new(vec![d as u32])), Some(w));
        }
        assert_eq!(p, naive_mul(&a, &a, 3));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = NovikovSeries::<Rational>::one(1, 2);
        let b = NovikovSeries::<Rational>::one(2, 2);
        assert!(matches!(series_mul(&a, &b, 2), Err(Error::RankMismatch { .. })));
    }

    fn arb_series(rank: usize, order: u32) -> impl Strategy<Value = NovikovSeries<Rational>> {
        let degs = MultiDegree::all_up_to(rank, order);
        let n = degs.len();
        proptest::collection::vec((-4i64..5, 1i64..4), n).prop_map(move |cs| {
            let mut s = NovikovSeries::zero(rank, order);
            for (d, (p, q)) in degs.iter().zip(cs) {
                s.add_term(d.clone(), &rat(p, q));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn matches_naive_convolution(
            (a, b, order) in (1usize..=2, 0u32..=4)
                .prop_flat_map(|(r, n)| (arb_series(r, n), arb_series(r, n), Just(n)))
        ) {
            prop_assert_eq!(series_mul(&a, &b, order).unwrap(), naive_mul(&a, &b, order));
        }

        #[test]
        fn ring_laws(a in arb_series(2, 3), b in arb_series(2, 3), c in arb_series(2, 3)) {
            let ab = series_mul(&a, &b, 3).unwrap();
            prop_assert_eq!(&ab, &series_mul(&b, &a, 3).unwrap());
            let l = series_mul(&ab, &c, 3).unwrap();
            let r = series_mul(&a, &series_mul(&b, &c, 3).unwrap(), 3).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
