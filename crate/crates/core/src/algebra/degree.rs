use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `(d_1, ..., d_r)` of a Novikov monomial `q_1^{d_1}⋯q_r^{d_r}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(d: Vec<u32>) -> Self {
        Self(d)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The unit vector `e_i`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut d = vec![0; rank];
        d[i] = 1;
        Self(d)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if componentwise nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Self)
    }

    /// Every degree of the given rank with total at most `order`, sorted by total degree
    /// and then lexicographically.
    pub fn all_up_to(rank: usize, order: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; rank];
        fill(&mut out, &mut cur, 0, order);
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }
}

fn fill(out: &mut Vec<MultiDegree>, cur: &mut Vec<u32>, pos: usize, budget: u32) {
    if pos == cur.len() {
        out.push(MultiDegree(cur.clone()));
        return;
    }
    for d in 0..=budget {
        cur[pos] = d;
        fill(out, cur, pos + 1, budget - d);
    }
    cur[pos] = 0;
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiDegree {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_graded() {
        let all = MultiDegree::all_up_to(2, 2);
        let v: Vec<Vec<u32>> = all.iter().map(|d| d.0.clone()).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
        // C(N + r, r) monomials
        assert_eq!(MultiDegree::all_up_to(2, 6).len(), 28);
        assert_eq!(MultiDegree::all_up_to(1, 6).len(), 7);
    }

    #[test]
    fn subtraction_respects_cone() {
        let a = MultiDegree::new(vec![2, 1]);
        assert_eq!(a.checked_sub(&MultiDegree::new(vec![1, 1])), Some(MultiDegree::new(vec![1, 0])));
        assert_eq!(a.checked_sub(&MultiDegree::new(vec![0, 2])), None);
    }
}
