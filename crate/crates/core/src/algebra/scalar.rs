use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Additive coefficient of a sparse container. Absent entries are zero, so no
/// standalone zero is required.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.neg());
    }
}

/// Commutative ring with unit, containing the rationals.
pub trait Scalar: Coefficient {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}
