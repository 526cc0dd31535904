//! Laurent polynomials in the formal parameter `h`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, Rational};
use super::scalar::{Coefficient, Scalar};

/// Finite sum `Σ c_e h^e`, `e ∈ Z`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct HLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl HLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · h^exp`.
    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `h^exp`.
    pub fn h_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// The single term `(c, e)` if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Constant value if no power of `h` other than `h^0` occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `h^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Multiplicative inverse; only monomials are units.
    pub fn inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e))
    }

    /// Evaluate at `h = value`.
    pub fn evaluate(&self, value: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_i64(value, *e);
        }
        acc
    }
}

fn pow_i64(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Coefficient for HLaurent {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }
    fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }
}

impl Scalar for HLaurent {
    fn zero() -> Self {
        HLaurent::zero()
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Add for &HLaurent {
    type Output = HLaurent;
    fn add(self, rhs: &HLaurent) -> HLaurent {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &HLaurent {
    type Output = HLaurent;
    fn sub(self, rhs: &HLaurent) -> HLaurent {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul for &HLaurent {
    type Output = HLaurent;
    fn mul(self, rhs: &HLaurent) -> HLaurent {
        self.mul_ref(rhs)
    }
}

impl Neg for &HLaurent {
    type Output = HLaurent;
    fn neg(self) -> HLaurent {
        Coefficient::neg(self)
    }
}

impl From<Rational> for HLaurent {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl From<i64> for HLaurent {
    fn from(n: i64) -> Self {
        Self::constant(int(n))
    }
}

impl fmt::Display for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag_s = format_rational(&mag);
            match *e {
                0 => write!(f, "{mag_s}")?,
                _ => {
                    let hp = if *e == 1 { "h".to_string() } else { format!("h^{e}") };
                    if num_traits::One::is_one(&mag) {
                        write!(f, "{hp}")?;
                    } else {
                        write!(f, "{mag_s}*{hp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HLaurent({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exp: i64,
    #[serde(with = "super::rational::serde_str")]
    c: Rational,
}

/// Serialized as `[{exp, c: "p/q"}, ...]` in ascending exponent order.
impl Serialize for HLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let recs: Vec<TermRecord> = self.terms.iter().map(|(e, c)| TermRecord { exp: *e, c: c.clone() }).collect();
        recs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        Ok(Self::from_terms(recs.into_iter().map(|r| (r.exp, r.c))))
    }
}
