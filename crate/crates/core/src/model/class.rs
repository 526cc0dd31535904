use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::algebra::{format_rational, parse_rational, Coefficient, HLaurent, Rational, Scalar};

/// Cohomology-valued vector: coefficients in the model basis `b_0, ..., b_s`.
#[derive(Clone, PartialEq, Debug)]
pub struct CohClass<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> CohClass<S> {
    pub fn zero(len: usize) -> Self {
        Self { coeffs: vec![S::zero(); len] }
    }

    /// The basis vector `b_i`.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut c = Self::zero(len);
        c.coeffs[i] = S::one();
        c
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, v: S) {
        self.coeffs[i] = v;
    }

    /// `self[i] += v`.
    pub fn add_at(&mut self, i: usize, v: &S) {
        self.coeffs[i].add_assign_ref(v);
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by a scalar of the same ring.
    pub fn mul_scalar(&self, k: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.mul_ref(k)).collect() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CohClass<T> {
        CohClass { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl CohClass<Rational> {
    pub fn to_hlaurent(&self) -> CohClass<HLaurent> {
        self.map(|c| HLaurent::constant(c.clone()))
    }
}

impl<S: Scalar> Coefficient for CohClass<S> {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "class length mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
    }
    fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    fn scale(&self, k: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect() }
    }
}

/// JSON encoding of the scalar rings that appear as class coefficients.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value) -> Option<Self> {
        v.as_str().and_then(parse_rational)
    }
}

impl JsonScalar for HLaurent {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("HLaurent serializes")
    }
    fn from_json(v: &Value) -> Option<Self> {
        serde_json::from_value(v.clone()).ok()
    }
}

impl<S: Scalar + JsonScalar> Serialize for CohClass<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let v: Vec<Value> = self.coeffs.iter().map(JsonScalar::to_json).collect();
        v.serialize(s)
    }
}

impl<'de, S: Scalar + JsonScalar> Deserialize<'de> for CohClass<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|x| S::from_json(x).ok_or_else(|| D::Error::custom(format!("bad coefficient {x}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }
}
