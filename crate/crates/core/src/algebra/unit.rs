//! Inverses of units in `H^*(M) ⊗ Q[h, h^-1]` under the cup product.

use super::hlaurent::HLaurent;
use super::rational::{int, Rational};
use super::scalar::Coefficient;
use crate::model::{CohClass, ModelSpec};
use crate::Error;

/// Cup-inverse of `x = u·1 + n` where `u` is a nonzero `h`-monomial and `n` has no
/// `H^0` component. The geometric series in `u^{-1} n` stops once the power vanishes,
/// which happens after at most `dim` steps since `n` is nilpotent.
pub fn invert_unit(x: &CohClass<HLaurent>, model: &ModelSpec) -> Result<CohClass<HLaurent>, Error> {
    let len = model.len();
    if x.len() != len {
        return Err(Error::Shape(format!("class of length {} for a basis of size {len}", x.len())));
    }
    let u_inv = x.get(0).inverse().ok_or_else(|| Error::NonInvertible(x.get(0).to_string()))?;
    let mut nil = x.clone();
    nil.set(0, HLaurent::zero());
    let step = nil.mul_scalar(&u_inv.neg());

    let mut out = CohClass::zero(len);
    let mut power = model.one::<HLaurent>();
    for _ in 0..=model.dim() {
        if power.is_zero() {
            break;
        }
        out.add_assign_ref(&power);
        power = model.cup(&power, &step);
    }
    if !power.is_zero() {
        return Err(Error::NonInvertible("positive-degree part is not nilpotent".into()));
    }
    Ok(out.mul_scalar(&u_inv))
}

/// The class `c + m·h·1`.
pub fn linear_factor(c: &CohClass<Rational>, m: i64) -> CohClass<HLaurent> {
    let mut out = c.to_hlaurent();
    let mut v = out.get(0).clone();
    v.add_assign_ref(&HLaurent::monomial(int(m), 1));
    out.set(0, v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Scalar;
    use crate::model::builtin_model;

    fn hl(terms: &[(i64, Rational)]) -> HLaurent {
        HLaurent::from_terms(terms.iter().cloned())
    }

    #[test]
    fn unit_inverts_to_unit() {
        let m = builtin_model("f3").unwrap();
        let one = m.one::<HLaurent>();
        assert_eq!(invert_unit(&one, &m).unwrap(), one);
    }

    #[test]
    fn square_zero_nilpotent_on_cp1() {
        let m = builtin_model("cp1").unwrap();
        let x = CohClass::from_coeffs(vec![HLaurent::one(), hl(&[(-1, int(3))])]);
        let y = invert_unit(&x, &m).unwrap();
        assert_eq!(y, CohClass::from_coeffs(vec![HLaurent::one(), hl(&[(-1, int(-3))])]));
    }

    #[test]
    fn flag_linear_factor() {
        let m = builtin_model("f3").unwrap();
        let a = m.basis_class::<Rational>(1);
        let x = linear_factor(&a, 2);
        let y = invert_unit(&x, &m).unwrap();
        assert_eq!(y.get(0), &hl(&[(-1, rat(1, 2))]));
        assert_eq!(y.get(1), &hl(&[(-2, rat(-1, 4))]));
        assert_eq!(y.get(3), &hl(&[(-3, rat(1, 8))]));
        assert!(y.get(2).is_zero() && y.get(4).is_zero() && y.get(5).is_zero());
        assert_eq!(m.cup(&x, &y), m.one());
    }

    #[test]
    fn zero_scalar_part_is_rejected() {
        let m = builtin_model("cp2").unwrap();
        let x = linear_factor(&m.basis_class(1), 0);
        assert!(matches!(invert_unit(&x, &m), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn inverse_of_mixed_unit_on_sigma1() {
        let m = builtin_model("sigma1").unwrap();
        let x2 = m.basis_class::<Rational>(2).sub(&m.basis_class(1));
        for k in [-3, -1, 1, 4] {
            let x = linear_factor(&x2, k);
            let y = invert_unit(&x, &m).unwrap();
            assert_eq!(m.cup(&x, &y), m.one());
        }
    }
}
