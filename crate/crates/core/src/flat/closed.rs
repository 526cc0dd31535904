//! Hypergeometric closed forms of the J-function gauge coefficients.

use super::GaugeSeries;
use crate::algebra::{invert_unit, linear_factor, Coefficient, HLaurent, MultiDegree, NovikovSeries};
use crate::model::{builtin_model, CohClass, ModelSpec};
use crate::{Error, Result};

fn power(model: &ModelSpec, x: &CohClass<HLaurent>, e: u32) -> CohClass<HLaurent> {
    let mut out = model.one();
    for _ in 0..e {
        out = model.cup(&out, x);
    }
    out
}

/// Cumulative products `P_k = ∏_{m=1}^k (c + m h)^{-1}` for `k = 0..=n`.
fn inverse_products(
    model: &ModelSpec,
    c: &CohClass<crate::algebra::Rational>,
    n: u32,
) -> Result<Vec<CohClass<HLaurent>>> {
    let mut out = vec![model.one()];
    for m in 1..=n {
        let inv = invert_unit(&linear_factor(c, m as i64), model)?;
        out.push(model.cup(out.last().expect("nonempty"), &inv));
    }
    Ok(out)
}

fn products(model: &ModelSpec, c: &CohClass<crate::algebra::Rational>, n: u32) -> Vec<CohClass<HLaurent>> {
    let mut out = vec![model.one()];
    for m in 1..=n {
        let f = linear_factor(c, m as i64);
        out.push(model.cup(out.last().expect("nonempty"), &f));
    }
    out
}

/// `CP^m`: `c_d = ∏_{k=1}^d (x + k h)^{-(m+1)}`.
pub fn closed_form_cp(m: u32, order: u32) -> Result<GaugeSeries> {
    let model = builtin_model(&format!("cp{m}"))?;
    let x = model.basis_class(1);
    let inv = inverse_products(&model, &x, order)?;
    let mut out = NovikovSeries::zero(1, order);
    for (d, p) in inv.iter().enumerate() {
        out.add_term(MultiDegree::new(vec![d as u32]), &power(&model, p, m + 1));
    }
    Ok(out)
}

/// `F_3`: `c_D = ∏_{m=1}^{d1+d2}(a+b+mh) / (∏_{m=1}^{d1}(a+mh)^3 ∏_{m=1}^{d2}(b+mh)^3)`.
pub fn closed_form_f3(order: u32) -> Result<GaugeSeries> {
    let model = builtin_model("f3")?;
    let a = model.basis_class(1);
    let b = model.basis_class(2);
    let num = products(&model, &a.add(&b), order);
    let inv_a = inverse_products(&model, &a, order)?;
    let inv_b = inverse_products(&model, &b, order)?;
    let mut out = NovikovSeries::zero(2, order);
    for d in MultiDegree::all_up_to(2, order) {
        let (d1, d2) = (d.get(0) as usize, d.get(1) as usize);
        let den = model.cup(&power(&model, &inv_a[d1], 3), &power(&model, &inv_b[d2], 3));
        out.add_term(d, &model.cup(&num[d1 + d2], &den));
    }
    Ok(out)
}

/// `Σ_1` with `D = (e, d)`: `c_D = R_{d−e}(x_2) / (∏_{m=1}^e (x_1+mh)^2 ∏_{m=1}^d (x_4+mh))`,
/// `x_2 = x_4 − x_1`, where `R_k = 1` for `k = 0`, `∏_{m=k+1}^0 (x_2+mh)` for `k < 0`
/// and `∏_{m=1}^k (x_2+mh)^{-1}` for `k > 0`.
pub fn closed_form_sigma1(order: u32) -> Result<GaugeSeries> {
    let model = builtin_model("sigma1")?;
    let x1 = model.basis_class(1);
    let x4 = model.basis_class(2);
    let x2 = x4.sub(&x1);
    let inv1 = inverse_products(&model, &x1, order)?;
    let inv4 = inverse_products(&model, &x4, order)?;
    let inv2 = inverse_products(&model, &x2, order)?;
    let mut out = NovikovSeries::zero(2, order);
    for deg in MultiDegree::all_up_to(2, order) {
        let (e, d) = (deg.get(0) as i64, deg.get(1) as i64);
        let ratio = if d >= e {
            inv2[(d - e) as usize].clone()
        } else {
            let mut p = model.one();
            for m in (d - e + 1)..=0 {
                p = model.cup(&p, &linear_factor(&x2, m));
            }
            p
        };
        let den = model.cup(&power(&model, &inv1[e as usize], 2), &inv4[d as usize]);
        let c = model.cup(&ratio, &den);
        if !c.is_zero() {
            out.add_term(deg, &c);
        }
    }
    Ok(out)
}

/// Closed form for a built-in model name, if one is known.
pub fn closed_form(name: &str, order: u32) -> Result<GaugeSeries> {
    if let Some(m) = name.strip_prefix("cp").and_then(|s| s.parse::<u32>().ok()) {
        if m >= 1 {
            return closed_form_cp(m, order);
        }
    }
    match name {
        "f3" => closed_form_f3(order),
        "sigma1" => closed_form_sigma1(order),
        _ => Err(Error::Unsupported(format!("no closed form for model '{name}'"))),
    }
}
