use std::collections::BTreeMap;

use super::{Letter, QDEOperator, RawOperator};
use crate::algebra::{int, Coefficient, HLaurent, MultiDegree, NovikovSeries, Rational, TPoly};
use crate::model::{CohClass, ModelSpec};
use crate::quantum::{ClassSeries, ExpSeries};
use crate::{Error, Result};

/// `θ_i` on a gauge coefficient of degree `d_i`: `x ↦ b_i ∪ x + d_i h x`.
fn theta_step(model: &ModelSpec, i: usize, di: u32, x: &CohClass<HLaurent>) -> CohClass<HLaurent> {
    let mut out = model.cup(&model.basis_class(i + 1), x);
    if di > 0 {
        out = out.add(&x.map(|c| c.shift(1)).scale(&int(di as i64)));
    }
    out
}

fn h_times(x: &CohClass<HLaurent>, k: u32) -> CohClass<HLaurent> {
    if k == 0 {
        x.clone()
    } else {
        x.map(|c| c.shift(k as i64))
    }
}

fn theta_power(
    model: &ModelSpec,
    d: &MultiDegree,
    e: &[u32],
    c: &CohClass<HLaurent>,
    cache: &mut BTreeMap<Vec<u32>, CohClass<HLaurent>>,
) -> CohClass<HLaurent> {
    if let Some(v) = cache.get(e) {
        return v.clone();
    }
    let v = match e.iter().position(|&x| x > 0) {
        None => c.clone(),
        Some(i) => {
            let mut lower = e.to_vec();
            lower[i] -= 1;
            let prev = theta_power(model, d, &lower, c, cache);
            theta_step(model, i, d.get(i), &prev)
        }
    };
    cache.insert(e.to_vec(), v.clone());
    v
}

/// Applies `op` to a gauge series `Σ_D c_D q^D` (the section `e^{t/h} Σ_D c_D q^D`):
/// `θ_i` multiplies `c_D` by `b_i + d_i h`, `q_i` raises `D` by `e_i`, and `h` scales.
pub fn apply_gauge(op: &QDEOperator, s: &ClassSeries<HLaurent>, model: &ModelSpec) -> ClassSeries<HLaurent> {
    let mut out = NovikovSeries::zero(s.rank(), s.order());
    for (d, c) in s.iter() {
        let mut cache = BTreeMap::new();
        for (k, coef) in op.terms() {
            let dq = d.add(&k.q);
            if dq.total() > s.order() {
                continue;
            }
            let x = theta_power(model, d, &k.theta, c, &mut cache);
            out.add_term(dq, &h_times(&x, k.h).scale(coef));
        }
    }
    out
}

/// Applies each word of `raw` letter by letter, right to left, without normal ordering.
pub fn apply_raw(raw: &RawOperator, s: &ClassSeries<HLaurent>, model: &ModelSpec) -> ClassSeries<HLaurent> {
    let mut out = NovikovSeries::zero(s.rank(), s.order());
    for (c, word) in &raw.words {
        let mut v = s.clone();
        for l in word.iter().rev() {
            v = match l {
                Letter::H => v.map(|x| h_times(x, 1)),
                Letter::Q(i) => v.shift(&MultiDegree::unit(s.rank(), *i)),
                Letter::Theta(i) => v.map_with_degree(|d, x| theta_step(model, *i, d.get(*i), x)),
                Letter::Const(k) => v.scale(k),
            };
        }
        out.add_assign_series(&v.scale(c));
    }
    out
}

/// Highest total `θ`-degree; the number of `t`-orders an application can consume.
pub fn theta_order(op: &QDEOperator) -> u32 {
    op.theta_degree()
}

/// Applies a `q`-free operator to a polynomial in `t`, with `θ_i = h ∂/∂t_i`.
pub fn apply_classical(op: &QDEOperator, s: &TPoly<CohClass<HLaurent>>) -> Result<TPoly<CohClass<HLaurent>>> {
    if op.has_q() {
        return Err(Error::Unsupported(format!("operator {op} depends on q; classical mode needs a q-free operator")));
    }
    let mut out = TPoly::zero(s.nvars());
    for (k, c) in op.terms() {
        let mut v = s.clone();
        for (i, &e) in k.theta.iter().enumerate() {
            for _ in 0..e {
                v = v.derivative(i);
            }
        }
        let hp = k.h + k.theta.iter().sum::<u32>();
        out.add_assign_poly(&v.map(|x| h_times(x, hp).scale(c)));
    }
    Ok(out)
}

/// Applies `op` with the `q_i` held constant: `θ_i = h ∂/∂t_i` and `q_i` multiplies.
pub fn apply_constq(op: &QDEOperator, s: &ExpSeries) -> ExpSeries {
    let mut out = TPoly::zero(s.nvars());
    for (k, c) in op.terms() {
        let mut v = s.clone();
        for (i, &e) in k.theta.iter().enumerate() {
            for _ in 0..e {
                v = v.derivative(i);
            }
        }
        let hp = k.h + k.theta.iter().sum::<u32>();
        let c: &Rational = c;
        out.add_assign_poly(&v.map(|series| series.shift(&k.q).map(|x| h_times(x, hp)).scale(c)));
    }
    out
}
