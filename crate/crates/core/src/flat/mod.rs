//! Flat sections of the Dubrovin connection in gauge form.
//!
//! A fundamental solution is stored as `H = Γ(q) · E(t)` where `E` is the matrix of
//! `x ↦ e^{t/h} x` and `Γ = Σ_D Γ_D q^D` with `Γ_0 = I`. Entry `(i, j)` of `H` is
//! `(J_i, b_j)`, so row `i` of `Γ_D` holds the `a`-coordinates of the gauge coefficient
//! of `J_i` at degree `D`.

mod closed;
mod descendents;
mod reference;

pub use closed::{closed_form, closed_form_cp, closed_form_f3, closed_form_sigma1};
pub use descendents::{degree_axiom_allows, extract_descendents, max_level, DescendentInvariant};
pub use reference::{reference_asymptotic, reference_q_matrix};

use serde_json::json;

use crate::algebra::{
    format_rational, rat, Coefficient, HLaurent, Matrix, MultiDegree, NovikovSeries, Rational, Scalar, TPoly,
};
use crate::diffops::{apply_classical, apply_gauge, QDEOperator};
use crate::model::{CohClass, ModelSpec};
use crate::quantum::{connection_form, ClassSeries, MultMatrix};
use crate::report::Report;
use crate::{Error, Result};

/// Gauge coefficients `Σ_D c_D q^D` of a section `e^{t/h} Σ_D c_D q^D`.
pub type GaugeSeries = ClassSeries<HLaurent>;

/// A fundamental solution in gauge form.
#[derive(Clone, Debug, PartialEq)]
pub struct HMatrix {
    pub gamma: NovikovSeries<Matrix<HLaurent>>,
}

fn to_hl(m: &Matrix<Rational>) -> Matrix<HLaurent> {
    m.map(|x| HLaurent::constant(x.clone()))
}

impl HMatrix {
    pub fn size(&self) -> usize {
        self.gamma.iter().next().map_or(0, |(_, m)| m.rows())
    }

    pub fn order(&self) -> u32 {
        self.gamma.order()
    }

    pub fn at(&self, d: &MultiDegree) -> Matrix<HLaurent> {
        self.gamma.coeff(d).cloned().unwrap_or_else(|| Matrix::zeros(self.size(), self.size()))
    }

    /// Assembles `Γ` from the gauge coefficients of the rows `J_0, ..., J_s`.
    pub fn from_rows(model: &ModelSpec, rows: &[GaugeSeries]) -> Self {
        let n = model.len();
        let order = rows.iter().map(|r| r.order()).min().unwrap_or(0);
        let mut gamma = NovikovSeries::zero(model.rank(), order);
        for d in MultiDegree::all_up_to(model.rank(), order) {
            let mut m = Matrix::zeros(n, n);
            for (i, row) in rows.iter().enumerate() {
                if let Some(c) = row.coeff(&d) {
                    for l in 0..n {
                        m.set(i, l, model.pair(c, &model.basis_class(l)));
                    }
                }
            }
            gamma.add_term(d, &m);
        }
        Self { gamma }
    }

    /// Gauge coefficients of `J_i = Σ_l H_{il} a_l`.
    pub fn row_class(&self, model: &ModelSpec, i: usize) -> GaugeSeries {
        let duals: Vec<CohClass<HLaurent>> = model.dual_basis().iter().map(|a| a.to_hlaurent()).collect();
        self.gamma.map(|m| {
            let mut c = CohClass::zero(model.len());
            for (l, a) in duals.iter().enumerate() {
                let v = m.get(i, l);
                if !v.is_zero() {
                    c.add_assign_ref(&a.mul_scalar(v));
                }
            }
            c
        })
    }

    /// The J-function: the last row.
    pub fn j_function(&self, model: &ModelSpec) -> GaugeSeries {
        self.row_class(model, model.len() - 1)
    }

    pub fn gauge_at_origin_is_identity(&self) -> bool {
        let n = self.size();
        self.gamma.coeff(&MultiDegree::zero(self.gamma.rank())) == Some(&Matrix::identity(n))
    }
}

/// `(d h − ad_C)^{-1} R = Σ_p ad_C^p(R) / (d h)^{p+1}`, finite since `C` is nilpotent.
fn solve_step(c: &Matrix<HLaurent>, d: u32, r: &Matrix<HLaurent>, depth: u32) -> Option<Matrix<HLaurent>> {
    let n = r.rows();
    let mut out = Matrix::zeros(n, n);
    let mut term = r.clone();
    for p in 0..=depth {
        if term.is_zero() {
            return Some(out);
        }
        let denom = rat(1, d as i64).pow(p as i32 + 1);
        let f = HLaurent::monomial(denom, -(p as i64 + 1));
        out.add_assign_ref(&term.map(|x| x.mul_ref(&f)));
        term = c.commutator(&term);
    }
    term.is_zero().then_some(out)
}

/// `R_k(D) = Σ_{0 ≠ D' ≤ D} M_{k,D'} Γ_{D−D'}`.
fn recursion_rhs(
    mk: &NovikovSeries<Matrix<HLaurent>>,
    gamma: &NovikovSeries<Matrix<HLaurent>>,
    d: &MultiDegree,
    n: usize,
) -> Matrix<HLaurent> {
    let mut acc = Matrix::zeros(n, n);
    for (dp, m) in mk.iter() {
        if dp.is_zero() {
            continue;
        }
        if let Some(rest) = d.checked_sub(dp) {
            if let Some(g) = gamma.coeff(&rest) {
                acc.add_assign_ref(&m.mul(g));
            }
        }
    }
    acc
}

/// Solves `h ∂_k H = M_k H` order by order from `Γ_0 = I`. At each `D ≠ 0`,
/// `(d_k h − ad_{M_{k,0}}) Γ_D = Σ_{D'≠0} M_{k,D'} Γ_{D−D'}` is solved for one `k` with
/// `d_k > 0` and the result checked against every other such `k`.
pub fn solve_fundamental(model: &ModelSpec, order: u32) -> Result<HMatrix> {
    let n = model.len();
    let form: Vec<NovikovSeries<Matrix<HLaurent>>> =
        connection_form(model, order).iter().map(|m| m.series.map(to_hl)).collect();
    let classical: Vec<Matrix<HLaurent>> =
        form.iter().map(|m| m.coeff(&MultiDegree::zero(model.rank())).cloned().expect("classical part")).collect();
    let depth = 2 * model.dim() + 2;
    let mut gamma = NovikovSeries::zero(model.rank(), order);
    gamma.add_term(MultiDegree::zero(model.rank()), &Matrix::identity(n));
    for d in MultiDegree::all_up_to(model.rank(), order) {
        if d.is_zero() {
            continue;
        }
        let mut value: Option<Matrix<HLaurent>> = None;
        for k in (0..model.rank()).filter(|&k| d.get(k) > 0) {
            let rhs = recursion_rhs(&form[k], &gamma, &d, n);
            let g = solve_step(&classical[k], d.get(k), &rhs, depth).ok_or_else(|| Error::Inconsistent {
                degree: d.clone(),
                detail: format!("M_{},0 is not nilpotent", k + 1),
            })?;
            match &value {
                None => value = Some(g),
                Some(v) if *v != g => {
                    return Err(Error::Inconsistent {
                        degree: d.clone(),
                        detail: format!("direction {} disagrees with an earlier direction", k + 1),
                    })
                }
                _ => {}
            }
        }
        let g = value.ok_or_else(|| Error::Inconsistent {
            degree: d.clone(),
            detail: "no direction with positive degree".into(),
        })?;
        gamma.add_term(d, &g);
    }
    Ok(HMatrix { gamma })
}

/// Checks `h ∂_k H = M_k H` for every `k`, degree by degree, to the series order.
pub fn check_system(model: &ModelSpec, hm: &HMatrix) -> Report {
    let n = model.len();
    let order = hm.order();
    let form: Vec<MultMatrix> = connection_form(model, order);
    let mut witnesses = Vec::new();
    for (k, mk) in form.iter().enumerate() {
        let mk = mk.series.map(to_hl);
        let c = mk.coeff(&MultiDegree::zero(model.rank())).cloned().expect("classical part");
        for d in MultiDegree::all_up_to(model.rank(), order) {
            let g = hm.at(&d);
            let lhs = g.map(|x| x.shift(1)).scale(&crate::algebra::int(d.get(k) as i64)).sub(&c.commutator(&g));
            let residual = lhs.sub(&recursion_rhs(&mk, &hm.gamma, &d, n));
            if let Some((i, j, v)) = residual.first_nonzero() {
                witnesses.push(json!({ "k": k + 1, "D": d.as_slice(), "entry": [i, j], "value": v.to_string() }));
                break;
            }
        }
    }
    Report::from_witnesses("first_order_system", witnesses)
}

/// Rows `J_i = P_i J`; the assembled `H` must satisfy the first-order system.
pub fn build_h_from_j(model: &ModelSpec, j: &GaugeSeries, rows: &[QDEOperator]) -> Result<HMatrix> {
    if rows.len() != model.len() {
        return Err(Error::Shape(format!("{} row operators for a basis of size {}", rows.len(), model.len())));
    }
    if rows.last() != Some(&QDEOperator::one(model.rank())) {
        return Err(Error::Shape("last row operator must be 1".into()));
    }
    let classes: Vec<GaugeSeries> = rows.iter().map(|p| apply_gauge(p, j, model)).collect();
    let hm = HMatrix::from_rows(model, &classes);
    let report = check_system(model, &hm);
    if !report.passed() {
        return Err(Error::Check(format!("rows do not solve the first-order system: {:?}", report.witnesses)));
    }
    Ok(hm)
}

/// Inverse of a series of matrices with `X_0 = I`, by the geometric series.
fn invert_unipotent(x: &NovikovSeries<Matrix<HLaurent>>, n: usize) -> Result<NovikovSeries<Matrix<HLaurent>>> {
    let zero = MultiDegree::zero(x.rank());
    if x.coeff(&zero) != Some(&Matrix::identity(n)) {
        return Err(Error::NonInvertible("q^0 part of H_0 is not the identity".into()));
    }
    let mut nil = x.clone();
    nil.add_term(zero.clone(), &Matrix::<HLaurent>::identity(n).neg());
    let order = x.order();
    let mut out = NovikovSeries::constant(x.rank(), order, Matrix::identity(n));
    let mut power = out.clone();
    for _ in 0..order {
        power = crate::algebra::convolve(&power, &nil, order, |a, b| a.mul(b))?.neg();
        if power.is_zero() {
            break;
        }
        out.add_assign_series(&power);
    }
    Ok(out)
}

/// Factors `H = Q H_0`, where `H_0` has rows given by the `q`-free parts of the row
/// operators. `Q` must come out free of `h`.
pub fn q_factorize(
    model: &ModelSpec,
    hm: &HMatrix,
    rows: &[QDEOperator],
) -> Result<(NovikovSeries<Matrix<Rational>>, HMatrix)> {
    let j = hm.j_function(model);
    let classes: Vec<GaugeSeries> = rows.iter().map(|p| apply_gauge(&p.classical(), &j, model)).collect();
    let h0 = HMatrix::from_rows(model, &classes);
    let n = model.len();
    let inv = invert_unipotent(&h0.gamma, n)?;
    let q = crate::algebra::convolve(&hm.gamma, &inv, hm.order(), |a, b| a.mul(b))?;
    let mut out = NovikovSeries::zero(model.rank(), hm.order());
    for (d, m) in q.iter() {
        let mut r = Matrix::zeros(n, n);
        for i in 0..n {
            for l in 0..n {
                let v = m.get(i, l);
                let c = v
                    .as_constant()
                    .ok_or_else(|| Error::Check(format!("Q depends on h at D={d}, entry ({i}, {l}): {v}")))?;
                r.set(i, l, c);
            }
        }
        out.add_term(d.clone(), &r);
    }
    Ok((out, h0))
}

/// `e^{t/h} = Σ_k (Σ t_i b_i)^k / (k! h^k)` as a class-valued polynomial in `t`.
pub fn exp_classical(model: &ModelSpec) -> TPoly<CohClass<HLaurent>> {
    let r = model.rank();
    let mut total = TPoly::constant(r, model.one::<HLaurent>());
    let mut prev = total.clone();
    for k in 1..=model.dim() + 1 {
        let mut next = TPoly::zero(r);
        for (e, c) in prev.iter() {
            for i in 0..r {
                let mut e2 = e.clone();
                e2[i] += 1;
                let v = model.cup(&model.basis_class(i + 1), c).map(|x| x.shift(-1)).scale(&rat(1, k as i64));
                next.add_term(e2, &v);
            }
        }
        if next.is_zero() {
            break;
        }
        total.add_assign_poly(&next);
        prev = next;
    }
    total
}

/// Matrix of `x ↦ e^{t/h} x`: entry `(i, j)` is the `b_i`-coefficient of `e^{t/h} b_j`.
pub fn asymptotic_h(model: &ModelSpec) -> Vec<Vec<TPoly<HLaurent>>> {
    let n = model.len();
    let e = exp_classical(model);
    let cols: Vec<TPoly<CohClass<HLaurent>>> = (0..n).map(|j| e.map(|c| model.cup(c, &model.basis_class(j)))).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j].map(|c| c.get(i).clone())).collect()).collect()
}

/// The last row of `H_{−∞}`, as a class: `J_{−∞} = e^{t/h}`.
pub fn asymptotic_j(model: &ModelSpec) -> TPoly<CohClass<HLaurent>> {
    exp_classical(model)
}

/// Applies each classical operator to `J_{−∞}`.
pub fn verify_classical(model: &ModelSpec, ops: &[(String, QDEOperator)]) -> Result<Report> {
    let j = asymptotic_j(model);
    let mut witnesses = Vec::new();
    for (name, op) in ops {
        let out = apply_classical(op, &j)?;
        if !out.is_zero() {
            witnesses.push(json!({ "operator": name, "terms": out.iter().count() }));
        }
    }
    Ok(Report::from_witnesses("classical_equations", witnesses))
}

/// Applies each operator to `J` and reports the lowest degree of any nonzero residual.
pub fn verify_annihilated(model: &ModelSpec, j: &GaugeSeries, ops: &[(String, QDEOperator)]) -> Report {
    let mut witnesses = Vec::new();
    for (name, op) in ops {
        let out = apply_gauge(op, j, model);
        if let Some((d, _)) = out.lowest_term() {
            let max = out.iter().map(|(d, _)| d.total()).max().unwrap_or(0);
            witnesses.push(json!({ "operator": name, "lowest_degree": d.as_slice(), "max_total_degree": max }));
        }
    }
    Report::from_witnesses("annihilation", witnesses)
}

/// Compares two gauge series termwise.
pub fn compare_series(a: &GaugeSeries, b: &GaugeSeries) -> Report {
    let diff = a.sub(b);
    match diff.lowest_term() {
        None => Report::pass("series_equality"),
        Some((d, c)) => {
            let k = c.coeffs().iter().position(|x| !x.is_zero()).unwrap_or(0);
            Report::fail(
                "series_equality",
                json!({ "D": d.as_slice(), "component": k, "difference": c.get(k).to_string() }),
            )
        }
    }
}

/// A matrix of scalar `q`-series rendered as strings, for reports.
pub fn q_matrix_json(model: &ModelSpec, q: &NovikovSeries<Matrix<Rational>>) -> serde_json::Value {
    let n = model.len();
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = Vec::new();
        for l in 0..n {
            let entry = q.map(|m| m.get(i, l).clone());
            let mut parts = Vec::new();
            for (d, c) in entry.iter_graded() {
                let mut mono: Vec<String> = Vec::new();
                for (k, &e) in d.as_slice().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => mono.push(model.q_name(k)),
                        _ => mono.push(format!("{}^{e}", model.q_name(k))),
                    }
                }
                let body = if mono.is_empty() {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), mono.join("*"))
                };
                parts.push(body);
            }
            row.push(if parts.is_empty() { "0".to_string() } else { parts.join(" + ") });
        }
        rows.push(row);
    }
    json!(rows)
}

/// Applies the `h`-free part of each operator, with `q` held constant, to the
/// truncated `ṽ = exp(Σ t_i b_i∘ / h)` and checks the result vanishes through
/// `t`-order `L − θ-degree`, the part unaffected by truncating `ṽ` at `L`.
pub fn verify_constq(model: &ModelSpec, ops: &[(String, QDEOperator)], t_order: u32, order: u32) -> Report {
    let v = crate::quantum::exp_quantum(model, t_order, order);
    let mut witnesses = Vec::new();
    let mut vacuous = Vec::new();
    for (name, op) in ops {
        let op = op.h_free();
        let ord = op.theta_degree();
        if t_order <= ord {
            vacuous.push(name.clone());
            continue;
        }
        let out = crate::diffops::apply_constq(&op, &v).truncate(t_order - ord);
        let first = out.iter().next().map(|(e, _)| e.clone());
        if let Some(e) = first {
            witnesses.push(json!({ "operator": name, "t_exponents": e }));
        }
    }
    let report = Report::from_witnesses("constant_q", witnesses);
    if vacuous.is_empty() {
        report
    } else {
        report.with_note(json!({ "warning": "t-order too short to test these operators", "operators": vacuous }))
    }
}
