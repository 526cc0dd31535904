use serde_json::{json, Value};

use super::{class_series, connection_form, qmul, qmul_series, ClassSeries, MultMatrix};
use crate::algebra::{
    convolve, format_rational, int, Coefficient, HLaurent, Matrix, MultiDegree, NovikovSeries, Rational, TPoly,
};
use crate::model::ModelSpec;
use crate::report::Report;
use crate::{Error, Result};

/// Flatness outcome: `ω∧ω = 0` and `dω = 0` are reported separately.
#[derive(Clone, Debug)]
pub struct Flatness {
    pub commutator: Report,
    pub symmetry: Report,
}

impl Flatness {
    pub fn passed(&self) -> bool {
        self.commutator.passed() && self.symmetry.passed()
    }

    pub fn reports(&self) -> Vec<Report> {
        vec![self.commutator.clone(), self.symmetry.clone()]
    }
}

fn matrix_witness(kind: &str, i: usize, j: usize, d: &MultiDegree, m: &Matrix<Rational>) -> Value {
    let (row, col, v) = m.first_nonzero().expect("witness matrix is nonzero");
    json!({
        "kind": kind,
        "i": i,
        "j": j,
        "D": d.as_slice(),
        "entry": [row, col],
        "value": format_rational(v),
    })
}

/// `[M_i, M_j] = 0` and `∂_i M_j = ∂_j M_i` for all generator pairs, to order `order`.
pub fn check_flatness(model: &ModelSpec, order: u32) -> Flatness {
    check_flatness_form(&connection_form(model, order), order)
}

/// Flatness of an explicit connection form.
pub fn check_flatness_form(form: &[MultMatrix], order: u32) -> Flatness {
    let mut comm = Vec::new();
    let mut sym = Vec::new();
    for (a, mi) in form.iter().enumerate() {
        for mj in &form[a + 1..] {
            let ij = convolve(&mi.series, &mj.series, order, |x, y| x.mul(y)).expect("same rank");
            let ji = convolve(&mj.series, &mi.series, order, |x, y| x.mul(y)).expect("same rank");
            let c = ij.sub(&ji);
            if let Some((d, m)) = c.lowest_term() {
                comm.push(matrix_witness("commutator", mi.j, mj.j, d, m));
            }
            // ∂_i acts on q^D as multiplication by d_i
            let di = mi.j - 1;
            let dj = mj.j - 1;
            let lhs = mj.series.map_with_degree(|d, m| m.scale(&int(d.get(di) as i64)));
            let rhs = mi.series.map_with_degree(|d, m| m.scale(&int(d.get(dj) as i64)));
            if let Some((d, m)) = lhs.sub(&rhs).lowest_term() {
                sym.push(matrix_witness("symmetry", mi.j, mj.j, d, m));
            }
        }
    }
    Flatness {
        commutator: Report::from_witnesses("flatness.commutator", comm),
        symmetry: Report::from_witnesses("flatness.symmetry", sym),
    }
}

fn class_witness(s: &ClassSeries<Rational>) -> Option<Value> {
    s.lowest_term().map(|(d, c)| {
        let k = c.coeffs().iter().position(|x| !num_traits::Zero::is_zero(x)).expect("nonzero class");
        json!({ "D": d.as_slice(), "component": k, "value": format_rational(c.get(k)) })
    })
}

/// `(b_i ∘ b_j) ∘ b_k = b_i ∘ (b_j ∘ b_k)` for every basis triple.
pub fn check_associativity(model: &ModelSpec, order: u32) -> Report {
    let n = model.len();
    let b: Vec<ClassSeries<Rational>> = (0..n).map(|i| class_series(model, &model.basis_class(i), order)).collect();
    let pairs: Vec<Vec<ClassSeries<Rational>>> =
        (0..n).map(|i| (0..n).map(|j| qmul_series(model, &b[i], &b[j], order)).collect()).collect();
    let mut witnesses = Vec::new();
    for (i, bi) in b.iter().enumerate() {
        for (j, row) in pairs.iter().enumerate() {
            for (k, bk) in b.iter().enumerate() {
                let left = qmul_series(model, &pairs[i][j], bk, order);
                let right = qmul_series(model, bi, &row[k], order);
                if let Some(mut w) = class_witness(&left.sub(&right)) {
                    w["triple"] = json!([i, j, k]);
                    witnesses.push(w);
                }
            }
        }
    }
    Report::from_witnesses("associativity", witnesses)
}

/// `b_i ∘ b_j = b_j ∘ b_i` for every basis pair.
pub fn check_commutativity(model: &ModelSpec, order: u32) -> Report {
    let n = model.len();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = model.basis_class(i);
            let y = model.basis_class(j);
            if let Some(mut w) = class_witness(&qmul(model, &x, &y, order).sub(&qmul(model, &y, &x, order))) {
                w["pair"] = json!([i, j]);
                witnesses.push(w);
            }
        }
    }
    Report::from_witnesses("commutativity", witnesses)
}

/// `b_0 ∘ b_j = b_j` for every basis element.
pub fn check_unit(model: &ModelSpec, order: u32) -> Report {
    let mut witnesses = Vec::new();
    for j in 0..model.len() {
        let p = qmul(model, &model.one(), &model.basis_class(j), order);
        let diff = p.sub(&class_series(model, &model.basis_class(j), order));
        if let Some(mut w) = class_witness(&diff) {
            w["j"] = json!(j);
            witnesses.push(w);
        }
    }
    Report::from_witnesses("unit", witnesses)
}

/// Antiderivative `K` with `dK = λω`, `λ = 1/h`.
#[derive(Clone, Debug)]
pub struct KForm {
    /// `λ Σ_j t_j (b_j ∪)`.
    pub linear: TPoly<Matrix<HLaurent>>,
    /// `Σ_{D≠0} λ M_{j,D} / d_j q^D`.
    pub q_part: NovikovSeries<Matrix<HLaurent>>,
}

fn lambda(m: &Matrix<Rational>) -> Matrix<HLaurent> {
    m.map(|x| HLaurent::monomial(x.clone(), -1))
}

/// Integrates the connection form. Every direction `j` with `d_j > 0` must give the
/// same `q^D` coefficient and directions with `d_j = 0` must contribute nothing.
pub fn compute_k(model: &ModelSpec, order: u32) -> Result<KForm> {
    let form = connection_form(model, order);
    let r = model.rank();
    let mut linear = TPoly::zero(r);
    for (j, m) in form.iter().enumerate() {
        let mut e = vec![0; r];
        e[j] = 1;
        linear.add_term(e, &lambda(&m.classical()));
    }
    let mut q_part = NovikovSeries::zero(r, order);
    for d in MultiDegree::all_up_to(r, order) {
        if d.is_zero() {
            continue;
        }
        let mut value: Option<Matrix<Rational>> = None;
        for (j, m) in form.iter().enumerate() {
            let mjd = m.at(&d);
            let dj = d.get(j);
            if dj == 0 {
                if !mjd.is_zero() {
                    return Err(Error::Inconsistent {
                        degree: d.clone(),
                        detail: format!("M_{} has a q^D term but d_{} = 0", j + 1, j + 1),
                    });
                }
                continue;
            }
            let k = mjd.scale(&Rational::new(1.into(), (dj as i64).into()));
            match &value {
                None => value = Some(k),
                Some(v) if *v != k => {
                    return Err(Error::Inconsistent {
                        degree: d.clone(),
                        detail: format!("directions disagree at M_{}", j + 1),
                    })
                }
                _ => {}
            }
        }
        if let Some(v) = value {
            q_part.add_term(d, &lambda(&v));
        }
    }
    Ok(KForm { linear, q_part })
}

/// Checks `∂_j K = λ M_j` termwise for every `j`.
pub fn verify_k(model: &ModelSpec, k: &KForm, order: u32) -> Report {
    let form = connection_form(model, order);
    let mut witnesses = Vec::new();
    for (j, m) in form.iter().enumerate() {
        let lin = k.linear.derivative(j);
        let c = lin.constant_term().cloned().unwrap_or_else(|| Matrix::zeros(model.len(), model.len()));
        if c != lambda(&m.classical()) || lin.degree().unwrap_or(0) > 0 {
            witnesses.push(json!({ "j": j + 1, "D": vec![0; model.rank()] }));
        }
        let dk = k.q_part.map_with_degree(|d, x| x.scale(&int(d.get(j) as i64)));
        let mut lm = m.series.map(lambda);
        lm.add_term(MultiDegree::zero(model.rank()), &lambda(&m.classical()).neg());
        if let Some((d, _)) = dk.sub(&lm).lowest_term() {
            witnesses.push(json!({ "j": j + 1, "D": d.as_slice() }));
        }
    }
    Report::from_witnesses("k_antiderivative", witnesses)
}
