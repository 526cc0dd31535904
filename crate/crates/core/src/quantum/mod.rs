//! Small quantum product, multiplication matrices and ring-level checks.

mod checks;
mod exp;
mod relation;

use std::collections::BTreeMap;

pub use checks::{
    check_associativity, check_commutativity, check_flatness, check_flatness_form, check_unit, compute_k, verify_k,
    Flatness, KForm,
};
pub use exp::{exp_quantum, project_h1, ExpSeries};
pub use relation::{eval_relation, Relation};

use crate::algebra::{Matrix, MultiDegree, NovikovSeries, Rational, Scalar};
use crate::model::{CohClass, ModelSpec};
use crate::{Error, Result};

/// Class-valued Novikov series `Σ_D c_D q^D`.
pub type ClassSeries<S> = NovikovSeries<CohClass<S>>;

/// The series with a single term `x · q^0`.
pub fn class_series<S: Scalar>(model: &ModelSpec, x: &CohClass<S>, order: u32) -> ClassSeries<S> {
    NovikovSeries::constant(model.rank(), order, x.clone())
}

/// Quantum product of two class series, truncated at `order`.
pub fn qmul_series<S: Scalar>(model: &ModelSpec, x: &ClassSeries<S>, y: &ClassSeries<S>, order: u32) -> ClassSeries<S> {
    let order = order.min(x.order()).min(y.order());
    let n = model.len();
    let mut acc: BTreeMap<MultiDegree, CohClass<S>> = BTreeMap::new();
    for (dx, cx) in x.iter() {
        for (dy, cy) in y.iter() {
            let base = dx.add(dy);
            if base.total() > order {
                continue;
            }
            for i in 0..n {
                if cx.get(i).is_zero() {
                    continue;
                }
                for j in 0..n {
                    if cy.get(j).is_zero() {
                        continue;
                    }
                    let p = cx.get(i).mul_ref(cy.get(j));
                    for t in model.quantum_constants(i, j) {
                        let d = base.add(&t.degree);
                        if d.total() > order {
                            continue;
                        }
                        acc.entry(d).or_insert_with(|| CohClass::zero(n)).add_at(t.k, &p.scale(&t.c));
                    }
                }
            }
        }
    }
    let mut out = NovikovSeries::zero(model.rank(), order);
    for (d, c) in acc {
        out.add_term(d, &c);
    }
    out
}

/// `x ∘ y` for plain classes.
pub fn qmul<S: Scalar>(model: &ModelSpec, x: &CohClass<S>, y: &CohClass<S>, order: u32) -> ClassSeries<S> {
    qmul_series(model, &class_series(model, x, order), &class_series(model, y, order), order)
}

/// `b_j ∘ x`.
pub fn mul_basis<S: Scalar>(model: &ModelSpec, j: usize, x: &ClassSeries<S>) -> ClassSeries<S> {
    qmul_series(model, &class_series(model, &model.basis_class(j), x.order()), x, x.order())
}

/// Matrix `M_j` of `b_j ∘`, as a series of rational matrices. Column `i` holds the
/// coefficients of `b_j ∘ b_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultMatrix {
    pub j: usize,
    pub series: NovikovSeries<Matrix<Rational>>,
}

impl MultMatrix {
    pub fn size(&self) -> usize {
        self.classical().rows()
    }

    /// The `q^D` coefficient matrix (zero when absent).
    pub fn at(&self, d: &MultiDegree) -> Matrix<Rational> {
        self.series.coeff(d).cloned().unwrap_or_else(|| {
            let n = self.size();
            Matrix::zeros(n, n)
        })
    }

    /// The `q^0` part, which is the matrix of cup product with `b_j`.
    pub fn classical(&self) -> Matrix<Rational> {
        self.series
            .coeff(&MultiDegree::zero(self.series.rank()))
            .cloned()
            .expect("multiplication matrix has a classical part")
    }

    /// Entry `(row, col)` as a scalar series.
    pub fn entry(&self, row: usize, col: usize) -> NovikovSeries<Rational> {
        self.series.map(|m| m.get(row, col).clone())
    }

    /// Overwrite entry `(row, col)` at degree `d`; for building mutated forms.
    pub fn set_entry(&mut self, d: &MultiDegree, row: usize, col: usize, v: Rational) {
        let mut m = self.at(d);
        m.set(row, col, v);
        let old = self.at(d);
        self.series.add_term(d.clone(), &m.sub(&old));
    }
}

/// `M_j` for a generator index `1 <= j <= r`.
pub fn mult_matrix(model: &ModelSpec, j: usize, order: u32) -> Result<MultMatrix> {
    if j == 0 || j > model.rank() {
        return Err(Error::Shape(format!("generator index {j} outside 1..={}", model.rank())));
    }
    Ok(mult_matrix_any(model, j, order))
}

/// Matrix of `b_j ∘` for any basis index.
pub fn mult_matrix_any(model: &ModelSpec, j: usize, order: u32) -> MultMatrix {
    let n = model.len();
    let mut acc: BTreeMap<MultiDegree, Matrix<Rational>> = BTreeMap::new();
    acc.insert(MultiDegree::zero(model.rank()), Matrix::zeros(n, n));
    for i in 0..n {
        for t in model.quantum_constants(j, i) {
            acc.entry(t.degree.clone()).or_insert_with(|| Matrix::zeros(n, n)).add_at(t.k, i, &t.c);
        }
    }
    let mut series = NovikovSeries::zero(model.rank(), order);
    for (d, m) in acc {
        series.add_term(d, &m);
    }
    MultMatrix { j, series }
}

/// The connection form `[M_1, ..., M_r]`.
pub fn connection_form(model: &ModelSpec, order: u32) -> Vec<MultMatrix> {
    (1..=model.rank()).map(|j| mult_matrix_any(model, j, order)).collect()
}

/// JSON form of a class with rational coefficients, keyed by basis label.
pub fn class_to_json(model: &ModelSpec, x: &CohClass<Rational>) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (i, c) in x.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            map.insert(model.label(i).to_string(), crate::algebra::format_rational(c).into());
        }
    }
    serde_json::Value::Object(map)
}

/// JSON records `{degree, class}` of a class series.
pub fn class_series_to_json(model: &ModelSpec, s: &ClassSeries<Rational>) -> serde_json::Value {
    s.iter_graded()
        .into_iter()
        .map(|(d, c)| serde_json::json!({ "degree": d.as_slice(), "coeff": class_to_json(model, c) }))
        .collect()
}
