use super::{class_series, mul_basis, ClassSeries};
use crate::algebra::{int, rat, HLaurent, Rational, TPoly};
use crate::model::ModelSpec;

/// `Σ_{l ≤ L} (t∘)^l 1 / (l! h^l)` with `t = Σ t_i b_i` symbolic and `q` constant.
pub type ExpSeries = TPoly<ClassSeries<HLaurent>>;

/// The truncated exponential, built as `v_l = (t∘ v_{l-1}) / (l h)`.
pub fn exp_quantum(model: &ModelSpec, t_order: u32, order: u32) -> ExpSeries {
    let r = model.rank();
    let mut total = TPoly::constant(r, class_series(model, &model.one::<HLaurent>(), order));
    let mut prev = total.clone();
    for l in 1..=t_order {
        let mut next = TPoly::zero(r);
        for (e, c) in prev.iter() {
            for i in 0..r {
                let mut e2 = e.clone();
                e2[i] += 1;
                let term = mul_basis(model, i + 1, c).map(|x| x.map(|y| y.shift(-1)));
                next.add_term(e2, &term.scale(&rat(1, l as i64)));
            }
        }
        total.add_assign_poly(&next);
        prev = next;
    }
    total
}

/// Specialization `h = 1`, giving `v(t, q)`.
pub fn project_h1(s: &ExpSeries) -> TPoly<ClassSeries<Rational>> {
    let one = int(1);
    s.map(|c| c.map(|x| x.map(|y| y.evaluate(&one))))
}
