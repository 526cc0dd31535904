//! Descendent invariants read off the J row of a fundamental solution.

use serde::Serialize;

use super::HMatrix;
use crate::algebra::{format_rational, MultiDegree, Rational};
use crate::model::ModelSpec;
use crate::{Error, Result};

/// `⟨τ_n B_j | M⟩_D`, the coefficient of `h^{-(n+1)} q^D` in `(J, b_j)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescendentInvariant {
    #[serde(rename = "D")]
    pub degree: MultiDegree,
    pub n: u32,
    pub j: usize,
    pub j_label: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// Whether the dimension constraint leaves this slot possibly nonzero.
    pub allowed: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Dimension constraint for descendents of classes of real degree `degrees[k]` at
/// levels `levels[k]`: `Σ|x_k| + 2Σn_k = 2(dim + #insertions − 3) + 2⟨c_1, D⟩`.
pub fn degree_axiom_allows(model: &ModelSpec, degrees: &[u32], levels: &[u32], d: &MultiDegree) -> bool {
    let lhs: i64 = degrees.iter().map(|&x| x as i64).sum::<i64>() + 2 * levels.iter().map(|&n| n as i64).sum::<i64>();
    let rhs = 2 * (model.dim() as i64 + degrees.len() as i64 - 3) + 2 * model.c1_pairing(d);
    lhs == rhs
}

/// Largest level the J row can carry at total degree up to `max_d`.
pub fn max_level(model: &ModelSpec, max_d: u32) -> u32 {
    let c1 = MultiDegree::all_up_to(model.rank(), max_d).iter().map(|d| model.c1_pairing(d)).max().unwrap_or(0);
    (model.dim() as i64 - 1 + c1).max(0) as u32
}

/// Every slot `(D, n, j)` with `0 < |D| ≤ max_d` and `n ≤ max_n`. Fails if a gauge entry
/// at `D ≠ 0` has a nonnegative power of `h`, or if a slot excluded by the dimension
/// constraint holds a nonzero value.
pub fn extract_descendents(
    model: &ModelSpec,
    hm: &HMatrix,
    max_d: u32,
    max_n: u32,
) -> Result<Vec<DescendentInvariant>> {
    if max_d > hm.order() {
        return Err(Error::Shape(format!("degree {max_d} exceeds the solution order {}", hm.order())));
    }
    let n = model.len();
    let s = n - 1;
    let mut out = Vec::new();
    for d in MultiDegree::all_up_to(model.rank(), max_d) {
        if d.is_zero() {
            continue;
        }
        let g = hm.at(&d);
        for i in 0..n {
            for j in 0..n {
                if let Some(e) = g.get(i, j).max_exp() {
                    if e >= 0 {
                        return Err(Error::Check(format!("entry ({i}, {j}) at D={d} has h^{e}")));
                    }
                }
            }
        }
        for j in 0..n {
            let entry = g.get(s, j);
            for level in 0..=max_n {
                let value = entry.coeff(-(level as i64) - 1);
                let allowed = degree_axiom_allows(model, &[model.degree(j), model.dual_degree(s)], &[level, 0], &d);
                if !allowed && !num_traits::Zero::is_zero(&value) {
                    return Err(Error::Check(format!(
                        "nonzero invariant at D={d}, n={level}, {} violates the dimension constraint",
                        model.label(j)
                    )));
                }
                out.push(DescendentInvariant {
                    degree: d.clone(),
                    n: level,
                    j,
                    j_label: model.label(j).to_string(),
                    value,
                    allowed,
                });
            }
        }
    }
    Ok(out)
}
