use qcoh::algebra::{int, MultiDegree, NovikovSeries, Rational};
use qcoh::diffops::{parse_relation, parse_relations_file, symbol_map};
use qcoh::model::builtin_names;
use qcoh::quantum::{
    check_associativity, check_commutativity, check_flatness, check_flatness_form, check_unit, class_series, compute_k,
    connection_form, eval_relation, exp_quantum, mult_matrix, project_h1, qmul, qmul_series, verify_k, ClassSeries,
};
use qcoh::shipped::{shipped_ops, shipped_relations};
use qcoh::{builtin_model, CohClass, ModelSpec};

fn q(rank: usize, d: &[u32]) -> MultiDegree {
    assert_eq!(d.len(), rank);
    MultiDegree::new(d.to_vec())
}

fn class(model: &ModelSpec, terms: &[(usize, i64)]) -> CohClass<Rational> {
    let mut c = CohClass::zero(model.len());
    for &(i, v) in terms {
        c.add_at(i, &int(v));
    }
    c
}

type Terms<'a> = [(&'a [u32], &'a [(usize, i64)])];

fn series(model: &ModelSpec, terms: &Terms<'_>) -> ClassSeries<Rational> {
    let mut s = NovikovSeries::zero(model.rank(), 6);
    for (d, t) in terms {
        s.add_term(q(model.rank(), d), &class(model, t));
    }
    s
}

#[test]
fn every_builtin_is_flat_associative_commutative_unital() {
    for name in builtin_names() {
        let model = builtin_model(&name).unwrap();
        assert!(check_flatness(&model, 6).passed(), "{name}");
        assert!(check_associativity(&model, 6).passed(), "{name}");
        assert!(check_commutativity(&model, 6).passed(), "{name}");
        assert!(check_unit(&model, 6).passed(), "{name}");
    }
}

#[test]
fn f3_first_matrix_entries() {
    let model = builtin_model("f3").unwrap();
    let m1 = mult_matrix(&model, 1, 6).unwrap();
    assert_eq!(m1.at(&q(2, &[1, 0])).get(0, 1), &int(1));
    assert_eq!(m1.at(&q(2, &[1, 1])).get(0, 5), &int(1));
    // a∘b = ab = b_3 with no correction
    let ab = qmul(&model, &model.basis_class(1), &model.basis_class(2), 6);
    assert_eq!(ab, series(&model, &[(&[0, 0], &[(3, 1), (4, 1)])]));
    assert!(mult_matrix(&model, 3, 6).is_err());
}

#[test]
fn sigma1_second_matrix_entries() {
    let model = builtin_model("sigma1").unwrap();
    let m2 = mult_matrix(&model, 2, 6).unwrap();
    assert_eq!(m2.at(&q(2, &[0, 1])).get(0, 2), &int(1));
    assert_eq!(m2.classical().get(3, 1), &int(1));
    assert_eq!(m2.classical().get(3, 2), &int(1));
}

#[test]
fn cp1_matrix() {
    let model = builtin_model("cp1").unwrap();
    let m = mult_matrix(&model, 1, 6).unwrap();
    assert_eq!(m.classical().get(1, 0), &int(1));
    assert_eq!(m.at(&q(1, &[1])).get(0, 1), &int(1));
    assert_eq!(m.series.len(), 2);
}

#[test]
fn zeroed_entry_breaks_flatness() {
    let model = builtin_model("f3").unwrap();
    let mut form = connection_form(&model, 6);
    form[0].set_entry(&q(2, &[1, 1]), 0, 5, int(0));
    let report = check_flatness_form(&form, 6);
    assert!(!report.passed());
    let w = report.commutator.witnesses.first().or(report.symmetry.witnesses.first()).unwrap();
    assert!(w.get("entry").is_some());
}

#[test]
fn gr24_derived_products() {
    let model = builtin_model("gr24").unwrap();
    let [one, a, b, c, d, z] = [0, 1, 2, 3, 4, 5].map(|i| class_series(&model, &model.basis_class(i), 6));
    let mul = |x: &ClassSeries<Rational>, y: &ClassSeries<Rational>| qmul_series(&model, x, y, 6);
    let qs = |c: &ClassSeries<Rational>| c.shift(&q(1, &[1]));
    let aa = mul(&a, &a);
    let aaa = mul(&aa, &a);
    assert_eq!(aaa, d.scale(&int(2)));
    assert_eq!(mul(&aa, &b), z.add(&qs(&one)));
    assert_eq!(mul(&aa, &c), z.add(&qs(&one)));
    assert_eq!(mul(&a, &d), z.add(&qs(&one)));
    let a4 = mul(&aaa, &a);
    assert_eq!(a4, z.scale(&int(2)).add(&qs(&one).scale(&int(2))));
    let direct = mul(&a, &mul(&a, &mul(&a, &mul(&a, &a))));
    let via_cube = mul(&mul(&aaa, &a), &a);
    let via_square = mul(&d.scale(&int(2)), &b.add(&c));
    assert_eq!(direct, qs(&a).scale(&int(4)));
    assert_eq!(via_cube, direct);
    assert_eq!(via_square, direct);
}

#[test]
fn shipped_relations_vanish() {
    for name in ["f3", "sigma1", "gr24"] {
        let model = builtin_model(name).unwrap();
        let rels = parse_relations_file(shipped_relations(&model).unwrap(), &model).unwrap();
        assert!(!rels.is_empty());
        for (src, rel) in rels {
            assert!(eval_relation(&model, &rel, 6).is_zero(), "{name}: {src}");
        }
    }
}

#[test]
fn non_relation_is_detected() {
    let model = builtin_model("f3").unwrap();
    let rel = parse_relation("a*a + b*b - a*b - q1", &model).unwrap();
    let out = eval_relation(&model, &rel, 6);
    let (d, c) = out.lowest_term().unwrap();
    assert_eq!(d, &q(2, &[0, 1]));
    assert_eq!(c, &class(&model, &[(0, 1)]));
}

#[test]
fn operator_symbols_are_relations() {
    for name in ["cp1", "cp3", "f3", "sigma1"] {
        let model = builtin_model(name).unwrap();
        let ops = qcoh::diffops::parse_ops_file(&shipped_ops(&model).unwrap(), &model).unwrap();
        for op in ops.all() {
            assert!(symbol_map(&op.op, &model, 6).is_zero(), "{name}: {}", op.name);
        }
    }
}

#[test]
fn f3_symbols_equal_listed_relations() {
    let model = builtin_model("f3").unwrap();
    let ops = qcoh::diffops::parse_ops_file(&shipped_ops(&model).unwrap(), &model).unwrap();
    let rels = parse_relations_file(shipped_relations(&model).unwrap(), &model).unwrap();
    for (op, (_, rel)) in ops.generators.iter().zip(&rels) {
        assert_eq!(&op.op.symbol(), rel);
    }
}

#[test]
fn antiderivative_of_connection_form() {
    for name in ["cp1", "f3", "sigma1", "gr24"] {
        let model = builtin_model(name).unwrap();
        let k = compute_k(&model, 6).unwrap();
        assert!(verify_k(&model, &k, 6).passed(), "{name}");
    }
    let model = builtin_model("cp1").unwrap();
    let k = compute_k(&model, 6).unwrap();
    let m = k.q_part.coeff(&q(1, &[1])).unwrap();
    assert_eq!(m.get(0, 1).to_string(), "h^-1");
}

#[test]
fn exponential_leading_terms() {
    let model = builtin_model("cp1").unwrap();
    let v = project_h1(&exp_quantum(&model, 4, 6));
    // t^2/2 x∘x = t^2 q / 2
    let t2 = v.coeff(&[2]).unwrap();
    assert_eq!(t2.coeff(&q(1, &[1])).unwrap(), &class(&model, &[(0, 1)]).mul_scalar(&qcoh::algebra::rat(1, 2)));
    let t1 = v.coeff(&[1]).unwrap();
    assert_eq!(t1, &class_series(&model, &model.basis_class(1), 6));
}
