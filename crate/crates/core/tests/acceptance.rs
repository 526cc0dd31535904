//! Acceptance suite. Runs every criterion in sequence under its time budget and
//! prints one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use qcoh::algebra::rational::factorial;
use qcoh::algebra::{
    format_rational, int, parse_rational, rat, HLaurent, Matrix, MultiDegree, NovikovSeries, Rational,
};
use qcoh::diffops::{
    apply_gauge, apply_raw, parse_ops_file, parse_relations_file, parse_rows_file, symbol_map, Letter, QDEOperator,
    RawOperator,
};
use qcoh::flat::{
    asymptotic_h, build_h_from_j, closed_form, compare_series, extract_descendents, max_level, q_factorize,
    reference_asymptotic, reference_q_matrix, solve_fundamental, verify_annihilated, verify_classical, verify_constq,
    GaugeSeries,
};
use qcoh::model::{builtin_names, load_model};
use qcoh::quantum::{check_associativity, check_flatness, class_series, eval_relation, qmul_series, ClassSeries};
use qcoh::shipped::{shipped_ops, shipped_relations, shipped_rows};
use qcoh::{builtin_model, CohClass, ModelSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ops(model: &ModelSpec) -> Vec<(String, QDEOperator)> {
    let file = parse_ops_file(&shipped_ops(model).unwrap(), model).unwrap();
    file.all().map(|o| (o.name.clone(), o.op.clone())).collect()
}

fn descendent_table() -> Check {
    let model = builtin_model("cp1").unwrap();
    let hm = solve_fundamental(&model, 6).map_err(|e| e.to_string())?;
    let inv = extract_descendents(&model, &hm, 6, max_level(&model, 6)).map_err(|e| e.to_string())?;
    let mut harmonic = Rational::zero();
    for d in 1..=6u32 {
        harmonic += rat(1, d as i64);
        let sq = factorial(d) * factorial(d);
        let find = |n: u32, label: &str| {
            inv.iter().find(|r| r.degree.get(0) == d && r.n == n && r.j_label == label).map(|r| r.value.clone())
        };
        let point = find(2 * d - 1, "x");
        ensure(point == Some(int(1) / &sq), || format!("d={d}: point insertion {point:?}"))?;
        let fund = find(2 * d, "1");
        let want = int(-2) * &harmonic / &sq;
        ensure(fund.as_ref() == Some(&want), || format!("d={d}: fundamental insertion {fund:?}, want {want}"))?;
    }
    Ok(())
}

fn projective_spaces() -> Check {
    for m in 1..=5 {
        let name = format!("cp{m}");
        let model = builtin_model(&name).unwrap();
        let j = closed_form(&name, 6).map_err(|e| e.to_string())?;
        let r = verify_annihilated(&model, &j, &ops(&model));
        ensure(r.passed(), || format!("{name}: {:?}", r.witnesses))?;
    }
    Ok(())
}

/// Operators annihilate J, the solver reproduces J, and the generators' symbols are
/// the shipped relations.
fn surface_suite(name: &str, order: u32, expected_ops: usize) -> Check {
    let model = builtin_model(name).unwrap();
    let all = ops(&model);
    ensure(all.len() == expected_ops, || format!("{name}: {} operators", all.len()))?;
    let j = closed_form(name, order).map_err(|e| e.to_string())?;
    let r = verify_annihilated(&model, &j, &all);
    ensure(r.passed(), || format!("{name} annihilation: {:?}", r.witnesses))?;
    let hm = solve_fundamental(&model, order).map_err(|e| e.to_string())?;
    let r = compare_series(&hm.j_function(&model), &j);
    ensure(r.passed(), || format!("{name} solver: {:?}", r.witnesses))?;
    let file = parse_ops_file(&shipped_ops(&model).unwrap(), &model).unwrap();
    let rels = parse_relations_file(shipped_relations(&model).unwrap(), &model).unwrap();
    ensure(file.generators.len() == rels.len(), || format!("{name}: generator count"))?;
    for (op, (src, rel)) in file.generators.iter().zip(&rels) {
        ensure(&op.op.symbol() == rel, || format!("{name}: symbol of {} is not {src}", op.name))?;
        ensure(symbol_map(&op.op, &model, order).is_zero(), || format!("{name}: {} symbol nonzero", op.name))?;
        ensure(eval_relation(&model, rel, order).is_zero(), || format!("{name}: {src} fails"))?;
    }
    Ok(())
}

fn gauge_factor(name: &str) -> Check {
    let model = builtin_model(name).unwrap();
    let rows = parse_rows_file(&shipped_rows(&model).unwrap(), &model).unwrap();
    let hm = solve_fundamental(&model, 6).map_err(|e| e.to_string())?;
    let (q, _) = q_factorize(&model, &hm, &rows).map_err(|e| e.to_string())?;
    ensure(q == reference_q_matrix(name, 6).unwrap(), || format!("{name}: gauge factor differs"))
}

fn f3() -> Check {
    surface_suite("f3", 6, 5)
}

fn sigma1() -> Check {
    surface_suite("sigma1", 6, 4)?;
    gauge_factor("sigma1")?;
    let q = reference_q_matrix("sigma1", 6).unwrap();
    ensure(q.len() == 1 && q.coeff(&MultiDegree::zero(2)) == Some(&Matrix::identity(4)), || {
        "sigma1: Q is not the identity".into()
    })?;
    gauge_factor("f3")?;
    let q = reference_q_matrix("f3", 6).unwrap();
    let q1 = q.coeff(&MultiDegree::new(vec![1, 0])).ok_or("f3: no q1 term")?;
    for (i, j, v) in [(0, 3, -1), (1, 5, 1), (2, 5, -1)] {
        ensure(q1.get(i, j) == &int(v), || format!("f3: Q[{i},{j}]"))?;
    }
    Ok(())
}

fn flat_and_associative() -> Check {
    let names = builtin_names();
    ensure(names.len() == 8, || format!("{} builtins", names.len()))?;
    for name in names {
        let model = builtin_model(&name).unwrap();
        let f = check_flatness(&model, 6);
        ensure(f.passed(), || format!("{name}: not flat"))?;
        let a = check_associativity(&model, 6);
        ensure(a.passed(), || format!("{name}: not associative {:?}", a.witnesses))?;
    }
    Ok(())
}

fn grassmannian() -> Check {
    let model = builtin_model("gr24").unwrap();
    let [one, a, b, c, d, z] = [0, 1, 2, 3, 4, 5].map(|i| class_series(&model, &model.basis_class(i), 6));
    let mul = |x: &ClassSeries<Rational>, y: &ClassSeries<Rational>| qmul_series(&model, x, y, 6);
    let qs = |c: &ClassSeries<Rational>| c.shift(&MultiDegree::new(vec![1]));
    let aa = mul(&a, &a);
    let aaa = mul(&aa, &a);
    ensure(aa == b.add(&c), || "a∘a".into())?;
    ensure(aaa == d.scale(&int(2)), || "a∘a∘a".into())?;
    let point_q = z.add(&qs(&one));
    ensure(mul(&aa, &b) == point_q, || "a∘a∘b".into())?;
    ensure(mul(&aa, &c) == point_q, || "a∘a∘c".into())?;
    ensure(mul(&a, &d) == point_q, || "a∘d".into())?;
    ensure(mul(&aaa, &a) == point_q.scale(&int(2)), || "a^4".into())?;
    let direct = mul(&a, &mul(&a, &mul(&a, &mul(&a, &a))));
    let via_square = mul(&d.scale(&int(2)), &aa);
    ensure(direct == qs(&a).scale(&int(4)), || "a^5 = 4qa".into())?;
    ensure(via_square == direct, || "five-step chain".into())?;
    let rels = parse_relations_file(shipped_relations(&model).unwrap(), &model).unwrap();
    for (src, rel) in rels {
        ensure(eval_relation(&model, &rel, 6).is_zero(), || format!("{src} fails"))?;
    }
    Ok(())
}

fn classical_limits() -> Check {
    for name in ["f3", "sigma1"] {
        let model = builtin_model(name).unwrap();
        ensure(asymptotic_h(&model) == reference_asymptotic(name).unwrap(), || format!("{name}: H table"))?;
        let classical: Vec<_> = ops(&model).into_iter().map(|(n, op)| (n, op.classical())).collect();
        let r = verify_classical(&model, &classical).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.witnesses))?;
    }
    Ok(())
}

fn constant_q() -> Check {
    for name in ["cp1", "f3", "sigma1"] {
        let model = builtin_model(name).unwrap();
        let all = ops(&model);
        let r = verify_constq(&model, &all, 6, 6);
        ensure(r.passed() && r.witnesses.is_empty(), || format!("{name}: {:?}", r.witnesses))?;
        // the check is not vacuous: a perturbed generator is caught
        let (n, op) = &all[0];
        let bad = op.add(&QDEOperator::theta(model.rank(), 0));
        let r = verify_constq(&model, &[(n.clone(), bad)], 6, 6);
        ensure(!r.passed(), || format!("{name}: perturbed {n} passes"))?;
    }
    Ok(())
}

fn generic_series(model: &ModelSpec, order: u32) -> GaugeSeries {
    let mut s = NovikovSeries::zero(model.rank(), order);
    for (n, d) in MultiDegree::all_up_to(model.rank(), order).into_iter().enumerate() {
        let coeffs = (0..model.len())
            .map(|i| HLaurent::from_terms([(-(i as i64), rat(n as i64 + 1, i as i64 + 2)), (-2, int(i as i64 - 1))]))
            .collect();
        s.add_term(d, &CohClass::from_coeffs(coeffs));
    }
    s
}

fn random_operator(rng: &mut ChaCha8Rng, rank: usize) -> RawOperator {
    let words = (0..rng.gen_range(1..4))
        .map(|_| {
            let coeff = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let letters = (0..rng.gen_range(0..6))
                .map(|_| match rng.gen_range(0..4) {
                    0 => Letter::H,
                    1 => Letter::Q(rng.gen_range(0..rank)),
                    2 => Letter::Theta(rng.gen_range(0..rank)),
                    _ => Letter::Const(int(rng.gen_range(-3..=3))),
                })
                .collect();
            (coeff, letters)
        })
        .collect();
    RawOperator { rank, words }
}

fn properties() -> Check {
    // dual construction
    for (name, n) in [("cp1", 6), ("cp2", 5), ("cp5", 3), ("f3", 4), ("sigma1", 5)] {
        let model = builtin_model(name).unwrap();
        let solved = solve_fundamental(&model, n).map_err(|e| e.to_string())?;
        let j = closed_form(name, n).map_err(|e| e.to_string())?;
        let r = compare_series(&solved.j_function(&model), &j);
        ensure(r.passed(), || format!("{name}: {:?}", r.witnesses))?;
        let rows = parse_rows_file(&shipped_rows(&model).unwrap(), &model).unwrap();
        let built = build_h_from_j(&model, &j, &rows).map_err(|e| e.to_string())?;
        ensure(built == solved, || format!("{name}: row construction differs"))?;
    }

    // degree axiom
    for (name, d) in [("cp1", 5), ("cp2", 4), ("cp3", 3), ("f3", 3), ("sigma1", 3), ("gr24", 2)] {
        let model = builtin_model(name).unwrap();
        let hm = solve_fundamental(&model, d).map_err(|e| e.to_string())?;
        let inv = extract_descendents(&model, &hm, d, max_level(&model, d)).map_err(|e| e.to_string())?;
        let forced = inv.iter().filter(|r| !r.allowed).count();
        ensure(forced > 0, || format!("{name}: no forced slots"))?;
        ensure(inv.iter().all(|r| r.allowed || r.value.is_zero()), || format!("{name}: forced slot nonzero"))?;
        ensure(inv.iter().any(|r| r.allowed && !r.value.is_zero()), || format!("{name}: table is empty"))?;
    }

    // normalization
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (k, name) in ["f3", "sigma1"].iter().cycle().take(100).enumerate() {
        let model = builtin_model(name).unwrap();
        let s = generic_series(&model, 3);
        let raw = random_operator(&mut rng, 2);
        ensure(apply_raw(&raw, &s, &model) == apply_gauge(&raw.normalize(), &s, &model), || {
            format!("operator {k}: {:?}", raw.words)
        })?;
    }

    // round trips
    for (n, d) in [(0, 1), (7, 1), (-11, 108), (123456789, 1000000007), (-4, 6)] {
        let r = rat(n, d);
        ensure(parse_rational(&format_rational(&r)) == Some(r.clone()), || format!("rational {r}"))?;
    }
    ensure(format_rational(&rat(6, 3)) == "2", || "integers print bare".into())?;
    for name in builtin_names() {
        let model = builtin_model(&name).unwrap();
        let back = load_model(&model.to_file().to_json_pretty()).map_err(|e| e.to_string())?;
        ensure(back == model, || format!("{name}: model file"))?;
    }
    for name in ["cp3", "f3"] {
        let model = builtin_model(name).unwrap();
        let j = closed_form(name, 4).unwrap();
        let text = serde_json::to_string(&j.to_records()).unwrap();
        let back = NovikovSeries::from_records(model.rank(), 4, serde_json::from_str(&text).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(back == j, || format!("{name}: series dump"))?;
        for (_, op) in ops(&model) {
            let again = qcoh::diffops::parse_operator(&op.to_string(), &qcoh::diffops::Symbols::plain(model.rank()));
            ensure(again.as_ref() == Ok(&op), || format!("{name}: operator {op}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("CP^1 descendent table, d = 1..6", 1, descendent_table),
        ("CP^m operators annihilate J, m = 1..5, order 6", 5, projective_spaces),
        ("F_3 operators, solver and symbols, order 6", 10, f3),
        ("Sigma_1 suite and gauge factors", 10, sigma1),
        ("flatness and associativity, all models, order 6", 10, flat_and_associative),
        ("Gr_2(C^4) products, relation and chain", 1, grassmannian),
        ("classical limits", 1, classical_limits),
        ("constant-q operators, L = 6", 10, constant_q),
        ("property suites", 30, properties),
    ];
    let prev_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < Duration::from_secs(limit), || format!("took {elapsed:.2?}, limit {limit}s"))
        });
        match outcome {
            Ok(()) => println!("PASS [{}] {title} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL [{}] {title} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    std::panic::set_hook(prev_hook);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
