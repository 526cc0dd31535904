use serde_json::{json, Value};

use qcoh::algebra::{HLaurent, NovikovSeries, SeriesRecord, TPoly};
use qcoh::diffops::{parse_ops_file, parse_relations_file, parse_rows_file, QDEOperator};
use qcoh::flat::{self, GaugeSeries, HMatrix};
use qcoh::model::builtin_names;
use qcoh::quantum::{self, class_to_json};
use qcoh::report::Report;
use qcoh::shipped::{self, resolve_model, resolve_text};
use qcoh::{load_model, ModelError, ModelSpec};

use crate::output::{emit, envelope, print, write_out, CliError, CliResult};
use crate::{CheckArgs, ClassicalArgs, Format, GwArgs, JfunArgs, ModelsAction, TildeArgs};

pub fn models(action: ModelsAction, format: Format) -> CliResult {
    match action {
        ModelsAction::List => {
            let mut names = builtin_names();
            for dir in shipped::model_path() {
                let Ok(entries) = std::fs::read_dir(&dir) else {
                    continue;
                };
                let mut found: Vec<String> = entries
                    .filter_map(|e| e.ok())
                    .filter_map(|e| {
                        e.path()
                            .file_stem()
                            .filter(|_| e.path().extension().is_some_and(|x| x == "model"))
                            .map(|s| s.to_string_lossy().into_owned())
                    })
                    .filter(|n| !names.contains(n))
                    .collect();
                found.sort();
                names.extend(found);
            }
            match format {
                Format::Json => print(&json!(names), format)?,
                Format::Text => names.iter().for_each(|n| write_out(&format!("{n}\n"))),
            }
            Ok(true)
        }
        ModelsAction::Show { name } => {
            let model = resolve_model(&name)?;
            match format {
                Format::Json => print(&serde_json::to_value(model.to_file()).expect("model serializes"), format)?,
                Format::Text => {
                    write_out(&format!("{}: dim {}, rank {}\n", model.name(), model.dim(), model.rank()));
                    for (i, b) in model.basis().iter().enumerate() {
                        write_out(&format!("  b{i} = {} (degree {})\n", b.label, b.degree));
                    }
                }
            }
            Ok(true)
        }
        ModelsAction::Validate { file } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            let report = match load_model(&text) {
                Ok(m) => Report::pass("model_valid")
                    .with_note(json!({ "name": m.name(), "size": m.len(), "rank": m.rank() })),
                Err(e @ ModelError::Schema(_)) => return Err(e.into()),
                Err(e) => Report::fail("model_valid", json!({ "error": e.to_string(), "detail": format!("{e:?}") })),
            };
            let name = file.display().to_string();
            print(&envelope(&name, std::slice::from_ref(&report), vec![]), format)?;
            Ok(report.passed())
        }
    }
}

fn ops_for(model: &ModelSpec, arg: Option<&str>) -> Result<Option<Vec<(String, QDEOperator)>>, CliError> {
    let text = match arg {
        Some(a) => resolve_text(a, model)?,
        None => match shipped::shipped_ops(model) {
            Some(t) => t,
            None => return Ok(None),
        },
    };
    let ops = parse_ops_file(&text, model)?;
    Ok(Some(ops.all().map(|o| (o.name.clone(), o.op.clone())).collect()))
}

pub fn check(args: CheckArgs, format: Format) -> CliResult {
    let model = resolve_model(&args.model)?;
    let n = args.n;
    let all = !args.flatness && !args.assoc && args.relations.is_none();
    let mut reports = Vec::new();
    if args.flatness || all {
        reports.extend(quantum::check_flatness(&model, n).reports());
    }
    if args.assoc || all {
        reports.push(quantum::check_associativity(&model, n));
    }
    if all {
        reports.push(quantum::check_commutativity(&model, n));
        reports.push(quantum::check_unit(&model, n));
    }
    if let Some(file) = &args.relations {
        let rels = parse_relations_file(&resolve_text(file, &model)?, &model)?;
        for (src, rel) in rels {
            let value = quantum::eval_relation(&model, &rel, n);
            let check = format!("relation: {src}");
            reports.push(match value.lowest_term() {
                None => Report::pass(check),
                Some((d, c)) => Report::fail(check, json!({ "D": d.as_slice(), "value": class_to_json(&model, c) })),
            });
        }
    }
    let v = envelope(model.name(), &reports, vec![("order", json!(n))]);
    print(&v, format)?;
    Ok(v["passed"] == true)
}

fn construct(model: &ModelSpec, n: u32, closed: bool, reports: &mut Vec<Report>) -> Result<GaugeSeries, CliError> {
    if closed {
        Ok(flat::closed_form(model.name(), n)?)
    } else {
        let hm = flat::solve_fundamental(model, n)?;
        reports.push(flat::check_system(model, &hm));
        Ok(hm.j_function(model))
    }
}

fn load_dump(path: &std::path::Path, model: &ModelSpec) -> Result<GaugeSeries, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if v["model"] != model.name() {
        return Err(CliError::Input(format!("{} holds model {}, not {}", path.display(), v["model"], model.name())));
    }
    let order =
        v["order"].as_u64().ok_or_else(|| CliError::Input(format!("{}: missing order", path.display())))? as u32;
    let recs: Vec<SeriesRecord<qcoh::CohClass<HLaurent>>> =
        serde_json::from_value(v["series"].clone()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(NovikovSeries::from_records(model.rank(), order, recs)?)
}

pub fn jfun(args: JfunArgs, format: Format) -> CliResult {
    let model = resolve_model(&args.model)?;
    let n = args.n;
    let diff = args.diff || args.against.is_some();
    if !diff && !args.closed_form && !args.solve {
        return Err(CliError::Input("choose --closed-form or --solve".into()));
    }
    let mut reports = Vec::new();
    let j = construct(&model, n, args.closed_form, &mut reports)?;
    let construction = if args.closed_form { "closed-form" } else { "solve" };
    let mut extra = vec![("order", json!(n)), ("construction", json!(construction))];

    if let Some(path) = &args.against {
        let other = load_dump(path, &model)?;
        let order = n.min(other.order());
        reports.push(
            flat::compare_series(&j.truncate(order), &other.truncate(order))
                .with_note(json!({ "against": path.display().to_string(), "order": order })),
        );
    } else if diff {
        let other = construct(&model, n, !args.closed_form, &mut reports)?;
        reports.push(flat::compare_series(&j, &other));
    }
    if let Some(file) = &args.verify {
        let ops = ops_for(&model, Some(file))?.expect("explicit file");
        reports.push(flat::verify_annihilated(&model, &j, &ops));
    }
    if let Some(rows) = &args.rows {
        let rows = parse_rows_file(&resolve_text(rows, &model)?, &model)?;
        match flat::build_h_from_j(&model, &j, &rows) {
            Ok(hm) => {
                reports.push(Report::pass("rows"));
                let (q, _) = flat::q_factorize(&model, &hm, &rows)?;
                if let Some(reference) = flat::reference_q_matrix(model.name(), n) {
                    reports.push(if q == reference {
                        Report::pass("q_matrix")
                    } else {
                        Report::fail("q_matrix", json!({ "expected": flat::q_matrix_json(&model, &reference) }))
                    });
                }
                extra.push(("Q", flat::q_matrix_json(&model, &q)));
            }
            Err(qcoh::Error::Check(m)) => reports.push(Report::fail("rows", json!({ "error": m }))),
            Err(e) => return Err(e.into()),
        }
    }
    extra.push(("series", serde_json::to_value(j.to_records()).expect("series serializes")));
    let v = envelope(model.name(), &reports, extra);
    emit(&v, args.out.as_deref(), format)?;
    Ok(v["passed"] == true)
}

pub fn gw(args: GwArgs, format: Format) -> CliResult {
    let model = resolve_model(&args.model)?;
    let hm: HMatrix = flat::solve_fundamental(&model, args.max_degree)?;
    let max_level = args.max_level.unwrap_or_else(|| flat::max_level(&model, args.max_degree));
    let invariants = flat::extract_descendents(&model, &hm, args.max_degree, max_level)?;
    let records: Vec<Value> = invariants
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("record serializes");
            if !r.allowed {
                v["note"] = json!("forced by degree axiom");
            }
            v
        })
        .collect();
    let reports = vec![flat::check_system(&model, &hm), Report::pass("degree_axiom")];
    let v = envelope(
        model.name(),
        &reports,
        vec![
            ("N", json!(args.max_degree)),
            ("max_degree", json!(args.max_degree)),
            ("max_level", json!(max_level)),
            ("invariants", json!(records)),
        ],
    );
    emit(&v, args.out.as_deref(), format)?;
    Ok(v["passed"] == true)
}

/// `c t1^a t2^b` terms joined with `+`, each coefficient a Laurent polynomial in `h`.
fn poly_string(p: &TPoly<HLaurent>) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.iter() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
            .collect();
        let coeff = if c.terms().count() > 1 { format!("({c})") } else { c.to_string() };
        parts.push(if mono.is_empty() { coeff } else { format!("{coeff}*{}", mono.join("*")) });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn classical(args: ClassicalArgs, format: Format) -> CliResult {
    let model = resolve_model(&args.model)?;
    let h = flat::asymptotic_h(&model);
    let mut reports = Vec::new();
    let size = model.len();
    let mut t0 = Vec::new();
    for (i, row) in h.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let value = p.constant_term().cloned().unwrap_or_else(HLaurent::zero);
            let expected = if i == j { HLaurent::constant(qcoh::algebra::int(1)) } else { HLaurent::zero() };
            if value != expected {
                t0.push(json!({ "entry": [i, j], "value": value.to_string() }));
            }
        }
    }
    reports.push(Report::from_witnesses("t0_identity", t0));
    if let Some(reference) = flat::reference_asymptotic(model.name()) {
        let mut w = Vec::new();
        for i in 0..size {
            for j in 0..size {
                if h[i][j] != reference[i][j] {
                    w.push(json!({ "entry": [i, j], "computed": poly_string(&h[i][j]), "expected": poly_string(&reference[i][j]) }));
                }
            }
        }
        reports.push(Report::from_witnesses("reference_matrix", w));
    }
    if let Some(ops) = ops_for(&model, args.ops.as_deref())? {
        let classical: Vec<(String, QDEOperator)> = ops.into_iter().map(|(n, op)| (n, op.classical())).collect();
        reports.push(flat::verify_classical(&model, &classical)?);
    }
    let matrix: Vec<Vec<String>> = h.iter().map(|row| row.iter().map(poly_string).collect()).collect();
    let v = envelope(model.name(), &reports, vec![("H", json!(matrix))]);
    print(&v, format)?;
    if format == Format::Text {
        for row in &matrix {
            write_out(&format!("  [{}]\n", row.join(", ")));
        }
    }
    Ok(v["passed"] == true)
}

pub fn tilde(args: TildeArgs, format: Format) -> CliResult {
    let model = resolve_model(&args.model)?;
    let ops = ops_for(&model, args.ops.as_deref())?
        .ok_or_else(|| CliError::Input(format!("no operator file for model {}; pass --ops", model.name())))?;
    let report = flat::verify_constq(&model, &ops, args.t_order, args.n);
    if report.passed() && !report.witnesses.is_empty() {
        eprintln!("qcoh: warning: t-order {} is too short to test some operators", args.t_order);
    }
    let v1 = quantum::project_h1(&quantum::exp_quantum(&model, args.t_order, args.n));
    let mut terms = Vec::new();
    for (e, s) in v1.iter() {
        for (d, c) in s.iter_graded() {
            terms.push(json!({ "t": e, "D": d.as_slice(), "coeff": class_to_json(&model, c) }));
        }
    }
    let v = envelope(
        model.name(),
        std::slice::from_ref(&report),
        vec![("t_order", json!(args.t_order)), ("order", json!(args.n)), ("v", json!(terms))],
    );
    emit(&v, args.out.as_deref(), format)?;
    Ok(report.passed())
}
