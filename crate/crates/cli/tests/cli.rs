use std::path::PathBuf;
use std::process::Command;

use dj_cli::ast::{BinOp, Document, Expr, Statement};
use dj_cli::error::DslError;
use dj_cli::{parse, parse_expr, run_document, RunReport, RunSettings, Verdict};
use num_bigint::BigUint;
use proptest::prelude::*;

fn suite_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("suite")
}

fn quiet() -> RunSettings {
    RunSettings { timings: false, ..RunSettings::default() }
}

fn run_text(text: &str) -> dj_cli::DocumentReport {
    run_document(text, "inline", &quiet())
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("djx-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn djx(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_djx")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn duplicate_coordinate_is_a_syntax_error() {
    let e = parse("chart (x, x);").unwrap_err();
    assert!(matches!(e, DslError::Syntax { line: 1, .. }), "{e}");
}

#[test]
fn first_statement_must_declare_a_chart() {
    assert!(matches!(parse("check-jacobi canonical(J_can);"), Err(DslError::Syntax { .. })));
}

#[test]
fn canonical_with_keyword_size_parses_and_passes() {
    let doc = parse("chart (x, p, u);\ncheck-jacobi canonical(J_can, d=1);").unwrap();
    assert_eq!(doc.commands().count(), 1);
    let rep = run_text("chart (x, p, u);\ncheck-jacobi canonical(J_can, d=1);");
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn unknown_gallery_name_is_reported() {
    let e = parse("chart (x);\ncheck-jacobi canonical(J_nope);").unwrap_err();
    assert!(matches!(e, DslError::UnknownIdentifier { line: 2, .. }), "{e}");
}

#[test]
fn chart_mismatch_is_located() {
    let rep = run_text("chart (x, p);\nlet a = x*dp;\nchart (y, q);\ncheck-equal a, y*dq;");
    assert_eq!(rep.verdict, Verdict::Error);
    let err = rep.commands[0].error.as_deref().unwrap();
    assert!(err.starts_with("4:1: ChartMismatch"), "{err}");
}

#[test]
fn undefined_name_exits_2() {
    let p = write_temp("undefined.djx", "chart (x, p, u);\ncheck-jacobi lambda, d/du;\n");
    let (code, out) = djx(&[p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("2:14: UnknownIdentifier: `lambda`"), "{out}");
}

#[test]
fn non_homogeneous_pair_fails_with_exit_1_and_defect() {
    let p = write_temp("pizero.djx", "chart (x, p);\ncheck-hom-poisson d/dp^d/dx, 0;\n");
    let (code, out) = djx(&[p.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL L_Z pi = -pi"), "{out}");
    assert!(out.contains("L_Z pi + pi = (-1)*d/dx^d/dp"), "{out}");
}

#[test]
fn expected_failure_passes() {
    let rep = run_text("chart (x, p);\ncheck-hom-poisson d/dp^d/dx, 0 expect fail;");
    assert_eq!(rep.verdict, Verdict::Pass);
    let rep = run_text("chart (x, p);\ncheck-hom-poisson d/dp^d/dx, p*d/dp expect fail;");
    assert_eq!(rep.verdict, Verdict::Fail);
}

#[test]
fn command_spellings_agree() {
    let a = parse("chart (x, p, u);\ncheck jacobi canonical(J_can) canonical(J_can);").unwrap();
    let b = parse("chart (x, p, u);\ncheck-jacobi canonical(J_can), canonical(J_can);").unwrap();
    assert_eq!(a, b);
}

#[test]
fn degree_guardrail_stops_large_powers() {
    let settings = RunSettings { opts: dj_cli::Options { max_degree: 4, ..Default::default() }, ..quiet() };
    let rep = run_document("chart (x);\nlet a = x^5;\ncheck-equal a, a;", "inline", &settings);
    assert_eq!(rep.verdict, Verdict::Error);
}

#[test]
fn reports_are_deterministic() {
    let text = std::fs::read_to_string(suite_dir().join("02_bracket.djx")).unwrap();
    let a = RunReport::new(7, vec![run_text(&text)]).to_json();
    let b = RunReport::new(7, vec![run_text(&text)]).to_json();
    assert_eq!(a, b);
    let par = RunSettings { parallel: true, ..quiet() };
    let c = RunReport::new(7, vec![run_document(&text, "inline", &par)]).to_json();
    assert_eq!(a, c);
}

#[test]
fn binary_reports_are_byte_identical() {
    let doc = suite_dir().join("05_leaves.djx");
    let (r1, r2) = (std::env::temp_dir().join("djx-r1.json"), std::env::temp_dir().join("djx-r2.json"));
    for r in [&r1, &r2] {
        let (code, _) = djx(&[doc.to_str().unwrap(), "--no-timings", "--parallel", "--report", r.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (a, b) = (std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert_eq!(a, b);
    let parsed: RunReport = serde_json::from_slice(&a).unwrap();
    assert_eq!(parsed.verdict, Verdict::Pass);
}

#[test]
fn rendered_values_parse_and_evaluate_back() {
    let doc = "chart (x, p, u);\neigenframe canonical(K_contact_can);\ndorfman d/dx + x*one, (d/du, p*dx);";
    let rep = run_text(doc);
    assert_eq!(rep.verdict, Verdict::Pass);
    let chart: Vec<String> = ["x", "p", "u"].iter().map(|s| s.to_string()).collect();
    let frame = &rep.commands[0].witnesses[0].expr;
    let bracket = &rep.commands[1].witnesses[0].expr;
    parse_expr(frame, &chart).unwrap();
    parse_expr(bracket, &chart).unwrap();
    let again = format!(
        "chart (x, p, u);\nframe-equal {frame}, eigenframe(canonical(K_contact_can));\ncheck-equal {bracket}, dorfman(d/dx + x*one, (d/du, p*dx));"
    );
    assert_eq!(run_text(&again).verdict, Verdict::Pass);
}

#[test]
fn failure_witnesses_parse_back() {
    let rep = run_text("chart (x, p);\ncheck-hom-poisson d/dp^d/dx, 2*p*d/dp;");
    assert_eq!(rep.verdict, Verdict::Fail);
    let chart: Vec<String> = ["x", "p"].iter().map(|s| s.to_string()).collect();
    for w in &rep.commands[0].witnesses {
        parse_expr(&w.expr, &chart).unwrap_or_else(|e| panic!("{}: {e}", w.expr));
    }
}

#[test]
fn shipped_documents_print_and_parse_back() {
    for entry in std::fs::read_dir(suite_dir()).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc, "{}", p.display());
    }
}

// Expressions over the chart (x, p) built only from forms the parser
// produces: non-negative literals, resolvable names and known calls.
fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..20).prop_map(|n| Expr::Int(BigUint::from(n))),
        prop::sample::select(vec!["x", "p", "dx", "dp", "j", "one", "I"]).prop_map(|s| Expr::Ident(s.to_string())),
        prop::sample::select(vec!["x", "p"]).prop_map(|s| Expr::VecBasis(s.to_string())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 32, 3, |inner| {
        let op = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Caret]);
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::Binary(o, Box::new(a), Box::new(b))),
            inner.clone().prop_map(|e| Expr::Call("d".into(), vec![dj_cli::ast::Arg::positional(e)])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Call(
                "pair".into(),
                vec![dj_cli::ast::Arg::positional(a), dj_cli::ast::Arg::positional(b)]
            )),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Tuple),
            prop::collection::vec(inner, 0..3).prop_map(Expr::List),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in expr(), f in expr()) {
        let chart: Vec<String> = vec!["x".into(), "p".into()];
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed, &chart).unwrap(), e.clone(), "{}", printed);
        let doc = Document {
            statements: vec![
                Statement::Chart(chart.clone()),
                Statement::Let { name: "a".into(), value: e },
                Statement::Command(dj_cli::ast::Command { name: "check-equal".into(), args: vec![Expr::Ident("a".into()), f], expect: None }),
            ],
            positions: vec![],
        };
        let text = doc.to_string();
        prop_assert_eq!(parse(&text).unwrap(), doc, "{}", text);
    }
}
