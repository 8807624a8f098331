//! Document language for Dirac-Jacobi computations and its runner.
//!
//! A document declares charts, binds expressions and runs commands; each
//! command yields a verdict with defect witnesses printed in the document's
//! own expression syntax.

pub mod ast;
pub mod commands;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod suites;
pub mod value;

use std::sync::Arc;
use std::time::Instant;

use dj_scalar::Chart;
use rayon::prelude::*;

use crate::ast::{Command, Expectation, Statement};
use crate::error::{DslError, EvalError};
use crate::eval::{rational_literal, Ctx, Env};
pub use crate::eval::Options;
pub use crate::parser::{parse, parse_expr};
pub use crate::report::{CheckLine, CommandReport, DocumentReport, RunReport, Verdict, Witness};

/// How a batch of documents is run.
#[derive(Clone, Debug)]
pub struct RunSettings {
    pub opts: Options,
    /// Run the commands of a document concurrently.
    pub parallel: bool,
    /// Record wall-clock timings. When off every `elapsed_ms` is zero.
    pub timings: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings { opts: Options::default(), parallel: false, timings: true }
    }
}

fn document_error(name: &str, e: DslError) -> DocumentReport {
    DocumentReport { document: name.to_string(), verdict: Verdict::Error, error: Some(e.to_string()), commands: vec![] }
}

/// Evaluate chart declarations, sample points and bindings. Sample points
/// are gathered first so that every frame sees all of them.
fn build_env(doc: &ast::Document, opts: &Options) -> Result<(Env, Vec<(usize, Arc<Chart>)>), DslError> {
    let mut env = Env::new(opts.clone());
    let located = |i: usize, e: EvalError| {
        let (l, c) = doc.positions[i];
        e.at(l, c)
    };
    let mut charts = Vec::with_capacity(doc.statements.len());
    let mut chart: Option<Arc<Chart>> = None;
    for (i, st) in doc.statements.iter().enumerate() {
        match st {
            Statement::Chart(names) => chart = Some(Chart::new(names).map_err(|e| located(i, e.into()))?),
            Statement::Sample(coords) => {
                let c = chart.clone().expect("parser requires a leading chart");
                let pt = coords.iter().map(rational_literal).collect::<Result<Vec<_>, _>>().map_err(|e| located(i, e))?;
                env.samples.push((c, pt));
            }
            _ => {}
        }
        charts.push(chart.clone().expect("parser requires a leading chart"));
    }
    for (i, st) in doc.statements.iter().enumerate() {
        if let Statement::Let { name, value } = st {
            let ctx = Ctx { env: &env, chart: charts[i].clone() };
            let v = ctx.eval(value).map_err(|e| located(i, e))?;
            env.values.insert(name.clone(), v);
        }
    }
    let cmds = doc.commands().map(|(i, _)| (i, charts[i].clone())).collect();
    Ok((env, cmds))
}

fn run_command(env: &Env, chart: Arc<Chart>, index: usize, (line, col): (usize, usize), cmd: &Command, timings: bool) -> CommandReport {
    let start = Instant::now();
    let ctx = Ctx { env, chart };
    let result = commands::run(cmd, &ctx);
    let elapsed_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    let mut rep = CommandReport {
        index,
        line,
        command: cmd.to_string(),
        verdict: Verdict::Error,
        expect: cmd.expect.map(|e| e.name().to_string()),
        checks: vec![],
        witnesses: vec![],
        error: None,
        elapsed_ms,
    };
    match result {
        Err(e) => rep.error = Some(e.at(line, col).to_string()),
        Ok(out) => {
            let passed = out.report.passed();
            rep.verdict = match (cmd.expect, passed) {
                (None | Some(Expectation::Pass), true) | (Some(Expectation::Fail), false) => Verdict::Pass,
                _ => Verdict::Fail,
            };
            rep.checks = out.report.checks.iter().map(|c| CheckLine { name: c.name.clone(), passed: c.passed }).collect();
            rep.witnesses = out
                .report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| report::check_witness(&c.name, c.witness.as_deref().unwrap_or_default()))
                .chain(out.results.iter().map(|r| report::split_result(r)))
                .collect();
        }
    }
    rep
}

/// Parse and run one document.
pub fn run_document(text: &str, name: &str, settings: &RunSettings) -> DocumentReport {
    let doc = match parse(text) {
        Ok(d) => d,
        Err(e) => return document_error(name, e),
    };
    let (env, cmds) = match build_env(&doc, &settings.opts) {
        Ok(x) => x,
        Err(e) => return document_error(name, e),
    };
    let job = |(k, (i, chart)): (usize, &(usize, Arc<Chart>))| {
        let Statement::Command(cmd) = &doc.statements[*i] else { unreachable!("command index") };
        run_command(&env, chart.clone(), k, doc.positions[*i], cmd, settings.timings)
    };
    let commands: Vec<CommandReport> = if settings.parallel {
        cmds.par_iter().enumerate().map(job).collect()
    } else {
        cmds.iter().enumerate().map(job).collect()
    };
    let verdict = Verdict::combine(commands.iter().map(|c| c.verdict));
    DocumentReport { document: name.to_string(), verdict, error: None, commands }
}
