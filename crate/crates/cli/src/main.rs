use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dj_cli::{run_document, DocumentReport, Options, RunReport, RunSettings, Verdict};

/// Run Dirac-Jacobi documents and report a verdict per command.
///
/// Exit status: 0 when every command passes, 1 when some command fails,
/// 2 on syntax, name, chart or evaluation errors.
#[derive(Parser, Debug)]
#[command(name = "djx", version)]
struct Args {
    /// Documents to run, in order.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Write the structured JSON report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Seed of the randomized suites and of the extra sample points.
    #[arg(long, default_value_t = dj_scalar::DEFAULT_SEED)]
    seed: u64,
    /// Number of extra pseudo-random sample points per frame.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Largest total degree a document may build.
    #[arg(long, default_value_t = 24)]
    max_degree: u32,
    /// Run the commands of each document concurrently.
    #[arg(long)]
    parallel: bool,
    /// Report zero elapsed time so that reports are byte-identical.
    #[arg(long)]
    no_timings: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let settings = RunSettings {
        opts: Options { seed: args.seed, samples: args.samples, max_degree: args.max_degree },
        parallel: args.parallel,
        timings: !args.no_timings,
    };
    let documents: Vec<DocumentReport> = args
        .paths
        .iter()
        .map(|p| {
            let name = p.display().to_string();
            match std::fs::read_to_string(p) {
                Ok(text) => run_document(&text, &name, &settings),
                Err(e) => DocumentReport {
                    document: name,
                    verdict: Verdict::Error,
                    error: Some(format!("cannot read document: {e}")),
                    commands: vec![],
                },
            }
        })
        .collect();
    let report = RunReport::new(args.seed, documents);
    print!("{}", report.to_human());
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
