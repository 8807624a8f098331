//! Per-command verdicts and their human and structured renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }

    /// Combined verdict of several runs: any error wins, then any failure.
    pub fn combine(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::Pass, |acc, v| match (acc, v) {
            (Verdict::Error, _) | (_, Verdict::Error) => Verdict::Error,
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            _ => Verdict::Pass,
        })
    }

    /// Process exit status for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

/// A labelled expression: a failing check with its defect, or a computed
/// value. `expr` is in document syntax whenever the library renders one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandReport {
    pub index: usize,
    pub line: usize,
    pub command: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expect: Option<String>,
    pub checks: Vec<CheckLine>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentReport {
    pub document: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub commands: Vec<CommandReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub verdict: Verdict,
    pub documents: Vec<DocumentReport>,
}

impl RunReport {
    pub fn new(seed: u64, documents: Vec<DocumentReport>) -> Self {
        let verdict = Verdict::combine(documents.iter().map(|d| d.verdict));
        RunReport { seed, verdict, documents }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        for d in &self.documents {
            let _ = writeln!(s, "== {} ==", d.document);
            if let Some(e) = &d.error {
                let _ = writeln!(s, "  {e}");
            }
            for c in &d.commands {
                let _ = writeln!(s, "[{}] line {}: {} ({} ms)", c.verdict.name().to_uppercase(), c.line, c.command, c.elapsed_ms);
                if let Some(e) = &c.error {
                    let _ = writeln!(s, "    error: {e}");
                }
                for ch in &c.checks {
                    let _ = writeln!(s, "    {} {}", if ch.passed { "ok  " } else { "FAIL" }, ch.name);
                }
                for w in &c.witnesses {
                    let _ = writeln!(s, "      {} = {}", w.label, w.expr);
                }
            }
            let count = |v: Verdict| d.commands.iter().filter(|c| c.verdict == v).count();
            let _ = writeln!(
                s,
                "-- {}: {} pass, {} fail, {} error",
                d.verdict.name(),
                count(Verdict::Pass),
                count(Verdict::Fail),
                count(Verdict::Error)
            );
        }
        let _ = writeln!(s, "verdict: {}", self.verdict.name());
        s
    }
}

/// Split a `name = expression` line at its first top-level ` = `.
pub fn split_result(line: &str) -> Witness {
    match line.split_once(" = ") {
        Some((l, e)) => Witness { label: l.to_string(), expr: e.to_string() },
        None => Witness { label: String::new(), expr: line.to_string() },
    }
}

/// Witness of a failed check. A trailing ` = expression` of the library's
/// witness text becomes the expression.
pub fn check_witness(check: &str, witness: &str) -> Witness {
    match witness.rsplit_once(" = ") {
        Some((l, e)) => Witness { label: format!("{check}: {l}"), expr: e.to_string() },
        None => Witness { label: check.to_string(), expr: witness.to_string() },
    }
}
