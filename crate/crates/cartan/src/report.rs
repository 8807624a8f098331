//! Pass/fail reports produced by the structure checkers.

/// One checked condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Defect or counterexample, rendered in the DSL's expression syntax.
    pub witness: Option<String>,
}

/// Ordered list of checked conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: false, witness: Some(witness.into()) });
    }

    /// Record a condition whose defect is rendered only when it fails.
    pub fn record(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}{}", c.name), ..c });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
