//! Check records and reports shared by validators, suites and the CLI.

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational outcome that does not affect the overall verdict.
    Note,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Note => "note",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall-clock milliseconds; excluded from the determinism guarantee.
    pub millis: u64,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), verdict: Verdict::Pass, witness: None, detail: None, millis: 0 }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), verdict: Verdict::Fail, witness: Some(witness.into()), detail: None, millis: 0 }
    }

    pub fn note(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), verdict: Verdict::Note, witness: None, detail: Some(detail.into()), millis: 0 }
    }

    /// Pass when `witness` is None, otherwise fail with it.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// "name: verdict" summary line.
    pub fn line(&self) -> String {
        format!("{}: {}", self.name, self.verdict.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Runs `f`, records its witness (None = pass) and elapsed time.
    pub fn timed(&mut self, name: impl Into<String>, f: impl FnOnce() -> Option<String>) -> bool {
        let t = Instant::now();
        let w = f();
        let mut c = Check::from_witness(name, w);
        c.millis = t.elapsed().as_millis() as u64;
        let ok = c.passed();
        self.checks.push(c);
        ok
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends another report with every check name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks.iter().map(Check::line).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.line());
            if let Some(w) = &c.witness {
                s.push_str(&format!("  [witness: {w}]"));
            }
            if let Some(d) = &c.detail {
                s.push_str(&format!("  ({d})"));
            }
            s.push('\n');
        }
        s
    }
}

/// Report for one CLI invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub tool_version: String,
    pub seed: u64,
    pub overall: Verdict,
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64, report: Report) -> Self {
        let overall = if report.all_pass() { Verdict::Pass } else { Verdict::Fail };
        RunReport {
            command,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            overall,
            lines: report.lines(),
            checks: report.checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# {} (seed {})\n", self.command.join(" "), self.seed);
        for c in &self.checks {
            s.push_str(&c.line());
            if let Some(w) = &c.witness {
                s.push_str(&format!("  [witness: {w}]"));
            }
            if let Some(d) = &c.detail {
                s.push_str(&format!("  ({d})"));
            }
            s.push('\n');
        }
        s.push_str(&format!("overall: {}\n", self.overall.as_str()));
        s
    }
}
