//! Machine-readable run reports.
//!
//! A report is a list of output values and of checks, each check carrying
//! the identity it verifies, the measured value, its tolerance and the
//! outcome. Rendered as one `key=value` record per line or as CSV. Timing
//! is kept out of the rendered text unless requested, so reports for the
//! same inputs are identical byte for byte.

use std::fmt::Write as _;
use std::time::Duration;

use sha2::{Digest, Sha256};

/// One named output value.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub name: String,
    pub value: String,
}

/// One check with an explicit tolerance and outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    /// The identity or property the value measures.
    pub identity: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes when `value <= tolerance`.
    pub fn at_most(name: &str, identity: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            identity: identity.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }

    /// Passes when `value > bound`; `tolerance` records the bound.
    pub fn above(name: &str, identity: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            identity: identity.into(),
            value,
            tolerance: bound,
            pass: value > bound,
        }
    }

    /// Passes when `lo <= value <= hi`; `tolerance` records the half-width.
    pub fn within(name: &str, identity: &str, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            identity: identity.into(),
            value,
            tolerance: 0.5 * (hi - lo),
            pass: (lo..=hi).contains(&value),
        }
    }

    /// Exact boolean check; value is 0 on success and 1 on failure.
    pub fn exact(name: &str, identity: &str, ok: bool) -> Self {
        Self {
            name: name.into(),
            identity: identity.into(),
            value: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        }
    }
}

/// Report of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunReport {
    pub command: String,
    /// Hex SHA-256 of the canonical inputs.
    pub inputs_digest: String,
    pub outputs: Vec<OutputRecord>,
    pub checks: Vec<CheckRecord>,
    pub wall_time: Duration,
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReportFormat {
    #[default]
    KeyValue,
    Csv,
}

fn quote(s: &str) -> String {
    if !s.is_empty()
        && s.chars()
            .all(|c| !c.is_whitespace() && c != '"' && c != '=')
    {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl RunReport {
    /// New report whose digest covers `command` and `inputs`.
    pub fn new(command: &str, inputs: &str) -> Self {
        let digest = Sha256::digest(format!("{command}\n{inputs}").as_bytes());
        let inputs_digest = digest.iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Self {
            command: command.into(),
            inputs_digest,
            ..Default::default()
        }
    }

    pub fn output(&mut self, name: &str, value: impl std::fmt::Display) {
        self.outputs.push(OutputRecord {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Render; `timing` adds the wall time.
    pub fn render(&self, format: ReportFormat, timing: bool) -> String {
        let mut s = String::new();
        match format {
            ReportFormat::KeyValue => {
                let _ = writeln!(
                    s,
                    "record=run command={} inputs_digest={}",
                    quote(&self.command),
                    self.inputs_digest
                );
                for o in &self.outputs {
                    let _ = writeln!(
                        s,
                        "record=output name={} value={}",
                        quote(&o.name),
                        quote(&o.value)
                    );
                }
                for c in &self.checks {
                    let _ = writeln!(
                        s,
                        "record=check name={} identity={} value={:e} tolerance={:e} pass={}",
                        quote(&c.name),
                        quote(&c.identity),
                        c.value,
                        c.tolerance,
                        c.pass
                    );
                }
                let _ = write!(
                    s,
                    "record=summary checks={} failed={} pass={}",
                    self.checks.len(),
                    self.failed(),
                    self.all_pass()
                );
                if timing {
                    let _ = write!(s, " wall_time_s={:.6}", self.wall_time.as_secs_f64());
                }
                s.push('\n');
            }
            ReportFormat::Csv => {
                s.push_str("record,name,identity,value,tolerance,pass\n");
                let _ = writeln!(
                    s,
                    "run,{},{},,,",
                    csv_cell(&self.command),
                    self.inputs_digest
                );
                for o in &self.outputs {
                    let _ = writeln!(s, "output,{},,{},,", csv_cell(&o.name), csv_cell(&o.value));
                }
                for c in &self.checks {
                    let _ = writeln!(
                        s,
                        "check,{},{},{:e},{:e},{}",
                        csv_cell(&c.name),
                        csv_cell(&c.identity),
                        c.value,
                        c.tolerance,
                        c.pass
                    );
                }
                let _ = writeln!(
                    s,
                    "summary,checks={},failed={},,,{}",
                    self.checks.len(),
                    self.failed(),
                    self.all_pass()
                );
                if timing {
                    let _ = writeln!(
                        s,
                        "timing,wall_time_s,,{:.6},,",
                        self.wall_time.as_secs_f64()
                    );
                }
            }
        }
        s
    }

    fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}
