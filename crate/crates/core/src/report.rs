//! Line-oriented verification reports.
//!
//! Every record renders as one line with the fields, in this order:
//! `level= check= status= verdict= payload= cap= inputs=`. `status` is
//! `pass` or `fail` for hard checks and `info` for recorded observations.
//! Metadata lines start with `# meta`. Records are sorted by check name,
//! then level, so the output does not depend on evaluation order.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }

    pub fn hard(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub level: Option<usize>,
    pub check: String,
    pub status: Status,
    pub verdict: String,
    pub payload: String,
    pub capped: bool,
}

impl Record {
    pub fn new(level: Option<usize>, check: &str, status: Status, verdict: impl Into<String>, payload: impl Into<String>) -> Self {
        Record {
            level,
            check: check.to_string(),
            status,
            verdict: verdict.into(),
            payload: payload.into(),
            capped: false,
        }
    }

    /// A hard check with verdict `pass`/`fail`.
    pub fn check(level: Option<usize>, check: &str, ok: bool, payload: impl Into<String>) -> Self {
        let s = Status::hard(ok);
        Self::new(level, check, s, s.label(), payload)
    }

    pub fn info(level: Option<usize>, check: &str, verdict: impl Into<String>, payload: impl Into<String>) -> Self {
        Self::new(level, check, Status::Info, verdict, payload)
    }

    pub fn with_cap(mut self, capped: bool) -> Self {
        self.capped = capped;
        self
    }

    pub fn render(&self, inputs: &str) -> String {
        let level = self.level.map_or("-".to_string(), |l| l.to_string());
        format!(
            "level={} check={} status={} verdict={} payload={} cap={} inputs={}",
            level,
            self.check,
            self.status.label(),
            sanitize(&self.verdict),
            sanitize(&self.payload),
            if self.capped { "yes" } else { "no" },
            inputs
        )
    }
}

/// Payloads are single tokens: spaces become `_`, and an empty payload
/// renders as `-`.
fn sanitize(s: &str) -> String {
    if s.is_empty() {
        return "-".into();
    }
    s.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.meta.extend(other.meta);
        self.records.extend(other.records);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn find(&self, check: &str, level: Option<usize>) -> Option<&Record> {
        self.records.iter().find(|r| r.check == check && r.level == level)
    }

    pub fn render(&self, inputs: &str) -> String {
        let mut meta = self.meta.clone();
        meta.sort();
        meta.dedup();
        let mut records: Vec<&Record> = self.records.iter().collect();
        records.sort_by(|a, b| (&a.check, a.level).cmp(&(&b.check, b.level)));
        let mut out = String::new();
        for (k, v) in &meta {
            let _ = writeln!(out, "# meta {}={}", k, sanitize(v));
        }
        for r in records {
            out.push_str(&r.render(inputs));
            out.push('\n');
        }
        out
    }
}
